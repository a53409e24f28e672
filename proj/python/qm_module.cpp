#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qm/betti.hpp"
#include "qm/hilbert.hpp"
#include "qm/locus.hpp"
#include "qm/serialize.hpp"

namespace py = pybind11;
using qm::io::json;

namespace {

py::object to_py(const mpz_class& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_py(e));
      return std::move(out);
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return std::move(out);
    }
  }
}

py::list coeff_list(const qm::XiPoly& p) {
  py::list out;
  for (const auto& c : p.coeffs()) out.append(to_py(c));
  return out;
}

qm::locus::Form form_from(std::uint32_t p, qm::Bidegree d, const std::vector<std::int64_t>& coeffs) {
  const qm::PrimeField k(p);
  return qm::locus::Form::from_ints(k, d, coeffs);
}

qm::locus::FiberMethod method_from(const std::string& name, std::uint32_t p) {
  if (name.empty()) return qm::locus::default_method(p);
  if (name == "sweep") return qm::locus::FiberMethod::Sweep;
  if (name == "kernel") return qm::locus::FiberMethod::Kernel;
  throw std::invalid_argument("method must be \"sweep\" or \"kernel\", got \"" + name + "\"");
}

qm::locus::LocusSummary run_locus(std::uint32_t p, unsigned workers, const std::string& method, bool full_oracle) {
  qm::require_supported_prime(p);
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  qm::locus::LocusOptions opts;
  opts.method = method_from(method, p);
  opts.workers = workers;
  opts.full_oracle = full_oracle;
  py::gil_scoped_release release;
  return qm::locus::total_X_count(p, opts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core for qmoduli";

  m.def("poincare_coeffs", [] { return coeff_list(qm::poincare_moduli()); },
        "Betti numbers b_0, b_2, ..., b_26 of M (coefficients in ascending degree).");
  m.def("betti", [] { return to_py(qm::io::betti_json(qm::poincare_moduli())); });
  m.def("eval_poincare", [](long q) { return to_py(qm::eval_at(qm::poincare_moduli(), q)); }, py::arg("q"));
  m.def("proj_poincare", [](int n) { return coeff_list(qm::proj_poincare(n)); }, py::arg("n"));
  m.def("grass_poincare", [](int k, int n) { return coeff_list(qm::grass_poincare(k, n)); }, py::arg("k"),
        py::arg("n"));

  m.def(
      "hilbert",
      [](const std::vector<std::vector<std::pair<int, int>>>& positions) {
        qm::ResolutionSpec spec;
        for (const auto& pos : positions) {
          auto& out = spec.positions.emplace_back();
          for (const auto& [a, b] : pos) out.push_back({a, b});
        }
        return to_py(qm::io::hilbert_json(spec, qm::hilb_resolution(spec)));
      },
      py::arg("positions"), "Hilbert polynomial of a resolution given as [[(a, b), ...], ...].");

  m.def(
      "det2",
      [](std::uint32_t p, const std::vector<std::int64_t>& phi11, const std::vector<std::int64_t>& phi12,
         const std::vector<std::int64_t>& phi21, const std::vector<std::int64_t>& phi22) {
        qm::require_supported_prime(p);
        const qm::PhiMatrix<qm::PrimeField> phi(form_from(p, {1, 2}, phi11), form_from(p, {1, 1}, phi12),
                                                form_from(p, {1, 2}, phi21), form_from(p, {1, 1}, phi22));
        const auto d = qm::det2(phi);
        std::vector<std::uint32_t> out;
        for (const auto& c : d.coeffs()) out.push_back(c.value());
        return out;
      },
      py::arg("p"), py::arg("phi11"), py::arg("phi12"), py::arg("phi21"), py::arg("phi22"),
      "Coefficients of phi11*phi22 - phi21*phi12 over F_p, bidegree (2,3).");

  m.def(
      "planes",
      [](std::uint32_t p) {
        qm::require_supported_prime(p);
        py::list out;
        for (const auto& pl : qm::locus::enumerate_planes(p)) {
          py::dict d;
          d["basis"] = to_py(json{qm::io::to_json(pl.first())["coeffs"], qm::io::to_json(pl.second())["coeffs"]});
          d["plane_type"] = to_py(qm::io::to_json(qm::locus::classify_plane(pl)));
          out.append(d);
        }
        return out;
      },
      py::arg("p"), "Every plane of Grass(2,4)(F_p) with its type.");

  m.def(
      "fiber_count",
      [](std::uint32_t p, const std::vector<std::int64_t>& phi12, const std::vector<std::int64_t>& phi22,
         const std::string& method) {
        qm::require_supported_prime(p);
        const auto plane = qm::locus::Plane::span(form_from(p, {1, 1}, phi12), form_from(p, {1, 1}, phi22));
        const auto how = method_from(method, p);
        py::gil_scoped_release release;
        return qm::locus::fiber_detzero_count(plane, how);
      },
      py::arg("p"), py::arg("phi12"), py::arg("phi22"), py::arg("method") = "",
      "Det-zero points in the fiber over span{phi12, phi22}.");

  m.def(
      "raw_count",
      [](std::uint32_t p, const std::vector<std::int64_t>& phi12, const std::vector<std::int64_t>& phi22) {
        qm::require_supported_prime(p);
        const auto plane = qm::locus::Plane::span(form_from(p, {1, 1}, phi12), form_from(p, {1, 1}, phi22));
        py::gil_scoped_release release;
        return qm::locus::raw_oracle_count(plane);
      },
      py::arg("p"), py::arg("phi12"), py::arg("phi22"));

  m.def(
      "locus_summary",
      [](std::uint32_t p, unsigned workers, const std::string& method, bool full_oracle) {
        const auto s = run_locus(p, workers, method, full_oracle);
        return to_py(qm::io::summary_json(s, qm::locus::moduli_point_count(s)));
      },
      py::arg("p"), py::arg("workers") = 1, py::arg("method") = "", py::arg("full_oracle") = false);

  m.def(
      "moduli_point_count",
      [](std::uint32_t p, unsigned workers, const std::string& method) {
        const auto c = qm::locus::moduli_point_count(run_locus(p, workers, method, false));
        py::dict d;
        d["p"] = c.p;
        d["bundle"] = to_py(c.bundle);
        d["x_count"] = to_py(c.x_count);
        d["curve_stratum"] = to_py(c.curve_stratum);
        d["p11"] = to_py(c.p11);
        d["stratified"] = to_py(c.stratified);
        d["poincare_eval"] = to_py(c.poincare_eval);
        d["agree"] = c.agree;
        return d;
      },
      py::arg("p"), py::arg("workers") = 1, py::arg("method") = "");
}
