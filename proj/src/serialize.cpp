#include "qm/serialize.hpp"

namespace qm::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Bidegree read_bidegree(const json& j) {
  const int a = require_int(j, "a"), b = require_int(j, "b");
  if (a < 0 || b < 0 || a > 8 || b > 8) throw ParseError("bidegree out of range: (" + std::to_string(a) + "," +
                                                         std::to_string(b) + ")");
  return {a, b};
}

const json& read_coeffs(const json& j, Bidegree d) {
  const json& c = require(j, "coeffs");
  if (!c.is_array()) throw ParseError("field \"coeffs\" must be an array");
  const std::size_t want = static_cast<std::size_t>(d.a + 1) * (d.b + 1);
  if (c.size() != want)
    throw ParseError("expected " + std::to_string(want) + " coefficients, got " + std::to_string(c.size()));
  return c;
}

template <class F>
json biform_json(const BiForm<F>& f, std::uint32_t p) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) {
    if constexpr (std::is_same_v<F, RationalField>) {
      if (c.is_integer())
        coeffs.push_back(to_json(mpz_class(c.get().get_num())));
      else
        coeffs.push_back(c.to_string());
    } else {
      coeffs.push_back(c.to_int());
    }
  }
  return {{"a", f.bidegree().a}, {"b", f.bidegree().b}, {"p", p}, {"coeffs", coeffs}};
}

}  // namespace

json to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

json to_json(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  if (c.get_den() == 1) return to_json(mpz_class(c.get_num()));
  return c.get_str();
}

json to_json(const BiForm<PrimeField>& f) { return biform_json(f, f.field().p); }
json to_json(const BiForm<RationalField>& f) { return biform_json(f, 0); }

BiForm<PrimeField> biform_fp_from_json(const json& j) {
  const int p = require_int(j, "p");
  if (p <= 0 || !is_prime(static_cast<std::uint64_t>(p))) throw ParseError("field \"p\" must be a prime, got " + std::to_string(p));
  const Bidegree d = read_bidegree(j);
  const PrimeField k(static_cast<std::uint32_t>(p));
  std::vector<Fp> coeffs;
  for (const auto& c : read_coeffs(j, d)) {
    if (!c.is_number_integer()) throw ParseError("coefficients over F_p must be integers");
    const auto v = c.get<std::int64_t>();
    if (v < 0 || v >= p) throw ParseError("coefficient " + std::to_string(v) + " is not a canonical residue mod " + std::to_string(p));
    coeffs.push_back(k(v));
  }
  return BiForm<PrimeField>(k, d, std::move(coeffs));
}

BiForm<RationalField> biform_q_from_json(const json& j) {
  if (require_int(j, "p") != 0) throw ParseError("rational forms need \"p\": 0");
  const Bidegree d = read_bidegree(j);
  std::vector<Rational> coeffs;
  for (const auto& c : read_coeffs(j, d)) {
    if (c.is_number_integer()) {
      coeffs.emplace_back(c.get<std::int64_t>());
    } else if (c.is_string()) {
      mpq_class q;
      if (q.set_str(c.get<std::string>(), 10) != 0 || q.get_den() == 0)
        throw ParseError("bad rational coefficient \"" + c.get<std::string>() + "\"");
      coeffs.emplace_back(q);
    } else {
      throw ParseError("rational coefficients must be integers or \"num/den\" strings");
    }
  }
  return BiForm<RationalField>(RationalField{}, d, std::move(coeffs));
}

json to_json(const ResolutionSpec& r) {
  json positions = json::array();
  for (const auto& pos : r.positions) {
    json terms = json::array();
    for (const auto& d : pos) terms.push_back({d.a, d.b});
    positions.push_back(terms);
  }
  return {{"positions", positions}};
}

ResolutionSpec resolution_from_json(const json& j) {
  const json& positions = require(j, "positions");
  if (!positions.is_array()) throw ParseError("field \"positions\" must be an array");
  ResolutionSpec r;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const json& pos = positions[k];
    if (!pos.is_array()) throw ParseError("positions[" + std::to_string(k) + "] must be an array");
    std::vector<Bidegree> terms;
    for (std::size_t t = 0; t < pos.size(); ++t) {
      const json& d = pos[t];
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
        throw ParseError("positions[" + std::to_string(k) + "][" + std::to_string(t) + "] must be [a,b]");
      terms.push_back({d[0].get<int>(), d[1].get<int>()});
    }
    r.positions.push_back(std::move(terms));
  }
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return r;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

ResolutionSpec parse_resolution(const std::string& text) {
  return resolution_from_json(parse_json(text, "resolution"));
}

json to_json(const XiPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return coeffs;
}

json betti_json(const XiPoly& p) {
  return {{"coeffs", to_json(p)}, {"euler", to_json(eval_at(p, 1))}, {"degree", p.degree()}};
}

json hilbert_json(const ResolutionSpec& r, const BiPoly& p) {
  json out = {{"resolution", to_json(r)}, {"polynomial", p.to_string()}, {"chi", to_json(euler_char(p))}};
  if (is_curve_structure_sheaf(r)) out["genus"] = to_json(genus(p));
  return out;
}

json to_json(const locus::PlaneType& t) {
  json out = {{"kind", locus::type_name(t)}};
  if (const auto* g = std::get_if<locus::Generic>(&t)) out["rank1_lines"] = g->rank1_lines;
  if (const auto* r = std::get_if<locus::SharedRight>(&t)) out["v"] = {r->v.c0.to_int(), r->v.c1.to_int()};
  if (const auto* l = std::get_if<locus::SharedLeft>(&t)) out["v"] = {l->v.c0.to_int(), l->v.c1.to_int()};
  return out;
}

json to_json(const locus::FiberReport& r) {
  json out = {{"plane", {to_json(r.plane.first()), to_json(r.plane.second())}},
              {"plane_type", to_json(r.type)},
              {"detzero_count", r.detzero_count},
              {"expected", r.expected},
              {"ok", r.ok}};
  if (r.raw_count) out["raw_count"] = *r.raw_count;
  return out;
}

json summary_json(const locus::LocusSummary& s, const locus::ModuliPointCount& c) {
  return {{"p", s.p},
          {"method", locus::method_name(s.method)},
          {"planes", s.plane_count},
          {"generic", s.generic},
          {"generic_by_rank1_lines", s.generic_by_rank1_lines},
          {"shared_right", s.shared_right},
          {"shared_left", s.shared_left},
          {"detzero_only_on_shared", s.detzero_only_on_shared},
          {"X_count", to_json(s.x_count)},
          {"expected", to_json(s.x_expected)},
          {"moduli_count", to_json(c.stratified)},
          {"poincare_eval", to_json(c.poincare_eval)},
          {"ok", s.ok && c.agree}};
}

}  // namespace qm::io
