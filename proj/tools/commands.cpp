#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "qm/betti.hpp"
#include "qm/hilbert.hpp"
#include "qm/locus.hpp"

namespace qm::cli {

namespace {

const char* const kRequiredGoldens[] = {"poincare_coeffs", "euler_characteristic", "moduli_dimension",
                                        "hilbert_m0",      "hilbert_m1",           "hilbert_combination",
                                        "curve_chi",       "curve_genus"};

std::string mark(bool ok) { return ok ? "[ok]  " : "[FAIL]"; }

io::json hilbert_check(const std::string& name, const ResolutionSpec& spec, const BiPoly& expected) {
  const BiPoly got = hilb_resolution(spec);
  io::json j = io::hilbert_json(spec, got);
  j["name"] = name;
  j["expected"] = expected.to_string();
  j["ok"] = got == expected;
  return j;
}

}  // namespace

Goldens Goldens::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open golden file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Goldens g;
  try {
    const io::json root = io::parse_json(buf.str(), path);
    if (!root.is_object() || !root.contains("entries") || !root["entries"].is_object())
      throw io::ParseError(path + ": missing \"entries\" object");
    g.entries_ = root["entries"];
    for (const auto& [key, entry] : g.entries_.items()) {
      if (!entry.is_object() || !entry.contains("value") || !entry.contains("provenance") ||
          !entry["provenance"].is_string())
        throw io::ParseError(path + ": entry \"" + key + "\" needs \"value\" and \"provenance\"");
      const auto prov = entry["provenance"].get<std::string>();
      if (prov != "literature" && prov != "computed" && prov != "elementary")
        throw io::ParseError(path + ": entry \"" + key + "\" has unknown provenance \"" + prov + "\"");
      g.provenance_[key] = prov;
    }
    for (const char* key : kRequiredGoldens)
      if (!g.has(key)) throw io::ParseError(path + ": missing entry \"" + key + "\"");
    if (!g.value("poincare_coeffs").is_array()) throw io::ParseError(path + ": poincare_coeffs must be an array");
    for (const auto& c : g.value("poincare_coeffs"))
      if (!c.is_number_integer()) throw io::ParseError(path + ": poincare_coeffs must hold integers");
    for (const char* key : {"euler_characteristic", "moduli_dimension", "curve_chi", "curve_genus"})
      if (!g.value(key).is_number_integer()) throw io::ParseError(path + ": " + key + " must be an integer");
    for (const char* key : {"hilbert_m0", "hilbert_m1", "hilbert_combination"})
      if (!g.value(key).is_string()) throw io::ParseError(path + ": " + key + " must be a string");
  } catch (const io::ParseError& e) {
    throw UsageError(std::string("corrupted golden file: ") + e.what());
  }
  return g;
}

bool Goldens::has(const std::string& key) const { return entries_.contains(key); }

const io::json& Goldens::value(const std::string& key) const {
  if (!has(key)) throw UsageError("golden entry \"" + key + "\" not found");
  return entries_.at(key).at("value");
}

const std::string& Goldens::provenance(const std::string& key) const { return provenance_.at(key); }

unsigned resolve_workers(std::optional<int> flag) {
  auto check = [](long n, const std::string& from) {
    if (n < 1 || n > 1024) throw UsageError("worker count from " + from + " must be in [1, 1024]");
    return static_cast<unsigned>(n);
  };
  if (flag) return check(*flag, "--workers");
  if (const char* env = std::getenv("QM_WORKERS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0') throw UsageError("QM_WORKERS is not an integer: " + std::string(env));
    return check(n, "QM_WORKERS");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::uint32_t> parse_primes(const std::string& list) {
  std::vector<std::uint32_t> primes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in prime list \"" + list + "\"");
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (*end != '\0' || v <= 0) throw UsageError("not a prime: \"" + item + "\"");
    if (!is_supported_prime(static_cast<std::uint64_t>(v)))
      throw UsageError("unsupported prime " + item + " (expected one of 2, 3, 5, 7)");
    primes.push_back(static_cast<std::uint32_t>(v));
  }
  if (primes.empty()) throw UsageError("no primes given");
  return primes;
}

Section betti_section(const Goldens& goldens) {
  const XiPoly poly = poincare_moduli();
  Section s;
  s.body = io::betti_json(poly);
  const bool coeffs_ok = s.body["coeffs"] == goldens.value("poincare_coeffs");
  const bool euler_ok = s.body["euler"] == goldens.value("euler_characteristic");
  const bool degree_ok = s.body["degree"] == goldens.value("moduli_dimension");
  s.body["palindromic"] = poly.is_palindromic();
  s.ok = coeffs_ok && euler_ok && degree_ok && poly.is_palindromic();
  s.body["ok"] = s.ok;
  return s;
}

Section hilbert_section(const Goldens& goldens) {
  Section s;
  io::json checks = io::json::array();
  const auto golden_poly = [&](const char* key) { return goldens.value(key).get<std::string>(); };

  auto rendered = [&](const std::string& name, const ResolutionSpec& spec, const std::string& expected) {
    const BiPoly got = hilb_resolution(spec);
    io::json j = io::hilbert_json(spec, got);
    j["name"] = name;
    j["expected"] = expected;
    j["ok"] = got.to_string() == expected;
    return j;
  };
  checks.push_back(rendered("M0", resolutions::stratum_m0(), golden_poly("hilbert_m0")));
  checks.push_back(rendered("M1", resolutions::stratum_m1(), golden_poly("hilbert_m1")));
  for (int r = 0; r <= 4; ++r)
    checks.push_back(hilbert_check("rank_one_r" + std::to_string(r), resolutions::rank_one_r(r), BiPoly::linear(r, 1, 1)));
  for (int t = 0; t <= 4; ++t)
    checks.push_back(hilbert_check("rank_one_s" + std::to_string(t), resolutions::rank_one_s(t), BiPoly::linear(1, t, 1)));

  {
    const BiPoly e1 = hilb_combination({3, -2}, {{-1, -1}, {0, 0}}, BiPoly::linear(3, 2, 2));
    const bool same_as_line = e1 == hilb_line(-1, 0);
    io::json j = {{"name", "combination"},
                  {"polynomial", e1.to_string()},
                  {"expected", golden_poly("hilbert_combination")},
                  {"equals_O(-1,0)", same_as_line},
                  {"ok", e1.to_string() == golden_poly("hilbert_combination") && same_as_line}};
    checks.push_back(j);
  }
  {
    const ResolutionSpec curve = resolutions::curve_structure_sheaf(2, 3);
    const BiPoly p = hilb_resolution(curve);
    io::json j = io::hilbert_json(curve, p);
    j["name"] = "curve_2_3";
    j["ok"] = j["chi"] == goldens.value("curve_chi") && j["genus"] == goldens.value("curve_genus") &&
              twist(p, 1, 0) == BiPoly::linear(3, 2, 2) && twist(p, 0, 1) == BiPoly::linear(3, 2, 1);
    checks.push_back(j);
  }
  s.ok = true;
  for (const auto& c : checks) s.ok = s.ok && c["ok"].get<bool>();
  s.body = {{"checks", checks}, {"ok", s.ok}};
  return s;
}

Section hilbert_single(const ResolutionSpec& spec) {
  Section s;
  s.body = io::hilbert_json(spec, hilb_resolution(spec));
  s.ok = true;
  return s;
}

Section locus_section(std::uint32_t p, const RunConfig& config, const Goldens* goldens, bool include_fibers) {
  locus::LocusOptions opts;
  opts.method = config.full_sweep ? locus::FiberMethod::Sweep : locus::default_method(p);
  opts.workers = config.workers;
  opts.full_oracle = config.full_oracle;
  opts.inject_failure_at = config.inject_failure_at;
  const locus::LocusSummary summary = locus::total_X_count(p, opts);
  const locus::ModuliPointCount count = locus::moduli_point_count(summary);

  Section s;
  io::json body = io::summary_json(summary, count);
  bool ok = body["ok"].get<bool>();
  if (goldens) {
    const std::string xk = "x_count_" + std::to_string(p), mk = "moduli_count_" + std::to_string(p);
    if (goldens->has(xk)) ok = ok && body["X_count"] == goldens->value(xk);
    if (goldens->has(mk)) ok = ok && body["moduli_count"] == goldens->value(mk);
  }
  if (config.full_oracle) {
    std::uint64_t checked = 0;
    for (const auto& f : summary.fibers) checked += f.raw_count.has_value();
    body["raw_oracle_planes"] = checked;
  }
  body["ok"] = ok;
  if (include_fibers) {
    io::json fibers = io::json::array();
    for (const auto& f : summary.fibers) fibers.push_back(io::to_json(f));
    s.body = {{"fibers", fibers}, {"summary", body}};
  } else {
    s.body = {{"summary", body}};
  }
  s.ok = ok;
  return s;
}

std::string render_betti(const Section& s) {
  std::ostringstream out;
  out << mark(s.ok) << " Poincare polynomial coefficients (degree 0..13): ";
  for (std::size_t i = 0; i < s.body["coeffs"].size(); ++i) out << (i ? " " : "") << s.body["coeffs"][i].dump();
  out << "\n       euler characteristic " << s.body["euler"].dump() << ", degree " << s.body["degree"].dump() << "\n";
  return out.str();
}

std::string render_hilbert(const Section& s) {
  std::ostringstream out;
  auto line = [&](const io::json& c) {
    out << c["polynomial"].get<std::string>();
    if (c.contains("chi")) out << ", chi=" << c["chi"].dump();
    if (c.contains("genus")) out << ", genus=" << c["genus"].dump();
  };
  if (!s.body.contains("checks")) {
    line(s.body);
    out << "\n";
    return out.str();
  }
  for (const auto& c : s.body["checks"]) {
    out << mark(c["ok"].get<bool>()) << " " << c["name"].get<std::string>() << ": ";
    line(c);
    out << "\n";
  }
  return out.str();
}

std::string render_locus(const Section& s) {
  const auto& sm = s.body["summary"];
  std::ostringstream out;
  out << mark(s.ok) << " p=" << sm["p"].dump() << " (" << sm["method"].get<std::string>() << "): " << sm["planes"].dump()
      << " planes, generic " << sm["generic"].dump() << ", shared_right " << sm["shared_right"].dump()
      << ", shared_left " << sm["shared_left"].dump() << "\n";
  out << "       |X| = " << sm["X_count"].dump() << " (expected " << sm["expected"].dump() << "), |M| = "
      << sm["moduli_count"].dump() << " stratified vs " << sm["poincare_eval"].dump() << " from the Poincare polynomial\n";
  if (s.body.contains("fibers")) {
    for (const auto& f : s.body["fibers"]) {
      if (f["plane_type"]["kind"] == "generic" && f["ok"].get<bool>()) continue;
      out << "       " << mark(f["ok"].get<bool>()) << " " << f["plane_type"]["kind"].get<std::string>()
          << " fiber: det-zero " << f["detzero_count"].dump() << " (expected " << f["expected"].dump() << ")";
      if (f.contains("raw_count")) out << ", raw " << f["raw_count"].dump();
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace qm::cli
