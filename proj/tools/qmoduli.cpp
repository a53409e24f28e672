// qmoduli: checks the Betti numbers, Hilbert polynomials and finite-field
// point counts of the moduli space M(3m+2n+2) on P^1 x P^1.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or golden
// data, 3 a sweep worker failed (a partial report is still written).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using qm::io::json;
namespace cli = qm::cli;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const json& j, const std::optional<std::string>& output) {
  const std::string text = j.dump(2) + "\n";
  if (output) {
    std::ofstream out(*output);
    if (!out) throw cli::UsageError("cannot write " + *output);
    out << text;
  }
}

std::optional<std::size_t> fault_plane_from_env() {
  const char* env = std::getenv("QM_FAULT_PLANE");
  if (!env || !*env) return std::nullopt;
  return static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
}

// Runs betti, hilbert and the locus sweeps. `full` adds per-fiber reports.
int run_verify(const cli::RunConfig& config, const std::string& goldens_path, bool as_json, bool full) {
  const cli::Goldens goldens = cli::Goldens::load(goldens_path);
  json report;
  std::ostringstream human;
  bool verdict = true;

  const auto betti = cli::betti_section(goldens);
  report["betti"] = betti.body;
  human << cli::render_betti(betti);
  verdict = verdict && betti.ok;

  const auto hilbert = cli::hilbert_section(goldens);
  report["hilbert"] = hilbert.body;
  human << cli::render_hilbert(hilbert);
  verdict = verdict && hilbert.ok;

  report["locus"] = json::array();
  int code = cli::kOk;
  for (std::uint32_t p : config.primes) {
    try {
      const auto locus = cli::locus_section(p, config, &goldens, full);
      report["locus"].push_back(locus.body);
      human << cli::render_locus(locus);
      verdict = verdict && locus.ok;
    } catch (const qm::locus::WorkerFailure& e) {
      json partial = json::array();
      for (const auto& f : e.partial()) partial.push_back(qm::io::to_json(f));
      report["locus"].push_back({{"p", p}, {"error", e.what()}, {"partial_fibers", partial}});
      std::cerr << "error: " << e.what() << "\n";
      verdict = false;
      code = cli::kWorkerError;
      break;
    }
  }
  report["verdict"] = verdict;

  emit(report, config.output_path);
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human.str() << (verdict ? "verdict: PASS\n" : "verdict: FAIL\n");
  if (code != cli::kOk) return code;
  return verdict ? cli::kOk : cli::kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Betti numbers and point counts of M(3m+2n+2) on P1 x P1"};
  app.require_subcommand(1);

  std::string goldens_path = QM_GOLDENS_PATH;
  bool as_json = false;

  auto* betti = app.add_subcommand("betti", "Poincare polynomial and Euler characteristic of M");
  betti->add_flag("--json", as_json, "Emit JSON on stdout");
  betti->add_option("--goldens", goldens_path, "Golden value file");

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert polynomial of a locally free resolution");
  std::string spec_file, spec_inline;
  auto* file_opt = hilbert->add_option("--file", spec_file, "Resolution JSON file");
  auto* inline_opt = hilbert->add_option("--spec", spec_inline, "Inline resolution JSON");
  file_opt->excludes(inline_opt);
  hilbert->add_flag("--json", as_json, "Emit JSON on stdout");

  cli::RunConfig config;
  std::optional<int> workers_flag;
  std::string primes_text = "2,3";
  std::uint32_t single_prime = 0;
  std::string output_path;

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--workers", workers_flag, "Worker threads (default: QM_WORKERS or hardware threads)");
    sub->add_flag("--full-oracle", config.full_oracle, "Also run the raw brute-force oracle (p = 2, 3)");
    sub->add_flag("--full-sweep", config.full_sweep, "Enumerate fibers even for p = 5, 7 instead of using ranks");
    sub->add_option("--output", output_path, "Write the JSON report to this path");
    sub->add_flag("--json", as_json, "Emit JSON on stdout");
    sub->add_option("--goldens", goldens_path, "Golden value file");
  };

  auto* verify_locus = app.add_subcommand("verify-locus", "Determinant-locus sweep over one prime");
  verify_locus->add_option("--prime", single_prime, "Prime p in {2, 3, 5, 7}")->required();
  add_run_options(verify_locus);

  auto* verify = app.add_subcommand("verify", "Run every check for the given primes");
  verify->add_option("--primes", primes_text, "Comma-separated primes")->capture_default_str();
  add_run_options(verify);

  auto* report = app.add_subcommand("report", "Full JSON report including every fiber");
  report->add_option("--primes", primes_text, "Comma-separated primes")->capture_default_str();
  add_run_options(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kBadInput;
  }

  try {
    if (betti->parsed()) {
      const auto goldens = cli::Goldens::load(goldens_path);
      const auto s = cli::betti_section(goldens);
      std::cout << (as_json ? s.body.dump(2) + "\n" : cli::render_betti(s));
      return s.ok ? cli::kOk : cli::kMismatch;
    }

    if (hilbert->parsed()) {
      if (spec_file.empty() && spec_inline.empty()) throw cli::UsageError("hilbert needs --file or --spec");
      const std::string text = spec_file.empty() ? spec_inline : read_file(spec_file);
      const auto s = cli::hilbert_single(qm::io::parse_resolution(text));
      std::cout << (as_json ? s.body.dump(2) + "\n" : cli::render_hilbert(s));
      return cli::kOk;
    }

    config.workers = cli::resolve_workers(workers_flag);
    config.inject_failure_at = fault_plane_from_env();
    if (!output_path.empty()) config.output_path = output_path;

    if (verify_locus->parsed()) {
      qm::require_supported_prime(single_prime);
      if (config.full_oracle && single_prime > 3) throw cli::UsageError("--full-oracle needs p in {2, 3}");
      try {
        const auto s = cli::locus_section(single_prime, config, nullptr, true);
        emit(s.body, config.output_path);
        std::cout << (as_json ? s.body.dump(2) + "\n" : cli::render_locus(s));
        return s.ok ? cli::kOk : cli::kMismatch;
      } catch (const qm::locus::WorkerFailure& e) {
        json partial = json::array();
        for (const auto& f : e.partial()) partial.push_back(qm::io::to_json(f));
        const json body = {{"fibers", partial}, {"error", e.what()}};
        emit(body, config.output_path);
        if (as_json) std::cout << body.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return cli::kWorkerError;
      }
    }

    config.primes = cli::parse_primes(primes_text);
    for (auto p : config.primes)
      if (config.full_oracle && p > 3) throw cli::UsageError("--full-oracle needs primes in {2, 3}");
    if (report->parsed()) return run_verify(config, goldens_path, true, true);
    return run_verify(config, goldens_path, as_json, false);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kBadInput;
  } catch (const qm::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kWorkerError;
  }
}
