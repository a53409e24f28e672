#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qm/serialize.hpp"

namespace qm::cli {

// Process exit codes.
enum Exit : int {
  kOk = 0,
  kMismatch = 1,    // a verification check failed
  kBadInput = 2,    // bad arguments, malformed input or golden data
  kWorkerError = 3, // a sweep worker failed; a partial report is written
};

/// Input error that maps to kBadInput.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference values with their provenance ("literature", "computed" or
/// "elementary"), loaded from data/goldens.json.
class Goldens {
 public:
  static Goldens load(const std::string& path);

  const io::json& value(const std::string& key) const;
  const std::string& provenance(const std::string& key) const;
  bool has(const std::string& key) const;

 private:
  io::json entries_;
  std::map<std::string, std::string> provenance_;
};

struct RunConfig {
  std::vector<std::uint32_t> primes;
  unsigned workers = 1;
  bool full_oracle = false;
  bool full_sweep = false;
  std::optional<std::string> output_path;
  // Fault injection for tests (QM_FAULT_PLANE).
  std::optional<std::size_t> inject_failure_at;
};

/// Resolves the worker count: flag, then QM_WORKERS, then hardware threads.
unsigned resolve_workers(std::optional<int> flag);

std::vector<std::uint32_t> parse_primes(const std::string& list);

struct Section {
  io::json body;
  bool ok = false;
};

Section betti_section(const Goldens& goldens);
Section hilbert_section(const Goldens& goldens);
Section hilbert_single(const ResolutionSpec& spec);

/// Locus sweep for one prime plus the cross-route count. Throws
/// locus::WorkerFailure on worker errors.
Section locus_section(std::uint32_t p, const RunConfig& config, const Goldens* goldens, bool include_fibers);

std::string render_betti(const Section& s);
std::string render_hilbert(const Section& s);
std::string render_locus(const Section& s);

}  // namespace qm::cli
