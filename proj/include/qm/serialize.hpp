#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "json.hpp"
#include "qm/betti.hpp"
#include "qm/biform.hpp"
#include "qm/hilbert.hpp"
#include "qm/locus.hpp"

// JSON encodings shared by the CLI, the Python module and the tests.
//
//   BiForm          {"a":int,"b":int,"p":int,"coeffs":[int,...]}  (p = 0 for Q)
//   ResolutionSpec  {"positions":[[[a,b],...],...]}
//   betti           {"coeffs":[...],"euler":int,"degree":int}
namespace qm::io {

using json = nlohmann::json;

/// Input that could not be decoded. what() carries the position for
/// syntax errors and the offending field for schema errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
json to_json(const mpz_class& v);
json to_json(const mpq_class& v);

json to_json(const BiForm<PrimeField>& f);
json to_json(const BiForm<RationalField>& f);

/// Requires "p" > 0.
BiForm<PrimeField> biform_fp_from_json(const json& j);
/// Requires "p" == 0. Coefficients may be integers or "num/den" strings.
BiForm<RationalField> biform_q_from_json(const json& j);

json to_json(const ResolutionSpec& r);
ResolutionSpec resolution_from_json(const json& j);
/// Parses text and validates the schema; throws ParseError.
ResolutionSpec parse_resolution(const std::string& text);

json to_json(const XiPoly& p);
json betti_json(const XiPoly& p);

json hilbert_json(const ResolutionSpec& r, const BiPoly& p);

json to_json(const locus::PlaneType& t);
json to_json(const locus::FiberReport& r);
json summary_json(const locus::LocusSummary& s, const locus::ModuliPointCount& c);

/// Parses text as JSON, mapping syntax errors to ParseError with position.
json parse_json(const std::string& text, const std::string& source);

}  // namespace qm::io
