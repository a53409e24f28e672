#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qm/biform.hpp"

// Finite-field model of W/G and its determinant locus X.
//
// W/G is a P^9-bundle over Grass(2, V1* (x) V2*). Over a plane spanned by
// (phi12, phi22) the fiber is P(F_p^12 / K), where F_p^12 holds the first
// column (phi11, phi21) and K = {(phi12 u, phi22 u) : u in V2*} is the orbit
// direction of the column operations. det2 is constant on K-cosets and
// homogeneous, so counting det-zero classes in the fiber is well defined.
namespace qm::locus {

using Form = BiForm<PrimeField>;
using Vec = std::vector<Fp>;

/// A 2-plane in V1* (x) V2*, stored by its reduced row echelon basis with
/// respect to the coordinate order (xz, xw, yz, yw).
class Plane {
 public:
  // Throws std::invalid_argument if the forms are dependent or not (1,1).
  static Plane span(const Form& f, const Form& g);

  const Form& first() const { return b1_; }
  const Form& second() const { return b2_; }
  std::uint32_t prime() const { return b1_.field().p; }
  std::string to_string() const;
  bool operator==(const Plane&) const = default;

 private:
  Plane(Form b1, Form b2) : b1_(std::move(b1)), b2_(std::move(b2)) {}
  Form b1_, b2_;
};

// No rank-0 direction: the plane contains 0, 1 or 2 rank-one lines over F_p.
struct Generic {
  int rank1_lines = 0;
  bool operator==(const Generic&) const = default;
};
// plane = V1* (x) v
struct SharedRight {
  LinearV2<PrimeField> v;
  bool operator==(const SharedRight&) const = default;
};
// plane = v (x) V2*
struct SharedLeft {
  LinearV1<PrimeField> v;
  bool operator==(const SharedLeft&) const = default;
};
using PlaneType = std::variant<Generic, SharedRight, SharedLeft>;

std::string type_name(const PlaneType& t);

/// All planes of Grass(2,4)(F_p), each exactly once, in a fixed order.
std::vector<Plane> enumerate_planes(std::uint32_t p);

/// Coefficients (ss, st, tt) of q(s,t) = coefficient_det(s*B1 + t*B2).
std::array<Fp, 3> pencil_quadratic(const Form& b1, const Form& b2);

PlaneType classify_plane(const Plane& plane);

/// Det-zero count predicted for a fiber of the given type: 0, 1 or p + 1.
std::uint64_t expected_fiber_count(const PlaneType& type, std::uint32_t p);

/// The fiber over a plane, with a chosen complement of K.
class FiberSpace {
 public:
  static constexpr std::size_t kAmbientDim = 12;
  static constexpr std::size_t kFiberDim = 10;

  /// Complement spanned by the unit vectors off the pivot columns of K's
  /// echelon form. phi12, phi22 need not be an echelon basis.
  FiberSpace(const Form& phi12, const Form& phi22);

  /// Explicit complement; throws std::invalid_argument unless it has ten
  /// vectors that together with K span F_p^12.
  FiberSpace(const Form& phi12, const Form& phi22, std::vector<Vec> complement);

  std::uint32_t prime() const { return p_; }
  const std::array<Vec, 2>& orbit_basis() const { return k_basis_; }
  const std::vector<Vec>& complement() const { return complement_; }

  /// det2 with first column taken from a 12-vector (phi11 | phi21).
  Form det_of(const Vec& first_column) const;

  /// Enumerates all (p^10 - 1)/(p - 1) projective points of the complement.
  std::uint64_t sweep_count() const;

  /// Same count from the kernel dimension of the linear map det2.
  std::uint64_t kernel_count() const;

  /// Number of raw first columns in F_p^12 with det2 = 0, by brute force
  /// through the form arithmetic. Only for p in {2, 3}.
  std::uint64_t raw_count() const;

 private:
  void build_images();

  Form phi12_, phi22_;
  std::uint32_t p_;
  std::array<Vec, 2> k_basis_;
  std::vector<Vec> complement_;
  std::vector<std::uint64_t> packed_images_;  // det2 of each complement vector
};

enum class FiberMethod { Sweep, Kernel };

std::string method_name(FiberMethod m);

/// Sweep for p in {2, 3}; kernel rank otherwise (p = 5 sweeps are opt-in).
FiberMethod default_method(std::uint32_t p);

std::uint64_t fiber_detzero_count(const Plane& plane, FiberMethod method = FiberMethod::Sweep);

/// raw = p^2 + N (p - 1) p^2 ties this to fiber_detzero_count.
std::uint64_t raw_oracle_count(const Plane& plane);
mpz_class raw_identity_value(std::uint64_t fiber_count, std::uint32_t p);

struct FiberReport {
  Plane plane;
  PlaneType type;
  std::uint64_t detzero_count = 0;
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> raw_count;  // set when the raw oracle ran
  bool ok = false;
};

struct LocusOptions {
  FiberMethod method = FiberMethod::Sweep;
  unsigned workers = 1;
  // Raw oracle on every plane at p = 2, on the first plane of each type at p = 3.
  bool full_oracle = false;
  // Fault injection for tests: the worker processing this plane index throws.
  std::optional<std::size_t> inject_failure_at;
};

struct LocusSummary {
  std::uint32_t p = 0;
  FiberMethod method = FiberMethod::Sweep;
  std::vector<FiberReport> fibers;
  std::uint64_t plane_count = 0;
  std::uint64_t expected_plane_count = 0;
  std::uint64_t generic = 0, shared_right = 0, shared_left = 0;
  std::array<std::uint64_t, 3> generic_by_rank1_lines{};
  mpz_class x_count, x_expected;
  bool detzero_only_on_shared = false;
  bool ok = false;
};

/// Thrown when a sweep worker fails; carries the reports that completed.
class WorkerFailure : public std::runtime_error {
 public:
  WorkerFailure(const std::string& what, std::vector<FiberReport> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<FiberReport>& partial() const { return partial_; }

 private:
  std::vector<FiberReport> partial_;
};

/// Sweeps every plane, classifies it and counts det-zero points of its
/// fiber. Reports come back in enumeration order regardless of workers.
LocusSummary total_X_count(std::uint32_t p, const LocusOptions& options = {});

/// |P^n(F_p)|
mpz_class projective_points(int n, std::uint32_t p);

struct ModuliPointCount {
  std::uint32_t p = 0;
  mpz_class bundle;        // |P^9| * |Grass(2,4)|, the latter counted by enumeration
  mpz_class x_count;       // |X|
  mpz_class curve_stratum; // (p+1)^2 |P^10|
  mpz_class p11;           // |P^11|
  mpz_class stratified;    // bundle - X + curve_stratum + p11
  mpz_class poincare_eval; // Poincare polynomial of M at p
  bool agree = false;
};

ModuliPointCount moduli_point_count(const LocusSummary& summary);
ModuliPointCount moduli_point_count(std::uint32_t p, const LocusOptions& options = {});

}  // namespace qm::locus
