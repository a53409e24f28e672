#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "qm/biform.hpp"

namespace qm {

/// Polynomial in the two Hilbert variables (m, n) with rational
/// coefficients, stored as a trimmed dense grid: coeff(i, j) multiplies
/// m^i n^j. Each variable has degree at most kMaxDegree.
class BiPoly {
 public:
  static constexpr int kMaxDegree = 4;

  BiPoly() = default;
  // grid[i][j] is the coefficient of m^i n^j. Rows may have uneven length.
  explicit BiPoly(std::vector<std::vector<mpq_class>> grid);

  static BiPoly constant(const mpq_class& c);
  static BiPoly m();
  static BiPoly n();
  // a*m + b*n + c
  static BiPoly linear(const mpq_class& a, const mpq_class& b, const mpq_class& c);

  int degree_m() const { return static_cast<int>(grid_.size()) - 1; }
  int degree_n() const;
  bool is_zero() const { return grid_.empty(); }
  mpq_class coeff(int i, int j) const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly scaled(const mpq_class& c) const;
  bool operator==(const BiPoly& o) const { return grid_ == o.grid_; }

  mpq_class evaluate(const mpq_class& m, const mpq_class& n) const;

  /// Rendering such as "3m+2n+2" or "mn+m"; terms ordered by total degree,
  /// then by m-degree, both descending.
  std::string to_string() const;

 private:
  void normalize();

  std::vector<std::vector<mpq_class>> grid_;
};

/// Line-bundle summands at each homological position of a resolution;
/// position 0 maps onto the sheaf.
struct ResolutionSpec {
  std::vector<std::vector<Bidegree>> positions;

  // Throws std::invalid_argument when empty or a position is empty.
  void validate() const;

  bool operator==(const ResolutionSpec&) const = default;
};

/// Hilbert polynomial (m+a+1)(n+b+1) of O(a, b).
BiPoly hilb_line(int a, int b);

/// Alternating sum of line-bundle Hilbert polynomials over a resolution.
BiPoly hilb_resolution(const ResolutionSpec& res);

/// extra + sum coeffs[i] * hilb_line(twists[i]).
BiPoly hilb_combination(const std::vector<mpq_class>& coeffs, const std::vector<Bidegree>& twists,
                        const BiPoly& extra);

/// P(m + a, n + b), expanded.
BiPoly twist(const BiPoly& p, int a, int b);

mpq_class euler_char(const BiPoly& p);

/// Arithmetic genus 1 - chi(O_C) of a curve, given the Hilbert polynomial
/// of its structure sheaf.
mpq_class genus(const BiPoly& p);

/// True when the resolution has the shape 0 -> O(-a,-b) -> O, i.e. it
/// resolves the structure sheaf of a curve and genus() is meaningful.
bool is_curve_structure_sheaf(const ResolutionSpec& res);

// Resolutions used throughout.
namespace resolutions {
ResolutionSpec stratum_m0();               // 0 -> O(-1,-2) + O(-1,-1) -> 2 O
ResolutionSpec stratum_m1();               // 0 -> O(-2,-1) + O(-1,-2) -> O(-1,-1) + O(0,1)
ResolutionSpec rank_one_r(int r);          // 0 -> O(-1,-r) -> O
ResolutionSpec rank_one_s(int s);          // 0 -> O(-s,-1) -> O
ResolutionSpec curve_structure_sheaf(int a, int b);  // 0 -> O(-a,-b) -> O
}  // namespace resolutions

}  // namespace qm
