#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qm {

/// Dense polynomial in one variable xi with exact integer coefficients;
/// coeffs()[k] multiplies xi^k. The leading coefficient is nonzero unless the
/// polynomial is zero, in which case coeffs() is empty.
class XiPoly {
 public:
  XiPoly() = default;
  explicit XiPoly(std::vector<mpz_class> coeffs);
  XiPoly(std::initializer_list<long> coeffs);

  static XiPoly monomial(const mpz_class& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int k) const;

  XiPoly operator+(const XiPoly& o) const;
  XiPoly operator-(const XiPoly& o) const;
  XiPoly operator*(const XiPoly& o) const;
  bool operator==(const XiPoly& o) const { return coeffs_ == o.coeffs_; }

  /// Quotient and remainder. The divisor's leading coefficient must divide
  /// every intermediate leading term; throws std::domain_error otherwise.
  std::pair<XiPoly, XiPoly> divmod(const XiPoly& divisor) const;

  /// Quotient of an exact division; throws std::domain_error on a nonzero
  /// remainder.
  XiPoly exact_div(const XiPoly& divisor) const;

  bool is_palindromic() const;

  std::string to_string() const;

 private:
  void trim();

  std::vector<mpz_class> coeffs_;
};

/// Horner evaluation at an integer, exact.
mpz_class eval_at(const XiPoly& p, const mpz_class& q);

/// 1 + xi + ... + xi^n, the Poincare polynomial of P^n.
XiPoly proj_poincare(int n);

/// Gaussian binomial [n choose k]_xi, the Poincare polynomial of Grass(k, n).
XiPoly grass_poincare(int k, int n);

/// Poincare polynomials of the three strata of M(3m+2n+2) and of the
/// pieces they are assembled from.
struct ModuliStrata {
  XiPoly bundle;        // P^9-bundle over Grass(2,4)
  XiPoly det_locus;     // X = X1 + X2, removed from the bundle
  XiPoly open_stratum;  // M0 = bundle - X
  XiPoly brill_noether_curve;  // M1, the universal (2,3)-curve
  XiPoly twisted_structure;    // M2 = P^11
  XiPoly total;
};

ModuliStrata moduli_strata();

/// Poincare polynomial of M(3m+2n+2).
XiPoly poincare_moduli();

}  // namespace qm
