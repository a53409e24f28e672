#include "qm/betti.hpp"

#include <algorithm>
#include <stdexcept>

namespace qm {

XiPoly::XiPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

XiPoly::XiPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

XiPoly XiPoly::monomial(const mpz_class& c, int degree) {
  if (degree < 0) throw std::invalid_argument("XiPoly: negative degree");
  std::vector<mpz_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return XiPoly(std::move(v));
}

void XiPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class XiPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : mpz_class(0);
}

XiPoly XiPoly::operator+(const XiPoly& o) const {
  std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return XiPoly(std::move(v));
}

XiPoly XiPoly::operator-(const XiPoly& o) const {
  std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k));
  return XiPoly(std::move(v));
}

XiPoly XiPoly::operator*(const XiPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return XiPoly(std::move(v));
}

std::pair<XiPoly, XiPoly> XiPoly::divmod(const XiPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("XiPoly: division by zero polynomial");
  std::vector<mpz_class> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {XiPoly{}, *this};
  std::vector<mpz_class> quot(static_cast<std::size_t>(degree() - dd) + 1);
  const mpz_class& lead = divisor.coeffs_.back();
  for (int k = degree(); k >= dd; --k) {
    if (rem[k] == 0) continue;
    if (!mpz_divisible_p(rem[k].get_mpz_t(), lead.get_mpz_t()))
      throw std::domain_error("XiPoly: division leaves the integers");
    const mpz_class q = rem[k] / lead;
    quot[k - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coeffs_[j];
  }
  return {XiPoly(std::move(quot)), XiPoly(std::move(rem))};
}

XiPoly XiPoly::exact_div(const XiPoly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::domain_error("XiPoly: inexact division, remainder " + r.to_string());
  return q;
}

bool XiPoly::is_palindromic() const { return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin()); }

std::string XiPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    mpz_class c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (!out.empty())
      out += negative ? " - " : " + ";
    else if (negative)
      out += "-";
    const std::string mono = k == 0 ? "" : (k == 1 ? "xi" : "xi^" + std::to_string(k));
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

mpz_class eval_at(const XiPoly& p, const mpz_class& q) {
  mpz_class acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * q + *it;
  return acc;
}

XiPoly proj_poincare(int n) {
  if (n < 0) throw std::invalid_argument("proj_poincare: negative dimension " + std::to_string(n));
  return XiPoly(std::vector<mpz_class>(static_cast<std::size_t>(n) + 1, mpz_class(1)));
}

XiPoly grass_poincare(int k, int n) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("grass_poincare: need 0 <= k <= n, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  // prod_{i<k} (1 - xi^(n-i)) / prod_{i=1..k} (1 - xi^i)
  auto one_minus = [](int e) { return XiPoly{1} - XiPoly::monomial(1, e); };
  XiPoly num{1}, den{1};
  for (int i = 0; i < k; ++i) num = num * one_minus(n - i);
  for (int i = 1; i <= k; ++i) den = den * one_minus(i);
  return num.exact_div(den);
}

ModuliStrata moduli_strata() {
  ModuliStrata s;
  const XiPoly p1 = proj_poincare(1);
  s.bundle = proj_poincare(9) * grass_poincare(2, 4);
  s.det_locus = p1 + p1 * p1;
  s.open_stratum = s.bundle - s.det_locus;
  s.brill_noether_curve = proj_poincare(10) * p1 * p1;
  s.twisted_structure = proj_poincare(11);
  s.total = s.open_stratum + s.brill_noether_curve + s.twisted_structure;
  return s;
}

XiPoly poincare_moduli() { return moduli_strata().total; }

}  // namespace qm
