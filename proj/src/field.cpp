#include "qm/field.hpp"

#include <algorithm>
#include <ostream>

namespace qm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_supported_prime(std::uint64_t p) {
  return std::find(kSupportedPrimes.begin(), kSupportedPrimes.end(), p) != kSupportedPrimes.end();
}

void require_supported_prime(std::uint64_t p) {
  if (!is_supported_prime(p))
    throw std::invalid_argument("unsupported prime " + std::to_string(p) +
                                " (expected one of 2, 3, 5, 7)");
}

Fp::Fp(std::uint32_t p, std::int64_t v) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("Fp: modulus " + std::to_string(p) + " is not prime");
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  v_ = static_cast<std::uint32_t>(r);
}

void Fp::check_same(const Fp& o) const {
  if (p_ != o.p_) throw std::invalid_argument("Fp: mixed characteristics");
}

Fp Fp::operator+(const Fp& o) const {
  check_same(o);
  Fp r = *this;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + o.v_) % p_);
  return r;
}

Fp Fp::operator-(const Fp& o) const {
  check_same(o);
  Fp r = *this;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + p_ - o.v_) % p_);
  return r;
}

Fp Fp::operator*(const Fp& o) const {
  check_same(o);
  Fp r = *this;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % p_);
  return r;
}

Fp Fp::operator-() const {
  Fp r = *this;
  r.v_ = v_ == 0 ? 0 : p_ - v_;
  return r;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
  // Fermat: v^(p-2).
  std::uint64_t result = 1, base = v_, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  Fp r = *this;
  r.v_ = static_cast<std::uint32_t>(result);
  return r;
}

Fp Fp::operator/(const Fp& o) const { return *this * o.inverse(); }

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / v_));
}

std::int64_t Rational::to_int() const {
  if (!is_integer()) throw std::domain_error("Rational: " + to_string() + " is not an integer");
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p()) throw std::domain_error("Rational: integer out of range");
  return n.get_si();
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }
std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.get(); }

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime(prime)) throw std::invalid_argument("PrimeField: " + std::to_string(prime) + " is not prime");
}

}  // namespace qm
