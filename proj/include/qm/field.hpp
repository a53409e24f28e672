#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qm {

// Primes the finite-field sweeps accept.
inline constexpr std::array<std::uint32_t, 4> kSupportedPrimes{2, 3, 5, 7};

bool is_prime(std::uint64_t n);
bool is_supported_prime(std::uint64_t p);

// Throws std::invalid_argument unless p is one of kSupportedPrimes.
void require_supported_prime(std::uint64_t p);

/// Element of the prime field F_p. The modulus travels with the value so
/// that forms built over different primes cannot be mixed silently.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t p, std::int64_t v);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const;
  Fp operator-() const;
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const;

  bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }

  // Canonical integer representative, 0 <= v < p.
  std::int64_t to_int() const { return v_; }
  std::string to_string() const { return std::to_string(v_); }

 private:
  void check_same(const Fp& o) const;

  std::uint32_t p_ = 2;
  std::uint32_t v_ = 0;
};

/// Exact rational number, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  explicit Rational(std::int64_t v) : v_(static_cast<long>(v)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(std::int64_t num, std::int64_t den);

  static constexpr std::uint32_t characteristic() { return 0; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  const mpq_class& get() const { return v_; }

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  Rational inverse() const;

  bool operator==(const Rational& o) const { return v_ == o.v_; }

  bool is_integer() const { return v_.get_den() == 1; }
  // Throws std::domain_error if not an integer or out of int64 range.
  std::int64_t to_int() const;
  std::string to_string() const { return v_.get_str(); }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Fp& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

// Field descriptors. Forms and matrices store one of these so they can
// manufacture scalars of the right field (in particular zero over F_p).

struct PrimeField {
  using Element = Fp;
  std::uint32_t p = 2;

  explicit PrimeField(std::uint32_t prime);
  Fp operator()(std::int64_t v) const { return Fp(p, v); }
  std::uint32_t characteristic() const { return p; }
  bool operator==(const PrimeField&) const = default;
};

struct RationalField {
  using Element = Rational;
  Rational operator()(std::int64_t v) const { return Rational(v); }
  static constexpr std::uint32_t characteristic() { return 0; }
  bool operator==(const RationalField&) const = default;
};

template <class F>
concept Field = requires(const F& f, const typename F::Element& a) {
  { f(std::int64_t{0}) } -> std::same_as<typename F::Element>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { a + a } -> std::same_as<typename F::Element>;
  { a * a } -> std::same_as<typename F::Element>;
  { a.inverse() } -> std::same_as<typename F::Element>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

}  // namespace qm
