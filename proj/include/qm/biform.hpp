#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qm/field.hpp"
#include "qm/linalg.hpp"

namespace qm {

/// Bidegree (a, b) of a form: degree a in x, y and degree b in z, w.
/// Line-bundle labels O(a, b) reuse the type and may be negative.
struct Bidegree {
  int a = 0;
  int b = 0;

  Bidegree operator+(const Bidegree& o) const { return {a + o.a, b + o.b}; }
  bool operator==(const Bidegree&) const = default;
  std::string to_string() const;
};

/// Bihomogeneous form on P^1 x P^1 with a dense coefficient vector.
///
/// Coefficient (i, j) multiplies x^(a-i) y^i z^(b-j) w^j and is stored at
/// index i * (b + 1) + j, i.e. x-degree major then z-degree. Serialization
/// and the packed sweep kernels rely on this layout.
template <Field F>
class BiForm {
 public:
  using Scalar = typename F::Element;

  BiForm(F field, Bidegree deg) : field_(field), deg_(deg) {
    if (deg.a < 0 || deg.b < 0) throw std::invalid_argument("BiForm: negative bidegree " + deg.to_string());
    coeffs_.assign(size_for(deg), field_(0));
  }

  BiForm(F field, Bidegree deg, std::vector<Scalar> coeffs) : field_(field), deg_(deg), coeffs_(std::move(coeffs)) {
    if (deg.a < 0 || deg.b < 0) throw std::invalid_argument("BiForm: negative bidegree " + deg.to_string());
    if (coeffs_.size() != size_for(deg))
      throw std::invalid_argument("BiForm: expected " + std::to_string(size_for(deg)) + " coefficients for bidegree " +
                                  deg.to_string() + ", got " + std::to_string(coeffs_.size()));
  }

  static BiForm from_ints(F field, Bidegree deg, std::span<const std::int64_t> values) {
    std::vector<Scalar> c;
    c.reserve(values.size());
    for (auto v : values) c.push_back(field(v));
    return BiForm(field, deg, std::move(c));
  }

  static BiForm from_ints(F field, Bidegree deg, std::initializer_list<std::int64_t> values) {
    return from_ints(field, deg, std::span<const std::int64_t>(values.begin(), values.size()));
  }

  static BiForm constant(F field, std::int64_t c) { return BiForm(field, {0, 0}, {field(c)}); }

  // The four coordinate forms.
  static BiForm x(F field) { return from_ints(field, {1, 0}, {1, 0}); }
  static BiForm y(F field) { return from_ints(field, {1, 0}, {0, 1}); }
  static BiForm z(F field) { return from_ints(field, {0, 1}, {1, 0}); }
  static BiForm w(F field) { return from_ints(field, {0, 1}, {0, 1}); }

  static std::size_t size_for(Bidegree d) { return static_cast<std::size_t>(d.a + 1) * static_cast<std::size_t>(d.b + 1); }

  const F& field() const { return field_; }
  Bidegree bidegree() const { return deg_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * (deg_.b + 1) + j; }
  const Scalar& coeff(int i, int j) const { return coeffs_.at(index(i, j)); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  BiForm operator+(const BiForm& o) const {
    check_same_shape(o, "add");
    BiForm r = *this;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return r;
  }

  BiForm operator-(const BiForm& o) const {
    check_same_shape(o, "subtract");
    BiForm r = *this;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    return r;
  }

  BiForm operator-() const { return scaled(field_(-1)); }

  BiForm scaled(const Scalar& c) const {
    BiForm r = *this;
    for (auto& x : r.coeffs_) x = c * x;
    return r;
  }

  BiForm operator*(const BiForm& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("BiForm: multiply over different fields");
    BiForm r(field_, deg_ + o.deg_);
    for (int i1 = 0; i1 <= deg_.a; ++i1)
      for (int j1 = 0; j1 <= deg_.b; ++j1) {
        const Scalar& c1 = coeff(i1, j1);
        if (c1.is_zero()) continue;
        for (int i2 = 0; i2 <= o.deg_.a; ++i2)
          for (int j2 = 0; j2 <= o.deg_.b; ++j2) {
            const Scalar& c2 = o.coeff(i2, j2);
            if (c2.is_zero()) continue;
            auto& dst = r.coeffs_[r.index(i1 + i2, j1 + j2)];
            dst = dst + c1 * c2;
          }
      }
    return r;
  }

  bool operator==(const BiForm& o) const { return field_ == o.field_ && deg_ == o.deg_ && coeffs_ == o.coeffs_; }

  /// Human-readable rendering, e.g. "x*z^2 + 2*y*z*w".
  std::string to_string() const;

 private:
  void check_same_shape(const BiForm& o, const char* what) const {
    if (!(field_ == o.field_)) throw std::invalid_argument(std::string("BiForm: ") + what + " over different fields");
    if (!(deg_ == o.deg_))
      throw std::invalid_argument(std::string("BiForm: cannot ") + what + " bidegrees " + deg_.to_string() + " and " +
                                  o.deg_.to_string());
  }

  F field_;
  Bidegree deg_;
  std::vector<Scalar> coeffs_;
};

template <Field F>
BiForm<F> operator*(const typename F::Element& c, const BiForm<F>& f) {
  return f.scaled(c);
}

template <Field F>
std::string BiForm<F>::to_string() const {
  std::string out;
  for (int i = 0; i <= deg_.a; ++i)
    for (int j = 0; j <= deg_.b; ++j) {
      const Scalar& c = coeff(i, j);
      if (c.is_zero()) continue;
      std::string mono;
      auto put = [&mono](const char* v, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += '*';
        mono += v;
        if (e > 1) mono += '^' + std::to_string(e);
      };
      put("x", deg_.a - i);
      put("y", i);
      put("z", deg_.b - j);
      put("w", j);
      std::string cs = c.to_string();
      if (!out.empty()) out += " + ";
      if (mono.empty())
        out += cs;
      else if (c.is_one())
        out += mono;
      else
        out += cs + "*" + mono;
    }
  return out.empty() ? "0" : out;
}

/// Linear form c0*x + c1*y (an element of V1*).
template <Field F>
struct LinearV1 {
  typename F::Element c0, c1;
  BiForm<F> to_form(const F& field) const { return BiForm<F>(field, {1, 0}, {c0, c1}); }
  bool operator==(const LinearV1&) const = default;
};

/// Linear form c0*z + c1*w (an element of V2*).
template <Field F>
struct LinearV2 {
  typename F::Element c0, c1;
  BiForm<F> to_form(const F& field) const { return BiForm<F>(field, {0, 1}, {c0, c1}); }
  bool operator==(const LinearV2&) const = default;
};

template <Field F>
LinearV2<F> linear_v2(const F& field, std::int64_t z, std::int64_t w) {
  return {field(z), field(w)};
}

template <Field F>
LinearV1<F> linear_v1(const F& field, std::int64_t x, std::int64_t y) {
  return {field(x), field(y)};
}

/// The matrix of a map O(-1,-2) + O(-1,-1) -> 2 O. The first column has
/// entries of bidegree (1,2), the second of bidegree (1,1).
template <Field F>
struct PhiMatrix {
  BiForm<F> phi11, phi12, phi21, phi22;

  PhiMatrix(BiForm<F> p11, BiForm<F> p12, BiForm<F> p21, BiForm<F> p22)
      : phi11(std::move(p11)), phi12(std::move(p12)), phi21(std::move(p21)), phi22(std::move(p22)) {
    const Bidegree first{1, 2}, second{1, 1};
    if (!(phi11.bidegree() == first) || !(phi21.bidegree() == first))
      throw std::invalid_argument("PhiMatrix: first column must have bidegree (1,2)");
    if (!(phi12.bidegree() == second) || !(phi22.bidegree() == second))
      throw std::invalid_argument("PhiMatrix: second column must have bidegree (1,1)");
  }

  const F& field() const { return phi11.field(); }
};

template <Field F>
BiForm<F> bf_add(const BiForm<F>& f, const BiForm<F>& g) {
  return f + g;
}

template <Field F>
BiForm<F> bf_scale(const typename F::Element& c, const BiForm<F>& f) {
  return f.scaled(c);
}

template <Field F>
BiForm<F> bf_mul(const BiForm<F>& f, const BiForm<F>& g) {
  return f * g;
}

/// phi11*phi22 - phi21*phi12, a form of bidegree (2,3).
template <Field F>
BiForm<F> det2(const PhiMatrix<F>& phi) {
  return phi.phi11 * phi.phi22 - phi.phi21 * phi.phi12;
}

template <Field F>
BiForm<F> mul_right_linear(const BiForm<F>& f, const LinearV2<F>& u) {
  if (!(f.bidegree() == Bidegree{1, 1})) throw std::invalid_argument("mul_right_linear: expected a (1,1) form");
  return f * u.to_form(f.field());
}

// Determinant of the 2x2 coefficient matrix [[xz, xw], [yz, yw]] of a (1,1) form.
template <Field F>
typename F::Element coefficient_det(const BiForm<F>& f) {
  if (!(f.bidegree() == Bidegree{1, 1})) throw std::invalid_argument("coefficient_det: expected a (1,1) form");
  return f.coeff(0, 0) * f.coeff(1, 1) - f.coeff(0, 1) * f.coeff(1, 0);
}

/// A pure tensor f = scale * (v1 (x) v2) with v1, v2 normalized so that
/// their first nonzero coefficient is one.
template <Field F>
struct Rank1Factors {
  LinearV1<F> v1;
  LinearV2<F> v2;
  typename F::Element scale;
};

/// Factors a nonzero (1,1) form as a pure tensor, or returns nullopt when
/// its coefficient determinant is nonzero. Throws on the zero form.
template <Field F>
std::optional<Rank1Factors<F>> rank1_test(const BiForm<F>& f) {
  if (!(f.bidegree() == Bidegree{1, 1})) throw std::invalid_argument("rank1_test: expected a (1,1) form");
  if (f.is_zero()) throw std::invalid_argument("rank1_test: zero form");
  if (!coefficient_det(f).is_zero()) return std::nullopt;
  // Some row (x-row or y-row) is nonzero; it is proportional to v2.
  const int row = (f.coeff(0, 0).is_zero() && f.coeff(0, 1).is_zero()) ? 1 : 0;
  const int col = f.coeff(row, 0).is_zero() ? 1 : 0;
  const auto lead2 = f.coeff(row, col);
  LinearV2<F> v2{f.coeff(row, 0) / lead2, f.coeff(row, 1) / lead2};
  // Column `col` of the coefficient matrix is proportional to v1.
  auto a0 = f.coeff(0, col), a1 = f.coeff(1, col);
  const auto lead1 = a0.is_zero() ? a1 : a0;
  LinearV1<F> v1{a0 / lead1, a1 / lead1};
  return Rank1Factors<F>{v1, v2, lead1};
}

/// True when phi12 and phi22 are linearly independent.
template <Field F>
bool second_column_independent(const PhiMatrix<F>& phi) {
  linalg::Matrix<typename F::Element> m{phi.phi12.coeffs(), phi.phi22.coeffs()};
  return linalg::rank(m) == 2;
}

/// Finds u in V2* with phi11 = phi12 * u and phi21 = phi22 * u. The solution
/// is unique when it exists; it is returned as is, not rescaled. Throws when
/// phi12 and phi22 are dependent.
template <Field F>
std::optional<LinearV2<F>> factorization_test(const PhiMatrix<F>& phi) {
  if (!second_column_independent(phi))
    throw std::invalid_argument("factorization_test: phi12 and phi22 are linearly dependent");
  const F& k = phi.field();
  auto stack = [](const BiForm<F>& top, const BiForm<F>& bottom) {
    std::vector<typename F::Element> v = top.coeffs();
    v.insert(v.end(), bottom.coeffs().begin(), bottom.coeffs().end());
    return v;
  };
  const auto z = BiForm<F>::z(k), w = BiForm<F>::w(k);
  const std::vector<std::vector<typename F::Element>> columns{stack(phi.phi12 * z, phi.phi22 * z),
                                                              stack(phi.phi12 * w, phi.phi22 * w)};
  const auto sol = linalg::solve_columns(columns, stack(phi.phi11, phi.phi21));
  if (!sol) return std::nullopt;
  return LinearV2<F>{(*sol)[0], (*sol)[1]};
}

/// Membership in W: independent second column and no factorization of the
/// first column through it.
template <Field F>
bool in_W(const PhiMatrix<F>& phi) {
  return second_column_independent(phi) && !factorization_test(phi).has_value();
}

}  // namespace qm
