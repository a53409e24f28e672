#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qm/biform.hpp"

using namespace qm;
using qm::testing::random_form;
using qm::testing::sx;
using qm::testing::sy;
using qm::testing::sz;
using qm::testing::sw;
using qm::testing::to_sparse;

namespace {

template <Field F>
struct Vars {
  explicit Vars(F field) : k(field), x(BiForm<F>::x(k)), y(BiForm<F>::y(k)), z(BiForm<F>::z(k)), w(BiForm<F>::w(k)) {}
  F k;
  BiForm<F> x, y, z, w;
};

const PrimeField F2(2), F3(3);
const RationalField QQ;

// One second column of each shape: no pure tensor, one pure entry, two pure
// entries with independent factors, shared right factor, shared left factor.
template <Field F>
std::vector<std::pair<BiForm<F>, BiForm<F>>> canonical_second_columns(const F& k) {
  const Vars<F> v(k);
  return {
      {v.x * v.z + v.y * v.w, v.x * v.w + v.y * v.z},  // no pure tensor in the first entry
      {v.x * v.z, v.x * v.w + v.y * v.z},              // first entry pure
      {v.x * v.z, v.y * v.w},                          // both pure, factors independent
      {v.x * v.z, v.y * v.z},                          // shared right factor
      {v.x * v.z, v.x * v.w},                          // shared left factor
  };
}

// All (1,2) pairs (phi11, phi21) over F_2, indexed by a 12-bit code.
std::pair<BiForm<PrimeField>, BiForm<PrimeField>> first_column_f2(unsigned code) {
  std::vector<std::int64_t> a(6), b(6);
  for (int k = 0; k < 6; ++k) {
    a[k] = (code >> k) & 1;
    b[k] = (code >> (6 + k)) & 1;
  }
  return {BiForm<PrimeField>::from_ints(F2, {1, 2}, a), BiForm<PrimeField>::from_ints(F2, {1, 2}, b)};
}

}  // namespace

TEST(BiForm, LayoutIsXMajorThenZ) {
  const Vars<PrimeField> v(F3);
  // x*z^2 is (i=0, j=0); y*w^2 is the last slot.
  const auto f = v.x * v.z * v.z + (v.y * v.w * v.w).scaled(Fp(3, 2));
  ASSERT_EQ(f.coeffs().size(), 6u);
  EXPECT_EQ(f.coeffs()[0], Fp(3, 1));
  EXPECT_EQ(f.coeffs()[5], Fp(3, 2));
  EXPECT_EQ(f.to_string(), "x*z^2 + 2*y*w^2");
}

TEST(BiForm, AddZeroIsIdentity) {
  std::mt19937_64 rng(1);
  const auto f = random_form(QQ, {1, 2}, rng);
  EXPECT_EQ(bf_add(f, BiForm<RationalField>(QQ, {1, 2})), f);
}

TEST(BiForm, AddBasisForms) {
  const Vars<RationalField> v(QQ);
  const auto f = bf_add(v.x * v.z, v.y * v.w);
  const auto expect = BiForm<RationalField>::from_ints(QQ, {1, 1}, {1, 0, 0, 1});
  EXPECT_EQ(f, expect);
}

TEST(BiForm, CharacteristicTwoCancels) {
  const Vars<PrimeField> v(F2);
  EXPECT_TRUE(bf_add(v.x * v.z, v.x * v.z).is_zero());
}

TEST(BiForm, AddRejectsBidegreeMismatch) {
  const Vars<RationalField> v(QQ);
  EXPECT_THROW(bf_add(v.x * v.z, v.x * v.z * v.z), std::invalid_argument);
  EXPECT_THROW(BiForm<RationalField>::from_ints(QQ, {1, 1}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(BiForm<RationalField>(QQ, {-1, 0}), std::invalid_argument);
}

TEST(BiForm, ScaleMultipliesEveryCoefficient) {
  const Vars<RationalField> v(QQ);
  const auto f = bf_scale(Rational(3, 2), v.x * v.z + v.y * v.w);
  EXPECT_EQ(f.coeff(0, 0), Rational(3, 2));
  EXPECT_EQ(f.coeff(1, 1), Rational(3, 2));
  EXPECT_TRUE(f.coeff(0, 1).is_zero());
}

TEST(BiForm, MonomialProduct) {
  const Vars<RationalField> v(QQ);
  const auto f = bf_mul(v.x * v.z, v.y * v.w);
  EXPECT_EQ(f.bidegree(), (Bidegree{2, 2}));
  EXPECT_EQ(to_sparse(f), sx() * sy() * sz() * sw());
}

TEST(BiForm, ProductMatchesSparseOracle) {
  const Vars<RationalField> v(QQ);
  // (x z)(x w + y z) = x^2 z w + x y z^2
  const auto f = bf_mul(v.x * v.z, v.x * v.w + v.y * v.z);
  EXPECT_EQ(to_sparse(f), sx() * sx() * sz() * sw() + sx() * sy() * sz() * sz());
  EXPECT_EQ(f.to_string(), "x^2*z*w + x*y*z^2");
  // alpha = z u with u = z: (x alpha)(y w) = x y z^2 w
  const auto alpha = v.z * v.z;
  EXPECT_EQ(to_sparse(bf_mul(v.x * alpha, v.y * v.w)), sx() * sy() * sz() * sz() * sw());
}

TEST(BiForm, ProductPropertiesOnRandomForms) {
  std::mt19937_64 rng(7);
  auto check = [&rng](const auto& k) {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto f = random_form(k, {1, 1}, rng), g = random_form(k, {0, 1}, rng), h = random_form(k, {1, 0}, rng);
      const auto fg = f * g;
      ASSERT_EQ(fg.bidegree(), (Bidegree{1, 2}));
      ASSERT_EQ(fg, g * f);
      ASSERT_EQ((f * g) * h, f * (g * h));
      ASSERT_EQ(to_sparse(fg), to_sparse(f) * to_sparse(g));
    }
  };
  check(F2);
  check(F3);
  check(QQ);
}

TEST(Det2, ProportionalColumnsVanish) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = LinearV2<RationalField>{Rational(static_cast<int>(rng() % 7) - 3), Rational(static_cast<int>(rng() % 5))};
    const auto p12 = random_form(QQ, {1, 1}, rng), p22 = random_form(QQ, {1, 1}, rng);
    const PhiMatrix<RationalField> phi(mul_right_linear(p12, u), p12, mul_right_linear(p22, u), p22);
    EXPECT_TRUE(det2(phi).is_zero());
  }
}

TEST(Det2, SharedRightNormalFormVanishes) {
  // phi = [[x a, x z], [y a, y z]] for any a in S^2 V2*.
  std::mt19937_64 rng(5);
  const Vars<RationalField> v(QQ);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alpha = random_form(QQ, {0, 2}, rng);
    const PhiMatrix<RationalField> phi(v.x * alpha, v.x * v.z, v.y * alpha, v.y * v.z);
    EXPECT_TRUE(det2(phi).is_zero());
  }
}

TEST(Det2, MatchesSparseOracle) {
  const Vars<RationalField> v(QQ);
  const PhiMatrix<RationalField> phi(v.x * v.z * v.z, v.x * v.z + v.y * v.w, BiForm<RationalField>(QQ, {1, 2}), v.x * v.w);
  const auto d = det2(phi);
  EXPECT_EQ(d.bidegree(), (Bidegree{2, 3}));
  EXPECT_EQ(d.coeffs().size(), 12u);
  // phi11 * phi22 = x z^2 * x w
  EXPECT_EQ(to_sparse(d), sx() * sx() * sz() * sz() * sw());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const PhiMatrix<RationalField> r(random_form(QQ, {1, 2}, rng), random_form(QQ, {1, 1}, rng),
                                     random_form(QQ, {1, 2}, rng), random_form(QQ, {1, 1}, rng));
    ASSERT_EQ(to_sparse(det2(r)),
              to_sparse(r.phi11) * to_sparse(r.phi22) - to_sparse(r.phi21) * to_sparse(r.phi12));
  }
}

TEST(Det2, ColumnOperationInvarianceExhaustiveOverF2) {
  for (const auto& [p12, p22] : canonical_second_columns(F2)) {
    for (unsigned code = 0; code < 4096; ++code) {
      const auto [p11, p21] = first_column_f2(code);
      const auto base = det2(PhiMatrix<PrimeField>(p11, p12, p21, p22));
      for (int u0 = 0; u0 < 2; ++u0)
        for (int u1 = 0; u1 < 2; ++u1) {
          const auto u = linear_v2(F2, u0, u1);
          const PhiMatrix<PrimeField> moved(p11 + mul_right_linear(p12, u), p12, p21 + mul_right_linear(p22, u), p22);
          ASSERT_EQ(det2(moved), base);
        }
    }
  }
}

TEST(Det2, ColumnOperationAndScalingOnRandomInputs) {
  std::mt19937_64 rng(13);
  auto check = [&rng](const auto& k) {
    using F = std::decay_t<decltype(k)>;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto p11 = random_form(k, {1, 2}, rng), p21 = random_form(k, {1, 2}, rng);
      const auto p12 = random_form(k, {1, 1}, rng), p22 = random_form(k, {1, 1}, rng);
      const auto uf = random_form(k, {0, 1}, rng);
      const LinearV2<F> u{uf.coeffs()[0], uf.coeffs()[1]};
      const auto c = random_form(k, {0, 0}, rng).coeffs()[0];
      const auto base = det2(PhiMatrix<F>(p11, p12, p21, p22));
      ASSERT_EQ(det2(PhiMatrix<F>(p11 + mul_right_linear(p12, u), p12, p21 + mul_right_linear(p22, u), p22)), base);
      ASSERT_EQ(det2(PhiMatrix<F>(p11.scaled(c), p12, p21.scaled(c), p22)), base.scaled(c));
    }
  };
  check(F3);
  check(QQ);
}

TEST(Rank1, Examples) {
  const Vars<RationalField> v(QQ);
  const auto a = rank1_test(v.x * v.z);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->v1, linear_v1(QQ, 1, 0));
  EXPECT_EQ(a->v2, linear_v2(QQ, 1, 0));
  EXPECT_TRUE(a->scale.is_one());

  EXPECT_FALSE(rank1_test(v.x * v.z + v.y * v.w));

  const auto b = rank1_test(v.x * (v.z + v.w));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->v1, linear_v1(QQ, 1, 0));
  EXPECT_EQ(b->v2, linear_v2(QQ, 1, 1));

  // 6 y z + 4 y w = 6 * (y) (z + 2/3 w)
  const auto c = rank1_test((v.y * v.z).scaled(Rational(6)) + (v.y * v.w).scaled(Rational(4)));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->v1, linear_v1(QQ, 0, 1));
  EXPECT_EQ(c->v2, (LinearV2<RationalField>{Rational(1), Rational(2, 3)}));
  EXPECT_EQ(c->scale, Rational(6));
}

TEST(Rank1, ZeroFormRejected) {
  EXPECT_THROW(rank1_test(BiForm<RationalField>(QQ, {1, 1})), std::invalid_argument);
  EXPECT_THROW(rank1_test(BiForm<RationalField>(QQ, {1, 2})), std::invalid_argument);
}

namespace {

template <Field F>
void expect_rank1_contract(const BiForm<F>& f) {
  const auto r = rank1_test(f);
  ASSERT_EQ(r.has_value(), coefficient_det(f).is_zero()) << f.to_string();
  if (!r) return;
  const F& k = f.field();
  EXPECT_EQ((r->v1.to_form(k) * r->v2.to_form(k)).scaled(r->scale), f);
  const auto lead = [](const auto& a, const auto& b) { return a.is_zero() ? b : a; };
  EXPECT_TRUE(lead(r->v1.c0, r->v1.c1).is_one());
  EXPECT_TRUE(lead(r->v2.c0, r->v2.c1).is_one());
}

}  // namespace

TEST(Rank1, ExhaustiveOverF2) {
  int rank_one = 0;
  for (int code = 1; code < 16; ++code) {
    const auto f = BiForm<PrimeField>::from_ints(F2, {1, 1}, {code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1});
    expect_rank1_contract(f);
    rank_one += rank1_test(f).has_value();
  }
  // (2^2 - 1)^2 = 9 nonzero pure tensors over F_2
  EXPECT_EQ(rank_one, 9);
}

TEST(Rank1, RandomOverF3AndQ) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    auto f3 = random_form(F3, {1, 1}, rng);
    if (!f3.is_zero()) expect_rank1_contract(f3);
    // Bias toward rank one by building products half of the time.
    auto q = trial % 2 ? random_form(QQ, {1, 0}, rng) * random_form(QQ, {0, 1}, rng) : random_form(QQ, {1, 1}, rng);
    if (!q.is_zero()) expect_rank1_contract(q);
  }
}

TEST(MulRightLinear, Examples) {
  const Vars<RationalField> v(QQ);
  EXPECT_EQ(mul_right_linear(v.x * v.z, linear_v2(QQ, 0, 1)), v.x * v.z * v.w);
  EXPECT_TRUE(mul_right_linear(v.x * v.z, linear_v2(QQ, 0, 0)).is_zero());
  const auto f = mul_right_linear(v.x * v.z + v.y * v.w, linear_v2(QQ, 1, 0));
  EXPECT_EQ(to_sparse(f), sx() * sz() * sz() + sy() * sz() * sw());
  EXPECT_THROW(mul_right_linear(v.x * v.z * v.z, linear_v2(QQ, 1, 0)), std::invalid_argument);
}

TEST(FactorizationTest, Examples) {
  const Vars<RationalField> v(QQ);
  const auto p12 = v.x * v.z + v.y * v.w, p22 = v.x * v.w;
  const auto w = linear_v2(QQ, 0, 1);
  const auto u = factorization_test(PhiMatrix<RationalField>(mul_right_linear(p12, w), p12, mul_right_linear(p22, w), p22));
  ASSERT_TRUE(u);
  EXPECT_EQ(*u, w);

  const BiForm<RationalField> zero(QQ, {1, 2});
  const auto u0 = factorization_test(PhiMatrix<RationalField>(zero, p12, zero, p22));
  ASSERT_TRUE(u0);
  EXPECT_EQ(*u0, linear_v2(QQ, 0, 0));

  // Not rescaled: u = 2z - 3w comes back as is.
  const auto odd = linear_v2(QQ, 2, -3);
  const auto u2 = factorization_test(PhiMatrix<RationalField>(mul_right_linear(p12, odd), p12, mul_right_linear(p22, odd), p22));
  ASSERT_TRUE(u2);
  EXPECT_EQ(*u2, odd);
}

TEST(FactorizationTest, SharedLeftEndFormStaysInW) {
  // [[y u2 z, x z], [y u2 w, x w]] with u2 != 0 has det 0 but no factorization.
  const Vars<RationalField> v(QQ);
  for (const auto& u2 : {v.z, v.w, v.z + v.w.scaled(Rational(-5, 2))}) {
    const PhiMatrix<RationalField> phi(v.y * u2 * v.z, v.x * v.z, v.y * u2 * v.w, v.x * v.w);
    EXPECT_FALSE(factorization_test(phi));
    EXPECT_TRUE(in_W(phi));
    EXPECT_TRUE(det2(phi).is_zero());
  }
}

TEST(FactorizationTest, DependentSecondColumnRejected) {
  const Vars<RationalField> v(QQ);
  const BiForm<RationalField> zero(QQ, {1, 2});
  const auto f = v.x * v.z;
  EXPECT_THROW(factorization_test(PhiMatrix<RationalField>(zero, f, zero, f.scaled(Rational(2)))), std::invalid_argument);
  EXPECT_FALSE(in_W(PhiMatrix<RationalField>(zero, f, zero, f)));
}

TEST(FactorizationTest, ImpliesDetZeroExhaustiveOverF2) {
  for (const auto& [p12, p22] : canonical_second_columns(F2)) {
    int factorizing = 0;
    for (unsigned code = 0; code < 4096; ++code) {
      const auto [p11, p21] = first_column_f2(code);
      const PhiMatrix<PrimeField> phi(p11, p12, p21, p22);
      if (const auto u = factorization_test(phi)) {
        ++factorizing;
        ASSERT_TRUE(det2(phi).is_zero());
        ASSERT_EQ(mul_right_linear(p12, *u), p11);
        ASSERT_EQ(mul_right_linear(p22, *u), p21);
      }
    }
    // one first column per u in V2*
    EXPECT_EQ(factorizing, 4);
  }
}

TEST(PhiMatrix, BidegreesEnforced) {
  const Vars<RationalField> v(QQ);
  const auto a = v.x * v.z * v.z, b = v.x * v.z;
  EXPECT_NO_THROW(PhiMatrix<RationalField>(a, b, a, b));
  EXPECT_THROW(PhiMatrix<RationalField>(b, b, a, b), std::invalid_argument);
  EXPECT_THROW(PhiMatrix<RationalField>(a, a, a, b), std::invalid_argument);
}
