#include <gtest/gtest.h>

#include <random>

#include "qm/hilbert.hpp"

using namespace qm;

namespace {

const BiPoly m = BiPoly::m(), n = BiPoly::n();
BiPoly c(long v) { return BiPoly::constant(v); }

// Value of hilb_line(a, b) at an integer point, computed without BiPoly.
long line_value(int a, int b, long mm, long nn) { return (mm + a + 1) * (nn + b + 1); }

long resolution_value(const ResolutionSpec& r, long mm, long nn) {
  long total = 0;
  for (std::size_t k = 0; k < r.positions.size(); ++k)
    for (const auto& d : r.positions[k]) total += (k % 2 ? -1 : 1) * line_value(d.a, d.b, mm, nn);
  return total;
}

ResolutionSpec random_resolution(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 3), deg(-3, 2);
  ResolutionSpec r;
  r.positions.resize(len(rng));
  for (auto& pos : r.positions) {
    const int k = len(rng);
    for (int i = 0; i < k; ++i) pos.push_back({deg(rng), deg(rng)});
  }
  return r;
}

}  // namespace

TEST(BiPoly, RenderingAndArithmetic) {
  EXPECT_EQ(BiPoly::linear(3, 2, 2).to_string(), "3m+2n+2");
  EXPECT_EQ((m * n + m).to_string(), "mn+m");
  EXPECT_EQ(BiPoly::linear(3, 2, -1).to_string(), "3m+2n-1");
  EXPECT_EQ(BiPoly().to_string(), "0");
  EXPECT_EQ((m - m), BiPoly());
  EXPECT_EQ((m * m).degree_m(), 2);
  EXPECT_EQ(BiPoly::linear(1, 2, 3).evaluate(2, -1), mpq_class(3));
}

TEST(BiPoly, DegreeBoundEnforced) {
  const BiPoly m4 = m * m * m * m;
  EXPECT_EQ(m4.degree_m(), 4);
  EXPECT_THROW(m4 * m, std::invalid_argument);
}

TEST(Hilbert, LineBundles) {
  EXPECT_EQ(hilb_line(0, 0), (m + c(1)) * (n + c(1)));
  EXPECT_EQ(hilb_line(-1, -1), m * n);
  EXPECT_EQ(hilb_line(-2, -3), (m - c(1)) * (n - c(2)));
}

TEST(Hilbert, StrataResolutions) {
  EXPECT_EQ(hilb_resolution(resolutions::stratum_m0()).to_string(), "3m+2n+2");
  EXPECT_EQ(hilb_resolution(resolutions::stratum_m1()).to_string(), "3m+2n+2");
  EXPECT_EQ(hilb_resolution(resolutions::stratum_m0()), hilb_resolution(resolutions::stratum_m1()));
  EXPECT_EQ(hilb_resolution(resolutions::rank_one_r(3)).to_string(), "3m+n+1");
}

TEST(Hilbert, RankOneFamilies) {
  for (int r = 0; r <= 4; ++r) {
    EXPECT_EQ(hilb_resolution(resolutions::rank_one_r(r)), BiPoly::linear(r, 1, 1)) << r;
    EXPECT_EQ(hilb_resolution(resolutions::rank_one_s(r)), BiPoly::linear(1, r, 1)) << r;
  }
}

TEST(Hilbert, CurveOfBidegreeTwoThree) {
  const auto spec = resolutions::curve_structure_sheaf(2, 3);
  EXPECT_TRUE(is_curve_structure_sheaf(spec));
  const BiPoly p = hilb_resolution(spec);
  EXPECT_EQ(p.to_string(), "3m+2n-1");
  EXPECT_EQ(euler_char(p), -1);
  EXPECT_EQ(genus(p), 2);
  EXPECT_EQ(twist(p, 1, 0).to_string(), "3m+2n+2");
  EXPECT_EQ(twist(p, 0, 1).to_string(), "3m+2n+1");
  EXPECT_EQ(twist(p, 0, 0), p);
  EXPECT_FALSE(is_curve_structure_sheaf(resolutions::stratum_m0()));
}

TEST(Hilbert, ArithmeticGenusOfCurves) {
  // (a-1)(b-1) for a curve of bidegree (a, b)
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      EXPECT_EQ(genus(hilb_resolution(resolutions::curve_structure_sheaf(a, b))), (a - 1) * (b - 1));
}

TEST(Hilbert, Combination) {
  const BiPoly e1 = hilb_combination({3, -2}, {{-1, -1}, {0, 0}}, BiPoly::linear(3, 2, 2));
  EXPECT_EQ(e1, m * n + m);
  EXPECT_EQ(e1.to_string(), "mn+m");
  EXPECT_EQ(e1, hilb_line(-1, 0));
  EXPECT_EQ(hilb_combination({1}, {{-1, 0}}, BiPoly()), m * (n + c(1)));
  EXPECT_THROW(hilb_combination({1, 2}, {{0, 0}}, BiPoly()), std::invalid_argument);
}

TEST(Hilbert, EulerCharacteristic) {
  EXPECT_EQ(euler_char(BiPoly::linear(3, 2, 2)), 2);
  EXPECT_EQ(euler_char(BiPoly()), 0);
}

TEST(Hilbert, InvalidResolutions) {
  EXPECT_THROW(ResolutionSpec{}.validate(), std::invalid_argument);
  EXPECT_THROW((ResolutionSpec{{{{0, 0}}, {}}}.validate()), std::invalid_argument);
  EXPECT_THROW(hilb_resolution(ResolutionSpec{}), std::invalid_argument);
}

TEST(HilbertProperty, TwistCompatibility) {
  const BiPoly base = hilb_line(0, 0);
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) EXPECT_EQ(hilb_line(a, b), twist(base, a, b)) << a << "," << b;
}

TEST(HilbertProperty, MatchesPointwiseOracleAndIsIntegerValued) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_resolution(rng);
    const BiPoly p = hilb_resolution(r);
    for (long mm = -3; mm <= 3; ++mm)
      for (long nn = -3; nn <= 3; ++nn) {
        const mpq_class v = p.evaluate(mm, nn);
        ASSERT_EQ(v.get_den(), 1);
        ASSERT_EQ(v, resolution_value(r, mm, nn));
      }
  }
}

TEST(HilbertProperty, SplittingAdditivity) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> deg(-3, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_resolution(rng);
    const BiPoly p = hilb_resolution(r);
    const Bidegree extra{deg(rng), deg(rng)};

    // A trivial summand L -> L inserted at consecutive positions cancels.
    for (std::size_t k = 0; k < r.positions.size(); ++k) {
      ResolutionSpec s = r;
      s.positions[k].push_back(extra);
      if (k + 1 == s.positions.size()) s.positions.emplace_back();
      s.positions[k + 1].push_back(extra);
      ASSERT_EQ(hilb_resolution(s), p);
    }

    // Splitting a position's list: the two halves contribute additively.
    const auto& first = r.positions.front();
    if (first.size() >= 2) {
      ResolutionSpec head{{{first.begin(), first.begin() + 1}}}, tail{{{first.begin() + 1, first.end()}}};
      ResolutionSpec rest = r;
      rest.positions.front() = {extra};
      const BiPoly rest_p = hilb_resolution(rest) - hilb_line(extra.a, extra.b);
      ASSERT_EQ(hilb_resolution(head) + hilb_resolution(tail) + rest_p, p);
    }
  }
}
