#include "qm/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

namespace qm {

BiPoly::BiPoly(std::vector<std::vector<mpq_class>> grid) : grid_(std::move(grid)) { normalize(); }

void BiPoly::normalize() {
  std::size_t width = 0;
  for (auto& row : grid_) {
    for (auto& c : row) c.canonicalize();
    while (!row.empty() && row.back() == 0) row.pop_back();
    width = std::max(width, row.size());
  }
  while (!grid_.empty() && grid_.back().empty()) grid_.pop_back();
  for (auto& row : grid_) row.resize(width, mpq_class(0));
  if (static_cast<int>(grid_.size()) - 1 > kMaxDegree || static_cast<int>(width) - 1 > kMaxDegree)
    throw std::invalid_argument("BiPoly: degree exceeds " + std::to_string(kMaxDegree) + " in m or n");
}

int BiPoly::degree_n() const { return grid_.empty() ? -1 : static_cast<int>(grid_.front().size()) - 1; }

mpq_class BiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= static_cast<int>(grid_.size())) return 0;
  const auto& row = grid_[i];
  return j < static_cast<int>(row.size()) ? row[j] : mpq_class(0);
}

BiPoly BiPoly::constant(const mpq_class& c) { return BiPoly({{c}}); }
BiPoly BiPoly::m() { return BiPoly({{0}, {1}}); }
BiPoly BiPoly::n() { return BiPoly({{0, 1}}); }

BiPoly BiPoly::linear(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  return BiPoly({{c, b}, {a, 0}});
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  const int dm = std::max(degree_m(), o.degree_m()), dn = std::max(degree_n(), o.degree_n());
  std::vector<std::vector<mpq_class>> g(dm + 1, std::vector<mpq_class>(dn + 1));
  for (int i = 0; i <= dm; ++i)
    for (int j = 0; j <= dn; ++j) g[i][j] = coeff(i, j) + o.coeff(i, j);
  return BiPoly(std::move(g));
}

BiPoly BiPoly::operator-() const { return scaled(-1); }
BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::scaled(const mpq_class& c) const {
  BiPoly r = *this;
  for (auto& row : r.grid_)
    for (auto& x : row) x *= c;
  r.normalize();
  return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  const int dm = degree_m() + o.degree_m(), dn = degree_n() + o.degree_n();
  std::vector<std::vector<mpq_class>> g(dm + 1, std::vector<mpq_class>(dn + 1));
  for (int i1 = 0; i1 <= degree_m(); ++i1)
    for (int j1 = 0; j1 <= degree_n(); ++j1)
      for (int i2 = 0; i2 <= o.degree_m(); ++i2)
        for (int j2 = 0; j2 <= o.degree_n(); ++j2) g[i1 + i2][j1 + j2] += grid_[i1][j1] * o.grid_[i2][j2];
  return BiPoly(std::move(g));
}

mpq_class BiPoly::evaluate(const mpq_class& m, const mpq_class& n) const {
  mpq_class total = 0, mpow = 1;
  for (const auto& row : grid_) {
    mpq_class npow = 1;
    for (const auto& c : row) {
      total += c * mpow * npow;
      npow *= n;
    }
    mpow *= m;
  }
  return total;
}

std::string BiPoly::to_string() const {
  if (is_zero()) return "0";
  struct Term {
    int i, j;
  };
  std::vector<Term> terms;
  for (int i = 0; i <= degree_m(); ++i)
    for (int j = 0; j <= degree_n(); ++j)
      if (grid_[i][j] != 0) terms.push_back({i, j});
  std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) {
    if (l.i + l.j != r.i + r.j) return l.i + l.j > r.i + r.j;
    return l.i > r.i;
  });
  std::string out;
  for (const auto& t : terms) {
    mpq_class c = grid_[t.i][t.j];
    const bool negative = c < 0;
    if (negative) c = -c;
    if (!out.empty() || negative) out += negative ? "-" : "+";
    std::string mono;
    if (t.i > 0) mono += t.i == 1 ? "m" : "m^" + std::to_string(t.i);
    if (t.j > 0) mono += t.j == 1 ? "n" : "n^" + std::to_string(t.j);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + mono;
  }
  return out;
}

void ResolutionSpec::validate() const {
  if (positions.empty()) throw std::invalid_argument("resolution: positions list is empty");
  for (std::size_t k = 0; k < positions.size(); ++k)
    if (positions[k].empty()) throw std::invalid_argument("resolution: position " + std::to_string(k) + " is empty");
}

BiPoly hilb_line(int a, int b) { return BiPoly::linear(1, 0, a + 1) * BiPoly::linear(0, 1, b + 1); }

BiPoly hilb_resolution(const ResolutionSpec& res) {
  res.validate();
  BiPoly total;
  for (std::size_t k = 0; k < res.positions.size(); ++k) {
    BiPoly term;
    for (const auto& d : res.positions[k]) term = term + hilb_line(d.a, d.b);
    total = (k % 2 == 0) ? total + term : total - term;
  }
  return total;
}

BiPoly hilb_combination(const std::vector<mpq_class>& coeffs, const std::vector<Bidegree>& twists,
                        const BiPoly& extra) {
  if (coeffs.size() != twists.size())
    throw std::invalid_argument("hilb_combination: " + std::to_string(coeffs.size()) + " coefficients for " +
                                std::to_string(twists.size()) + " twists");
  BiPoly total = extra;
  for (std::size_t i = 0; i < coeffs.size(); ++i) total = total + hilb_line(twists[i].a, twists[i].b).scaled(coeffs[i]);
  return total;
}

BiPoly twist(const BiPoly& p, int a, int b) {
  // Horner in m with coefficients that are polynomials in n, after n -> n + b.
  const BiPoly shift_m = BiPoly::linear(1, 0, a), shift_n = BiPoly::linear(0, 1, b);
  BiPoly result;
  for (int i = p.degree_m(); i >= 0; --i) {
    BiPoly row;
    for (int j = p.degree_n(); j >= 0; --j) row = row * shift_n + BiPoly::constant(p.coeff(i, j));
    result = result * shift_m + row;
  }
  return result;
}

mpq_class euler_char(const BiPoly& p) { return p.coeff(0, 0); }

mpq_class genus(const BiPoly& p) { return 1 - euler_char(p); }

bool is_curve_structure_sheaf(const ResolutionSpec& res) {
  return res.positions.size() == 2 && res.positions[0].size() == 1 && res.positions[0][0] == Bidegree{0, 0} &&
         res.positions[1].size() == 1 && res.positions[1][0].a <= 0 && res.positions[1][0].b <= 0 &&
         !(res.positions[1][0] == Bidegree{0, 0});
}

namespace resolutions {
ResolutionSpec stratum_m0() { return {{{{0, 0}, {0, 0}}, {{-1, -2}, {-1, -1}}}}; }
ResolutionSpec stratum_m1() { return {{{{-1, -1}, {0, 1}}, {{-2, -1}, {-1, -2}}}}; }
ResolutionSpec rank_one_r(int r) { return {{{{0, 0}}, {{-1, -r}}}}; }
ResolutionSpec rank_one_s(int s) { return {{{{0, 0}}, {{-s, -1}}}}; }
ResolutionSpec curve_structure_sheaf(int a, int b) { return {{{{0, 0}}, {{-a, -b}}}}; }
}  // namespace resolutions

}  // namespace qm
