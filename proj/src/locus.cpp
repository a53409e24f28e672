#include "qm/locus.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "qm/betti.hpp"
#include "qm/linalg.hpp"

namespace qm::locus {

namespace {

// Twelve residues mod p (p <= 7) packed five bits per lane. Lane sums stay
// below 2 * 7, and adding 16 - p sets bit 4 of a lane exactly when the
// lane needs reduction.
class PackedMod {
 public:
  static constexpr int kLanes = 12;
  static constexpr int kLaneBits = 5;

  explicit PackedMod(std::uint32_t p) : p_(p) {
    for (int k = 0; k < kLanes; ++k) {
      low_ |= std::uint64_t{1} << (kLaneBits * k);
      bias_ |= std::uint64_t{16 - p} << (kLaneBits * k);
    }
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    const std::uint64_t over = ((s + bias_) >> 4) & low_;
    return s - over * p_;
  }

  static std::uint64_t pack(const Vec& v) {
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < v.size(); ++k) word |= std::uint64_t{v[k].value()} << (kLaneBits * k);
    return word;
  }

 private:
  std::uint64_t p_;
  std::uint64_t low_ = 0, bias_ = 0;
};

Vec stack(const Form& top, const Form& bottom) {
  Vec v = top.coeffs();
  v.insert(v.end(), bottom.coeffs().begin(), bottom.coeffs().end());
  return v;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// Counts zero sums over all coefficient tails: acc + sum_{i >= level} c_i D_i.
std::uint64_t count_tail(const PackedMod& mod, std::uint32_t p, const std::vector<std::uint64_t>& images,
                         std::size_t level, std::uint64_t acc) {
  std::uint64_t zeros = 0;
  const std::uint64_t step = images[level];
  if (level + 1 == images.size()) {
    for (std::uint32_t c = 0; c < p; ++c) {
      zeros += acc == 0;
      acc = mod.add(acc, step);
    }
    return zeros;
  }
  for (std::uint32_t c = 0; c < p; ++c) {
    zeros += count_tail(mod, p, images, level + 1, acc);
    acc = mod.add(acc, step);
  }
  return zeros;
}

void require_bidegree_11(const Form& f, const char* who) {
  if (!(f.bidegree() == Bidegree{1, 1})) throw std::invalid_argument(std::string(who) + ": expected a (1,1) form");
}

}  // namespace

Plane Plane::span(const Form& f, const Form& g) {
  require_bidegree_11(f, "Plane::span");
  require_bidegree_11(g, "Plane::span");
  const auto ech = linalg::rref(linalg::Matrix<Fp>{f.coeffs(), g.coeffs()});
  if (ech.pivots.size() != 2) throw std::invalid_argument("Plane::span: forms are linearly dependent");
  const PrimeField k = f.field();
  return Plane(Form(k, {1, 1}, ech.rows[0]), Form(k, {1, 1}, ech.rows[1]));
}

std::string Plane::to_string() const { return "span{" + b1_.to_string() + ", " + b2_.to_string() + "}"; }

std::string type_name(const PlaneType& t) {
  if (std::holds_alternative<SharedRight>(t)) return "shared_right";
  if (std::holds_alternative<SharedLeft>(t)) return "shared_left";
  return "generic";
}

std::vector<Plane> enumerate_planes(std::uint32_t p) {
  require_supported_prime(p);
  const PrimeField k(p);
  std::vector<Plane> planes;
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = c1 + 1; c2 < 4; ++c2) {
      // Free positions: row 1 right of c1 except c2; row 2 right of c2.
      std::vector<std::pair<int, int>> free;
      for (int j = c1 + 1; j < 4; ++j)
        if (j != c2) free.emplace_back(0, j);
      for (int j = c2 + 1; j < 4; ++j) free.emplace_back(1, j);
      const std::uint64_t total = ipow(p, static_cast<unsigned>(free.size()));
      for (std::uint64_t code = 0; code < total; ++code) {
        std::array<std::array<std::int64_t, 4>, 2> rows{};
        rows[0][c1] = 1;
        rows[1][c2] = 1;
        std::uint64_t rest = code;
        for (auto [r, j] : free) {
          rows[r][j] = static_cast<std::int64_t>(rest % p);
          rest /= p;
        }
        planes.push_back(Plane::span(Form::from_ints(k, {1, 1}, rows[0]), Form::from_ints(k, {1, 1}, rows[1])));
      }
    }
  return planes;
}

std::array<Fp, 3> pencil_quadratic(const Form& b1, const Form& b2) {
  const Fp d1 = coefficient_det(b1), d2 = coefficient_det(b2);
  const Fp mixed = coefficient_det(b1 + b2) - d1 - d2;
  return {d1, mixed, d2};
}

PlaneType classify_plane(const Plane& plane) {
  const auto [ss, st, tt] = pencil_quadratic(plane.first(), plane.second());
  const std::uint32_t p = plane.prime();
  if (!ss.is_zero() || !st.is_zero() || !tt.is_zero()) {
    int roots = tt.is_zero() ? 1 : 0;  // the point (s:t) = (0:1)
    for (std::uint32_t t = 0; t < p; ++t) {
      const Fp tv(p, t);
      if ((ss + st * tv + tt * tv * tv).is_zero()) ++roots;
    }
    return Generic{roots};
  }
  // Every element has rank one: the plane is V1* (x) v or v (x) V2*.
  const auto f1 = rank1_test(plane.first()), f2 = rank1_test(plane.second());
  if (f1->v2 == f2->v2) return SharedRight{f1->v2};
  if (f1->v1 == f2->v1) return SharedLeft{f1->v1};
  throw std::logic_error("classify_plane: rank-one plane of neither shape: " + plane.to_string());
}

std::uint64_t expected_fiber_count(const PlaneType& type, std::uint32_t p) {
  if (std::holds_alternative<SharedRight>(type)) return 1;
  if (std::holds_alternative<SharedLeft>(type)) return p + 1;
  return 0;
}

FiberSpace::FiberSpace(const Form& phi12, const Form& phi22)
    : phi12_(phi12), phi22_(phi22), p_(phi12.field().p) {
  require_bidegree_11(phi12, "FiberSpace");
  require_bidegree_11(phi22, "FiberSpace");
  require_supported_prime(p_);
  if (linalg::rank(linalg::Matrix<Fp>{phi12.coeffs(), phi22.coeffs()}) != 2)
    throw std::invalid_argument("FiberSpace: phi12 and phi22 are linearly dependent");
  const Form z = Form::z(phi12.field()), w = Form::w(phi12.field());
  k_basis_ = {stack(phi12 * z, phi22 * z), stack(phi12 * w, phi22 * w)};
  const auto ech = linalg::rref(linalg::Matrix<Fp>{k_basis_[0], k_basis_[1]});
  for (std::size_t c = 0; c < kAmbientDim; ++c) {
    if (std::find(ech.pivots.begin(), ech.pivots.end(), c) != ech.pivots.end()) continue;
    Vec e(kAmbientDim, Fp(p_, 0));
    e[c] = Fp(p_, 1);
    complement_.push_back(std::move(e));
  }
  build_images();
}

FiberSpace::FiberSpace(const Form& phi12, const Form& phi22, std::vector<Vec> complement) : FiberSpace(phi12, phi22) {
  if (complement.size() != kFiberDim) throw std::invalid_argument("FiberSpace: complement needs ten vectors");
  linalg::Matrix<Fp> all{k_basis_[0], k_basis_[1]};
  for (const auto& v : complement) {
    if (v.size() != kAmbientDim) throw std::invalid_argument("FiberSpace: complement vectors need 12 entries");
    for (const auto& x : v)
      if (x.characteristic() != p_) throw std::invalid_argument("FiberSpace: complement over a different field");
    all.push_back(v);
  }
  if (linalg::rank(all) != kAmbientDim) throw std::invalid_argument("FiberSpace: vectors do not complement K");
  complement_ = std::move(complement);
  build_images();
}

Form FiberSpace::det_of(const Vec& first_column) const {
  const PrimeField k = phi12_.field();
  Form phi11(k, {1, 2}, Vec(first_column.begin(), first_column.begin() + 6));
  Form phi21(k, {1, 2}, Vec(first_column.begin() + 6, first_column.end()));
  return det2(PhiMatrix<PrimeField>(std::move(phi11), phi12_, std::move(phi21), phi22_));
}

void FiberSpace::build_images() {
  packed_images_.clear();
  for (const auto& v : complement_) packed_images_.push_back(PackedMod::pack(det_of(v).coeffs()));
}

std::uint64_t FiberSpace::sweep_count() const {
  const PackedMod mod(p_);
  std::uint64_t zeros = 0;
  // Normalized representatives: leading nonzero coordinate equal to one.
  for (std::size_t lead = 0; lead < packed_images_.size(); ++lead) {
    const std::uint64_t acc = packed_images_[lead];
    if (lead + 1 == packed_images_.size())
      zeros += acc == 0;
    else
      zeros += count_tail(mod, p_, packed_images_, lead + 1, acc);
  }
  return zeros;
}

std::uint64_t FiberSpace::kernel_count() const {
  linalg::Matrix<Fp> images;
  for (const auto& v : complement_) images.push_back(det_of(v).coeffs());
  const std::size_t kernel_dim = kFiberDim - linalg::rank(images);
  return (ipow(p_, static_cast<unsigned>(kernel_dim)) - 1) / (p_ - 1);
}

std::uint64_t FiberSpace::raw_count() const {
  if (p_ > 3) throw std::invalid_argument("raw oracle is only feasible for p in {2, 3}");
  const std::uint64_t total = ipow(p_, kAmbientDim);
  std::uint64_t zeros = 0;
  Vec v(kAmbientDim, Fp(p_, 0));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (auto& x : v) {
      x = Fp(p_, static_cast<std::int64_t>(rest % p_));
      rest /= p_;
    }
    if (det_of(v).is_zero()) ++zeros;
  }
  return zeros;
}

std::string method_name(FiberMethod m) { return m == FiberMethod::Sweep ? "sweep" : "kernel"; }

FiberMethod default_method(std::uint32_t p) { return p <= 3 ? FiberMethod::Sweep : FiberMethod::Kernel; }

std::uint64_t fiber_detzero_count(const Plane& plane, FiberMethod method) {
  const FiberSpace fiber(plane.first(), plane.second());
  return method == FiberMethod::Sweep ? fiber.sweep_count() : fiber.kernel_count();
}

std::uint64_t raw_oracle_count(const Plane& plane) {
  return FiberSpace(plane.first(), plane.second()).raw_count();
}

mpz_class raw_identity_value(std::uint64_t fiber_count, std::uint32_t p) {
  const mpz_class pp = mpz_class(p) * p;
  return pp + mpz_class(static_cast<unsigned long>(fiber_count)) * (p - 1) * pp;
}

namespace {

FiberReport make_report(const Plane& plane, FiberMethod method, bool run_oracle) {
  FiberReport r{plane, classify_plane(plane), 0, 0, std::nullopt, false};
  r.detzero_count = fiber_detzero_count(plane, method);
  r.expected = expected_fiber_count(r.type, plane.prime());
  r.ok = r.detzero_count == r.expected;
  if (run_oracle) {
    r.raw_count = raw_oracle_count(plane);
    r.ok = r.ok && mpz_class(static_cast<unsigned long>(*r.raw_count)) ==
                       raw_identity_value(r.detzero_count, plane.prime());
  }
  return r;
}

}  // namespace

LocusSummary total_X_count(std::uint32_t p, const LocusOptions& options) {
  require_supported_prime(p);
  if (options.full_oracle && p > 3)
    throw std::invalid_argument("full oracle is only feasible for p in {2, 3}");
  const std::vector<Plane> planes = enumerate_planes(p);

  // At p = 3 the raw oracle runs on the first plane of each type; classify
  // up front so the choice does not depend on worker scheduling.
  std::vector<bool> oracle(planes.size(), options.full_oracle && p == 2);
  if (options.full_oracle && p == 3) {
    std::array<bool, 3> seen{};
    for (std::size_t i = 0; i < planes.size(); ++i) {
      const auto idx = classify_plane(planes[i]).index();
      if (!seen[idx]) oracle[i] = seen[idx] = true;
    }
  }

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(planes.size())));
  std::vector<std::optional<FiberReport>> slots(planes.size());
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < workers; ++id)
      pool.emplace_back([&, id] {
        try {
          for (std::size_t i = id; i < planes.size(); i += workers) {
            if (options.inject_failure_at == i) throw std::runtime_error("injected failure at plane " + std::to_string(i));
            slots[i] = make_report(planes[i], options.method, oracle[i]);
          }
        } catch (...) {
          errors[id] = std::current_exception();
        }
      });
  }

  for (const auto& err : errors) {
    if (!err) continue;
    std::vector<FiberReport> partial;
    for (auto& s : slots)
      if (s) partial.push_back(std::move(*s));
    std::string what = "worker failed";
    try {
      std::rethrow_exception(err);
    } catch (const std::exception& e) {
      what += ": ";
      what += e.what();
    } catch (...) {
    }
    throw WorkerFailure(what, std::move(partial));
  }

  LocusSummary s;
  s.p = p;
  s.method = options.method;
  s.plane_count = planes.size();
  s.expected_plane_count = (std::uint64_t{p} * p + 1) * (std::uint64_t{p} * p + p + 1);
  s.x_count = 0;
  s.x_expected = mpz_class(p + 1) + mpz_class(p + 1) * (p + 1);
  s.detzero_only_on_shared = true;
  bool fibers_ok = true;
  for (auto& slot : slots) {
    FiberReport& r = *slot;
    s.x_count += static_cast<unsigned long>(r.detzero_count);
    fibers_ok = fibers_ok && r.ok;
    if (const auto* g = std::get_if<Generic>(&r.type)) {
      ++s.generic;
      ++s.generic_by_rank1_lines.at(static_cast<std::size_t>(g->rank1_lines));
      if (r.detzero_count != 0) s.detzero_only_on_shared = false;
    } else if (std::holds_alternative<SharedRight>(r.type)) {
      ++s.shared_right;
    } else {
      ++s.shared_left;
    }
    s.fibers.push_back(std::move(r));
  }
  s.ok = fibers_ok && s.x_count == s.x_expected && s.detzero_only_on_shared && s.shared_right == p + 1 &&
         s.shared_left == p + 1 && s.plane_count == s.expected_plane_count;
  return s;
}

mpz_class projective_points(int n, std::uint32_t p) {
  if (n < 0) throw std::invalid_argument("projective_points: negative dimension");
  mpz_class q(p), power;
  mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n + 1));
  return (power - 1) / (q - 1);
}

ModuliPointCount moduli_point_count(const LocusSummary& summary) {
  const std::uint32_t p = summary.p;
  ModuliPointCount c;
  c.p = p;
  c.bundle = projective_points(9, p) * static_cast<unsigned long>(summary.plane_count);
  c.x_count = summary.x_count;
  c.curve_stratum = mpz_class(p + 1) * (p + 1) * projective_points(10, p);
  c.p11 = projective_points(11, p);
  c.stratified = c.bundle - c.x_count + c.curve_stratum + c.p11;
  c.poincare_eval = eval_at(poincare_moduli(), p);
  c.agree = c.stratified == c.poincare_eval;
  return c;
}

ModuliPointCount moduli_point_count(std::uint32_t p, const LocusOptions& options) {
  return moduli_point_count(total_X_count(p, options));
}

}  // namespace qm::locus
