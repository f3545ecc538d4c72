#include "metastab/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "metastab/errors.hpp"
#include "metastab/limits.hpp"

namespace metastab {

namespace {

std::uint64_t checked_index(const Nat& n) {
  const std::uint64_t cap = RuntimeLimits::current().average_index_cap;
  if (!n.fits_u64() || n.to_u64() > cap)
    throw budget_error("average index " + n.str() + " exceeds cap " + std::to_string(cap),
                       static_cast<double>(n.bits()));
  return n.to_u64();
}

// sum_{k=0..n} T^k y / (n+1)
Vec cesaro_one(const Mat& t, const Vec& y, std::uint64_t n) {
  Vec acc = y;
  Vec cur = y;
  for (std::uint64_t k = 1; k <= n; ++k) {
    cur = matvec(t, cur);
    acc = add(acc, cur);
  }
  return scale(acc, 1.0 / static_cast<double>(n + 1));
}

bool advance_odometer(std::vector<std::uint64_t>& idx, std::uint64_t top) {
  for (std::size_t l = idx.size(); l-- > 0;) {
    if (idx[l] < top) {
      ++idx[l];
      for (std::size_t m = l + 1; m < idx.size(); ++m) idx[m] = 0;
      return true;
    }
  }
  return false;
}

}  // namespace

Vec ergodic_average(const OperatorFamily& fam, const Vec& x, const Nat& n) {
  if (x.size() != fam.space().dim()) throw precondition_error("ergodic_average: dimension");
  std::uint64_t nu = checked_index(n);
  Vec y = x;
  for (std::size_t l = 0; l < fam.d(); ++l) y = cesaro_one(fam.op(l).matrix, y, nu);
  return y;
}

Vec ergodic_average_direct(const OperatorFamily& fam, const Vec& x, const Nat& n) {
  if (x.size() != fam.space().dim()) throw precondition_error("ergodic_average: dimension");
  std::uint64_t nu = checked_index(n);
  Vec total(x.size(), 0.0);
  std::vector<std::uint64_t> idx(fam.d(), 0);
  do {
    total = add(total, fam.apply_multi(idx, x));
  } while (advance_odometer(idx, nu));
  double cells = std::pow(static_cast<double>(nu + 1), static_cast<double>(fam.d()));
  return scale(total, 1.0 / cells);
}

std::size_t ConvexWeights::size() const {
  std::size_t s = 1;
  for (std::size_t l = 0; l < d; ++l) s *= q + 1;
  return s;
}

void ConvexWeights::validate() const {
  if (d == 0) throw precondition_error("weights: d must be >= 1");
  if (w.size() != size())
    throw precondition_error("weights: expected " + std::to_string(size()) + " entries");
  double sum = 0.0;
  for (double c : w) {
    if (!(c >= 0.0)) throw precondition_error("weights: negative or NaN entry");
    sum += c;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw precondition_error("weights: sum " + std::to_string(sum) + " != 1");
}

ConvexWeights ConvexWeights::uniform(std::size_t d, std::size_t q) {
  ConvexWeights w{d, q, {}};
  w.w.assign(w.size(), 1.0 / static_cast<double>(w.size()));
  return w;
}

ConvexWeights ConvexWeights::point_mass(std::size_t d, std::size_t q, std::size_t rank) {
  ConvexWeights w{d, q, {}};
  w.w.assign(w.size(), 0.0);
  w.w.at(rank) = 1.0;
  return w;
}

ConvexWeights ConvexWeights::random(std::size_t d, std::size_t q, SeededRng& rng) {
  ConvexWeights w{d, q, {}};
  w.w.resize(w.size());
  double sum = 0.0;
  for (auto& c : w.w) {
    c = rng.uniform(0.0, 1.0);
    sum += c;
  }
  // normalize exactly enough for the 1e-12 sum contract
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.w.size(); ++i) {
    w.w[i] /= sum;
    acc += w.w[i];
  }
  w.w.back() = 1.0 - acc;
  return w;
}

Vec convex_combination(const OperatorFamily& fam, const Vec& x, const ConvexWeights& w) {
  if (w.d != fam.d()) throw precondition_error("weights: d mismatch with family");
  w.validate();
  Vec total(x.size(), 0.0);
  std::vector<std::uint64_t> idx(w.d, 0);
  std::size_t rank = 0;
  do {
    if (w.w[rank] != 0.0) total = add(total, scale(fam.apply_multi(idx, x), w.w[rank]));
    ++rank;
  } while (advance_odometer(idx, w.q));
  return total;
}

ResidualCheck combination_residual(const OperatorFamily& fam, const Vec& x,
                                   const ConvexWeights& w, const Nat& n) {
  const NormedSpace& space = fam.space();
  if (space.norm(x) > 1.0 + 1e-12)
    throw precondition_error("combination_residual: ||x|| must be <= 1");
  if (n < Nat(static_cast<unsigned long>(w.q)))
    throw precondition_error("combination_residual: requires n >= q");
  Vec xn = ergodic_average(fam, x, n);
  Vec z = convex_combination(fam, x, w);
  Vec zn = ergodic_average(fam, z, n);
  double residual = space.distance(xn, zn);
  double bound = std::ldexp(static_cast<double>(w.q), static_cast<int>(fam.d())) /
                 (static_cast<double>(n.to_u64()) + 1.0);
  if (residual > bound + 1e-9)
    throw invariant_error("combination residual " + std::to_string(residual) +
                          " exceeds bound " + std::to_string(bound));
  return {residual, bound};
}

bool midpoint_norm_check(const NormedSpace& space, const std::function<Rat(const Rat&)>& u,
                         const Vec& x, const Vec& y, const Rat& eps) {
  if (!eps.is_positive()) throw precondition_error("midpoint check: eps must be positive");
  double nx = space.norm(x), ny = space.norm(y);
  if (nx > ny + 1e-12 || ny > 1.0 + 1e-12)
    throw precondition_error("midpoint check: requires ||x|| <= ||y|| <= 1");
  if (space.distance(x, y) < eps.to_double() - 1e-12)
    throw precondition_error("midpoint check: requires ||x - y|| >= eps");
  double mid = space.norm(scale(add(x, y), 0.5));
  return mid <= ny - u(eps).to_double() + 1e-12;
}

AverageCache::AverageCache(const OperatorFamily& fam, Vec x)
    : fam_(&fam), x_(std::move(x)), power_(x_), sum_(x_) {}

const Vec& AverageCache::at(std::uint64_t n) {
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  checked_index(Nat(n));
  if (fam_->d() == 1) {
    // every advanced index is memoized, so queries below the frontier hit
    // the memo instead of reading a stale running sum
    memo_.emplace(0, x_);
    while (upto_ < n) {
      power_ = matvec(fam_->op(0).matrix, power_);
      sum_ = add(sum_, power_);
      ++upto_;
      memo_.emplace(upto_, scale(sum_, 1.0 / (static_cast<double>(upto_) + 1.0)));
    }
    return memo_.at(n);
  }
  return memo_.emplace(n, ergodic_average(*fam_, x_, Nat(n))).first->second;
}

double window_oscillation(AverageCache& cache, std::uint64_t from, std::uint64_t to) {
  const NormedSpace& space = cache.family().space();
  double osc = 0.0;
  for (std::uint64_t i = from; i <= to; ++i)
    for (std::uint64_t j = i + 1; j <= to; ++j)
      osc = std::max(osc, space.distance(cache.at(i), cache.at(j)));
  return osc;
}

std::optional<Nat> metastability_witness(const OperatorFamily& fam, const Vec& x,
                                         const Rat& eps, const FuncNN& g, const Nat& n_cap) {
  if (fam.space().norm(x) > 1.0 + 1e-12)
    throw precondition_error("metastability_witness: ||x|| must be <= 1");
  if (!eps.is_positive()) throw precondition_error("metastability_witness: eps > 0");
  std::uint64_t cap = checked_index(n_cap);
  AverageCache cache(fam, x);
  const double tol = eps.to_double() + 1e-12;
  for (std::uint64_t n = 0; n <= cap; ++n) {
    std::uint64_t end = checked_index(Nat(n) + g(Nat(n)));
    if (window_oscillation(cache, n, end) <= tol) return Nat(n);
  }
  return std::nullopt;
}

}  // namespace metastab
