#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "metastab/family.hpp"
#include "metastab/func_nn.hpp"
#include "metastab/nat.hpp"
#include "metastab/rat.hpp"
#include "metastab/rng.hpp"

namespace metastab {

/// x_n = (n+1)^{-d} sum_{k in [0,n]^d} T^k x, computed as the composition of
/// the d one-operator Cesaro averages (valid because the operators commute).
/// Cost O(d * n * dim^2). n above the configured average_index_cap raises
/// budget_error.
Vec ergodic_average(const OperatorFamily& fam, const Vec& x, const Nat& n);

/// Same value by the literal d-fold sum over [0,n]^d; for cross-checking the
/// separable computation on small instances.
Vec ergodic_average_direct(const OperatorFamily& fam, const Vec& x, const Nat& n);

/// Convex weights over the multi-index cube [0,q]^d, stored lexicographically
/// ((q+1)^d entries). Nonnegative, summing to 1 within 1e-12.
struct ConvexWeights {
  std::size_t d = 1;
  std::size_t q = 0;
  std::vector<double> w;

  static ConvexWeights uniform(std::size_t d, std::size_t q);
  /// All weight on one multi-index (lexicographic rank `rank`).
  static ConvexWeights point_mass(std::size_t d, std::size_t q, std::size_t rank);
  static ConvexWeights random(std::size_t d, std::size_t q, SeededRng& rng);

  std::size_t size() const;  // (q+1)^d
  void validate() const;     // throws precondition_error
};

/// z = sum_j w_j T^j x over j in [0,q]^d.
Vec convex_combination(const OperatorFamily& fam, const Vec& x, const ConvexWeights& w);

struct ResidualCheck {
  double residual;  // ||x_n - z_n||
  double bound;     // 2^d * q / (n+1)
};

/// Averaging residual of a convex combination: with z = convex_combination,
/// checks ||x_n - z_n|| <= 2^d q/(n+1) + 1e-9 (invariant_error on violation —
/// that would falsify a proved inequality). Requires ||x|| <= 1 and n >= q.
ResidualCheck combination_residual(const OperatorFamily& fam, const Vec& x,
                                   const ConvexWeights& w, const Nat& n);

/// The uniform-convexity midpoint inequality ||(x+y)/2|| <= ||y|| - u(eps)
/// with 1e-12 slack. Requires ||x|| <= ||y|| <= 1 and ||x-y|| >= eps > 0
/// (checked with 1e-12 slack).
bool midpoint_norm_check(const NormedSpace& space, const std::function<Rat(const Rat&)>& u,
                         const Vec& x, const Vec& y, const Rat& eps);

/// Memoized trajectory n -> x_n. For d = 1 the averages advance by the
/// running-sum recurrence (O(dim^2) per step); otherwise each queried index
/// is computed by the composed form.
class AverageCache {
 public:
  AverageCache(const OperatorFamily& fam, Vec x);
  const Vec& at(std::uint64_t n);
  const OperatorFamily& family() const noexcept { return *fam_; }

 private:
  const OperatorFamily* fam_;
  Vec x_;
  std::map<std::uint64_t, Vec> memo_;
  // d = 1 incremental state: power_ = T^upto_ x, sum_ = sum_{k<=upto_} T^k x
  Vec power_, sum_;
  std::uint64_t upto_ = 0;
};

/// max ||x_i - x_j|| over i, j in [from, to].
double window_oscillation(AverageCache& cache, std::uint64_t from, std::uint64_t to);

/// Least N <= n_cap whose window [N, N+g(N)] has oscillation <= eps + 1e-12,
/// or nullopt when no index up to n_cap qualifies (the guaranteed witness may
/// exceed n_cap). Requires ||x|| <= 1 + 1e-12.
std::optional<Nat> metastability_witness(const OperatorFamily& fam, const Vec& x,
                                         const Rat& eps, const FuncNN& g, const Nat& n_cap);

}  // namespace metastab
