#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "metastab/nat.hpp"
#include "metastab/rat.hpp"

namespace metastab {

/// Total function N -> N with memoized evaluation and an incrementally
/// maintained running maximum for the monotone majorant. Copies share the
/// cache; all access is mutex-guarded.
///
/// A FuncNN may additionally carry a log2 *range* bound: a map L -> L',
/// nondecreasing in L, such that f(i) <= 2^L' for every i <= 2^L. It is what
/// allows the log2-upper evaluation mode to step over arguments too large to
/// materialize; functions built from the expression grammar provide one,
/// opaque evaluators normally do not.
class FuncNN {
 public:
  using Eval = std::function<Nat(const Nat&)>;
  using Log2RangeBound = std::function<Rat(const Rat&)>;

  explicit FuncNN(Eval eval, bool nondecreasing = false, Log2RangeBound log2 = {})
      : eval_(std::move(eval)),
        nondecreasing_(nondecreasing),
        log2_(std::move(log2)),
        st_(std::make_shared<State>()) {}

  Nat operator()(const Nat& n) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    return eval_locked(n);
  }

  /// max_{i<=n} f(i). Maintains a frontier (running max over [0, frontier]),
  /// so nondecreasing query sequences never rescan.
  Nat majorant(const Nat& n) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (nondecreasing_) return eval_locked(n);
    if (!st_->frontier_valid) {
      st_->frontier = 0;
      st_->frontier_max = eval_locked(Nat(0));
      st_->frontier_valid = true;
    }
    if (n >= st_->frontier) {
      for (Nat i = st_->frontier + Nat(1); i <= n; ++i) {
        Nat v = eval_locked(i);
        if (v > st_->frontier_max) st_->frontier_max = v;
      }
      st_->frontier = n;
      return st_->frontier_max;
    }
    // below the frontier: rescan the (cached) prefix
    Nat best = eval_locked(Nat(0));
    for (Nat i = 1; i <= n; ++i) {
      Nat v = eval_locked(i);
      if (v > best) best = v;
    }
    return best;
  }

  bool nondecreasing() const noexcept { return nondecreasing_; }
  bool has_log2_bound() const noexcept { return static_cast<bool>(log2_); }
  Rat log2_range_bound(const Rat& arg_log2) const {
    if (!log2_) throw budget_error("no log2 range bound available for this function", 0.0);
    return log2_(arg_log2);
  }

  std::uint64_t evaluations() const {
    std::lock_guard<std::mutex> lock(st_->mu);
    return st_->evals;
  }

 private:
  struct State {
    std::mutex mu;
    std::map<Nat, Nat> cache;
    bool frontier_valid = false;
    Nat frontier;
    Nat frontier_max;
    std::uint64_t evals = 0;
  };

  Nat eval_locked(const Nat& n) const {
    auto it = st_->cache.find(n);
    if (it != st_->cache.end()) return it->second;
    if (++st_->evals > RuntimeLimits::current().func_eval_budget)
      throw budget_error("function evaluation budget exceeded", 0.0);
    Nat v = eval_(n);
    st_->cache.emplace(n, v);
    return v;
  }

  Eval eval_;
  bool nondecreasing_;
  Log2RangeBound log2_;
  std::shared_ptr<State> st_;
};

inline FuncNN const_fn(const Nat& k) {
  std::uint64_t bits = ceil_log2(k);
  return FuncNN([k](const Nat&) { return k; }, /*nondecreasing=*/true,
                [bits](const Rat&) { return Rat(Nat(bits)); });
}

inline FuncNN identity_fn() {
  return FuncNN([](const Nat& n) { return n; }, /*nondecreasing=*/true,
                [](const Rat& l) { return l; });
}

/// n -> a*n + b
inline FuncNN affine_fn(const Nat& a, const Nat& b) {
  std::uint64_t abits = ceil_log2(a);
  std::uint64_t bbits = ceil_log2(b);
  return FuncNN([a, b](const Nat& n) { return a * n + b; }, /*nondecreasing=*/true,
                [abits, bbits](const Rat& l) {
                  // a*i + b <= 2^(abits+L) + 2^bbits <= 2^(max+1) for i <= 2^L
                  return max(Rat(Nat(abits)) + l, Rat(Nat(bbits))) + Rat(1);
                });
}

}  // namespace metastab
