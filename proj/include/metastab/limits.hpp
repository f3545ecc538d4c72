#pragma once

#include <cstdint>

namespace metastab {

/// Thread-local evaluation limits. Exact big-integer results whose size would
/// pass digit_budget decimal digits abort with a recoverable budget_error;
/// func_eval_budget caps evaluation counts per FuncNN (majorant scans over a
/// non-monotone function cost as many evaluations as the scanned value is
/// large); average_index_cap bounds the index of an ergodic average.
struct RuntimeLimits {
  std::uint64_t digit_budget = 1'000'000;       // decimal digits
  std::uint64_t func_eval_budget = 20'000'000;  // evaluations per FuncNN
  std::uint64_t average_index_cap = 100'000;    // max n in an ergodic average

  std::uint64_t digit_budget_bits() const {
    // ceil(digits * log2(10)); 3322/1000 over-approximates log2(10) slightly
    return digit_budget * 3322 / 1000 + 2;
  }

  static RuntimeLimits& current();
};

/// RAII override of the thread-local limits.
class ScopedLimits {
 public:
  explicit ScopedLimits(const RuntimeLimits& next)
      : saved_(RuntimeLimits::current()) {
    RuntimeLimits::current() = next;
  }
  ~ScopedLimits() { RuntimeLimits::current() = saved_; }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  RuntimeLimits saved_;
};

}  // namespace metastab
