#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "metastab/errors.hpp"
#include "metastab/limits.hpp"

namespace metastab {

/// Arbitrary-precision natural number. Closed under +, *, max and
/// ceiling-division; never negative. Every growing operation pre-checks the
/// result size against the thread-local digit budget and raises a recoverable
/// budget_error (carrying a log2 upper estimate of the result) instead of
/// materializing an oversized value.
class Nat {
 public:
  Nat() : v_(0) {}
  Nat(int v) : v_(v) {
    if (v < 0) throw precondition_error("Nat: negative value");
  }
  Nat(unsigned int v) : v_(static_cast<unsigned long>(v)) {}
  Nat(unsigned long v) : v_(v) {}
  Nat(unsigned long long v) : v_(static_cast<unsigned long>(v)) {
    // mpz_class has no ull constructor; unsigned long is 64-bit on this target
    static_assert(sizeof(unsigned long) == 8);
  }
  explicit Nat(const std::string& decimal) : v_(decimal, 10) {
    if (v_ < 0) throw precondition_error("Nat: negative literal " + decimal);
  }
  explicit Nat(mpz_class v) : v_(std::move(v)) {
    if (v_ < 0) throw precondition_error("Nat: negative value");
  }

  const mpz_class& raw() const noexcept { return v_; }

  /// Bits in the binary representation; 0 for the value 0.
  std::size_t bits() const { return v_ == 0 ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2); }

  bool fits_u64() const { return mpz_sizeinbase(v_.get_mpz_t(), 2) <= 64 || v_ == 0; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw precondition_error("Nat: value does not fit in 64 bits");
    std::uint64_t lo = mpz_getlimbn(v_.get_mpz_t(), 0);
    return v_ == 0 ? 0 : lo;
  }

  std::string str() const { return v_.get_str(); }

  friend Nat operator+(const Nat& a, const Nat& b) {
    check_growth(std::max(a.bits(), b.bits()) + 1);
    return Nat(mpz_class(a.v_ + b.v_));
  }
  friend Nat operator*(const Nat& a, const Nat& b) {
    check_growth(a.bits() + b.bits());
    return Nat(mpz_class(a.v_ * b.v_));
  }
  /// a - b; throws precondition_error if b > a.
  friend Nat operator-(const Nat& a, const Nat& b) {
    if (b.v_ > a.v_) throw precondition_error("Nat: subtraction would go negative");
    return Nat(mpz_class(a.v_ - b.v_));
  }
  Nat& operator+=(const Nat& b) { return *this = *this + b; }
  Nat& operator*=(const Nat& b) { return *this = *this * b; }
  Nat& operator++() {
    v_ += 1;
    return *this;
  }

  static Nat pow(const Nat& base, std::uint64_t exp) {
    if (exp == 0) return Nat(1ul);
    if (base.bits() > 0 && exp > RuntimeLimits::current().digit_budget_bits() / base.bits())
      throw budget_error("digit budget exceeded",
                         static_cast<double>(base.bits()) * static_cast<double>(exp));
    check_growth(base.bits() * exp);
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.v_.get_mpz_t(), exp);
    return Nat(std::move(r));
  }
  static Nat pow2(std::uint64_t e) {
    check_growth(e + 1);
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return Nat(std::move(r));
  }
  /// ceil(num / den); den > 0.
  static Nat ceil_div(const Nat& num, const Nat& den) {
    if (den.v_ == 0) throw precondition_error("Nat: division by zero");
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num.v_.get_mpz_t(), den.v_.get_mpz_t());
    return Nat(std::move(q));
  }
  /// Integer square root (floor).
  static Nat isqrt(const Nat& x) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.v_.get_mpz_t());
    return Nat(std::move(r));
  }

  friend bool operator==(const Nat& a, const Nat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

 private:
  static void check_growth(std::size_t bits_estimate) {
    if (bits_estimate > RuntimeLimits::current().digit_budget_bits())
      throw budget_error("digit budget exceeded", static_cast<double>(bits_estimate));
  }

  mpz_class v_;
};

inline Nat max(const Nat& a, const Nat& b) { return a < b ? b : a; }

/// Smallest integer L >= 0 with v <= 2^L.
inline std::uint64_t ceil_log2(const Nat& v) {
  if (v <= Nat(1ul)) return 0;
  Nat pred = v - Nat(1ul);
  return pred.bits();
}

}  // namespace metastab
