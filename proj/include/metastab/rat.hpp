#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>

#include "metastab/errors.hpp"
#include "metastab/nat.hpp"

namespace metastab {

/// Exact rational: integer numerator, positive denominator, always in lowest
/// terms (canonicalized on construction and after every operation).
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int v) : v_(v) {}
  Rat(long num, long den) : v_(num, den) {
    if (den == 0) throw precondition_error("Rat: zero denominator");
    v_.canonicalize();
  }
  Rat(const Nat& n) : v_(n.raw()) {}
  Rat(const Nat& num, const Nat& den) : v_(num.raw(), den.raw()) {
    if (den.raw() == 0) throw precondition_error("Rat: zero denominator");
    v_.canonicalize();
  }
  /// Parses "p", "-p" or "p/q".
  explicit Rat(const std::string& text) : v_(parse(text)) {}
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  const mpq_class& raw() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_positive() const { return v_ > 0; }
  bool is_negative() const { return v_ < 0; }

  std::string str() const {
    return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
  }
  double to_double() const { return v_.get_d(); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_ == 0) throw precondition_error("Rat: division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// ceil(r) as a natural; requires ceil(r) >= 0.
  static Nat ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.v_.get_num().get_mpz_t(), r.v_.get_den().get_mpz_t());
    if (q < 0) throw precondition_error("Rat: ceil of negative value as Nat");
    return Nat(std::move(q));
  }
  /// ceil(1/r) for r > 0.
  static Nat ceil_inverse(const Rat& r) {
    if (!(r > Rat(0))) throw precondition_error("Rat: ceil_inverse needs a positive value");
    return ceil(Rat(mpq_class(1 / r.v_)));
  }

 private:
  static mpq_class parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
      throw precondition_error("Rat: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw precondition_error("Rat: zero denominator in '" + text + "'");
    if (q.get_den() < 0) q = mpq_class(-q.get_num(), -q.get_den());
    q.canonicalize();
    return q;
  }

  mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace metastab
