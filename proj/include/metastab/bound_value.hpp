#pragma once

#include <optional>
#include <string>
#include <utility>

#include "metastab/nat.hpp"
#include "metastab/rat.hpp"

namespace metastab {

/// A bound that is either an exact natural or a sound log2 over-approximation:
/// in log2-upper mode the true value V satisfies V <= 2^log2_upper. Makes
/// astronomically large rate values reportable.
class BoundValue {
 public:
  enum class Mode { exact, log2_upper };

  static BoundValue exact(Nat v) { return BoundValue(Mode::exact, std::move(v), {}); }
  static BoundValue log2_upper(Rat l) {
    if (l.is_negative()) throw precondition_error("BoundValue: negative log2 bound");
    return BoundValue(Mode::log2_upper, {}, std::move(l));
  }

  Mode mode() const noexcept { return mode_; }
  bool is_exact() const noexcept { return mode_ == Mode::exact; }
  const Nat& exact_value() const {
    if (!exact_) throw precondition_error("BoundValue: not in exact mode");
    return *exact_;
  }
  const Rat& log2_bound() const {
    if (!log2_) throw precondition_error("BoundValue: not in log2-upper mode");
    return *log2_;
  }

  std::string str() const {
    return is_exact() ? exact_->str() : "<= 2^(" + log2_->str() + ")";
  }

 private:
  BoundValue(Mode m, std::optional<Nat> e, std::optional<Rat> l)
      : mode_(m), exact_(std::move(e)), log2_(std::move(l)) {}

  Mode mode_;
  std::optional<Nat> exact_;
  std::optional<Rat> log2_;
};

/// Decides v <= 2^l for rational l = p/q >= 0 (equivalent to v^q <= 2^p).
/// Only touches exact powers inside the one-bit ambiguity band, so huge l is
/// cheap as long as v is materialized.
inline bool le_pow2(const Nat& v, const Rat& l) {
  if (l.is_negative()) return false;
  if (v <= Nat(1)) return true;  // 2^l >= 1
  const Nat bits(static_cast<unsigned long long>(v.bits()));
  // 2^(bits-1) <= v < 2^bits
  if (Rat(bits) <= l) return true;
  if (l < Rat(bits - Nat(1))) return false;
  // one-bit ambiguity band: decide exactly via v^q <= 2^p
  Nat p(mpz_class(l.numerator()));
  Nat q(mpz_class(l.denominator()));
  if (!p.fits_u64() || !q.fits_u64())
    throw budget_error("le_pow2: exponent too large to decide exactly", l.to_double());
  return Nat::pow(v, q.to_u64()) <= Nat::pow2(p.to_u64());
}

/// Decides 2^l <= v for rational l >= 0; the dual of le_pow2 (they differ only
/// at exact powers of two, where both hold).
inline bool pow2_le(const Rat& l, const Nat& v) {
  if (v == Nat(0)) return false;  // 2^l >= 1 > 0
  if (l.is_negative()) throw precondition_error("pow2_le: negative log2 bound");
  const Nat bits(static_cast<unsigned long long>(v.bits()));
  // 2^(bits-1) <= v < 2^bits
  if (l <= Rat(bits - Nat(1))) return true;
  if (Rat(bits) <= l) return false;
  Nat p(mpz_class(l.numerator()));
  Nat q(mpz_class(l.denominator()));
  if (!p.fits_u64() || !q.fits_u64())
    throw budget_error("pow2_le: exponent too large to decide exactly", l.to_double());
  return Nat::pow2(p.to_u64()) <= Nat::pow(v, q.to_u64());
}

}  // namespace metastab
