#pragma once

#include <functional>
#include <string>
#include <utility>

#include "metastab/errors.hpp"
#include "metastab/rat.hpp"

namespace metastab {

/// Modulus of uniform convexity. Evaluation clamps the argument to min(eps, 2)
/// (unit-ball diameter) and checks the contract 0 < eta(eps) <= 1 on every
/// call. The factorization flag asserts eta(eps) = eps * eta'(eps) with eta'
/// nondecreasing, which licenses using eta itself in place of the midpoint
/// drop function u.
class Modulus {
 public:
  enum class Kind { hilbert, user };

  Modulus(Kind kind, std::function<Rat(const Rat&)> eval, bool nondecreasing_factorization,
          std::string description = "")
      : kind_(kind),
        eval_(std::move(eval)),
        factorization_(nondecreasing_factorization),
        description_(std::move(description)) {}

  Rat operator()(const Rat& eps) const {
    if (!eps.is_positive()) throw precondition_error("Modulus: eps must be positive");
    Rat v = eval_(min(eps, Rat(2)));
    if (!v.is_positive() || v > Rat(1))
      throw modulus_error("modulus value " + v.str() + " at eps=" + eps.str() +
                          " outside (0, 1]");
    return v;
  }

  Kind kind() const noexcept { return kind_; }
  bool has_nondecreasing_factorization() const noexcept { return factorization_; }
  const std::string& description() const noexcept { return description_; }

 private:
  Kind kind_;
  std::function<Rat(const Rat&)> eval_;
  bool factorization_;
  std::string description_;
};

/// eta(eps) = min(eps, 2)^2 / 8, the standard Hilbert-space modulus. Has the
/// nondecreasing factorization eta(eps) = eps * (eps/8).
inline Modulus hilbert_modulus() {
  return Modulus(
      Modulus::Kind::hilbert, [](const Rat& e) { return e * e / Rat(8); },
      /*nondecreasing_factorization=*/true, "hilbert");
}

/// The midpoint drop function u derived from a modulus: eta itself when the
/// nondecreasing factorization holds, otherwise u(eps) = (eps/2) * eta(eps).
inline std::function<Rat(const Rat&)> u_from_modulus(const Modulus& m) {
  if (m.has_nondecreasing_factorization())
    return [m](const Rat& eps) { return m(eps); };
  return [m](const Rat& eps) { return eps / Rat(2) * m(eps); };
}

}  // namespace metastab
