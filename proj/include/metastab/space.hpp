#pragma once

#include <cstddef>
#include <string>

#include "metastab/linalg.hpp"
#include "metastab/modulus.hpp"
#include "metastab/rat.hpp"

namespace metastab {

enum class NormKind { euclidean, ell_p };

/// Finite-dimensional normed space with a modulus of uniform convexity. The
/// euclidean space carries the standard Hilbert modulus; an ell_p space
/// carries the classical lower estimate for its modulus (see lp_space).
class NormedSpace {
 public:
  static NormedSpace euclidean(std::size_t dim);
  /// p > 1 rational. Default modulus: for p >= 2, (min(eps,2)/2)^m / m with
  /// m = ceil(p) (valid since the true modulus dominates (eps/2)^p / p and
  /// eps/2 <= 1); for 1 < p < 2, (p-1) * min(eps,2)^2 / 8. Both factor as
  /// eps * (nondecreasing), so they serve directly as the midpoint drop u.
  static NormedSpace lp(const Rat& p, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  NormKind kind() const noexcept { return kind_; }
  const Rat& p() const noexcept { return p_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  const std::string& description() const noexcept { return description_; }

  double norm(const Vec& v) const;
  double distance(const Vec& x, const Vec& y) const;

  /// Replace the modulus (e.g. a user-supplied one from the CLI).
  NormedSpace with_modulus(Modulus m) const;

 private:
  NormedSpace(std::size_t dim, NormKind kind, Rat p, Modulus m, std::string desc)
      : dim_(dim), kind_(kind), p_(std::move(p)), modulus_(std::move(m)),
        description_(std::move(desc)) {}

  std::size_t dim_;
  NormKind kind_;
  Rat p_;  // exponent; 2 for euclidean
  Modulus modulus_;
  std::string description_;
};

}  // namespace metastab
