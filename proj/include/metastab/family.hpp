#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metastab/linalg.hpp"
#include "metastab/rng.hpp"
#include "metastab/space.hpp"

namespace metastab {

struct LinearOperator {
  Mat matrix;
  std::string provenance;  // construction recipe, echoed in reports
};

/// d pairwise-commuting linear contractions on a shared space. Construction
/// validates contractivity of every operator (power iteration for the
/// euclidean norm, seeded unit-vector sampling plus basis vectors for ell_p)
/// and pairwise commutativity (max-abs entry of the commutator <= 1e-10),
/// raising construction_error on violation.
class OperatorFamily {
 public:
  OperatorFamily(NormedSpace space, std::vector<LinearOperator> ops);

  const NormedSpace& space() const noexcept { return space_; }
  std::size_t d() const noexcept { return ops_.size(); }
  const LinearOperator& op(std::size_t l) const { return ops_.at(l); }

  /// T^j x = T_1^{j_1} ... T_d^{j_d} x; exponents.size() must equal d.
  Vec apply_multi(const std::vector<std::uint64_t>& exponents, const Vec& x) const;

 private:
  NormedSpace space_;
  std::vector<LinearOperator> ops_;
};

/// Estimated largest singular value (euclidean operator norm): power
/// iteration on A^T A, 200 iterations, tolerance 1e-10.
double operator_norm_euclidean(const Mat& m, SeededRng rng);

/// Builds a family from a textual recipe. All recipes commute by construction
/// and are analytically contractive; the OperatorFamily constructor re-checks
/// both numerically.
///
///   identity              d copies of the identity
///   negid                 d copies of -identity
///   diag:e,..;e,..        one diagonal operator per ';' group, |entry| <= 1
///   rot:R1,..,Rd          block-diagonal planar rotations by pi*R_l
///                         (R rational; non-quarter-turn angles require the
///                         euclidean norm, as rotations do not contract ell_p)
///   poly:c,..;c,..        p_l(A) for one seeded random contraction A; each
///                         group lists the coefficients of p_l, sum of
///                         absolute values <= 1
///   permdecay:L           T_l = (L*P)^l for the cyclic shift P, 0 < L <= 1
///
/// requested_d = 0 lets the recipe decide (groups/arguments define d for
/// diag/rot/poly; identity/negid/permdecay default to 1). A nonzero
/// requested_d must match a recipe-determined d.
OperatorFamily build_family(const NormedSpace& space, const std::string& recipe,
                            std::size_t requested_d, SeededRng rng);

}  // namespace metastab
