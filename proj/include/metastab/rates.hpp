#pragma once

#include <functional>
#include <utility>

#include "metastab/bound_value.hpp"
#include "metastab/func_nn.hpp"
#include "metastab/modulus.hpp"
#include "metastab/nat.hpp"
#include "metastab/rat.hpp"

namespace metastab::rates {

/// exact: every value is materialized, aborting with budget_error past the
/// digit budget. log2_upper: evaluate exactly below a switch threshold, then
/// propagate sound log2 upper bounds; the result is always log2-tagged.
enum class EvalMode { exact, log2_upper };

/// max_{i<=n} g(i).
Nat monotone_majorant(const FuncNN& g, const Nat& n);

/// n -> n + g(n): maps an index to the end of its oscillation window.
FuncNN window_end(const FuncNN& g);

/// k-fold composition f(f(...f(start))); k = 0 gives start.
Nat iterate_compose(const FuncNN& f, const Nat& k, const Nat& start);

/// (m+n)(m+n+1)/2 + n, the standard pairing bijection N^2 -> N.
Nat cantor_pair(const Nat& m, const Nat& n);
std::pair<Nat, Nat> cantor_unpair(const Nat& s);

/// 2s^2 + 2s: bounds cantor_pair(m, n) whenever m, n <= s.
Nat pair_bound(const Nat& s);

/// (g^M)^(ceil(1/eps))(0): the witness bound for the single-sequence
/// arithmetical greatest-lower-bound principle.
Nat glb_bound(const Rat& eps, const FuncNN& g);

/// ((pair_bound . g)^M)^(ceil(1/eps))(0): the flat-index witness bound for
/// the double-sequence principle.
BoundValue glb2_bound(const Rat& eps, const FuncNN& g, EvalMode mode = EvalMode::exact);

/// Least N such that a(N) <= a(s) + eps for every s <= g(N). The sequence must
/// take values in [0,1]; the returned N is checked against glb_bound(eps, g)
/// whenever that bound fits the digit budget (violation raises invariant_error).
Nat glb_witness(const std::function<Rat(const Nat&)>& a, const Rat& eps, const FuncNN& g);

struct Glb2Witness {
  Nat flat;  // least flat index N in the paired enumeration
  Nat p, q;  // cantor_unpair(flat); p, q <= flat
};

/// Double-sequence witness on the flattened sequence b_s := a(cantor_unpair(s)):
/// least flat N with b(N) <= b(s) + eps for all s <= pair_bound(g(N)). Then
/// a(p,q) <= a(i,j) + eps for all i, j <= g(N). Requires the exact bound.
Glb2Witness glb2_witness(const std::function<Rat(const Nat&, const Nat&)>& a, const Rat& eps,
                         const FuncNN& g);

/// max(Q, ceil(2^d * Q / delta)): past this index, every d-dimensional
/// ergodic average sits within delta of the norm of any convex combination of
/// the first Q iterates.
Nat residual_threshold(const Nat& d, const Rat& delta, const Nat& q);

/// n -> window_end(g)(residual_threshold(d, gamma/2, n)): the window probed by
/// the double-sequence search when the candidate combination size is n.
FuncNN window_after_threshold(const Rat& gamma, const FuncNN& g, const Nat& d);

/// residual_threshold(d, gamma/2, glb2_bound(gamma/2, window_after_threshold)):
/// bound on an N whose window [N, N+g(N)] has all average norms within gamma
/// of the midpoint norm of any pair in it.
BoundValue midpoint_norm_rate(const Nat& d, const Rat& gamma, const FuncNN& g,
                              EvalMode mode = EvalMode::exact);

/// midpoint_norm_rate(d, u(eps)/2, g): rate of metastability for the ergodic
/// averages of d commuting contractions, valid for any starting point in the
/// unit ball.
BoundValue metastability_rate(const std::function<Rat(const Rat&)>& u, const Nat& d,
                              const Rat& eps, const FuncNN& g,
                              EvalMode mode = EvalMode::exact);

/// metastability_rate at eps/b: valid for starting points of norm <= b.
BoundValue metastability_rate_scaled(const std::function<Rat(const Rat&)>& u, const Nat& d,
                                     const Rat& b, const Rat& eps, const FuncNN& g,
                                     EvalMode mode = EvalMode::exact);

struct BoundaryCount {
  Nat count;  // (n+1+Q)^d - (n+1-Q)^d: multi-indices affected by a Q-shift
  Nat bound;  // 2^d (n+1)^(d-1) Q
};

/// Exact boundary count and its binomial bound; requires Q <= n, d >= 1, and
/// raises invariant_error if count exceeds bound (it never does).
BoundaryCount boundary_count(const Nat& n, const Nat& q, const Nat& d);

}  // namespace metastab::rates
