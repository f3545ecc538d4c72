#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "metastab/ergodic.hpp"
#include "metastab/gexpr.hpp"
#include "metastab/report.hpp"
#include "metastab/rng.hpp"

namespace metastab {

/// Seeded random instances shared by cmd_verify and the acceptance tests.
namespace gen {

struct Seq1 {
  std::function<Rat(const Nat&)> eval;  // values in [0,1]
  std::string desc;
};

struct Seq2 {
  std::function<Rat(const Nat&, const Nat&)> eval;  // values in [0,1]
  std::string desc;
};

/// Sequence families: inverse decay, modular (LCG-style) rationals, periodic
/// tables, and decay/periodic mixes.
Seq1 random_seq1(SeededRng& rng);

/// Double-sequence families: joint decay, modular, periodic in m+n, product
/// decay. Decay constants are kept small so witness windows stay scannable.
Seq2 random_seq2(SeededRng& rng);

/// Counterexample function from the grammar. `small` caps affine slopes at 2
/// and forbids composition (keeps double-sequence windows tractable).
GExpr random_gexpr(SeededRng& rng, bool small = false);

struct FamilyInstance {
  NormedSpace space;
  OperatorFamily fam;
  std::string recipe;
};

/// Random commuting contraction family via the textual recipes; euclidean or
/// ell_p space, d <= d_max, dim in [2, dim_max].
FamilyInstance random_family(SeededRng& rng, std::size_t d_max, std::size_t dim_max,
                             bool euclidean_only = false);

/// Random point of the unit ball (norm <= 1) of the given space.
Vec random_unit_ball(SeededRng& rng, const NormedSpace& space);

}  // namespace gen

/// Runs the named property suite ("rates", "spaces" or "all"); each property
/// reports pass/fail counts over `trials` seeded instances (grid-based
/// properties run their full grid once). A failing instance is serialized
/// into first_failure for replay.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t trials,
                                   std::uint64_t seed);

}  // namespace metastab
