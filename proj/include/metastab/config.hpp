#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "metastab/family.hpp"
#include "metastab/gexpr.hpp"
#include "metastab/modulus.hpp"
#include "metastab/rat.hpp"
#include "metastab/rates.hpp"
#include "metastab/space.hpp"

namespace metastab {

/// Space descriptor: "l2:DIM" or "lp:P:DIM" with rational P > 1.
struct SpaceSpec {
  NormKind kind = NormKind::euclidean;
  Rat p = Rat(2);
  std::size_t dim = 2;

  static SpaceSpec parse(const std::string& text);
  std::string str() const;
};

/// Modulus selector: the space's own analytic modulus, the Hilbert modulus,
/// or a user-supplied file (see load_modulus_file for the format).
struct ModulusSpec {
  enum class Kind { space_default, hilbert, file };
  Kind kind = Kind::space_default;
  std::string path;

  static ModulusSpec parse(const std::string& text);
  std::string str() const;
};

/// JSON modulus file:
///   {"form": "power", "coeff": "1/8", "exponent": 2,
///    "nondecreasing_factorization": true}            -> coeff * min(eps,2)^exponent
///   {"form": "table", "entries": [["1","1/8"], ["2","1/2"]], ...}
///                                                     -> floor lookup by eps
/// Validation is the documented sanity check only: values in (0,1], power
/// coeff*2^exponent <= 1, table entries strictly increasing in eps with
/// nondecreasing values.
Modulus load_modulus_file(const std::string& path);

/// One experiment: everything a command needs, echoable into a report.
struct ExperimentConfig {
  SpaceSpec space;
  ModulusSpec modulus;
  std::string recipe = "identity";
  std::string x_spec = "e1";
  Rat eps = Rat(1);
  std::string g_text = "const 0";
  std::size_t d = 0;  // 0 = let the recipe decide
  Nat n_cap = Nat(1000);
  std::uint64_t digit_budget = 1'000'000;
  std::uint64_t seed = 1;
  rates::EvalMode mode = rates::EvalMode::exact;
  std::optional<Rat> u_override;  // constant u; bypasses the modulus
  Rat norm_bound = Rat(1);        // b: requires ||x|| <= b
  std::uint64_t trials = 100;
  std::string suite = "all";
  std::string out_path;

  void validate() const;  // throws config_error
};

NormedSpace make_space(const ExperimentConfig& cfg);
FuncNN make_g(const ExperimentConfig& cfg);
std::function<Rat(const Rat&)> make_u(const ExperimentConfig& cfg, const NormedSpace& space);

/// x descriptor: "e<K>" (K-th basis vector, 1-based), "ones" (normalized
/// all-ones), "rand" (seeded unit vector), or comma-separated coordinates.
Vec make_x(const ExperimentConfig& cfg, const NormedSpace& space);

/// Parses a constant rational u ("2", "1/2", or "const 1/2").
Rat parse_u_override(const std::string& text);

}  // namespace metastab
