#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "metastab/bound_value.hpp"
#include "metastab/config.hpp"
#include "metastab/nat.hpp"

namespace metastab {

/// Outcome of one named property over many instances.
struct CheckResult {
  std::string name;
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  nlohmann::json first_failure;  // serialized failing instance, null if none

  bool ok() const noexcept { return fail == 0; }
};

/// Self-contained record of one command run: echoes every input needed to
/// reproduce it, plus the outputs.
struct RunReport {
  std::string command;
  nlohmann::json inputs;
  std::optional<BoundValue> rate;
  std::optional<Nat> witness;
  bool witness_searched = false;
  std::string verdict;  // cmd_metastable: CONFIRMED | CONSISTENT | FAIL
  std::vector<CheckResult> checks;
  std::string note;
  double wall_seconds = 0.0;
  bool ok = true;

  nlohmann::json to_json() const;
};

nlohmann::json echo_config(const ExperimentConfig& cfg);

/// Applies cfg's runtime limits for the duration of a command.
RuntimeLimits limits_from(const ExperimentConfig& cfg);

}  // namespace metastab
