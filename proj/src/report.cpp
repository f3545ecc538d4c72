#include "metastab/report.hpp"

namespace metastab {

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["rng"] = "mt19937_64";
  if (rate) {
    j["rate"]["mode"] = rate->is_exact() ? "exact" : "log2-upper";
    if (rate->is_exact())
      j["rate"]["value"] = rate->exact_value().str();
    else
      j["rate"]["log2_upper"] = rate->log2_bound().str();
  }
  if (witness_searched) j["witness"] = witness ? nlohmann::json(witness->str()) : nullptr;
  if (!verdict.empty()) j["verdict"] = verdict;
  if (!checks.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["fail"] = c.fail;
      if (!c.first_failure.is_null()) e["first_failure"] = c.first_failure;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
  }
  if (!note.empty()) j["note"] = note;
  j["wall_seconds"] = wall_seconds;
  j["ok"] = ok;
  return j;
}

nlohmann::json echo_config(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["space"] = cfg.space.str();
  j["modulus"] = cfg.modulus.str();
  j["recipe"] = cfg.recipe;
  j["x"] = cfg.x_spec;
  j["eps"] = cfg.eps.str();
  j["g"] = cfg.g_text;
  j["d"] = cfg.d;
  j["n_cap"] = cfg.n_cap.str();
  j["digit_budget"] = cfg.digit_budget;
  j["seed"] = cfg.seed;
  j["mode"] = cfg.mode == rates::EvalMode::exact ? "exact" : "log2";
  if (cfg.u_override) j["u_override"] = cfg.u_override->str();
  j["norm_bound"] = cfg.norm_bound.str();
  j["trials"] = cfg.trials;
  j["suite"] = cfg.suite;
  if (!cfg.out_path.empty()) j["out"] = cfg.out_path;
  return j;
}

RuntimeLimits limits_from(const ExperimentConfig& cfg) {
  RuntimeLimits lim = RuntimeLimits::current();
  lim.digit_budget = cfg.digit_budget;
  return lim;
}

}  // namespace metastab
