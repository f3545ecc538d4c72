#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "metastab/commands.hpp"
#include "metastab/errors.hpp"

namespace {

using metastab::config_error;

struct Flags {
  std::string space = "l2:2";
  std::string modulus;  // empty = the space's own modulus
  std::string recipe = "identity";
  std::string x = "e1";
  std::string eps = "1";
  std::string g = "const 0";
  std::size_t d = 0;
  std::string n_cap = "1000";
  std::uint64_t digit_budget = 1'000'000;
  std::string mode = "exact";
  std::string u_override;
  std::string norm_bound = "1";
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string suite = "all";
  std::string out;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--space", f.space, "space descriptor: l2:DIM or lp:P:DIM")
      ->capture_default_str();
  sub->add_option("--modulus", f.modulus,
                  "modulus of uniform convexity: hilbert or file:PATH (default: the "
                  "space's own modulus)");
  sub->add_option("--recipe", f.recipe, "family recipe NAME:ARGS")->capture_default_str();
  sub->add_option("--x", f.x, "starting point: e<K>, ones, rand, or coordinates")
      ->capture_default_str();
  sub->add_option("--eps", f.eps, "metastability tolerance, rational NUM/DEN")
      ->capture_default_str();
  sub->add_option("--g", f.g, "counterexample function: const K | id | affine A B | "
                              "comp EXPR EXPR")
      ->capture_default_str();
  sub->add_option("--d", f.d, "number of commuting operators (0 = recipe decides)")
      ->capture_default_str();
  sub->add_option("--n-cap", f.n_cap, "largest index searched / simulated")
      ->capture_default_str();
  sub->add_option("--digit-budget", f.digit_budget, "decimal-digit cap for exact values")
      ->capture_default_str();
  sub->add_option("--mode", f.mode, "bound evaluation mode")
      ->check(CLI::IsMember({"exact", "log2"}))
      ->capture_default_str();
  sub->add_option("--u-override", f.u_override,
                  "constant midpoint-drop value u (rational), bypassing the modulus");
  sub->add_option("--norm-bound", f.norm_bound, "norm bound b with ||x|| <= b")
      ->capture_default_str();
  sub->add_option("--trials", f.trials, "instances per property (verify)")
      ->capture_default_str();
  sub->add_option("--seed", f.seed, "RNG seed, recorded in the report")
      ->capture_default_str();
  sub->add_option("--out", f.out,
                  "output path: trajectory CSV for simulate, report JSON copy otherwise");
}

metastab::Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  try {
    return metastab::Rat(text);
  } catch (const std::exception& e) {
    throw config_error(flag + " '" + text + "': " + e.what());
  }
}

metastab::ExperimentConfig to_config(const Flags& f) {
  metastab::ExperimentConfig cfg;
  cfg.space = metastab::SpaceSpec::parse(f.space);
  if (!f.modulus.empty()) cfg.modulus = metastab::ModulusSpec::parse(f.modulus);
  cfg.recipe = f.recipe;
  cfg.x_spec = f.x;
  cfg.eps = parse_rat_flag(f.eps, "--eps");
  cfg.g_text = f.g;
  cfg.d = f.d;
  try {
    cfg.n_cap = metastab::Nat(f.n_cap);
  } catch (const std::exception& e) {
    throw config_error("--n-cap '" + f.n_cap + "': " + e.what());
  }
  cfg.digit_budget = f.digit_budget;
  cfg.seed = f.seed;
  cfg.mode = f.mode == "log2" ? metastab::rates::EvalMode::log2_upper
                              : metastab::rates::EvalMode::exact;
  if (!f.u_override.empty()) cfg.u_override = metastab::parse_u_override(f.u_override);
  cfg.norm_bound = parse_rat_flag(f.norm_bound, "--norm-bound");
  cfg.trials = f.trials;
  cfg.suite = f.suite;
  cfg.out_path = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rates of metastability for averages of commuting contractions"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* bounds = app.add_subcommand(
      "bounds", "compute the metastability rate for u, d, eps, g, norm bound");
  CLI::App* verify =
      app.add_subcommand("verify", "run the seeded property suites against the library");
  verify->add_option("suite", f.suite, "property suite: rates, spaces or all")
      ->capture_default_str();
  CLI::App* simulate = app.add_subcommand(
      "simulate", "write the trajectory CSV (n, norm_xn, pairwise_osc) up to n-cap");
  CLI::App* metastable = app.add_subcommand(
      "metastable", "search for an empirical witness and compare it with the rate");
  for (CLI::App* sub : {bounds, verify, simulate, metastable}) add_common(sub, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    return metastab::execute_command(command, to_config(f));
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const metastab::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const metastab::construction_error& e) {
    std::cerr << "recipe error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
