#include "metastab/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>

#include "metastab/ergodic.hpp"
#include "metastab/errors.hpp"
#include "metastab/rates.hpp"
#include "metastab/rng.hpp"
#include "metastab/verify.hpp"

namespace metastab {

namespace {

// Streams for the seeded sub-generators; distinct from make_x's 0xafed.
constexpr std::uint64_t kFamilyStream = 0xfa;

SeededRng family_rng(const ExperimentConfig& cfg) {
  return SeededRng(cfg.seed).fork(kFamilyStream);
}

Nat effective_d(const ExperimentConfig& cfg) {
  return Nat(static_cast<unsigned long long>(cfg.d == 0 ? 1 : cfg.d));
}

std::uint64_t to_index(const Nat& n, const char* what) {
  if (!n.fits_u64())
    throw budget_error(std::string(what) + " " + n.str() + " does not fit a machine index",
                       static_cast<double>(n.bits()));
  return n.to_u64();
}

}  // namespace

RunReport run_bounds(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.command = "bounds";
  rep.inputs = echo_config(cfg);
  NormedSpace space = make_space(cfg);
  auto u = make_u(cfg, space);
  FuncNN g = make_g(cfg);
  try {
    rep.rate = rates::metastability_rate_scaled(u, effective_d(cfg), cfg.norm_bound, cfg.eps,
                                                g, cfg.mode);
  } catch (const budget_error& e) {
    rep.ok = false;
    rep.note = std::string("exact rate exceeds the digit budget (") + e.what() +
               "); re-run with --mode log2";
  }
  return rep;
}

RunReport run_verify(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.command = "verify";
  rep.inputs = echo_config(cfg);
  rep.checks = run_suite(cfg.suite, cfg.trials, cfg.seed);
  for (const auto& c : rep.checks)
    if (!c.ok()) rep.ok = false;
  if (!rep.ok) rep.note = "property failure; see checks[].first_failure for replay data";
  return rep;
}

RunReport run_simulate(const ExperimentConfig& cfg, std::ostream& csv) {
  RunReport rep;
  rep.command = "simulate";
  rep.inputs = echo_config(cfg);
  NormedSpace space = make_space(cfg);
  OperatorFamily fam = build_family(space, cfg.recipe, cfg.d, family_rng(cfg));
  Vec x = make_x(cfg, space);
  FuncNN g = make_g(cfg);
  AverageCache cache(fam, x);

  csv << std::setprecision(17);
  csv << "n,norm_xn,pairwise_osc\n";
  const std::uint64_t cap = to_index(cfg.n_cap, "--n-cap");
  for (std::uint64_t n = 0; n <= cap; ++n) {
    const Nat nn(n);
    std::uint64_t end = to_index(nn + g(nn), "window end");
    double norm_xn = space.norm(cache.at(n));
    double osc = window_oscillation(cache, n, end);
    csv << n << "," << norm_xn << "," << osc << "\n";
  }
  if (!csv) throw io_error("failed writing trajectory CSV");
  rep.note = "trajectory rows: " + cfg.n_cap.str() + "+1";
  return rep;
}

RunReport run_metastable(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.command = "metastable";
  rep.inputs = echo_config(cfg);
  NormedSpace space = make_space(cfg);
  auto u = make_u(cfg, space);
  FuncNN g = make_g(cfg);
  OperatorFamily fam = build_family(space, cfg.recipe, cfg.d, family_rng(cfg));
  const Nat d(fam.d());

  Vec x = make_x(cfg, space);
  const double b = cfg.norm_bound.to_double();
  if (space.norm(x) > b + 1e-12)
    throw config_error("--x has norm " + std::to_string(space.norm(x)) +
                       " above --norm-bound " + cfg.norm_bound.str());

  // theta for points of norm <= b; fall back to the log2 upper bound when the
  // exact value overflows the digit budget
  BoundValue rate = [&] {
    if (cfg.mode == rates::EvalMode::exact) {
      try {
        return rates::metastability_rate_scaled(u, d, cfg.norm_bound, cfg.eps, g,
                                                rates::EvalMode::exact);
      } catch (const budget_error&) {
        rep.note = "exact rate exceeds the digit budget; reporting the log2 upper bound";
      }
    }
    return rates::metastability_rate_scaled(u, d, cfg.norm_bound, cfg.eps, g,
                                            rates::EvalMode::log2_upper);
  }();
  rep.rate = rate;

  // witness on x/b with eps/b: x_n is linear in x, so the scaled search is
  // equivalent and keeps the unit-ball contract of the witness search
  Vec xs = b == 1.0 ? x : scale(x, 1.0 / b);
  rep.witness = metastability_witness(fam, xs, cfg.eps / cfg.norm_bound, g, cfg.n_cap);
  rep.witness_searched = true;

  if (rate.is_exact()) {
    const Nat& theta = rate.exact_value();
    if (rep.witness)
      rep.verdict = *rep.witness <= theta ? "CONFIRMED" : "FAIL";
    else
      rep.verdict = theta <= cfg.n_cap ? "FAIL" : "CONSISTENT";
  } else {
    const Rat& log_theta = rate.log2_bound();
    if (rep.witness)
      rep.verdict = le_pow2(*rep.witness, log_theta) ? "CONSISTENT" : "FAIL";
    else
      rep.verdict = pow2_le(log_theta, cfg.n_cap) ? "FAIL" : "CONSISTENT";
  }
  if (rep.verdict == "FAIL") rep.ok = false;
  return rep;
}

int execute_command(const std::string& command, const ExperimentConfig& cfg) {
  cfg.validate();
  ScopedLimits guard(limits_from(cfg));
  const auto t0 = std::chrono::steady_clock::now();

  RunReport rep;
  if (command == "bounds") {
    rep = run_bounds(cfg);
  } else if (command == "verify") {
    rep = run_verify(cfg);
  } else if (command == "simulate") {
    if (cfg.out_path.empty()) {
      rep = run_simulate(cfg, std::cout);
    } else {
      std::ofstream csv(cfg.out_path);
      if (!csv) throw io_error("cannot open " + cfg.out_path + " for the trajectory CSV");
      rep = run_simulate(cfg, csv);
    }
  } else if (command == "metastable") {
    rep = run_metastable(cfg);
  } else {
    throw config_error("unknown command '" + command + "'");
  }

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = rep.to_json().dump(2);
  std::cout << text << "\n";
  if (!cfg.out_path.empty() && command != "simulate") {
    std::ofstream out(cfg.out_path);
    if (!out) throw io_error("cannot open " + cfg.out_path + " for the report");
    out << text << "\n";
  }
  return rep.ok ? 0 : 1;
}

}  // namespace metastab
