// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// fail. Each criterion re-derives its expectations independently (closed
// forms, the brute-force oracles, or literal rescans) rather than trusting
// the library's own intermediate results.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <metastab/commands.hpp>
#include <metastab/config.hpp>
#include <metastab/ergodic.hpp>
#include <metastab/rates.hpp>
#include <metastab/verify.hpp>

#include "oracles.hpp"

using namespace metastab;
using namespace metastab::rates;

namespace {

int g_failures = 0;
std::string g_detail;

void fail_detail(std::string text) { g_detail = std::move(text); }

void criterion(int id, const char* label, const std::function<bool()>& body) {
  g_detail.clear();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    fail_detail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d %-52s (%6.2f s)\n", ok ? "PASS" : "FAIL", id, label, secs);
  if (!ok) {
    ++g_failures;
    if (!g_detail.empty()) std::printf("          %s\n", g_detail.c_str());
  }
}

Rat pick_eps(SeededRng& rng) {
  static const long dens[3] = {1, 2, 4};
  return Rat(1, dens[rng.below(3)]);
}

// 1. pairing bijection: exhaustive round-trip over [0,200]^2, agreement with
// the oracle polynomial, and the quadratic growth bound
bool pairing_exhaustive() {
  for (unsigned long m = 0; m <= 200; ++m)
    for (unsigned long n = 0; n <= 200; ++n) {
      Nat s = cantor_pair(Nat(m), Nat(n));
      if (s.str() != oracle::cantor(m, n).get_str()) {
        fail_detail("pair(" + std::to_string(m) + "," + std::to_string(n) +
                    ") disagrees with the oracle");
        return false;
      }
      auto [m2, n2] = cantor_unpair(s);
      if (m2 != Nat(m) || n2 != Nat(n)) {
        fail_detail("unpair(pair(" + std::to_string(m) + "," + std::to_string(n) +
                    ")) does not round-trip");
        return false;
      }
      if (s > pair_bound(Nat(std::max(m, n)))) {
        fail_detail("pair(" + std::to_string(m) + "," + std::to_string(n) +
                    ") exceeds 2s^2+2s");
        return false;
      }
    }
  for (unsigned long s = 0; s <= 5000; ++s) {  // flat side of the bijection
    auto [m, n] = cantor_unpair(Nat(s));
    if (cantor_pair(m, n) != Nat(s)) {
      fail_detail("pair(unpair(" + std::to_string(s) + ")) does not round-trip");
      return false;
    }
  }
  return true;
}

// 2. double-witness bound closed form: glb2_bound(eps, const c) = 2c^2+2c,
// cross-checked against the oracle's literal iteration
bool glb2_closed_form() {
  const Rat epss[3] = {Rat(1), Rat(1, 2), Rat(1, 10)};
  const mpq_class oeps[3] = {mpq_class(1), mpq_class(1, 2), mpq_class(1, 10)};
  for (unsigned long c = 0; c <= 50; ++c)
    for (int e = 0; e < 3; ++e) {
      Nat got = glb2_bound(epss[e], const_fn(Nat(c))).exact_value();
      if (got != Nat(2 * c * c + 2 * c)) {
        fail_detail("glb2_bound(" + epss[e].str() + ", const " + std::to_string(c) +
                    ") = " + got.str() + " != closed form");
        return false;
      }
      if (got.str() != oracle::glb2_bound(oeps[e], oracle::const_fn(c)).get_str()) {
        fail_detail("glb2_bound disagrees with the oracle at c=" + std::to_string(c));
        return false;
      }
    }
  return true;
}

// 3. hand-derived rate values, re-derived by the independent oracle
bool hand_values() {
  Nat mid = midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(1))).exact_value();
  if (mid != Nat(2448) ||
      mid.str() != oracle::midnorm_rate(1, mpq_class(1), oracle::const_fn(1)).get_str()) {
    fail_detail("midpoint_norm_rate(1, 1, const 1) = " + mid.str() + ", want 2448");
    return false;
  }
  auto u = u_from_modulus(hilbert_modulus());
  Nat rate = metastability_rate(u, Nat(1), Rat(2), const_fn(Nat(0))).exact_value();
  if (rate != Nat(0) ||
      rate.str() !=
          oracle::meta_rate(oracle::hilbert_u, 1, mpq_class(2), oracle::const_fn(0)).get_str()) {
    fail_detail("metastability_rate(hilbert, 1, 2, const 0) = " + rate.str() + ", want 0");
    return false;
  }
  return true;
}

// 4a. single-sequence witness suite: witness exists, is below the bound, and
// satisfies the near-infimum condition exhaustively
bool witness_suite_single(std::uint64_t trials) {
  SeededRng base(2026);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    gen::Seq1 seq = gen::random_seq1(rng);
    GExpr ge = gen::random_gexpr(rng);
    FuncNN g = ge.func();
    Rat eps = pick_eps(rng);
    Nat n = glb_witness(seq.eval, eps, g);
    auto describe = [&] {
      return "trial " + std::to_string(t) + ": seq=" + seq.desc + " g=" + ge.str() +
             " eps=" + eps.str() + " witness=" + n.str();
    };
    if (n > glb_bound(eps, g)) {
      fail_detail(describe() + " exceeds the bound");
      return false;
    }
    Rat an = seq.eval(n);
    for (Nat s(0), end = g(n); s <= end; ++s)
      if (an > seq.eval(s) + eps) {
        fail_detail(describe() + " violates the condition at s=" + s.str());
        return false;
      }
  }
  return true;
}

// 4b. double-sequence witness suite, checked over the full window square
bool witness_suite_double(std::uint64_t trials) {
  SeededRng base(4052);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    gen::Seq2 seq = gen::random_seq2(rng);
    GExpr ge = gen::random_gexpr(rng, /*small=*/true);
    FuncNN g = ge.func();
    Rat eps = pick_eps(rng);
    Glb2Witness w = glb2_witness(seq.eval, eps, g);
    auto describe = [&] {
      return "trial " + std::to_string(t) + ": seq=" + seq.desc + " g=" + ge.str() +
             " eps=" + eps.str() + " N=" + w.flat.str();
    };
    auto [p2, q2] = cantor_unpair(w.flat);
    if (p2 != w.p || q2 != w.q) {
      fail_detail(describe() + ": (p,q) != unpair(N)");
      return false;
    }
    if (w.flat > glb2_bound(eps, g).exact_value()) {
      fail_detail(describe() + " exceeds the bound");
      return false;
    }
    Rat apq = seq.eval(w.p, w.q);
    for (Nat i(0), end = g(w.flat); i <= end; ++i)
      for (Nat j(0); j <= end; ++j)
        if (apq > seq.eval(i, j) + eps) {
          fail_detail(describe() + " violates the condition at (" + i.str() + "," + j.str() +
                      ")");
          return false;
        }
  }
  return true;
}

// 5. boundary lattice count: difference of powers re-derived through the
// binomial expansion with raw mpz, bound checked, equality exactly for d <= 2
bool boundary_exact() {
  for (unsigned long d = 1; d <= 6; ++d)
    for (unsigned long n = 0; n <= 40; ++n)
      for (unsigned long q = 0; q <= n; ++q) {
        auto bc = boundary_count(Nat(n), Nat(q), Nat(d));
        const mpz_class m(static_cast<unsigned long>(n + 1)), qq(q);
        mpz_class count = 0;  // 2 * sum over odd k of C(d,k) m^(d-k) q^k
        for (unsigned long k = 1; k <= d; k += 2) {
          mpz_class bin, mp, qp;
          mpz_bin_uiui(bin.get_mpz_t(), d, k);
          mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), d - k);
          mpz_pow_ui(qp.get_mpz_t(), qq.get_mpz_t(), k);
          count += bin * mp * qp;
        }
        count *= 2;
        mpz_class md1, bound;
        mpz_pow_ui(md1.get_mpz_t(), m.get_mpz_t(), d - 1);
        bound = (mpz_class(1) << d) * md1 * qq;
        auto where = [&] {
          return " at d=" + std::to_string(d) + " n=" + std::to_string(n) +
                 " q=" + std::to_string(q);
        };
        if (bc.count.str() != count.get_str()) {
          fail_detail("count mismatch" + where());
          return false;
        }
        if (bc.bound.str() != bound.get_str()) {
          fail_detail("bound mismatch" + where());
          return false;
        }
        if (count > bound) {
          fail_detail("count exceeds bound" + where());
          return false;
        }
        if (d <= 2 && count != bound) {
          fail_detail("expected equality" + where());
          return false;
        }
      }
  return true;
}

// 6. averaging residual inequality on random commuting families
bool residual_suite(std::uint64_t trials) {
  SeededRng base(61);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    auto inst = gen::random_family(rng, 3, 6);
    Vec x = gen::random_unit_ball(rng, inst.space);
    std::size_t q = rng.below(5);
    unsigned long n = q + rng.below(61 - q);
    auto w = ConvexWeights::random(inst.fam.d(), q, rng);
    auto rc = combination_residual(inst.fam, x, w, Nat(n));  // throws past bound + 1e-9
    if (rc.residual > rc.bound + 1e-9) {
      fail_detail("trial " + std::to_string(t) + ": residual above bound, recipe " +
                  inst.recipe);
      return false;
    }
  }
  return true;
}

// 7. midpoint norm drop under the Hilbert modulus, 1e-12 slack
bool midpoint_suite(std::uint64_t trials) {
  SeededRng base(73);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    NormedSpace space = NormedSpace::euclidean(2 + rng.below(7));
    Vec y = gen::random_unit_ball(rng, space);
    if (space.norm(y) < 0.05) {
      y.assign(space.dim(), 0.0);
      y[0] = 0.5 + 0.5 * rng.unit();
    }
    double ny = space.norm(y);
    Vec x = gen::random_unit_ball(rng, space);
    if (space.norm(x) > ny) x = scale(x, ny * rng.unit() / space.norm(x));
    double dist = space.distance(x, y);
    if (dist < 1.0 / 64) {
      x = scale(y, -1.0);
      dist = 2 * ny;
    }
    Rat eps(std::max(1l, static_cast<long>(std::floor(dist * 64))), 64);
    auto u = u_from_modulus(hilbert_modulus());
    if (!midpoint_norm_check(space, u, x, y, eps)) {
      fail_detail("trial " + std::to_string(t) + ": drop failed at dim " +
                  std::to_string(space.dim()) + " eps " + eps.str());
      return false;
    }
  }
  return true;
}

// 8. separable computation of the multi-average equals the literal multi-sum
bool separable_suite(std::uint64_t trials) {
  SeededRng base(87);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    auto inst = gen::random_family(rng, 3, 5);
    Vec x = gen::random_unit_ball(rng, inst.space);
    Nat n(rng.below(9));
    double dev = inst.space.distance(ergodic_average(inst.fam, x, n),
                                     ergodic_average_direct(inst.fam, x, n));
    if (dev > 1e-10) {
      fail_detail("trial " + std::to_string(t) + ": deviation " + std::to_string(dev) +
                  ", recipe " + inst.recipe);
      return false;
    }
  }
  return true;
}

// 9./10. fixed configurations with exactly computable rates
struct MetaCase {
  const char* space;
  const char* recipe;
  std::size_t d;  // always the family's actual d
  const char* x;
  const char* eps;
  const char* g;
  const char* u;        // nullptr: derive from the space's modulus
  long expect_witness;  // -1: any witness acceptable
};

const std::vector<MetaCase>& meta_cases() {
  static const std::vector<MetaCase> cases = {
      // singleton windows: rate 0, witness 0, any modulus
      {"l2:2", "identity", 1, "e1", "1", "const 0", nullptr, 0},
      {"l2:3", "negid", 1, "e2", "1/2", "const 0", nullptr, 0},
      {"l2:2", "rot:1/2", 1, "1,0", "1/4", "const 0", nullptr, 0},
      {"lp:3:3", "diag:1/2,-1/4,3/4", 1, "e3", "1", "const 0", nullptr, 0},
      {"lp:3/2:4", "permdecay:1/2", 1, "ones", "1/2", "const 0", nullptr, 0},
      {"l2:4", "poly:1/2,1/4", 1, "rand", "1", "const 0", nullptr, 0},
      {"l2:2", "identity", 1, "e1", "3", "const 0", nullptr, 0},
      // g = id also collapses the rate to 0
      {"l2:2", "negid", 1, "e1", "1/2", "id", "2", 0},
      {"l2:3", "rot:1/4", 1, "e1", "1", "id", nullptr, 0},
      // constant u = 2: two bound iterations, rate exactly 2448 / 17952 / ...
      {"l2:2", "negid", 1, "e1", "1/2", "const 1", "2", 1},  // the pinned witness case
      {"l2:3", "negid", 2, "e1", "1/2", "const 1", "2", -1},
      {"l2:4", "negid", 3, "e1", "1/2", "const 1", "2", -1},
      {"l2:2", "identity", 1, "e1", "1/2", "const 1", "2", 0},
      {"l2:2", "rot:1/2", 1, "1,0", "1/2", "const 1", "2", -1},
      {"l2:2", "diag:1/2,-1/2", 1, "e1", "1/2", "const 1", "2", -1},
      {"l2:3", "permdecay:1/2", 1, "e1", "1/2", "const 1", "2", -1},
      {"l2:3", "poly:1/2,1/4", 1, "rand", "1/2", "const 1", "2", -1},
      {"lp:3:2", "identity", 1, "e1", "1/2", "const 1", "2", 0},
      {"l2:2", "negid", 1, "e1", "1/2", "affine 2 3", "2", -1},
      {"l2:2", "negid", 1, "e1", "1/2", "comp affine 1 1 id", "2", -1},
      {"l2:5", "rot:1/2,1/2", 2, "e5", "1/2", "const 1", "2", 0},
      {"l2:2", "diag:-1,1", 1, "e1", "1/2", "const 1", "2", 1},
      // other constant overrides with gamma >= 1/2
      {"l2:2", "negid", 1, "e1", "1", "const 3", "1", 0},
      {"l2:2", "negid", 1, "e1", "7/3", "const 2", "5/2", -1},
  };
  return cases;
}

ExperimentConfig case_config(const MetaCase& c) {
  ExperimentConfig cfg;
  cfg.space = SpaceSpec::parse(c.space);
  cfg.recipe = c.recipe;
  cfg.d = c.d;
  cfg.x_spec = c.x;
  cfg.eps = Rat(c.eps);
  cfg.g_text = c.g;
  if (c.u) cfg.u_override = parse_u_override(c.u);
  return cfg;
}

std::string case_name(const MetaCase& c) {
  return std::string(c.space) + " " + c.recipe + " eps=" + c.eps + " g='" + c.g + "'" +
         (c.u ? std::string(" u=") + c.u : "");
}

bool metastable_matrix() {
  for (const auto& c : meta_cases()) {
    RunReport rep = run_metastable(case_config(c));
    if (rep.verdict != "CONFIRMED" || !rep.ok || !rep.rate || !rep.rate->is_exact()) {
      fail_detail(case_name(c) + ": verdict " + rep.verdict + ", rate " +
                  (rep.rate ? rep.rate->str() : "none"));
      return false;
    }
    if (c.expect_witness >= 0 &&
        (!rep.witness ||
         *rep.witness != Nat(static_cast<unsigned long>(c.expect_witness)))) {
      fail_detail(case_name(c) + ": witness " +
                  (rep.witness ? rep.witness->str() : "none") + ", want " +
                  std::to_string(c.expect_witness));
      return false;
    }
  }
  return true;
}

bool log_mode_sound() {
  BoundValue lm = midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(1)), EvalMode::log2_upper);
  if (lm.is_exact() || !le_pow2(Nat(2448), lm.log2_bound())) {
    fail_detail("log2 midpoint rate " + lm.str() + " below the exact 2448");
    return false;
  }
  auto hu = u_from_modulus(hilbert_modulus());
  BoundValue lt =
      metastability_rate(hu, Nat(1), Rat(2), const_fn(Nat(0)), EvalMode::log2_upper);
  if (lt.is_exact() || !le_pow2(Nat(0), lt.log2_bound())) {
    fail_detail("log2 zero-rate case " + lt.str() + " unsound");
    return false;
  }
  for (const auto& c : meta_cases()) {
    ExperimentConfig cfg = case_config(c);
    NormedSpace space = make_space(cfg);
    auto u = make_u(cfg, space);
    FuncNN g = make_g(cfg);
    Nat d(static_cast<unsigned long>(c.d));
    Nat exact =
        metastability_rate_scaled(u, d, cfg.norm_bound, cfg.eps, g, EvalMode::exact)
            .exact_value();
    BoundValue lg =
        metastability_rate_scaled(u, d, cfg.norm_bound, cfg.eps, g, EvalMode::log2_upper);
    if (lg.is_exact() || !le_pow2(exact, lg.log2_bound())) {
      fail_detail(case_name(c) + ": exact " + exact.str() + " above log2 bound " + lg.str());
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "pairing bijection round-trip and growth bound", pairing_exhaustive);
  criterion(2, "double-witness bound closed form (constant windows)", glb2_closed_form);
  criterion(3, "hand-derived rate values vs brute-force oracle", hand_values);
  criterion(4, "greatest-lower-bound witness suites (2x1000)", [] {
    return witness_suite_single(1000) && witness_suite_double(1000);
  });
  criterion(5, "boundary lattice count, exact grid d<=6 n<=40", boundary_exact);
  criterion(6, "averaging residual inequality (1000 instances)", [] {
    return residual_suite(1000);
  });
  criterion(7, "midpoint norm drop inequality (1000 instances)", [] {
    return midpoint_suite(1000);
  });
  criterion(8, "separable vs direct averages (200 instances)", [] {
    return separable_suite(200);
  });
  criterion(9, "end-to-end metastability verdict matrix", metastable_matrix);
  criterion(10, "log2 mode soundness on all exact-rate configs", log_mode_sound);

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
