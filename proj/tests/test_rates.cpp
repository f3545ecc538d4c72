#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <metastab/bound_value.hpp>
#include <metastab/errors.hpp>
#include <metastab/limits.hpp>
#include <metastab/modulus.hpp>
#include <metastab/rates.hpp>

#include "oracles.hpp"

using namespace metastab;
using namespace metastab::rates;

TEST_CASE("Nat arithmetic") {
  CHECK(Nat("123456789012345678901234567890").str() ==
        "123456789012345678901234567890");
  CHECK(Nat::ceil_div(Nat(7), Nat(2)) == Nat(4));
  CHECK(Nat::ceil_div(Nat(8), Nat(2)) == Nat(4));
  CHECK(Nat::isqrt(Nat(15)) == Nat(3));
  CHECK(Nat::isqrt(Nat(16)) == Nat(4));
  CHECK(Nat::pow2(10) == Nat(1024));
  CHECK(Nat::pow(Nat(3), 4) == Nat(81));
  CHECK(ceil_log2(Nat(1)) == 0);
  CHECK(ceil_log2(Nat(2)) == 1);
  CHECK(ceil_log2(Nat(3)) == 2);
  CHECK(ceil_log2(Nat(1024)) == 10);
  CHECK(ceil_log2(Nat(1025)) == 11);
  CHECK_THROWS_AS(Nat(-3), precondition_error);
}

TEST_CASE("Rat arithmetic") {
  CHECK(Rat("3/6").str() == "1/2");
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat::ceil(Rat(7, 2)) == Nat(4));
  CHECK(Rat::ceil(Rat(4)) == Nat(4));
  CHECK(Rat::ceil_inverse(Rat(1, 3)) == Nat(3));
  CHECK(Rat::ceil_inverse(Rat(2, 5)) == Nat(3));
  CHECK(min(Rat(1), Rat(2)) == Rat(1));
  CHECK(Rat(-1, 2).is_negative());
  CHECK_THROWS_AS(Rat("1/0"), precondition_error);
}

TEST_CASE("pairing bijection") {
  CHECK(cantor_pair(Nat(0), Nat(0)) == Nat(0));
  CHECK(cantor_pair(Nat(1), Nat(0)) == Nat(1));
  CHECK(cantor_pair(Nat(2), Nat(3)) == Nat(18));
  CHECK(cantor_unpair(Nat(0)) == std::pair(Nat(0), Nat(0)));
  CHECK(cantor_unpair(Nat(18)) == std::pair(Nat(2), Nat(3)));
  CHECK(cantor_unpair(Nat(2)) == std::pair(Nat(0), Nat(1)));
  for (unsigned long s = 0; s <= 300; ++s) {
    auto [m, n] = cantor_unpair(Nat(s));
    CHECK(cantor_pair(m, n) == Nat(s));
  }
}

TEST_CASE("pair growth bound polynomial") {
  CHECK(pair_bound(Nat(0)) == Nat(0));
  CHECK(pair_bound(Nat(1)) == Nat(4));
  CHECK(pair_bound(Nat(3)) == Nat(24));
  // dominates the pairing for arguments <= s
  for (unsigned long m = 0; m <= 40; ++m)
    for (unsigned long n = 0; n <= 40; ++n)
      CHECK(cantor_pair(Nat(m), Nat(n)) <= pair_bound(Nat(std::max(m, n))));
}

TEST_CASE("window end and composition iteration") {
  FuncNN two_n_plus_1 = affine_fn(Nat(2), Nat(1));
  CHECK(window_end(const_fn(Nat(0)))(Nat(9)) == Nat(9));
  CHECK(window_end(two_n_plus_1)(Nat(3)) == Nat(10));
  CHECK(window_end(const_fn(Nat(2)))(Nat(4)) == Nat(6));

  FuncNN quad([](const Nat& s) { return pair_bound(s); }, true);
  CHECK(iterate_compose(quad, Nat(0), Nat(7)) == Nat(7));
  CHECK(iterate_compose(quad, Nat(2), Nat(1)) == Nat(40));
  CHECK(iterate_compose(const_fn(Nat(3)), Nat(5), Nat(0)) == Nat(3));
}

TEST_CASE("majorant of a non-monotone function") {
  FuncNN zigzag([](const Nat& n) {
    // 5, 0, 3, 0, 3, ... : max prefix value is 5 everywhere
    if (n == Nat(0)) return Nat(5);
    return n.to_u64() % 2 == 0 ? Nat(3) : Nat(0);
  });
  CHECK(monotone_majorant(zigzag, Nat(0)) == Nat(5));
  CHECK(monotone_majorant(zigzag, Nat(4)) == Nat(5));
  FuncNN mono = affine_fn(Nat(3), Nat(2));
  CHECK(monotone_majorant(mono, Nat(7)) == mono(Nat(7)));
}

TEST_CASE("single-sequence witness bound") {
  CHECK(glb_bound(Rat(1, 2), const_fn(Nat(1))) == Nat(1));
  CHECK(glb_bound(Rat(1), const_fn(Nat(4))) == Nat(4));
  // cross-check against the independent oracle over a small grid
  for (unsigned long a = 0; a <= 3; ++a)
    for (unsigned long b = 0; b <= 3; ++b)
      for (long den = 1; den <= 4; ++den) {
        Rat eps(1, den);
        FuncNN g = affine_fn(Nat(a), Nat(b));
        // materialize explicitly: returning the gmp expression template would dangle
        oracle::Fn og = [a, b](const oracle::Int& n) { return oracle::Int(a * n + b); };
        CHECK(glb_bound(eps, g).str() == oracle::glb_bound(mpq_class(1, den), og).get_str());
      }
}

TEST_CASE("double-sequence witness bound") {
  CHECK(glb2_bound(Rat(1, 2), const_fn(Nat(0))).exact_value() == Nat(0));
  CHECK(glb2_bound(Rat(1, 2), const_fn(Nat(1))).exact_value() == Nat(4));
  CHECK(glb2_bound(Rat(1, 2), affine_fn(Nat(1), Nat(1))).exact_value() == Nat(60));
  // closed form for constant g: one step reaches the fixed point 2c^2+2c
  for (unsigned long c = 0; c <= 50; ++c) {
    Nat want = pair_bound(Nat(c));
    CHECK(glb2_bound(Rat(1), const_fn(Nat(c))).exact_value() == want);
    CHECK(glb2_bound(Rat(1, 10), const_fn(Nat(c))).exact_value() == want);
  }
}

TEST_CASE("single-sequence witness search") {
  auto constant = [](const Nat&) { return Rat(1, 3); };
  CHECK(glb_witness(constant, Rat(1, 4), const_fn(Nat(5))) == Nat(0));

  auto spike = [](const Nat& n) { return n == Nat(1) ? Rat(0) : Rat(1); };
  CHECK(glb_witness(spike, Rat(1, 2), const_fn(Nat(1))) == Nat(1));

  auto decay = [](const Nat& n) { return Rat(Nat(1), n + Nat(1)); };
  CHECK(glb_witness(decay, Rat(1), affine_fn(Nat(3), Nat(7))) == Nat(0));
  // hand-derived: least N with 1/(N+1) <= 1/5 + 1/4 is N = 2
  CHECK(glb_witness(decay, Rat(1, 4), const_fn(Nat(4))) == Nat(2));

  CHECK_THROWS_AS(glb_witness(constant, Rat(0), const_fn(Nat(1))), precondition_error);
}

TEST_CASE("double-sequence witness search") {
  auto constant = [](const Nat&, const Nat&) { return Rat(2, 5); };
  auto w = glb2_witness(constant, Rat(1, 2), const_fn(Nat(3)));
  CHECK(w.flat == Nat(0));
  CHECK(w.p == Nat(0));
  CHECK(w.q == Nat(0));

  auto decay = [](const Nat& m, const Nat& n) { return Rat(Nat(1), m + n + Nat(1)); };
  auto w2 = glb2_witness(decay, Rat(1, 2), const_fn(Nat(0)));
  CHECK(w2.flat == Nat(0));
  CHECK(w2.p == Nat(0));
  CHECK(w2.q == Nat(0));

  // pseudo-random double sequence: the returned witness satisfies its contract
  auto noisy = [](const Nat& m, const Nat& n) {
    unsigned long h = (m.to_u64() * 2654435761ul + n.to_u64() * 40503ul) % 97;
    return Rat(Nat(h), Nat(97));
  };
  Rat eps(1, 4);
  FuncNN g = const_fn(Nat(2));
  auto w3 = glb2_witness(noisy, eps, g);
  CHECK(w3.flat <= glb2_bound(eps, g).exact_value());
  auto [p, q] = cantor_unpair(w3.flat);
  CHECK(p == w3.p);
  CHECK(q == w3.q);
  Rat base = noisy(w3.p, w3.q);
  for (unsigned long i = 0; i <= 2; ++i)
    for (unsigned long j = 0; j <= 2; ++j)
      CHECK(base <= noisy(Nat(i), Nat(j)) + eps);
}

TEST_CASE("residual threshold formula") {
  CHECK(residual_threshold(Nat(1), Rat(1, 2), Nat(0)) == Nat(0));
  CHECK(residual_threshold(Nat(1), Rat(1, 2), Nat(3)) == Nat(12));
  CHECK(residual_threshold(Nat(2), Rat(1, 4), Nat(5)) == Nat(80));
  // nondecreasing in Q and in 1/delta
  CHECK(residual_threshold(Nat(2), Rat(1, 4), Nat(6)) >=
        residual_threshold(Nat(2), Rat(1, 4), Nat(5)));
  CHECK(residual_threshold(Nat(2), Rat(1, 8), Nat(5)) >=
        residual_threshold(Nat(2), Rat(1, 4), Nat(5)));
}

TEST_CASE("window probed after the threshold") {
  FuncNN h0 = window_after_threshold(Rat(1), const_fn(Nat(0)), Nat(1));
  CHECK(h0(Nat(5)) == Nat(20));
  FuncNN h2 = window_after_threshold(Rat(1), const_fn(Nat(2)), Nat(1));
  CHECK(h2(Nat(0)) == Nat(2));
  CHECK(h2(Nat(1)) == Nat(6));
}

TEST_CASE("midpoint norm rate values") {
  CHECK(midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(0))).exact_value() == Nat(0));
  CHECK(midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(1))).exact_value() == Nat(2448));
  CHECK(midpoint_norm_rate(Nat(2), Rat(2), const_fn(Nat(0))).exact_value() == Nat(0));
  // independent oracle, same inputs
  CHECK(oracle::midnorm_rate(1, 1, oracle::const_fn(1)).get_str() == "2448");
  BoundValue two_dim = midpoint_norm_rate(Nat(2), Rat(1), const_fn(Nat(3)));
  CHECK(two_dim.exact_value() == Nat(611520));
  CHECK(two_dim.exact_value().str() == oracle::midnorm_rate(2, 1, oracle::const_fn(3)).get_str());
}

TEST_CASE("midpoint drop from the convexity modulus") {
  auto hil = hilbert_modulus();
  CHECK(hil(Rat(2)) == Rat(1, 2));
  CHECK(hil(Rat(1)) == Rat(1, 8));
  CHECK(hil(Rat(4)) == Rat(1, 2));  // clamped at the unit-ball diameter
  CHECK(u_from_modulus(hil)(Rat(1)) == Rat(1, 8));

  Modulus quad_no_factor(Modulus::Kind::user, [](const Rat& e) { return e * e / Rat(8); },
                         false, "quad");
  CHECK(u_from_modulus(quad_no_factor)(Rat(1)) == Rat(1, 16));
  Modulus flat(Modulus::Kind::user, [](const Rat&) { return Rat(1); }, false, "flat");
  CHECK(u_from_modulus(flat)(Rat(2)) == Rat(1));

  Modulus broken(Modulus::Kind::user, [](const Rat&) { return Rat(2); }, true, "broken");
  CHECK_THROWS_AS(broken(Rat(1)), modulus_error);
  CHECK_THROWS_AS(hil(Rat(0)), precondition_error);
}

TEST_CASE("metastability rate values") {
  auto hu = u_from_modulus(hilbert_modulus());
  CHECK(metastability_rate(hu, Nat(1), Rat(2), const_fn(Nat(0))).exact_value() == Nat(0));
  auto u2 = [](const Rat&) { return Rat(2); };
  CHECK(metastability_rate(u2, Nat(1), Rat(7, 3), const_fn(Nat(1))).exact_value() ==
        Nat(2448));
  CHECK(metastability_rate(hu, Nat(3), Rat(1, 5), const_fn(Nat(0))).exact_value() == Nat(0));
  // oracle cross-checks
  CHECK(oracle::meta_rate(oracle::hilbert_u, 1, 2, oracle::const_fn(0)).get_str() == "0");
  CHECK(metastability_rate(hu, Nat(2), Rat(3, 2), affine_fn(Nat(1), Nat(0))).exact_value().str() ==
        oracle::meta_rate(oracle::hilbert_u, 2, mpq_class(3, 2),
                          [](const oracle::Int& n) { return n; }).get_str());

  auto u0 = [](const Rat&) { return Rat(0); };
  CHECK_THROWS_AS(metastability_rate(u0, Nat(1), Rat(1), const_fn(Nat(0))),
                  precondition_error);
}

TEST_CASE("rescaled rate for larger balls") {
  auto hu = u_from_modulus(hilbert_modulus());
  auto u2 = [](const Rat&) { return Rat(2); };
  CHECK(metastability_rate_scaled(u2, Nat(1), Rat(1), Rat(1, 2), const_fn(Nat(1)))
            .exact_value() ==
        metastability_rate(u2, Nat(1), Rat(1, 2), const_fn(Nat(1))).exact_value());
  CHECK(metastability_rate_scaled(hu, Nat(1), Rat(2), Rat(4), const_fn(Nat(0)))
            .exact_value() == Nat(0));
  CHECK(metastability_rate_scaled(hu, Nat(1), Rat(1, 2), Rat(1), const_fn(Nat(2)))
            .exact_value() ==
        metastability_rate(hu, Nat(1), Rat(2), const_fn(Nat(2))).exact_value());
}

TEST_CASE("boundary index count") {
  auto b1 = boundary_count(Nat(3), Nat(2), Nat(2));
  CHECK(b1.count == Nat(32));
  CHECK(b1.bound == Nat(32));
  auto b2 = boundary_count(Nat(3), Nat(2), Nat(3));
  CHECK(b2.count == Nat(208));
  CHECK(b2.bound == Nat(256));
  for (unsigned long n = 0; n <= 10; ++n)
    for (unsigned long q = 0; q <= n; ++q) {
      auto b = boundary_count(Nat(n), Nat(q), Nat(1));
      CHECK(b.count == b.bound);  // d=1 telescopes exactly
    }
  CHECK_THROWS_AS(boundary_count(Nat(2), Nat(3), Nat(1)), precondition_error);
  CHECK_THROWS_AS(boundary_count(Nat(2), Nat(1), Nat(0)), precondition_error);
}

TEST_CASE("log2-upper mode is sound and always log2-tagged") {
  for (unsigned long c : {0ul, 1ul, 7ul, 50ul}) {
    BoundValue exact = glb2_bound(Rat(1, 3), const_fn(Nat(c)), EvalMode::exact);
    BoundValue upper = glb2_bound(Rat(1, 3), const_fn(Nat(c)), EvalMode::log2_upper);
    CHECK(!upper.is_exact());
    CHECK(le_pow2(exact.exact_value(), upper.log2_bound()));
  }
  BoundValue exact = midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(1)));
  BoundValue upper =
      midpoint_norm_rate(Nat(1), Rat(1), const_fn(Nat(1)), EvalMode::log2_upper);
  CHECK(le_pow2(exact.exact_value(), upper.log2_bound()));

  // a rate far beyond any exact budget still gets a finite log2 bound
  auto hu = u_from_modulus(hilbert_modulus());
  BoundValue huge =
      metastability_rate(hu, Nat(1), Rat(1), const_fn(Nat(1)), EvalMode::log2_upper);
  CHECK(!huge.is_exact());
  CHECK(!huge.log2_bound().is_negative());
}

TEST_CASE("power-of-two comparisons") {
  CHECK(le_pow2(Nat(4), Rat(2)));
  CHECK(!le_pow2(Nat(5), Rat(2)));
  CHECK(le_pow2(Nat(2), Rat(3, 2)));   // 2 <= 2^1.5
  CHECK(!le_pow2(Nat(3), Rat(3, 2)));  // 3 > 2^1.5
  CHECK(le_pow2(Nat(0), Rat(0)));
  CHECK(pow2_le(Rat(2), Nat(4)));
  CHECK(!pow2_le(Rat(2), Nat(3)));
  CHECK(pow2_le(Rat(3, 2), Nat(3)));   // 2^1.5 <= 3
  CHECK(!pow2_le(Rat(3, 2), Nat(2)));  // 2^1.5 > 2
  CHECK(pow2_le(Rat(0), Nat(1)));
  CHECK(!pow2_le(Rat(0), Nat(0)));
}

TEST_CASE("digit budget aborts exact evaluation recoverably") {
  RuntimeLimits tight = RuntimeLimits::current();
  tight.digit_budget = 30;
  ScopedLimits guard(tight);
  // u = 1/8 forces 32 quadratic-growth iterations: far past 30 digits
  auto u8 = [](const Rat&) { return Rat(1, 8); };
  CHECK_THROWS_AS(
      metastability_rate(u8, Nat(1), Rat(1), affine_fn(Nat(2), Nat(1)), EvalMode::exact),
      budget_error);
  // log2-upper mode survives the same budget
  BoundValue upper =
      metastability_rate(u8, Nat(1), Rat(1), affine_fn(Nat(2), Nat(1)), EvalMode::log2_upper);
  CHECK(!upper.is_exact());
}

TEST_CASE("evaluation-count budget stops runaway majorant scans") {
  RuntimeLimits tight = RuntimeLimits::current();
  tight.func_eval_budget = 50;
  ScopedLimits guard(tight);
  FuncNN opaque([](const Nat& n) { return n; });  // not flagged nondecreasing
  CHECK_THROWS_AS(monotone_majorant(opaque, Nat(1000)), budget_error);
}
