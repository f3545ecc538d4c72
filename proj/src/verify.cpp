#include "metastab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "metastab/errors.hpp"
#include "metastab/rates.hpp"

namespace metastab {

namespace gen {

namespace {

Rat mod_frac(const mpz_class& value, unsigned long m) {
  mpz_class r = value % m;  // operands nonnegative
  return Rat(Nat(r), Nat(m));
}

std::vector<Rat> random_table(SeededRng& rng, std::size_t len, unsigned long den) {
  std::vector<Rat> t;
  t.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    t.push_back(Rat(Nat(rng.below(den + 1)), Nat(den)));
  return t;
}

}  // namespace

Seq1 random_seq1(SeededRng& rng) {
  switch (rng.below(4)) {
    case 0: {
      unsigned long c = 1 + rng.below(10);
      return {[c](const Nat& n) { return Rat(Nat(c), n + Nat(c)); },
              "decay(" + std::to_string(c) + ")"};
    }
    case 1: {
      unsigned long a = rng.below(100), b = rng.below(100), m = 7 + rng.below(101);
      return {[a, b, m](const Nat& n) { return mod_frac(mpz_class(a) * n.raw() + b, m); },
              "mod(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(m) +
                  ")"};
    }
    case 2: {
      std::size_t len = 2 + rng.below(7);
      auto table = random_table(rng, len, 16);
      return {[table, len](const Nat& n) {
                return table[mpz_class(n.raw() % len).get_ui()];
              },
              "periodic(" + std::to_string(len) + ")"};
    }
    default: {
      unsigned long c = 1 + rng.below(10);
      std::size_t len = 2 + rng.below(7);
      auto table = random_table(rng, len, 16);
      return {[c, table, len](const Nat& n) {
                Rat p = table[mpz_class(n.raw() % len).get_ui()];
                return (Rat(Nat(c), n + Nat(c)) + p) / Rat(2);
              },
              "mix(" + std::to_string(c) + "," + std::to_string(len) + ")"};
    }
  }
}

Seq2 random_seq2(SeededRng& rng) {
  switch (rng.below(4)) {
    case 0: {
      unsigned long c = 1 + rng.below(4);
      return {[c](const Nat& m, const Nat& n) { return Rat(Nat(c), m + n + Nat(c)); },
              "decay2(" + std::to_string(c) + ")"};
    }
    case 1: {
      unsigned long a = rng.below(50), b = rng.below(50), c = rng.below(50),
                    m = 7 + rng.below(101);
      return {[a, b, c, m](const Nat& i, const Nat& j) {
                return mod_frac(mpz_class(a) * i.raw() + mpz_class(b) * j.raw() + c, m);
              },
              "mod2(" + std::to_string(a) + "," + std::to_string(b) + "," +
                  std::to_string(c) + "," + std::to_string(m) + ")"};
    }
    case 2: {
      std::size_t len = 2 + rng.below(7);
      auto table = random_table(rng, len, 16);
      return {[table, len](const Nat& m, const Nat& n) {
                return table[mpz_class((m + n).raw() % len).get_ui()];
              },
              "periodic2(" + std::to_string(len) + ")"};
    }
    default: {
      unsigned long c1 = 1 + rng.below(4), c2 = 1 + rng.below(4);
      return {[c1, c2](const Nat& m, const Nat& n) {
                return Rat(Nat(c1), m + Nat(c1)) * Rat(Nat(c2), n + Nat(c2));
              },
              "product(" + std::to_string(c1) + "," + std::to_string(c2) + ")"};
    }
  }
}

GExpr random_gexpr(SeededRng& rng, bool small) {
  if (small) {
    switch (rng.below(3)) {
      case 0:
        return GExpr::constant(Nat(rng.below(11)));
      case 1:
        return GExpr::identity();
      default:
        return GExpr::affine(Nat(rng.below(3)), Nat(rng.below(4)));
    }
  }
  switch (rng.below(4)) {
    case 0:
      return GExpr::constant(Nat(rng.below(21)));
    case 1:
      return GExpr::identity();
    case 2:
      return GExpr::affine(Nat(rng.below(6)), Nat(rng.below(6)));
    default: {
      GExpr outer = random_gexpr(rng, true);
      GExpr inner = random_gexpr(rng, true);
      return GExpr::compose(std::move(outer), std::move(inner));
    }
  }
}

FamilyInstance random_family(SeededRng& rng, std::size_t d_max, std::size_t dim_max,
                             bool euclidean_only) {
  bool euclid = euclidean_only || rng.below(3) < 2;
  std::size_t dim = 2 + rng.below(dim_max - 1);
  NormedSpace space = [&] {
    if (euclid) return NormedSpace::euclidean(dim);
    static const long ps[3][2] = {{3, 2}, {3, 1}, {4, 1}};
    const auto& pd = ps[rng.below(3)];
    return NormedSpace::lp(Rat(pd[0], pd[1]), dim);
  }();
  std::size_t d = 1 + rng.below(d_max);

  std::string recipe;
  switch (rng.below(8)) {
    case 0:
      recipe = "identity";
      break;
    case 1:
      recipe = "negid";
      break;
    case 2:
    case 3: {
      recipe = "diag:";
      for (std::size_t l = 0; l < d; ++l) {
        if (l) recipe += ';';
        for (std::size_t j = 0; j < dim; ++j) {
          if (j) recipe += ',';
          recipe += Rat(static_cast<long>(rng.below(17)) - 8, 8).str();
        }
      }
      break;
    }
    case 4:
    case 5: {
      recipe = "poly:";
      for (std::size_t l = 0; l < d; ++l) {
        if (l) recipe += ';';
        unsigned long remaining = 8;
        std::size_t ncoef = 1 + rng.below(3);
        for (std::size_t i = 0; i < ncoef; ++i) {
          if (i) recipe += ',';
          unsigned long c = rng.below(remaining + 1);
          remaining -= c;
          recipe += Rat(Nat(c), Nat(8)).str();
        }
      }
      break;
    }
    case 6: {
      recipe = "rot:";
      for (std::size_t l = 0; l < d; ++l) {
        if (l) recipe += ',';
        // non-quarter turns contract only the euclidean norm
        recipe += euclid ? Rat(static_cast<long>(rng.below(8)), 4).str()
                         : Rat(static_cast<long>(rng.below(4)), 2).str();
      }
      break;
    }
    default:
      recipe = "permdecay:" + Rat(static_cast<long>(1 + rng.below(10)), 10).str();
      break;
  }
  OperatorFamily fam = build_family(space, recipe, d, rng.fork(0xfa));
  return {std::move(space), std::move(fam), recipe};
}

Vec random_unit_ball(SeededRng& rng, const NormedSpace& space) {
  Vec v = rng.vector(space.dim(), -1.0, 1.0);
  double n = space.norm(v);
  if (n < 1e-9) {
    v.assign(space.dim(), 0.0);
    v[0] = rng.unit();
    return v;
  }
  return scale(v, rng.unit() / n);
}

}  // namespace gen

namespace {

using nlohmann::json;
using namespace rates;

// Loops `trials` seeded instances of one property; fn returns a failure
// object or null. Exceptions count as failures.
template <typename Fn>
CheckResult run_property(const std::string& name, std::uint64_t trials, SeededRng base,
                         Fn&& fn) {
  CheckResult r;
  r.name = name;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = base.fork(t);
    json failure;
    try {
      failure = fn(rng, t);
    } catch (const std::exception& e) {
      failure = json{{"error", e.what()}};
    }
    if (failure.is_null()) {
      ++r.pass;
    } else {
      if (r.fail == 0) {
        failure["trial"] = t;
        r.first_failure = std::move(failure);
      }
      ++r.fail;
    }
  }
  return r;
}

Rat pick_eps(SeededRng& rng) {
  static const long dens[3] = {1, 2, 4};
  return Rat(1, dens[rng.below(3)]);
}

json check_pairing(SeededRng& rng, std::uint64_t) {
  Nat m(rng.below(201)), n(rng.below(201));
  Nat s = cantor_pair(m, n);
  auto [m2, n2] = cantor_unpair(s);
  if (m2 != m || n2 != n)
    return json{{"property", "roundtrip"}, {"m", m.str()}, {"n", n.str()}, {"s", s.str()}};
  if (s < m || s < n)
    return json{{"property", "args <= pair"}, {"m", m.str()}, {"n", n.str()}, {"s", s.str()}};
  Nat cap = max(m, n) + Nat(rng.below(20));
  if (s > pair_bound(cap))
    return json{{"property", "pair <= 2s^2+2s"}, {"m", m.str()}, {"n", n.str()},
                {"cap", cap.str()}};
  return nullptr;
}

json check_majorant(SeededRng& rng, std::uint64_t) {
  std::size_t len = 3 + rng.below(30);
  std::vector<unsigned long> table(len);
  for (auto& v : table) v = rng.below(100);
  FuncNN g([table](const Nat& n) {
    std::size_t i = n.fits_u64() ? static_cast<std::size_t>(n.to_u64()) : table.size();
    return Nat(table[std::min(i, table.size() - 1)]);
  });
  Nat prev(0);
  unsigned long brute = 0;
  for (std::size_t i = 0; i < len + 5; ++i) {
    brute = std::max(brute, table[std::min(i, len - 1)]);
    Nat m = monotone_majorant(g, Nat(i));
    if (m != Nat(brute))
      return json{{"property", "majorant == brute max"}, {"at", i}, {"got", m.str()},
                  {"want", brute}};
    if (m < prev) return json{{"property", "majorant nondecreasing"}, {"at", i}};
    prev = m;
  }
  // below-frontier re-queries must agree after the frontier advanced
  Nat again = monotone_majorant(g, Nat(static_cast<unsigned long>(len / 2)));
  unsigned long want = 0;
  for (std::size_t i = 0; i <= len / 2; ++i) want = std::max(want, table[i]);
  if (again != Nat(want)) return json{{"property", "majorant below frontier"}};
  // nondecreasing grammar functions are their own majorant
  FuncNN mono = gen::random_gexpr(rng).func();
  for (unsigned long i = 0; i < 5; ++i) {
    Nat q(rng.below(50));
    if (monotone_majorant(mono, q) != mono(q))
      return json{{"property", "majorant of nondecreasing = value"}, {"at", q.str()}};
  }
  return nullptr;
}

json check_iterate_monotone(SeededRng& rng, std::uint64_t) {
  GExpr ge = gen::random_gexpr(rng, true);
  FuncNN g = ge.func();
  Rat eps1 = pick_eps(rng);
  Rat eps2 = eps1 / Rat(static_cast<long>(1 + rng.below(3)), 1);
  Nat b1 = glb_bound(eps1, g), b2 = glb_bound(eps2, g);
  if (b2 < b1)
    return json{{"property", "glb_bound antitone in eps"}, {"g", ge.str()},
                {"eps1", eps1.str()}, {"eps2", eps2.str()}};
  Nat k(rng.below(5));
  FuncNN bigger = GExpr::compose(GExpr::affine(Nat(1), k), ge).func();
  BoundValue g2a = glb2_bound(eps1, g), g2b = glb2_bound(eps1, bigger);
  if (g2b.exact_value() < g2a.exact_value())
    return json{{"property", "glb2_bound monotone in g"}, {"g", ge.str()}, {"k", k.str()}};
  return nullptr;
}

json check_glb_witness(SeededRng& rng, std::uint64_t) {
  gen::Seq1 seq = gen::random_seq1(rng);
  GExpr ge = gen::random_gexpr(rng);
  FuncNN g = ge.func();
  Rat eps = pick_eps(rng);
  Nat n = glb_witness(seq.eval, eps, g);
  json inst{{"seq", seq.desc}, {"g", ge.str()}, {"eps", eps.str()}, {"witness", n.str()}};
  if (n > glb_bound(eps, g)) {
    inst["property"] = "witness <= bound";
    return inst;
  }
  Rat an = seq.eval(n);
  for (Nat s(0), end = g(n); s <= end; ++s)
    if (an > seq.eval(s) + eps) {
      inst["property"] = "witness condition";
      inst["s"] = s.str();
      return inst;
    }
  if (n > Nat(0)) {  // the previous index must genuinely fail
    Nat prev = n - Nat(1);
    Rat ap = seq.eval(prev);
    bool violated = false;
    for (Nat s(0), end = g(prev); s <= end && !violated; ++s)
      if (ap > seq.eval(s) + eps) violated = true;
    if (!violated) {
      inst["property"] = "witness least";
      return inst;
    }
  }
  return nullptr;
}

json check_glb2_witness(SeededRng& rng, std::uint64_t) {
  gen::Seq2 seq = gen::random_seq2(rng);
  GExpr ge = gen::random_gexpr(rng, true);
  FuncNN g = ge.func();
  Rat eps = pick_eps(rng);
  Glb2Witness w = glb2_witness(seq.eval, eps, g);
  json inst{{"seq", seq.desc}, {"g", ge.str()}, {"eps", eps.str()}, {"N", w.flat.str()},
            {"p", w.p.str()}, {"q", w.q.str()}};
  auto [p2, q2] = cantor_unpair(w.flat);
  if (p2 != w.p || q2 != w.q || w.p > w.flat || w.q > w.flat) {
    inst["property"] = "(p,q) = unpair(N) <= N";
    return inst;
  }
  if (w.flat > glb2_bound(eps, g).exact_value()) {
    inst["property"] = "witness <= bound";
    return inst;
  }
  Rat apq = seq.eval(w.p, w.q);
  for (Nat i(0), end = g(w.flat); i <= end; ++i)
    for (Nat j(0); j <= end; ++j)
      if (apq > seq.eval(i, j) + eps) {
        inst["property"] = "witness condition";
        inst["i"] = i.str();
        inst["j"] = j.str();
        return inst;
      }
  return nullptr;
}

CheckResult check_boundary_grid() {
  CheckResult r;
  r.name = "boundary_count_grid";
  for (unsigned long d = 1; d <= 6; ++d)
    for (unsigned long n = 0; n <= 40; ++n)
      for (unsigned long q = 0; q <= n; ++q) {
        json failure;
        try {
          auto bc = boundary_count(Nat(n), Nat(q), Nat(d));
          bool equal = bc.count == bc.bound;
          bool expect_equal = d <= 2 || q == 0;
          if (bc.count > bc.bound)
            failure = json{{"property", "count <= bound"}};
          else if (equal != expect_equal)
            failure = json{{"property", "equality iff d<=2 or q=0"}, {"equal", equal}};
        } catch (const std::exception& e) {
          failure = json{{"error", e.what()}};
        }
        if (failure.is_null()) {
          ++r.pass;
        } else {
          if (r.fail == 0) {
            failure["d"] = d;
            failure["n"] = n;
            failure["q"] = q;
            r.first_failure = std::move(failure);
          }
          ++r.fail;
        }
      }
  return r;
}

json check_log2_soundness(SeededRng& rng, std::uint64_t) {
  GExpr ge = gen::random_gexpr(rng);
  FuncNN g = ge.func();
  static const long gammas[3][2] = {{2, 1}, {1, 1}, {1, 2}};
  const auto& gd = gammas[rng.below(3)];
  Rat gamma(gd[0], gd[1]);
  Nat d(1 + rng.below(2));
  BoundValue exact = midpoint_norm_rate(d, gamma, g, EvalMode::exact);
  BoundValue logv = midpoint_norm_rate(d, gamma, g, EvalMode::log2_upper);
  json inst{{"g", ge.str()}, {"gamma", gamma.str()}, {"d", d.str()}};
  if (logv.is_exact()) {
    inst["property"] = "log2 mode returns log2 tag";
    return inst;
  }
  if (!le_pow2(exact.exact_value(), logv.log2_bound())) {
    inst["property"] = "exact <= 2^log2_upper";
    inst["exact"] = exact.exact_value().str();
    inst["log2"] = logv.log2_bound().str();
    return inst;
  }
  BoundValue e2 = glb2_bound(gamma / Rat(2), g, EvalMode::exact);
  BoundValue l2 = glb2_bound(gamma / Rat(2), g, EvalMode::log2_upper);
  if (!le_pow2(e2.exact_value(), l2.log2_bound())) {
    inst["property"] = "glb2 exact <= 2^log2_upper";
    return inst;
  }
  return nullptr;
}

json check_rate_zero_const0(SeededRng& rng, std::uint64_t) {
  Rat uval(static_cast<long>(1 + rng.below(8)), static_cast<long>(1 + rng.below(8)));
  auto u = [uval](const Rat&) { return uval; };
  Nat d(1 + rng.below(3));
  Rat eps(static_cast<long>(1 + rng.below(8)), static_cast<long>(1 + rng.below(8)));
  BoundValue rate = metastability_rate(u, d, eps, const_fn(Nat(0)));
  if (!(rate.exact_value() == Nat(0)))
    return json{{"property", "rate(g=const 0) = 0"}, {"u", uval.str()}, {"d", d.str()},
                {"eps", eps.str()}, {"got", rate.exact_value().str()}};
  return nullptr;
}

json check_norm_bounded(SeededRng& rng, std::uint64_t) {
  auto inst = gen::random_family(rng, 3, 5);
  Vec x = gen::random_unit_ball(rng, inst.space);
  Nat n(rng.below(41));
  double norm = inst.space.norm(ergodic_average(inst.fam, x, n));
  if (norm > 1.0 + 1e-12)
    return json{{"property", "||x_n|| <= 1"}, {"recipe", inst.recipe},
                {"space", inst.space.description()}, {"n", n.str()}, {"norm", norm}};
  return nullptr;
}

json check_sep_vs_direct(SeededRng& rng, std::uint64_t) {
  auto inst = gen::random_family(rng, 3, 5);
  Vec x = gen::random_unit_ball(rng, inst.space);
  Nat n(rng.below(9));
  double dev = inst.space.distance(ergodic_average(inst.fam, x, n),
                                   ergodic_average_direct(inst.fam, x, n));
  if (dev > 1e-10)
    return json{{"property", "separable == direct"}, {"recipe", inst.recipe},
                {"space", inst.space.description()}, {"n", n.str()}, {"deviation", dev}};
  return nullptr;
}

json check_residual(SeededRng& rng, std::uint64_t) {
  auto inst = gen::random_family(rng, 3, 6);
  Vec x = gen::random_unit_ball(rng, inst.space);
  std::size_t q = rng.below(5);
  unsigned long n = q + rng.below(61 - q);
  auto w = ConvexWeights::random(inst.fam.d(), q, rng);
  auto rc = combination_residual(inst.fam, x, w, Nat(n));  // throws on violation
  if (rc.residual > rc.bound + 1e-9)
    return json{{"property", "residual <= bound"}, {"recipe", inst.recipe}, {"q", q},
                {"n", n}};
  return nullptr;
}

json check_midpoint(SeededRng& rng, std::uint64_t) {
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
  long steps = static_cast<long>(std::floor(dist * 64));
  Rat eps(std::max(1l, steps), 64);
  auto u = u_from_modulus(hilbert_modulus());
  if (!midpoint_norm_check(space, u, x, y, eps))
    return json{{"property", "midpoint drop"}, {"dim", space.dim()}, {"eps", eps.str()},
                {"dist", dist}, {"ny", ny}};
  return nullptr;
}

json check_uniform_weights(SeededRng& rng, std::uint64_t) {
  auto inst = gen::random_family(rng, 3, 5);
  Vec x = gen::random_unit_ball(rng, inst.space);
  std::size_t q = rng.below(4);
  Vec z = convex_combination(inst.fam, x, ConvexWeights::uniform(inst.fam.d(), q));
  Vec xq = ergodic_average(inst.fam, x, Nat(static_cast<unsigned long>(q)));
  double dev = inst.space.distance(z, xq);
  if (dev > 1e-12)
    return json{{"property", "uniform weights = average"}, {"recipe", inst.recipe},
                {"q", q}, {"deviation", dev}};
  return nullptr;
}

json check_triangle(SeededRng& rng, std::uint64_t) {
  bool euclid = rng.below(2) == 0;
  std::size_t dim = 2 + rng.below(5);
  static const long ps[3][2] = {{3, 2}, {3, 1}, {4, 1}};
  const auto& pd = ps[rng.below(3)];
  NormedSpace space =
      euclid ? NormedSpace::euclidean(dim) : NormedSpace::lp(Rat(pd[0], pd[1]), dim);
  Vec a = rng.vector(dim, -1.0, 1.0), b = rng.vector(dim, -1.0, 1.0);
  if (space.norm(add(a, b)) > space.norm(a) + space.norm(b) + 1e-12)
    return json{{"property", "triangle inequality"}, {"space", space.description()}};
  double lambda = rng.uniform(-3.0, 3.0);
  double lhs = space.norm(scale(a, lambda));
  double rhs = std::fabs(lambda) * space.norm(a);
  if (std::fabs(lhs - rhs) > 1e-12 * std::max(1.0, rhs))
    return json{{"property", "homogeneity"}, {"space", space.description()},
                {"lambda", lambda}};
  return nullptr;
}

json check_witness_below_rate(SeededRng& rng, std::uint64_t t) {
  auto u2 = [](const Rat&) { return Rat(2); };
  switch (t % 3) {
    case 0: {  // identity family: witness 0 for every eps and g
      NormedSpace space = NormedSpace::euclidean(2 + rng.below(4));
      OperatorFamily fam = build_family(space, "identity", 1 + rng.below(3), rng.fork(1));
      GExpr ge = gen::random_gexpr(rng, true);
      Rat eps = pick_eps(rng);
      auto w = metastability_witness(fam, gen::random_unit_ball(rng, space), eps,
                                     ge.func(), Nat(50));
      BoundValue rate = metastability_rate(u2, Nat(fam.d()), eps, ge.func());
      if (!w || !(*w == Nat(0)) || *w > rate.exact_value())
        return json{{"property", "identity witness 0 <= rate"}, {"g", ge.str()},
                    {"eps", eps.str()}};
      return nullptr;
    }
    case 1: {  // -identity, eps=1/2, g=const 1: witness exactly 1, rate 2448
      std::size_t dim = 2 + rng.below(4);
      NormedSpace space = NormedSpace::euclidean(dim);
      std::size_t d = 1 + rng.below(2);
      OperatorFamily fam = build_family(space, "negid", d, rng.fork(1));
      Vec x(dim, 0.0);
      x[rng.below(dim)] = 1.0;
      auto w = metastability_witness(fam, x, Rat(1, 2), const_fn(Nat(1)), Nat(100));
      BoundValue rate = metastability_rate(u2, Nat(d), Rat(1, 2), const_fn(Nat(1)));
      if (!w || !(*w == Nat(1)) || *w > rate.exact_value())
        return json{{"property", "negid witness 1 <= rate"}, {"d", d},
                    {"witness", w ? w->str() : "none"}};
      return nullptr;
    }
    default: {  // singleton window: witness 0, rate 0
      auto inst = gen::random_family(rng, 3, 5);
      Rat eps = pick_eps(rng);
      auto u1 = [](const Rat&) { return Rat(1); };
      auto w = metastability_witness(inst.fam, gen::random_unit_ball(rng, inst.space), eps,
                                     const_fn(Nat(0)), Nat(10));
      BoundValue rate = metastability_rate(u1, Nat(inst.fam.d()), eps, const_fn(Nat(0)));
      if (!w || !(*w == Nat(0)) || !(rate.exact_value() == Nat(0)))
        return json{{"property", "singleton window witness 0 = rate"},
                    {"recipe", inst.recipe}};
      return nullptr;
    }
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (trials == 0) throw config_error("trials must be >= 1");
  const bool rates_on = suite == "rates" || suite == "all";
  const bool spaces_on = suite == "spaces" || suite == "all";
  if (!rates_on && !spaces_on) throw config_error("unknown suite '" + suite + "'");

  SeededRng root(seed);
  std::vector<CheckResult> out;
  if (rates_on) {
    out.push_back(run_property("pairing_roundtrip_bound", trials, root.fork(1), check_pairing));
    out.push_back(run_property("monotone_majorant", trials, root.fork(2), check_majorant));
    out.push_back(
        run_property("iterate_monotonicity", trials, root.fork(3), check_iterate_monotone));
    out.push_back(run_property("glb_witness_single", trials, root.fork(4), check_glb_witness));
    out.push_back(
        run_property("glb_witness_double", trials, root.fork(5), check_glb2_witness));
    out.push_back(check_boundary_grid());
    out.push_back(
        run_property("log2_mode_soundness", trials, root.fork(6), check_log2_soundness));
    out.push_back(
        run_property("rate_zero_for_const0", trials, root.fork(7), check_rate_zero_const0));
  }
  if (spaces_on) {
    out.push_back(run_property("average_norm_bounded", trials, root.fork(8), check_norm_bounded));
    out.push_back(
        run_property("separable_vs_direct", trials, root.fork(9), check_sep_vs_direct));
    out.push_back(
        run_property("combination_residual_bound", trials, root.fork(10), check_residual));
    out.push_back(run_property("midpoint_drop", trials, root.fork(11), check_midpoint));
    out.push_back(
        run_property("uniform_weights_average", trials, root.fork(12), check_uniform_weights));
    out.push_back(
        run_property("norm_triangle_homogeneity", trials, root.fork(13), check_triangle));
    out.push_back(run_property("witness_below_rate", trials, root.fork(14),
                               check_witness_below_rate));
  }
  return out;
}

}  // namespace metastab
