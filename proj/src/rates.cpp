#include "metastab/rates.hpp"

#include <optional>
#include <vector>

#include "metastab/errors.hpp"
#include "metastab/limits.hpp"

namespace metastab::rates {

namespace {

// In log2_upper mode, values are evaluated exactly until they pass this many
// bits, then converted to log2 bounds.
constexpr std::size_t kLogSwitchBits = 8192;

std::uint64_t iterations_from_eps(const Rat& eps) {
  if (!eps.is_positive()) throw precondition_error("eps must be positive");
  Nat k = Rat::ceil_inverse(eps);
  if (!k.fits_u64())
    throw budget_error("ceil(1/eps) too large to iterate", static_cast<double>(k.bits()));
  return k.to_u64();
}

Rat checked_value(const std::function<Rat(const Nat&)>& a, const Nat& n) {
  Rat v = a(n);
  if (v.is_negative() || v > Rat(1))
    throw precondition_error("sequence value " + v.str() + " outside [0,1]");
  return v;
}

// residual_threshold(d, delta, q) <= 2^(L + shift) whenever q <= 2^L.
std::uint64_t threshold_log2_shift(const Nat& d, const Rat& delta) {
  if (!d.fits_u64()) throw budget_error("d too large", static_cast<double>(d.bits()));
  return d.to_u64() + ceil_log2(Rat::ceil_inverse(delta));
}

// pair_bound(g(n)) as a FuncNN, keeping g's monotonicity and range bound.
FuncNN pair_bound_after(const FuncNN& g) {
  FuncNN::Log2RangeBound log2;
  if (g.has_log2_bound()) {
    log2 = [g](const Rat& l) {
      // log2(2s^2+2s) <= 1 + 2*log2(s+1) <= 1 + 2*(log2(s) + 1)
      return Rat(2) * g.log2_range_bound(l) + Rat(3);
    };
  }
  return FuncNN([g](const Nat& n) { return pair_bound(g(n)); }, g.nondecreasing(),
                std::move(log2));
}

}  // namespace

Nat monotone_majorant(const FuncNN& g, const Nat& n) { return g.majorant(n); }

FuncNN window_end(const FuncNN& g) {
  FuncNN::Log2RangeBound log2;
  if (g.has_log2_bound()) {
    log2 = [g](const Rat& l) { return max(l, g.log2_range_bound(l)) + Rat(1); };
  }
  return FuncNN([g](const Nat& n) { return n + g(n); }, g.nondecreasing(), std::move(log2));
}

Nat iterate_compose(const FuncNN& f, const Nat& k, const Nat& start) {
  if (!k.fits_u64())
    throw budget_error("composition count too large", static_cast<double>(k.bits()));
  Nat v = start;
  for (std::uint64_t i = 0, n = k.to_u64(); i < n; ++i) v = f(v);
  return v;
}

Nat cantor_pair(const Nat& m, const Nat& n) {
  Nat w = m + n;
  return Nat::ceil_div(w * (w + Nat(1)), Nat(2)) + n;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& s) {
  // diagonal index w = floor((sqrt(8s+1) - 1) / 2) = ceil(isqrt(8s+1)/2) - 1
  Nat disc = Nat(8) * s + Nat(1);
  Nat w = Nat::ceil_div(Nat::isqrt(disc), Nat(2)) - Nat(1);
  Nat t = Nat::ceil_div(w * (w + Nat(1)), Nat(2));  // w(w+1) is even: exact
  Nat n = s - t;
  Nat m = w - n;
  return {m, n};
}

Nat pair_bound(const Nat& s) { return Nat(2) * s * (s + Nat(1)); }

Nat glb_bound(const Rat& eps, const FuncNN& g) {
  std::uint64_t k = iterations_from_eps(eps);
  Nat v(0);
  for (std::uint64_t i = 0; i < k; ++i) v = g.majorant(v);
  return v;
}

BoundValue glb2_bound(const Rat& eps, const FuncNN& g, EvalMode mode) {
  std::uint64_t k = iterations_from_eps(eps);
  FuncNN fg = pair_bound_after(g);

  if (mode == EvalMode::exact) {
    Nat v(0);
    for (std::uint64_t i = 0; i < k; ++i) v = fg.majorant(v);
    return BoundValue::exact(v);
  }

  std::optional<Nat> exact_v = Nat(0);
  Rat log_v(0);
  for (std::uint64_t i = 0; i < k; ++i) {
    if (exact_v) {
      try {
        Nat next = fg.majorant(*exact_v);
        if (next.bits() <= kLogSwitchBits) {
          exact_v = next;
          continue;
        }
        log_v = Rat(Nat(ceil_log2(next)));
        exact_v.reset();
        continue;
      } catch (const budget_error&) {
        log_v = fg.log2_range_bound(Rat(Nat(ceil_log2(*exact_v))));
        exact_v.reset();
        continue;
      }
    }
    log_v = fg.log2_range_bound(log_v);
  }
  if (exact_v) return BoundValue::log2_upper(Rat(Nat(ceil_log2(*exact_v))));
  return BoundValue::log2_upper(log_v);
}

Nat glb_witness(const std::function<Rat(const Nat&)>& a, const Rat& eps, const FuncNN& g) {
  if (!eps.is_positive()) throw precondition_error("eps must be positive");
  std::optional<Nat> bound;
  try {
    bound = glb_bound(eps, g);
  } catch (const budget_error&) {
    // bound not materializable; the search below still terminates via budgets
  }

  std::vector<Rat> values;   // values[s] = a(s)
  std::vector<Rat> prefmin;  // prefmin[s] = min(values[0..s])
  std::uint64_t work = 0;
  auto ensure = [&](std::uint64_t upto) {
    while (values.size() <= upto) {
      if (++work > RuntimeLimits::current().func_eval_budget)
        throw budget_error("witness search budget exceeded", 0.0);
      Rat v = checked_value(a, Nat(values.size()));
      values.push_back(v);
      prefmin.push_back(prefmin.empty() ? v : min(prefmin.back(), v));
    }
  };

  for (Nat n(0);; ++n) {
    if (bound && n > *bound)
      throw invariant_error("glb_witness: no witness at or below the bound " + bound->str());
    Nat gn = g(n);
    if (!gn.fits_u64() || !n.fits_u64())
      throw budget_error("witness window too large to scan", static_cast<double>(gn.bits()));
    std::uint64_t window = gn.to_u64();
    ensure(std::max(window, n.to_u64()));
    if (values[n.to_u64()] <= prefmin[window] + eps) return n;
  }
}

Glb2Witness glb2_witness(const std::function<Rat(const Nat&, const Nat&)>& a, const Rat& eps,
                         const FuncNN& g) {
  if (!eps.is_positive()) throw precondition_error("eps must be positive");
  const Nat bound = glb2_bound(eps, g, EvalMode::exact).exact_value();

  const std::function<Rat(const Nat&)> flat = [&a](const Nat& s) {
    auto [m, n] = cantor_unpair(s);
    return a(m, n);
  };

  std::vector<Rat> values;
  std::vector<Rat> prefmin;
  std::uint64_t work = 0;
  auto ensure = [&](std::uint64_t upto) {
    while (values.size() <= upto) {
      if (++work > RuntimeLimits::current().func_eval_budget)
        throw budget_error("witness search budget exceeded", 0.0);
      Rat v = checked_value(flat, Nat(values.size()));
      values.push_back(v);
      prefmin.push_back(prefmin.empty() ? v : min(prefmin.back(), v));
    }
  };

  for (Nat n(0);; ++n) {
    if (n > bound)
      throw invariant_error("glb2_witness: no witness at or below the bound " + bound.str());
    Nat window_nat = pair_bound(g(n));
    if (!window_nat.fits_u64() || !n.fits_u64())
      throw budget_error("witness window too large to scan",
                         static_cast<double>(window_nat.bits()));
    std::uint64_t window = window_nat.to_u64();
    ensure(std::max(window, n.to_u64()));
    if (values[n.to_u64()] <= prefmin[window] + eps) {
      auto [p, q] = cantor_unpair(n);
      return {n, p, q};
    }
  }
}

Nat residual_threshold(const Nat& d, const Rat& delta, const Nat& q) {
  if (d < Nat(1)) throw precondition_error("d must be >= 1");
  if (!delta.is_positive()) throw precondition_error("delta must be positive");
  if (!d.fits_u64()) throw budget_error("d too large", static_cast<double>(d.bits()));
  Nat scaled = Nat::pow2(d.to_u64()) * q;
  return max(q, Rat::ceil(Rat(scaled) / delta));
}

FuncNN window_after_threshold(const Rat& gamma, const FuncNN& g, const Nat& d) {
  if (!gamma.is_positive()) throw precondition_error("gamma must be positive");
  if (d < Nat(1)) throw precondition_error("d must be >= 1");
  const Rat delta = gamma / Rat(2);
  FuncNN we = window_end(g);

  FuncNN::Log2RangeBound log2;
  if (we.has_log2_bound()) {
    // residual_threshold(d, delta, Q) <= max(Q, 2^d * Q * ceil(1/delta))
    std::uint64_t shift = threshold_log2_shift(d, delta);
    log2 = [we, shift](const Rat& l) {
      return we.log2_range_bound(l + Rat(Nat(shift)));
    };
  }
  return FuncNN(
      [we, d, delta](const Nat& n) { return we(residual_threshold(d, delta, n)); },
      we.nondecreasing(), std::move(log2));
}

BoundValue midpoint_norm_rate(const Nat& d, const Rat& gamma, const FuncNN& g, EvalMode mode) {
  if (d < Nat(1)) throw precondition_error("d must be >= 1");
  if (!gamma.is_positive()) throw precondition_error("gamma must be positive");
  const Rat delta = gamma / Rat(2);
  BoundValue inner = glb2_bound(delta, window_after_threshold(gamma, g, d), mode);
  if (inner.is_exact()) return BoundValue::exact(residual_threshold(d, delta, inner.exact_value()));
  return BoundValue::log2_upper(inner.log2_bound() + Rat(Nat(threshold_log2_shift(d, delta))));
}

BoundValue metastability_rate(const std::function<Rat(const Rat&)>& u, const Nat& d,
                              const Rat& eps, const FuncNN& g, EvalMode mode) {
  Rat drop = u(eps);
  if (!drop.is_positive())
    throw precondition_error("u(eps) must be positive, got " + drop.str());
  return midpoint_norm_rate(d, drop / Rat(2), g, mode);
}

BoundValue metastability_rate_scaled(const std::function<Rat(const Rat&)>& u, const Nat& d,
                                     const Rat& b, const Rat& eps, const FuncNN& g,
                                     EvalMode mode) {
  if (!b.is_positive()) throw precondition_error("norm bound b must be positive");
  return metastability_rate(u, d, eps / b, g, mode);
}

BoundaryCount boundary_count(const Nat& n, const Nat& q, const Nat& d) {
  if (d < Nat(1)) throw precondition_error("d must be >= 1");
  if (q > n) throw precondition_error("requires Q <= n");
  if (!d.fits_u64()) throw budget_error("d too large", static_cast<double>(d.bits()));
  const std::uint64_t du = d.to_u64();
  const Nat m = n + Nat(1);
  Nat count = Nat::pow(m + q, du) - Nat::pow(m - q, du);
  Nat bound = Nat::pow2(du) * Nat::pow(m, du - 1) * q;
  if (count > bound)
    throw invariant_error("boundary_count: " + count.str() + " exceeds bound " + bound.str());
  return {count, bound};
}

}  // namespace metastab::rates
