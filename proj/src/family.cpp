#include "metastab/family.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "metastab/errors.hpp"

namespace metastab {

namespace {

constexpr double kContractSlack = 1e-10;
constexpr double kCommuteTol = 1e-10;
constexpr int kPowerIters = 200;
constexpr std::size_t kSampleCount = 10'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Rat parse_rat(const std::string& text, const std::string& what) {
  try {
    return Rat(text);
  } catch (const precondition_error&) {
    throw construction_error("recipe: cannot parse " + what + " '" + text + "'");
  }
}

// Accepts rationals ("1", "-1/2") and decimals ("0.25").
double parse_entry(const std::string& text) {
  if (text.find('.') != std::string::npos) {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size())
      throw construction_error("recipe: cannot parse entry '" + text + "'");
    return v;
  }
  return parse_rat(text, "entry").to_double();
}

void check_contractive(const NormedSpace& space, const LinearOperator& op, SeededRng rng) {
  const Mat& m = op.matrix;
  if (space.kind() == NormKind::euclidean) {
    double nrm = operator_norm_euclidean(m, rng);
    if (nrm > 1.0 + kContractSlack)
      throw construction_error("operator '" + op.provenance + "' has euclidean norm " +
                               std::to_string(nrm));
    return;
  }
  // ell_p: basis vectors plus seeded random unit vectors
  for (std::size_t j = 0; j < m.n; ++j) {
    Vec e(m.n, 0.0);
    e[j] = 1.0;
    if (space.norm(matvec(m, e)) > 1.0 + kContractSlack)
      throw construction_error("operator '" + op.provenance + "' expands basis vector " +
                               std::to_string(j));
  }
  for (std::size_t t = 0; t < kSampleCount; ++t) {
    Vec v = rng.vector(m.n, -1.0, 1.0);
    double nv = space.norm(v);
    if (nv < 1e-9) continue;
    v = scale(v, 1.0 / nv);
    if (space.norm(matvec(m, v)) > 1.0 + kContractSlack)
      throw construction_error("operator '" + op.provenance + "' expands a sampled vector");
  }
}

Mat block_rotation(std::size_t dim, const Rat& turns) {
  // angle = pi * turns; quarter turns get exact {0, +-1} entries
  double c, s;
  Rat doubled = turns * Rat(2);
  if (doubled.denominator() == 1) {
    mpz_class rem = doubled.numerator() % 4;  // sign follows the numerator
    long k = (rem.get_si() + 4) % 4;
    c = (k == 0) ? 1.0 : (k == 2) ? -1.0 : 0.0;
    s = (k == 1) ? 1.0 : (k == 3) ? -1.0 : 0.0;
  } else {
    double angle = M_PI * turns.to_double();
    c = std::cos(angle);
    s = std::sin(angle);
  }
  Mat m = Mat::identity(dim);
  for (std::size_t b = 0; b + 1 < dim; b += 2) {
    m.at(b, b) = c;
    m.at(b, b + 1) = -s;
    m.at(b + 1, b) = s;
    m.at(b + 1, b + 1) = c;
  }
  return m;
}

Mat cyclic_shift(std::size_t dim) {
  Mat p(dim);
  for (std::size_t i = 0; i < dim; ++i) p.at((i + 1) % dim, i) = 1.0;
  return p;
}

std::size_t resolve_d(std::size_t recipe_d, std::size_t requested_d, const std::string& name) {
  if (requested_d != 0 && recipe_d != 0 && requested_d != recipe_d)
    throw construction_error("recipe '" + name + "' defines " + std::to_string(recipe_d) +
                             " operators but d=" + std::to_string(requested_d) +
                             " was requested");
  std::size_t d = recipe_d != 0 ? recipe_d : (requested_d != 0 ? requested_d : 1);
  if (d == 0) throw construction_error("family needs at least one operator");
  return d;
}

}  // namespace

OperatorFamily::OperatorFamily(NormedSpace space, std::vector<LinearOperator> ops)
    : space_(std::move(space)), ops_(std::move(ops)) {
  if (ops_.empty()) throw construction_error("family needs at least one operator");
  SeededRng check_rng(0x5eedc0de);
  for (const auto& op : ops_) {
    if (op.matrix.n != space_.dim())
      throw construction_error("operator dimension mismatch in '" + op.provenance + "'");
    check_contractive(space_, op, check_rng.fork(0));
  }
  for (std::size_t l = 0; l < ops_.size(); ++l)
    for (std::size_t m = l + 1; m < ops_.size(); ++m) {
      double c = max_abs_diff(matmul(ops_[l].matrix, ops_[m].matrix),
                              matmul(ops_[m].matrix, ops_[l].matrix));
      if (c > kCommuteTol)
        throw construction_error("operators " + std::to_string(l) + " and " +
                                 std::to_string(m) + " do not commute (|[T,S]| = " +
                                 std::to_string(c) + ")");
    }
}

Vec OperatorFamily::apply_multi(const std::vector<std::uint64_t>& exponents,
                                const Vec& x) const {
  if (exponents.size() != d())
    throw precondition_error("apply_multi: exponent count != family size");
  Vec v = x;
  for (std::size_t l = 0; l < d(); ++l)
    for (std::uint64_t k = 0; k < exponents[l]; ++k) v = matvec(ops_[l].matrix, v);
  return v;
}

double operator_norm_euclidean(const Mat& m, SeededRng rng) {
  Mat gram = matmul(transpose(m), m);
  Vec v = rng.vector(m.n, -1.0, 1.0);
  double nv = std::sqrt(dot(v, v));
  if (nv < 1e-12) {
    v.assign(m.n, 0.0);
    v[0] = 1.0;
    nv = 1.0;
  }
  v = scale(v, 1.0 / nv);
  double lambda = 0.0;
  for (int it = 0; it < kPowerIters; ++it) {
    Vec w = matvec(gram, v);
    double next = dot(v, w);  // Rayleigh quotient for unit v
    double nw = std::sqrt(dot(w, w));
    if (nw < 1e-300) return 0.0;
    v = scale(w, 1.0 / nw);
    if (it > 0 && std::fabs(next - lambda) <= 1e-10 * std::max(1.0, std::fabs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

OperatorFamily build_family(const NormedSpace& space, const std::string& recipe,
                            std::size_t requested_d, SeededRng rng) {
  const std::size_t dim = space.dim();
  auto parts = split(recipe, ':');
  const std::string& name = parts[0];
  const std::string args = parts.size() > 1 ? recipe.substr(name.size() + 1) : "";
  std::vector<LinearOperator> ops;

  if (name == "identity" || name == "negid") {
    if (!args.empty()) throw construction_error("recipe '" + name + "' takes no arguments");
    std::size_t d = resolve_d(0, requested_d, name);
    Mat m = Mat::identity(dim);
    if (name == "negid")
      for (auto& e : m.a) e = -e;
    for (std::size_t l = 0; l < d; ++l) ops.push_back({m, name});
  } else if (name == "diag") {
    auto groups = split(args, ';');
    resolve_d(groups.size(), requested_d, name);
    for (const auto& group : groups) {
      auto entries = split(group, ',');
      if (entries.size() != dim)
        throw construction_error("diag: group '" + group + "' has " +
                                 std::to_string(entries.size()) + " entries, need " +
                                 std::to_string(dim));
      Mat m(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        double e = parse_entry(entries[j]);
        if (std::fabs(e) > 1.0)
          throw construction_error("diag: entry " + entries[j] + " outside [-1, 1]");
        m.at(j, j) = e;
      }
      ops.push_back({m, "diag:" + group});
    }
  } else if (name == "rot") {
    auto angles = split(args, ',');
    resolve_d(angles.size(), requested_d, name);
    for (const auto& text : angles) {
      Rat turns = parse_rat(text, "rotation");
      if (space.kind() != NormKind::euclidean && (turns * Rat(2)).denominator() != 1)
        throw construction_error(
            "rot: non-quarter-turn rotations contract only the euclidean norm");
      ops.push_back({block_rotation(dim, turns), "rot:" + text});
    }
  } else if (name == "poly") {
    auto groups = split(args, ';');
    resolve_d(groups.size(), requested_d, name);
    // one shared seeded base contraction; scaling by the row/column-sum norm
    // makes it contractive in every ell_p simultaneously
    Mat base(dim);
    for (auto& e : base.a) e = rng.uniform(-1.0, 1.0);
    double nrm = rowcol_norm(base);
    if (nrm > 1.0)
      for (auto& e : base.a) e /= nrm;
    for (const auto& group : groups) {
      auto coeffs = split(group, ',');
      Mat acc(dim);
      Mat power = Mat::identity(dim);
      double abs_sum = 0.0;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        double c = parse_entry(coeffs[i]);
        abs_sum += std::fabs(c);
        if (i > 0) power = matmul(power, base);
        for (std::size_t k = 0; k < acc.a.size(); ++k) acc.a[k] += c * power.a[k];
      }
      if (abs_sum > 1.0 + 1e-15)
        throw construction_error("poly: coefficient absolute sum " +
                                 std::to_string(abs_sum) + " exceeds 1");
      ops.push_back({acc, "poly:" + group});
    }
  } else if (name == "permdecay") {
    Rat lambda = args.empty() ? Rat(1) : parse_rat(args, "decay");
    if (!lambda.is_positive() || lambda > Rat(1))
      throw construction_error("permdecay: decay must lie in (0, 1]");
    std::size_t d = resolve_d(0, requested_d, name);
    Mat step = cyclic_shift(dim);
    double lam = lambda.to_double();
    for (auto& e : step.a) e *= lam;
    Mat cur = Mat::identity(dim);
    for (std::size_t l = 0; l < d; ++l) {
      cur = matmul(cur, step);
      ops.push_back({cur, "permdecay:" + lambda.str() + "^" + std::to_string(l + 1)});
    }
  } else {
    throw construction_error("unknown recipe '" + name + "'");
  }

  return OperatorFamily(space, std::move(ops));
}

}  // namespace metastab
