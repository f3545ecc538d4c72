#include "metastab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <vector>

#include "metastab/errors.hpp"
#include "metastab/rng.hpp"

namespace metastab {

namespace {

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

Rat parse_rat_cfg(const std::string& text, const std::string& what) {
  try {
    return Rat(text);
  } catch (const precondition_error& e) {
    throw config_error("cannot parse " + what + " '" + text + "': " + e.what());
  }
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw config_error("cannot parse " + what + " '" + text + "'");
  }
}

}  // namespace

SpaceSpec SpaceSpec::parse(const std::string& text) {
  auto parts = split(text, ':');
  SpaceSpec s;
  if (parts[0] == "l2" && parts.size() == 2) {
    s.kind = NormKind::euclidean;
    s.p = Rat(2);
    s.dim = parse_size(parts[1], "space dimension");
  } else if (parts[0] == "lp" && parts.size() == 3) {
    s.kind = NormKind::ell_p;
    s.p = parse_rat_cfg(parts[1], "space exponent");
    s.dim = parse_size(parts[2], "space dimension");
    if (!(s.p > Rat(1))) throw config_error("lp space requires p > 1");
  } else {
    throw config_error("bad space '" + text + "' (want l2:DIM or lp:P:DIM)");
  }
  if (s.dim == 0) throw config_error("space dimension must be positive");
  return s;
}

std::string SpaceSpec::str() const {
  return kind == NormKind::euclidean ? "l2:" + std::to_string(dim)
                                     : "lp:" + p.str() + ":" + std::to_string(dim);
}

ModulusSpec ModulusSpec::parse(const std::string& text) {
  ModulusSpec m;
  if (text == "hilbert") {
    m.kind = Kind::hilbert;
  } else if (text.rfind("file:", 0) == 0) {
    m.kind = Kind::file;
    m.path = text.substr(5);
    if (m.path.empty()) throw config_error("empty modulus file path");
  } else {
    throw config_error("bad modulus '" + text + "' (want hilbert or file:PATH)");
  }
  return m;
}

std::string ModulusSpec::str() const {
  switch (kind) {
    case Kind::space_default:
      return "space-default";
    case Kind::hilbert:
      return "hilbert";
    case Kind::file:
      return "file:" + path;
  }
  return "?";
}

Modulus load_modulus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open modulus file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("modulus file " + path + ": " + e.what());
  }
  const bool factor = j.value("nondecreasing_factorization", false);
  const std::string form = j.value("form", "");
  if (form == "power") {
    Rat coeff = parse_rat_cfg(j.at("coeff").get<std::string>(), "modulus coeff");
    std::uint64_t expo = j.at("exponent").get<std::uint64_t>();
    if (!coeff.is_positive()) throw config_error("modulus coeff must be positive");
    Rat at2(1);
    for (std::uint64_t i = 0; i < expo; ++i) at2 = at2 * Rat(2);
    if (coeff * at2 > Rat(1))
      throw config_error("modulus file " + path + ": coeff*2^exponent exceeds 1");
    return Modulus(
        Modulus::Kind::user,
        [coeff, expo](const Rat& eps) {
          Rat pw(1);
          for (std::uint64_t i = 0; i < expo; ++i) pw = pw * eps;
          return coeff * pw;
        },
        factor, "power(" + coeff.str() + ", " + std::to_string(expo) + ")");
  }
  if (form == "table") {
    std::vector<std::pair<Rat, Rat>> entries;
    for (const auto& e : j.at("entries")) {
      Rat eps = parse_rat_cfg(e.at(0).get<std::string>(), "table eps");
      Rat val = parse_rat_cfg(e.at(1).get<std::string>(), "table value");
      if (!val.is_positive() || val > Rat(1))
        throw config_error("modulus table value " + val.str() + " outside (0,1]");
      if (!entries.empty()) {
        if (!(eps > entries.back().first))
          throw config_error("modulus table eps values must strictly increase");
        if (val < entries.back().second)
          throw config_error("modulus table values must be nondecreasing");
      }
      entries.emplace_back(std::move(eps), std::move(val));
    }
    if (entries.empty()) throw config_error("modulus table is empty");
    return Modulus(
        Modulus::Kind::user,
        [entries](const Rat& eps) -> Rat {
          // floor lookup: the value at the largest tabulated point <= eps is
          // a valid (weaker) modulus at eps
          const Rat* best = nullptr;
          for (const auto& [e, v] : entries)
            if (!(e > eps)) best = &v;
          if (!best)
            throw modulus_error("modulus table has no entry at or below eps = " + eps.str());
          return *best;
        },
        factor, "table[" + std::to_string(entries.size()) + "]");
  }
  throw config_error("modulus file " + path + ": form must be 'power' or 'table'");
}

void ExperimentConfig::validate() const {
  if (!eps.is_positive()) throw config_error("--eps must be positive");
  if (!norm_bound.is_positive()) throw config_error("--norm-bound must be positive");
  if (digit_budget == 0) throw config_error("--digit-budget must be positive");
  if (trials == 0) throw config_error("--trials must be >= 1");
  if (u_override && !u_override->is_positive())
    throw config_error("--u-override must be positive");
  if (suite != "rates" && suite != "spaces" && suite != "all")
    throw config_error("--suite must be rates, spaces or all");
  try {
    GExpr::parse(g_text);
  } catch (const parse_error& e) {
    throw config_error("--g: " + std::string(e.what()));
  }
}

NormedSpace make_space(const ExperimentConfig& cfg) {
  NormedSpace s = cfg.space.kind == NormKind::euclidean
                      ? NormedSpace::euclidean(cfg.space.dim)
                      : NormedSpace::lp(cfg.space.p, cfg.space.dim);
  switch (cfg.modulus.kind) {
    case ModulusSpec::Kind::space_default:
      return s;
    case ModulusSpec::Kind::hilbert:
      return s.with_modulus(hilbert_modulus());
    case ModulusSpec::Kind::file:
      return s.with_modulus(load_modulus_file(cfg.modulus.path));
  }
  return s;
}

FuncNN make_g(const ExperimentConfig& cfg) { return GExpr::parse(cfg.g_text).func(); }

std::function<Rat(const Rat&)> make_u(const ExperimentConfig& cfg, const NormedSpace& space) {
  if (cfg.u_override) {
    Rat c = *cfg.u_override;
    return [c](const Rat&) { return c; };
  }
  return u_from_modulus(space.modulus());
}

Vec make_x(const ExperimentConfig& cfg, const NormedSpace& space) {
  const std::size_t dim = space.dim();
  const std::string& spec = cfg.x_spec;
  Vec v(dim, 0.0);
  if (spec.size() >= 2 && spec[0] == 'e' &&
      std::isdigit(static_cast<unsigned char>(spec[1]))) {
    std::size_t k = parse_size(spec.substr(1), "basis index");
    if (k < 1 || k > dim)
      throw config_error("--x " + spec + ": basis index out of range 1.." +
                         std::to_string(dim));
    v[k - 1] = 1.0;
    return v;
  }
  if (spec == "ones") {
    v.assign(dim, 1.0);
    return scale(v, 1.0 / space.norm(v));
  }
  if (spec == "rand") {
    SeededRng rng = SeededRng(cfg.seed).fork(0xafed);
    Vec r = rng.vector(dim, -1.0, 1.0);
    double n = space.norm(r);
    if (n < 1e-9) {
      r.assign(dim, 0.0);
      r[0] = 1.0;
      n = 1.0;
    }
    return scale(r, 1.0 / n);
  }
  auto parts = split(spec, ',');
  if (parts.size() != dim)
    throw config_error("--x: got " + std::to_string(parts.size()) + " coordinates for dim " +
                       std::to_string(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    try {
      std::size_t used = 0;
      v[i] = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw config_error("--x: cannot parse coordinate '" + parts[i] + "'");
    }
  }
  if (!all_finite(v)) throw config_error("--x: coordinates must be finite");
  return v;
}

Rat parse_u_override(const std::string& text) {
  std::string t = text;
  if (t.rfind("const ", 0) == 0) t = t.substr(6);
  Rat u = parse_rat_cfg(t, "--u-override");
  if (!u.is_positive()) throw config_error("--u-override must be positive");
  return u;
}

}  // namespace metastab
