#include "metastab/space.hpp"

#include <cmath>

#include "metastab/errors.hpp"

namespace metastab {

namespace {

Modulus lp_modulus(const Rat& p) {
  if (p >= Rat(2)) {
    Nat m = Rat::ceil(p);
    if (!m.fits_u64() || m.to_u64() > 64)
      throw precondition_error("lp modulus: exponent too large");
    std::uint64_t e = m.to_u64();
    Rat inv_m(Nat(1), m);
    return Modulus(
        Modulus::Kind::user,
        [e, inv_m](const Rat& eps) {
          Rat half = eps / Rat(2);
          Rat pw(1);
          for (std::uint64_t i = 0; i < e; ++i) pw = pw * half;
          return pw * inv_m;
        },
        /*nondecreasing_factorization=*/true, "lp-power");
  }
  Rat c = (p - Rat(1)) / Rat(8);
  return Modulus(
      Modulus::Kind::user, [c](const Rat& eps) { return c * eps * eps; },
      /*nondecreasing_factorization=*/true, "lp-quadratic");
}

}  // namespace

NormedSpace NormedSpace::euclidean(std::size_t dim) {
  if (dim == 0) throw precondition_error("space dimension must be positive");
  return NormedSpace(dim, NormKind::euclidean, Rat(2), hilbert_modulus(),
                     "l2:" + std::to_string(dim));
}

NormedSpace NormedSpace::lp(const Rat& p, std::size_t dim) {
  if (dim == 0) throw precondition_error("space dimension must be positive");
  if (!(p > Rat(1))) throw precondition_error("lp space requires p > 1");
  return NormedSpace(dim, NormKind::ell_p, p, lp_modulus(p),
                     "lp:" + p.str() + ":" + std::to_string(dim));
}

double NormedSpace::norm(const Vec& v) const {
  if (v.size() != dim_) throw precondition_error("norm: dimension mismatch");
  if (kind_ == NormKind::euclidean) return std::sqrt(dot(v, v));
  double p = p_.to_double();
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x), p);
  return std::pow(s, 1.0 / p);
}

double NormedSpace::distance(const Vec& x, const Vec& y) const { return norm(sub(x, y)); }

NormedSpace NormedSpace::with_modulus(Modulus m) const {
  NormedSpace s = *this;
  s.modulus_ = std::move(m);
  return s;
}

}  // namespace metastab
