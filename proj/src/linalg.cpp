#include "metastab/linalg.hpp"

#include <algorithm>

#include "metastab/errors.hpp"

namespace metastab {

Vec matvec(const Mat& m, const Vec& v) {
  if (v.size() != m.n) throw precondition_error("matvec: dimension mismatch");
  Vec r(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Mat matmul(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw precondition_error("matmul: dimension mismatch");
  Mat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      double xv = x.at(i, k);
      if (xv == 0.0) continue;
      for (std::size_t j = 0; j < x.n; ++j) r.at(i, j) += xv * y.at(k, j);
    }
  return r;
}

Mat transpose(const Mat& m) {
  Mat r(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r.at(j, i) = m.at(i, j);
  return r;
}

Vec add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw precondition_error("add: dimension mismatch");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw precondition_error("sub: dimension mismatch");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Vec scale(const Vec& x, double s) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * s;
  return r;
}

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw precondition_error("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs_diff(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw precondition_error("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::fabs(x.a[i] - y.a[i]));
  return m;
}

double rowcol_norm(const Mat& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
      row += std::fabs(m.at(i, j));
      col += std::fabs(m.at(j, i));
    }
    best = std::max({best, row, col});
  }
  return best;
}

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace metastab
