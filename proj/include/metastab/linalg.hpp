#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace metastab {

using Vec = std::vector<double>;

/// Dense square matrix, row-major.
struct Mat {
  std::size_t n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static Mat identity(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

Vec matvec(const Mat& m, const Vec& v);
Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& m);

Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Vec& x, double s);
double dot(const Vec& x, const Vec& y);

/// Largest absolute entry of x - y (0 for the zero matrix).
double max_abs_diff(const Mat& x, const Mat& y);

/// max(max row abs sum, max column abs sum) = max(induced l_inf, induced l_1)
/// norm; dominates every induced l_p norm by interpolation.
double rowcol_norm(const Mat& m);

bool all_finite(const Vec& v);

}  // namespace metastab
