/* Copyright 2026 the ctlift authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

//! \file tensor.hpp
//! Dense row-major containers for small multi-index arrays (n <= 8 at desk
//! scale) plus the little linear algebra the library needs.  Slot orders for
//! the geometric objects stored in these containers are fixed in
//! docs/conventions.md.

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ctlift {

using Vec = std::vector<double>;

class Mat {
 public:
  Mat() = default;
  explicit Mat(int n) : n_(n), v_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }
  double& operator()(int i, int j) { return v_[idx(i, j)]; }
  double operator()(int i, int j) const { return v_[idx(i, j)]; }
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_ = 0;
  std::vector<double> v_;
};

class Ten3 {
 public:
  Ten3() = default;
  explicit Ten3(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int a, int b, int c) { return v_[idx(a, b, c)]; }
  double operator()(int a, int b, int c) const { return v_[idx(a, b, c)]; }
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t idx(int a, int b, int c) const {
    assert(a >= 0 && a < n_ && b >= 0 && b < n_ && c >= 0 && c < n_);
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }
  int n_ = 0;
  std::vector<double> v_;
};

class Ten4 {
 public:
  Ten4() = default;
  explicit Ten4(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int a, int b, int c, int d) { return v_[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const {
    return v_[idx(a, b, c, d)];
  }
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    assert(a >= 0 && a < n_ && b >= 0 && b < n_ && c >= 0 && c < n_ && d >= 0 &&
           d < n_);
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }
  int n_ = 0;
  std::vector<double> v_;
};

inline double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const Mat& m) { return max_abs(m.data()); }
inline double max_abs(const Ten3& t) { return max_abs(t.data()); }
inline double max_abs(const Ten4& t) { return max_abs(t.data()); }

inline double max_abs_diff(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return max_abs_diff(a.data(), b.data());
}
inline double max_abs_diff(const Ten3& a, const Ten3& b) {
  return max_abs_diff(a.data(), b.data());
}
inline double max_abs_diff(const Ten4& a, const Ten4& b) {
  return max_abs_diff(a.data(), b.data());
}

// Residual |a - b| / max(1, |a|, |b|) used by the "relative to 1e-6" style
// contracts; absolute near zero, relative for large entries.
inline double rel_residual(double diff, double scale_a, double scale_b) {
  return diff / std::max({1.0, scale_a, scale_b});
}

template <class T>
double rel_residual(const T& a, const T& b) {
  return rel_residual(max_abs_diff(a, b), max_abs(a), max_abs(b));
}

inline Vec mat_vec(const Mat& m, const Vec& x) {
  const int n = m.dim();
  Vec y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  const int n = a.dim();
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// max_ij |(a*b)_ij - delta_ij|
inline double identity_residual(const Mat& a, const Mat& b) {
  const Mat p = mat_mul(a, b);
  const int n = a.dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m = std::max(m, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  return m;
}

// Gaussian elimination with partial pivoting; dimensions here never exceed
// 2n = 16, so no fancier factorization is warranted.
inline Vec solve_linear(Mat a, Vec b) {
  const int n = a.dim();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_linear: dimension mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-14)
      throw std::runtime_error("solve_linear: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    const double inv = 1.0 / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a(r, j) * x[j];
    x[r] = s / a(r, r);
  }
  return x;
}

inline Mat invert(const Mat& a) {
  const int n = a.dim();
  Mat inv(n);
  for (int col = 0; col < n; ++col) {
    Vec e(n, 0.0);
    e[col] = 1.0;
    Vec x = solve_linear(a, e);
    for (int r = 0; r < n; ++r) inv(r, col) = x[r];
  }
  return inv;
}

}  // namespace ctlift
