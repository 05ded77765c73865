// Copyright 2026 The lfmark Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lfmark/spectral.hpp"

namespace lfmark {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kTolerance = 1e-12;

double column_dot(const Matrix& m, int p, int q) {
  double acc = 0.0;
  for (int r = 0; r < m.rows(); ++r) acc += m(r, p) * m(r, q);
  return acc;
}

void rotate_columns(Matrix& m, int p, int q, double c, double s) {
  for (int r = 0; r < m.rows(); ++r) {
    const double a = m(r, p);
    const double b = m(r, q);
    m(r, p) = c * a - s * b;
    m(r, q) = s * a + c * b;
  }
}

// Replaces column `col` of u with a unit vector orthogonal to the columns in
// `done` (used for zero singular values).
void complete_column(Matrix& u, int col, const std::vector<int>& done) {
  const int n = u.rows();
  for (int e = 0; e < n; ++e) {
    std::vector<double> x(n, 0.0);
    x[e] = 1.0;
    for (int k : done) {
      double d = 0.0;
      for (int r = 0; r < n; ++r) d += x[r] * u(r, k);
      for (int r = 0; r < n; ++r) x[r] -= d * u(r, k);
    }
    const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (norm > 1e-6) {
      for (int r = 0; r < n; ++r) u(r, col) = x[r] / norm;
      return;
    }
  }
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const double v = a(r, k);
      for (int c = 0; c < b.cols(); ++c) out(r, c) += v * b(k, c);
    }
  return out;
}

SvdResult svd_small(const Matrix& m) {
  const int n = m.rows();
  if (n != m.cols() || n < 1 || n > 8) {
    throw std::invalid_argument("svd_small: expected a square matrix with n <= 8");
  }
  if (!std::ranges::all_of(m.data(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("svd_small: non-finite entry");
  }

  Matrix w = m;
  Matrix v = Matrix::identity(n);
  double frob2 = 0.0;
  for (double x : m.data()) frob2 += x * x;
  // Rotations against a dominant column leave round-off of order
  // eps * |M| * |w_p| in gamma; below that the relative test cannot settle.
  const double noise = 1e-15 * std::sqrt(frob2);
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = column_dot(w, p, p);
        const double beta = column_dot(w, q, q);
        const double gamma = column_dot(w, p, q);
        if (std::abs(gamma) <= kTolerance * std::sqrt(alpha * beta) ||
            std::abs(gamma) <= noise * std::sqrt(std::max(alpha, beta))) {
          continue;
        }
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(w, p, q, c, s);
        rotate_columns(v, p, q, c, s);
      }
    }
  }
  if (!converged) throw std::runtime_error("svd_small: no convergence after 100 sweeps");

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) sigma[j] = std::sqrt(column_dot(w, j, j));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sigma[a] > sigma[b]; });

  SvdResult out{Matrix(n, n), std::vector<double>(n), Matrix(n, n)};
  const double scale = sigma[order[0]];
  std::vector<int> filled;
  std::vector<int> zero_cols;
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.s[j] = sigma[src];
    for (int r = 0; r < n; ++r) out.v(r, j) = v(r, src);
    if (sigma[src] > 1e-14 * std::max(scale, 1e-300)) {
      for (int r = 0; r < n; ++r) out.u(r, j) = w(r, src) / sigma[src];
      filled.push_back(j);
    } else {
      zero_cols.push_back(j);
    }
  }
  // Tiny columns inherit round-off from the skipped rotations; restore
  // orthogonality against the dominant ones.
  for (std::size_t i = 1; i < filled.size(); ++i) {
    const int j = filled[i];
    for (std::size_t prev = 0; prev < i; ++prev) {
      const int k = filled[prev];
      double d = 0.0;
      for (int r = 0; r < n; ++r) d += out.u(r, j) * out.u(r, k);
      for (int r = 0; r < n; ++r) out.u(r, j) -= d * out.u(r, k);
    }
    double norm = 0.0;
    for (int r = 0; r < n; ++r) norm += out.u(r, j) * out.u(r, j);
    norm = std::sqrt(norm);
    for (int r = 0; r < n; ++r) out.u(r, j) /= norm;
  }
  for (int j : zero_cols) {
    complete_column(out.u, j, filled);
    filled.push_back(j);
  }
  return out;
}

}  // namespace lfmark
