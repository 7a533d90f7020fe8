#include "gossip/matrix.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>

namespace gossip {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, fill) {
  assert(rows >= 0 && cols >= 0);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n, 0.0);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

std::vector<double> left_apply(const std::vector<double>& v, const Matrix& a) {
  assert(static_cast<int>(v.size()) == a.rows());
  std::vector<double> out(a.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (int j = 0; j < a.cols(); ++j) {
      out[j] += vi * a(i, j);
    }
  }
  return out;
}

std::vector<double> apply(const Matrix& a, const std::vector<double>& x) {
  assert(static_cast<int>(x.size()) == a.cols());
  std::vector<double> out(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
      acc += a(i, j) * x[j];
    }
    out[i] = acc;
  }
  return out;
}

double max_row_sum_deviation(const Matrix& a) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < a.cols(); ++j) sum += a(i, j);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double min_entry(const Matrix& a) {
  double lowest = a.rows() > 0 && a.cols() > 0 ? a(0, 0) : 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) lowest = std::min(lowest, a(i, j));
  return lowest;
}

bool is_row_stochastic(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return min_entry(a) >= -tolerance && max_row_sum_deviation(a) <= tolerance;
}

Matrix principal_submatrix(const Matrix& a, const std::vector<int>& indices) {
  const int k = static_cast<int>(indices.size());
  Matrix out(k, k, 0.0);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out(r, c) = a(indices[r], indices[c]);
  return out;
}

double inf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  assert(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace gossip
