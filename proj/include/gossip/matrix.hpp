#ifndef GOSSIP_MATRIX_HPP
#define GOSSIP_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace gossip {

// Dense row-major matrix of doubles. Problem sizes here are desk scale
// (dimension nm in the tens), so no sparsity or blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

// Left action v^T A, the form weight-vector invariance checks use.
std::vector<double> left_apply(const std::vector<double>& v, const Matrix& a);

// Right action A x, the form state updates use.
std::vector<double> apply(const Matrix& a, const std::vector<double>& x);

double max_row_sum_deviation(const Matrix& a);
double min_entry(const Matrix& a);
bool is_row_stochastic(const Matrix& a, double tolerance);

// Principal submatrix on the given (ascending) index set.
Matrix principal_submatrix(const Matrix& a, const std::vector<int>& indices);

// max_i |a_i - b_i|; vectors must have equal length.
double inf_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace gossip

#endif
