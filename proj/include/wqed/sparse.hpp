// Copyright 2026 The wqed Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace wqed {

using Complex = std::complex<double>;

/// Entries with magnitude below this are dropped when products and sums are formed.
inline constexpr double kPruneThreshold = 1e-15;

/**
 * @brief Complex sparse matrix in canonical compressed-row layout.
 *
 * Rows are stored in order and column indices are strictly increasing within
 * each row, so two matrices with the same entries have identical storage.
 * Instances are immutable once built.
 */
class SparseComplexMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
  };

  SparseComplexMatrix() = default;
  /// Zero matrix of the given shape.
  SparseComplexMatrix(std::size_t rows, std::size_t cols);

  /// Builds from unordered triplets: duplicates are summed, then entries with
  /// |value| < prune are dropped. Throws ArgumentError on out-of-range indices.
  static SparseComplexMatrix from_entries(std::size_t rows, std::size_t cols,
                                          std::vector<Entry> entries,
                                          double prune = kPruneThreshold);
  static SparseComplexMatrix identity(std::size_t n);
  static SparseComplexMatrix from_dense(const Eigen::MatrixXcd& dense,
                                        double prune = kPruneThreshold);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_idx_; }
  std::span<const Complex> values() const noexcept { return values_; }

  Complex coeff(std::size_t row, std::size_t col) const;
  std::vector<Entry> entries() const;

  SparseComplexMatrix adjoint() const;
  SparseComplexMatrix transpose() const;
  SparseComplexMatrix conjugate() const;
  SparseComplexMatrix scaled(Complex factor) const;

  /// y = A x.
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;
  /// Dense right-hand side, A X.
  Eigen::MatrixXcd operator*(const Eigen::MatrixXcd& x) const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::SparseMatrix<Complex> to_eigen() const;

  /// Maximum absolute column sum.
  double norm1() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<Complex> values_;
};

SparseComplexMatrix operator+(const SparseComplexMatrix& a, const SparseComplexMatrix& b);
SparseComplexMatrix operator-(const SparseComplexMatrix& a, const SparseComplexMatrix& b);

/// Sparse product a*b with entries below kPruneThreshold removed.
SparseComplexMatrix op_product(const SparseComplexMatrix& a, const SparseComplexMatrix& b);

/// Kronecker product; a is the slow (leftmost) index.
SparseComplexMatrix kron(const SparseComplexMatrix& a, const SparseComplexMatrix& b);

double max_abs_diff(const SparseComplexMatrix& a, const SparseComplexMatrix& b);
bool approx_equal(const SparseComplexMatrix& a, const SparseComplexMatrix& b, double tol);

/// Little-endian dump: u64 rows, u64 cols, u64 nnz, then nnz records of
/// (u64 row, u64 col, f64 re, f64 im) in row-major order.
void write_binary(std::ostream& out, const SparseComplexMatrix& m);
SparseComplexMatrix read_binary(std::istream& in);

}  // namespace wqed
