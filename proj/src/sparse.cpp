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

#include "wqed/sparse.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "wqed/error.hpp"

namespace wqed {

SparseComplexMatrix::SparseComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseComplexMatrix SparseComplexMatrix::from_entries(std::size_t rows, std::size_t cols,
                                                      std::vector<Entry> entries, double prune) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw ArgumentError("sparse entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                          ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseComplexMatrix m(rows, cols);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    const std::size_t r = entries[i].row;
    const std::size_t c = entries[i].col;
    Complex sum = 0.0;
    for (; i < entries.size() && entries[i].row == r && entries[i].col == c; ++i) {
      sum += entries[i].value;
    }
    if (std::abs(sum) >= prune && sum != Complex(0.0)) {
      m.col_idx_.push_back(c);
      m.values_.push_back(sum);
      ++m.row_ptr_[r + 1];
    }
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

SparseComplexMatrix SparseComplexMatrix::identity(std::size_t n) {
  SparseComplexMatrix m(n, n);
  m.col_idx_.resize(n);
  m.values_.assign(n, Complex(1.0));
  for (std::size_t i = 0; i < n; ++i) {
    m.col_idx_[i] = i;
    m.row_ptr_[i + 1] = i + 1;
  }
  return m;
}

SparseComplexMatrix SparseComplexMatrix::from_dense(const Eigen::MatrixXcd& dense, double prune) {
  std::vector<Entry> entries;
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (std::abs(dense(r, c)) >= prune && dense(r, c) != Complex(0.0)) {
        entries.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), dense(r, c)});
      }
    }
  }
  return from_entries(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()),
                      std::move(entries), prune);
}

Complex SparseComplexMatrix::coeff(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw ArgumentError("coeff index out of range");
  const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<SparseComplexMatrix::Entry> SparseComplexMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.push_back({r, col_idx_[k], values_[k]});
    }
  }
  return out;
}

SparseComplexMatrix SparseComplexMatrix::transpose() const {
  SparseComplexMatrix t(cols_, rows_);
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());
  for (std::size_t c : col_idx_) ++t.row_ptr_[c + 1];
  for (std::size_t r = 0; r < cols_; ++r) t.row_ptr_[r + 1] += t.row_ptr_[r];
  std::vector<std::size_t> fill(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  // Visiting source rows in order keeps the transposed columns sorted.
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t dst = fill[col_idx_[k]]++;
      t.col_idx_[dst] = r;
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

SparseComplexMatrix SparseComplexMatrix::conjugate() const {
  SparseComplexMatrix c = *this;
  for (auto& v : c.values_) v = std::conj(v);
  return c;
}

SparseComplexMatrix SparseComplexMatrix::adjoint() const { return transpose().conjugate(); }

SparseComplexMatrix SparseComplexMatrix::scaled(Complex factor) const {
  std::vector<Entry> e = entries();
  for (auto& x : e) x.value *= factor;
  return from_entries(rows_, cols_, std::move(e));
}

void SparseComplexMatrix::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw ArgumentError("multiply: dimension mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
    y[r] = acc;
  }
}

Eigen::VectorXcd SparseComplexMatrix::operator*(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(static_cast<Eigen::Index>(rows_));
  multiply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), rows_});
  return y;
}

Eigen::MatrixXcd SparseComplexMatrix::operator*(const Eigen::MatrixXcd& x) const {
  if (static_cast<std::size_t>(x.rows()) != cols_) throw ArgumentError("multiply: dimension mismatch");
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_), x.cols());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      y.row(static_cast<Eigen::Index>(r)) += values_[k] * x.row(static_cast<Eigen::Index>(col_idx_[k]));
    }
  }
  return y;
}

Eigen::MatrixXcd SparseComplexMatrix::to_dense() const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_),
                                              static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_idx_[k])) = values_[k];
    }
  }
  return d;
}

Eigen::SparseMatrix<Complex> SparseComplexMatrix::to_eigen() const {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      trips.emplace_back(static_cast<int>(r), static_cast<int>(col_idx_[k]), values_[k]);
    }
  }
  Eigen::SparseMatrix<Complex> m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

double SparseComplexMatrix::norm1() const {
  std::vector<double> colsum(cols_, 0.0);
  for (std::size_t k = 0; k < nnz(); ++k) colsum[col_idx_[k]] += std::abs(values_[k]);
  return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double SparseComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

SparseComplexMatrix combine(const SparseComplexMatrix& a, const SparseComplexMatrix& b, double sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("matrix sum: dimension mismatch");
  }
  auto e = a.entries();
  for (auto x : b.entries()) {
    x.value *= sign;
    e.push_back(x);
  }
  return SparseComplexMatrix::from_entries(a.rows(), a.cols(), std::move(e));
}

}  // namespace

SparseComplexMatrix operator+(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  return combine(a, b, 1.0);
}

SparseComplexMatrix operator-(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  return combine(a, b, -1.0);
}

SparseComplexMatrix op_product(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("op_product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const auto arow = a.row_offsets();
  const auto acol = a.col_indices();
  const auto aval = a.values();
  const auto brow = b.row_offsets();
  const auto bcol = b.col_indices();
  const auto bval = b.values();

  std::vector<SparseComplexMatrix::Entry> out;
  std::vector<Complex> accum(b.cols(), 0.0);
  std::vector<char> touched(b.cols(), 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    cols.clear();
    for (std::size_t ka = arow[r]; ka < arow[r + 1]; ++ka) {
      const std::size_t mid = acol[ka];
      for (std::size_t kb = brow[mid]; kb < brow[mid + 1]; ++kb) {
        const std::size_t c = bcol[kb];
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
        }
        accum[c] += aval[ka] * bval[kb];
      }
    }
    for (std::size_t c : cols) {
      out.push_back({r, c, accum[c]});
      accum[c] = 0.0;
      touched[c] = 0;
    }
  }
  return SparseComplexMatrix::from_entries(a.rows(), b.cols(), std::move(out), kPruneThreshold);
}

SparseComplexMatrix kron(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  std::vector<SparseComplexMatrix::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  const auto be = b.entries();
  for (const auto& ea : a.entries()) {
    for (const auto& eb : be) {
      out.push_back({ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, ea.value * eb.value});
    }
  }
  return SparseComplexMatrix::from_entries(a.rows() * b.rows(), a.cols() * b.cols(), std::move(out));
}

double max_abs_diff(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  return (a - b).max_abs();
}

bool approx_equal(const SparseComplexMatrix& a, const SparseComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Subtraction prunes at kPruneThreshold, so compare entries directly.
  std::vector<SparseComplexMatrix::Entry> e = a.entries();
  for (auto x : b.entries()) {
    x.value = -x.value;
    e.push_back(x);
  }
  auto diff = SparseComplexMatrix::from_entries(a.rows(), a.cols(), std::move(e), 0.0);
  return diff.max_abs() <= tol;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw ArgumentError("read_binary: truncated stream");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_binary(std::ostream& out, const SparseComplexMatrix& m) {
  put_le<std::uint64_t>(out, m.rows());
  put_le<std::uint64_t>(out, m.cols());
  put_le<std::uint64_t>(out, m.nnz());
  for (const auto& e : m.entries()) {
    put_le<std::uint64_t>(out, e.row);
    put_le<std::uint64_t>(out, e.col);
    put_le<double>(out, e.value.real());
    put_le<double>(out, e.value.imag());
  }
}

SparseComplexMatrix read_binary(std::istream& in) {
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  const auto nnz = get_le<std::uint64_t>(in);
  std::vector<SparseComplexMatrix::Entry> e;
  e.reserve(nnz);
  for (std::uint64_t k = 0; k < nnz; ++k) {
    const auto r = get_le<std::uint64_t>(in);
    const auto c = get_le<std::uint64_t>(in);
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    e.push_back({r, c, Complex(re, im)});
  }
  return SparseComplexMatrix::from_entries(rows, cols, std::move(e), 0.0);
}

}  // namespace wqed
