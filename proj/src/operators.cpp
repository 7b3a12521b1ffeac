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

#include "wqed/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "wqed/error.hpp"

namespace wqed {

void ArrayParams::validate() const {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be >= 1");
  if (n_qubits > 30) throw ArgumentError("n_qubits too large for a 2^N index");
  if (!(gamma_1d > 0.0)) throw ArgumentError("gamma_1d must be > 0");
  if (!(omega_r >= 0.0)) throw ArgumentError("omega_r must be >= 0");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw ArgumentError("phi must lie in [0, 2pi)");
}

ArrayParams ArrayParams::from_d_over_lambda(int n_qubits, double d_over_lambda, double omega_r,
                                            double gamma_1d) {
  double frac = d_over_lambda - std::floor(d_over_lambda);
  if (frac >= 1.0) frac = 0.0;
  ArrayParams p;
  p.n_qubits = n_qubits;
  p.phi = 2.0 * std::numbers::pi * frac;
  if (p.phi >= 2.0 * std::numbers::pi) p.phi = 0.0;
  p.omega_r = omega_r;
  p.gamma_1d = gamma_1d;
  return p;
}

namespace {

SparseComplexMatrix embed(int site, int n_qubits, std::size_t local_row, std::size_t local_col) {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be >= 1");
  if (site < 1 || site > n_qubits) {
    throw ArgumentError("site " + std::to_string(site) + " outside 1.." + std::to_string(n_qubits));
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t bit = std::size_t{1} << (n_qubits - site);
  std::vector<SparseComplexMatrix::Entry> e;
  e.reserve(dim / 2);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t row_bit = (i & bit) ? 1 : 0;
    if (row_bit != local_row) continue;
    const std::size_t j = local_col ? (i | bit) : (i & ~bit);
    e.push_back({i, j, Complex(1.0)});
  }
  return SparseComplexMatrix::from_entries(dim, dim, std::move(e));
}

}  // namespace

SparseComplexMatrix lowering_op(int site, int n_qubits) { return embed(site, n_qubits, 0, 1); }

SparseComplexMatrix raising_op(int site, int n_qubits) { return embed(site, n_qubits, 1, 0); }

SparseComplexMatrix identity_op(int n_qubits) {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be >= 1");
  return SparseComplexMatrix::identity(std::size_t{1} << n_qubits);
}

SparseComplexMatrix number_op(int n_qubits) {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be >= 1");
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<SparseComplexMatrix::Entry> e;
  for (std::size_t i = 0; i < dim; ++i) {
    const int count = std::popcount(static_cast<unsigned long long>(i));
    if (count) e.push_back({i, i, Complex(count)});
  }
  return SparseComplexMatrix::from_entries(dim, dim, std::move(e));
}

Complex trace_product(const Eigen::MatrixXcd& rho, const SparseComplexMatrix& op) {
  if (static_cast<std::size_t>(rho.rows()) != op.cols() || static_cast<std::size_t>(rho.cols()) != op.rows()) {
    throw ArgumentError("trace_product: dimension mismatch");
  }
  Complex acc = 0.0;
  for (const auto& e : op.entries()) {
    acc += e.value * rho(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row));
  }
  return acc;
}

Eigen::MatrixXcd correlation_matrix(const Eigen::MatrixXcd& rho, int n_qubits) {
  Eigen::MatrixXcd c(n_qubits, n_qubits);
  for (int n = 1; n <= n_qubits; ++n) {
    for (int m = 1; m <= n_qubits; ++m) {
      c(n - 1, m - 1) = trace_product(rho, op_product(raising_op(n, n_qubits), lowering_op(m, n_qubits)));
    }
  }
  return c;
}

}  // namespace wqed
