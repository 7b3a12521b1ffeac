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

#include "pauli_basis.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "wqed/error.hpp"

namespace wqed::detail {

namespace {

// Per site the (x, z) bit pair selects I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
// Entry of the string with masks (x, z) in row i sits at column i^x and equals
// (-i)^{popcount(x&z)} (-1)^{popcount(i&z)}.
std::size_t pauli_index(std::size_t x, std::size_t z, int n) {
  std::size_t p = 0;
  for (int k = n - 1; k >= 0; --k) {
    const bool xb = (x >> k) & 1U;
    const bool zb = (z >> k) & 1U;
    const std::size_t digit = xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
    p = (p << 2) | digit;
  }
  return p;
}

Complex minus_i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void walsh_hadamard(Eigen::VectorXcd& w) {
  const auto n = w.size();
  for (Eigen::Index len = 1; len < n; len <<= 1) {
    for (Eigen::Index i = 0; i < n; i += len << 1) {
      for (Eigen::Index j = i; j < i + len; ++j) {
        const Complex a = w[j];
        const Complex b = w[j + len];
        w[j] = a + b;
        w[j + len] = a - b;
      }
    }
  }
}

struct PauliTable {
  explicit PauliTable(int n) : n_qubits(n), dim(std::size_t{1} << n), index(dim * dim) {
    for (std::size_t x = 0; x < dim; ++x) {
      for (std::size_t z = 0; z < dim; ++z) index[x * dim + z] = pauli_index(x, z, n);
    }
  }
  int n_qubits;
  std::size_t dim;
  std::vector<std::size_t> index;
};

Eigen::VectorXcd coefficients_with(const PauliTable& t, const Eigen::MatrixXcd& op) {
  const std::size_t d = t.dim;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(d * d));
  Eigen::VectorXcd w(static_cast<Eigen::Index>(d));
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t i = 0; i < d; ++i) {
      w[static_cast<Eigen::Index>(i)] = op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ x));
    }
    walsh_hadamard(w);
    for (std::size_t z = 0; z < d; ++z) {
      const int ny = std::popcount(static_cast<unsigned long long>(x & z));
      // conj((-i)^ny) = i^ny = (-i)^{-ny}
      out[static_cast<Eigen::Index>(t.index[x * d + z])] =
          minus_i_power(-ny) * w[static_cast<Eigen::Index>(z)] * norm;
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXcd pauli_coefficients(const Eigen::MatrixXcd& op, int n_qubits) {
  const PauliTable t(n_qubits);
  if (op.rows() != static_cast<Eigen::Index>(t.dim) || op.cols() != op.rows()) {
    throw ArgumentError("pauli_coefficients: operator is not 2^N x 2^N");
  }
  return coefficients_with(t, op);
}

Eigen::MatrixXcd from_pauli_coefficients(const Eigen::VectorXcd& coeffs, int n_qubits) {
  const PauliTable t(n_qubits);
  const std::size_t d = t.dim;
  if (coeffs.size() != static_cast<Eigen::Index>(d * d)) {
    throw ArgumentError("from_pauli_coefficients: expected 4^N coefficients");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::MatrixXcd op(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::VectorXcd w(static_cast<Eigen::Index>(d));
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t z = 0; z < d; ++z) {
      const int ny = std::popcount(static_cast<unsigned long long>(x & z));
      w[static_cast<Eigen::Index>(z)] = minus_i_power(ny) * coeffs[static_cast<Eigen::Index>(t.index[x * d + z])];
    }
    walsh_hadamard(w);
    for (std::size_t i = 0; i < d; ++i) {
      op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ x)) = w[static_cast<Eigen::Index>(i)] * norm;
    }
  }
  return op;
}

Eigen::MatrixXd real_representation(const SparseComplexMatrix& superop, int n_qubits, double tol) {
  const PauliTable t(n_qubits);
  const std::size_t d = t.dim;
  const std::size_t big = d * d;
  if (superop.rows() != big || superop.cols() != big) {
    throw ArgumentError("real_representation: superoperator is not 4^N x 4^N");
  }
  const double scale = std::max(superop.norm1(), 1.0);
  Eigen::MatrixXd r(static_cast<Eigen::Index>(big), static_cast<Eigen::Index>(big));
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(big));
  Eigen::VectorXcd image(static_cast<Eigen::Index>(big));
  double worst_imag = 0.0;
  for (std::size_t q = 0; q < big; ++q) {
    unit.setZero();
    unit[static_cast<Eigen::Index>(q)] = 1.0;
    const Eigen::MatrixXcd basis_op = from_pauli_coefficients(unit, n_qubits);
    superop.multiply({basis_op.data(), big}, {image.data(), big});
    const Eigen::Map<const Eigen::MatrixXcd> image_op(image.data(), static_cast<Eigen::Index>(d),
                                                      static_cast<Eigen::Index>(d));
    const Eigen::VectorXcd c = coefficients_with(t, image_op);
    r.col(static_cast<Eigen::Index>(q)) = c.real();
    worst_imag = std::max(worst_imag, c.imag().cwiseAbs().maxCoeff());
  }
  if (worst_imag > tol * scale) {
    throw NumericError("superoperator does not preserve Hermiticity",
                       "max imaginary Pauli coefficient " + std::to_string(worst_imag));
  }
  return r;
}

}  // namespace wqed::detail
