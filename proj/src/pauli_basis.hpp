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

// Expansion of operators in the Hilbert-Schmidt orthonormal basis of Pauli
// strings P/sqrt(2^N). Superoperators that map Hermitian operators to
// Hermitian operators are real matrices in this basis.

#pragma once

#include <Eigen/Dense>

#include "wqed/sparse.hpp"

namespace wqed::detail {

/// Coefficients c_p = Tr[P_p^dag X] / sqrt(2^N) of a 2^N x 2^N operator.
Eigen::VectorXcd pauli_coefficients(const Eigen::MatrixXcd& op, int n_qubits);

/// Inverse of pauli_coefficients.
Eigen::MatrixXcd from_pauli_coefficients(const Eigen::VectorXcd& coeffs, int n_qubits);

/// Real 4^N x 4^N matrix of a Hermiticity-preserving superoperator given in
/// column-stacked form. Throws NumericError if an imaginary part exceeds tol * ||L||_1.
Eigen::MatrixXd real_representation(const SparseComplexMatrix& superop, int n_qubits,
                                    double tol = 1e-10);

}  // namespace wqed::detail
