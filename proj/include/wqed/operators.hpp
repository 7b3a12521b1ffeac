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

#include <cstddef>
#include <numbers>

#include "wqed/sparse.hpp"

namespace wqed {

/// Side of the array the coherent drive enters from.
enum class DriveIncidence { left, right };

/**
 * @brief Physical configuration of a periodic qubit array in a waveguide.
 *
 * phi is the hop phase 2*pi*d/lambda between neighbours. Rates are absolute;
 * the conventional unit is gamma_1d = 1.
 */
struct ArrayParams {
  int n_qubits = 1;
  double phi = 0.0;
  double gamma_1d = 1.0;
  double omega_r = 0.0;
  DriveIncidence incidence = DriveIncidence::left;

  /// Throws ArgumentError unless n >= 1, gamma > 0, omega >= 0 and phi in [0, 2pi).
  void validate() const;

  double d_over_lambda() const { return phi / (2.0 * std::numbers::pi); }
  std::size_t hilbert_dim() const { return std::size_t{1} << n_qubits; }

  /// phi = 2*pi*d/lambda, wrapped into [0, 2pi).
  static ArrayParams from_d_over_lambda(int n_qubits, double d_over_lambda, double omega_r,
                                        double gamma_1d = 1.0);
};

// Basis convention: site 1 is the leftmost Kronecker factor, and per site
// index 0 is the ground state and index 1 the excited state.

/// sigma_site = |g><e| at one site (1-based), identity elsewhere.
SparseComplexMatrix lowering_op(int site, int n_qubits);
SparseComplexMatrix raising_op(int site, int n_qubits);
SparseComplexMatrix identity_op(int n_qubits);
/// Total excitation number sum_m sigma_m^dag sigma_m.
SparseComplexMatrix number_op(int n_qubits);

/// Tr[rho op].
Complex trace_product(const Eigen::MatrixXcd& rho, const SparseComplexMatrix& op);

/// N x N matrix with (n, m) entry Tr[rho sigma_n^dag sigma_m], zero-based.
Eigen::MatrixXcd correlation_matrix(const Eigen::MatrixXcd& rho, int n_qubits);

}  // namespace wqed
