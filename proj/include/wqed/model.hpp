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

#include <vector>

#include <Eigen/Dense>

#include "wqed/operators.hpp"
#include "wqed/sparse.hpp"

namespace wqed {

/// H = H0 + V in the frame rotating at the qubit frequency.
struct Hamiltonian {
  SparseComplexMatrix h0;     ///< waveguide-mediated coupling, non-Hermitian
  SparseComplexMatrix v;      ///< coherent drive, Hermitian
  SparseComplexMatrix total;  ///< h0 + v
};

/// Only column stacking is supported: vec(A X B) = (B^T kron A) vec(X).
enum class Vectorization { column_stacking };

struct Liouvillian {
  ArrayParams params;
  SparseComplexMatrix matrix;  ///< 4^N x 4^N
  Vectorization convention = Vectorization::column_stacking;

  std::size_t hilbert_dim() const { return params.hilbert_dim(); }
};

struct LiouvillianOptions {
  /// Largest N for which the 4^N sparse matrix is assembled.
  int max_qubits = 7;
};

/// H0 = -i gamma sum_{m,n} e^{i phi |m-n|} sigma_m^dag sigma_n and
/// V = Omega sum_n (e^{-i phi n} sigma_n^dag + h.c.) for left incidence.
Hamiltonian build_hamiltonian(const ArrayParams& params);

/// Symmetric dissipative coupling 2 gamma cos(phi (m - n)), N x N.
Eigen::MatrixXd jump_coupling(const ArrayParams& params);

/// L rho = sum_{m,n} 2 gamma cos(phi (m-n)) sigma_m rho sigma_n^dag - i (H rho - rho H^dag).
/// Throws ResourceError when N exceeds options.max_qubits.
Liouvillian build_liouvillian(const ArrayParams& params, const LiouvillianOptions& options = {});

/**
 * @brief Matrix-free evaluation of the Lindblad superoperator on dense 2^N x 2^N operators.
 *
 * Holds the site operators and Hamiltonian so repeated application (time
 * stepping, eigen-operator checks) avoids rebuilding them.
 */
class LiouvillianAction {
 public:
  explicit LiouvillianAction(const ArrayParams& params);

  Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& rho) const;

  const ArrayParams& params() const { return params_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }

 private:
  ArrayParams params_;
  Hamiltonian hamiltonian_;
  std::vector<SparseComplexMatrix> lowering_;
  Eigen::MatrixXd coupling_;
};

/// Convenience wrapper around LiouvillianAction for a single application.
Eigen::MatrixXcd apply_liouvillian(const ArrayParams& params, const Eigen::MatrixXcd& rho);

/// Column-stacking vectorization and its inverse.
Eigen::VectorXcd vec(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, std::size_t dim);

}  // namespace wqed
