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

// Strong-drive expansion of the Liouvillian. L is split as L0 + L_V with
// L_V rho = i [rho, V]; L_V is diagonal in the outer-product basis of the
// drive eigenstates and L0 is treated to third order in gamma/Omega on the
// degenerate lambda_V = 0 subspace.

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wqed/operators.hpp"

namespace wqed {

/**
 * @brief Eigenbasis of the drive V and of the superoperator L_V.
 *
 * Superoperator index j = b * 2^N + a labels |a><b| (column stacking), with
 * eigenvalue -2i Omega (Jz_a - Jz_b).
 */
struct DriveEigenbasis {
  int n_qubits = 0;
  double omega_r = 0.0;
  Eigen::VectorXd v_eigenvalues;   ///< ascending
  Eigen::MatrixXcd v_eigenvectors; ///< orthonormal columns
  std::vector<double> jz_labels;   ///< half-integers, v / (2 Omega)
  std::vector<Complex> superop_eigenvalues;

  std::size_t hilbert_dim() const { return static_cast<std::size_t>(v_eigenvalues.size()); }
  std::pair<std::size_t, std::size_t> pair(std::size_t index) const;
  /// |a><b| as a dense 2^N x 2^N operator.
  Eigen::MatrixXcd element(std::size_t index) const;
};

/// Requires omega_r > 0.
DriveEigenbasis drive_eigenbasis(const ArrayParams& params);

/// L_V X = i [X, V].
Eigen::MatrixXcd apply_drive_superoperator(const ArrayParams& params, const Eigen::MatrixXcd& x);

struct EffectivePT {
  ArrayParams params;
  DriveEigenbasis basis;
  std::vector<std::size_t> p0_basis;  ///< superoperator indices with lambda_V = 0
  std::vector<std::size_t> excited;   ///< the remaining indices
  Eigen::VectorXcd g_diagonal;        ///< -1 / lambda_V over `excited`
  /// Terms of the first, second and third order, on p0_basis.
  Eigen::MatrixXcd order1, order2, order3;

  std::size_t zero_dim() const { return p0_basis.size(); }
  /// Sum of the terms up to and including `order` (1..3).
  Eigen::MatrixXcd cumulative(int order) const;
  /// Coordinates of an operator in p0_basis (Hilbert-Schmidt projection).
  Eigen::VectorXcd project(const Eigen::MatrixXcd& op) const;
};

/// Zero subspace of L_V, including cross pairs of degenerate V levels.
EffectivePT zero_projector(const DriveEigenbasis& basis);

/// All three orders. Throws NumericError if a vanishing lambda_V enters G.
EffectivePT effective_liouvillian(const ArrayParams& params);
EffectivePT effective_liouvillian(const ArrayParams& params, const DriveEigenbasis& basis);

/// Null-space dimension (singular values < tol * gamma) of the first-order term.
int order1_nullspace_dim(const EffectivePT& pt, double tol = 1e-8);
int pt_dark_count(const ArrayParams& params);

/// Eigenvalues of cumulative(order), sorted by modulus.
std::vector<Complex> effective_spectrum(const EffectivePT& pt, int order);

struct XiOptions {
  double fit_min = 10.0;
  double fit_max = 100.0;
  int fit_points = 7;
  double max_mismatch = 0.10;
};

struct XiReport {
  double omega_r = 0.0;
  double xi_pt = 0.0;       ///< -Re(doublet) Omega^2 / gamma^3 from orders 1..3
  double xi_fit = 0.0;      ///< same combination from the full Liouvillian at omega_r
  double slope_fit = 0.0;   ///< d log|Re lambda| / d log Omega over the fit window
  std::array<double, 3> xi_by_order{};  ///< xi_pt truncated at orders 1, 2, 3
  int first_lifting_order = 0;           ///< 0 when no order splits the doublet
  std::vector<std::pair<double, double>> fit_samples;  ///< (Omega, rate)
};

/// Splitting coefficient of the N = 3, phi = pi/2 doublet, lambda = -xi gamma^3 / Omega^2,
/// evaluated at params.omega_r. Throws NumericError when PT and the full
/// numerics disagree by more than options.max_mismatch.
XiReport xi_coefficient(const ArrayParams& params, const XiOptions& options = {});

struct PtReport {
  int n_qubits = 0;
  double omega_r = 0.0;
  std::size_t zero_dim = 0;
  int order1_nullspace_dim = 0;
  std::optional<XiReport> xi;
};

/// Zero-subspace data for any N <= 5; xi fields are filled for N = 3 at phi = pi/2.
PtReport pt_report(const ArrayParams& params);

/// {n_qubits, omega_r, zero_dim, order1_nullspace_dim, xi_pt, xi_fit, slope_fit, ...}
void write_pt_json(std::ostream& out, const PtReport& report);

}  // namespace wqed
