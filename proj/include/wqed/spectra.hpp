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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wqed/model.hpp"

namespace wqed {

/// Eigenvalues below zero_tol * gamma_1d in modulus count as exact zeros.
inline constexpr double kDefaultZeroTol = 1e-8;
/// Rates below this (in units of gamma_1d) count as subradiant.
inline constexpr double kDefaultSubradiantThreshold = 0.5;

/**
 * @brief Liouvillian eigenvalues sorted by |Re| ascending, ties broken by Im ascending.
 *
 * When eigenvectors are present they are column-stacked 4^N vectors with unit
 * Hilbert-Schmidt norm; the first entry within 1e-10 (relative) of the largest
 * magnitude is real and positive, and
 * vectors of a degenerate eigenvalue are orthonormalized in sorted order.
 */
struct SpectrumResult {
  int n_qubits = 0;
  double gamma_1d = 1.0;
  std::vector<Complex> eigenvalues;
  std::vector<Eigen::VectorXcd> eigenvectors;
  std::size_t zero_index = 0;  ///< entry with the smallest |lambda|
  /// max_i ||L v_i - lambda_i v_i|| / ||L||_1, NaN without vectors
  double max_residual = 0.0;

  bool has_vectors() const { return !eigenvectors.empty(); }
};

struct SpectrumOptions {
  std::size_t dense_budget = 4096;
  double zero_tol = kDefaultZeroTol;
  /// eigenvalues closer than this (times gamma) are orthonormalized together
  double degeneracy_tol = 1e-8;
};

/// Dense eigendecomposition. Throws ResourceError when 4^N > dense_budget.
SpectrumResult full_spectrum(const Liouvillian& l, bool want_vectors,
                             const SpectrumOptions& options = {});

struct TargetedOptions {
  int max_iterations = 400;
  /// extra block columns beyond k; 0 picks max(k, 20)
  int oversample = 0;
  /// residual bound relative to ||L||_1
  double tol = 1e-10;
  /// a stagnating residual below this is accepted (clusters of non-normal modes)
  double stall_tol = 1e-8;
  std::uint64_t seed = 7;
};

/// The k eigenvalues nearest shift (with eigenvectors), via block shift-invert
/// subspace iteration with Rayleigh-Ritz on L. Throws NumericError on non-convergence.
SpectrumResult targeted_spectrum(const Liouvillian& l, Complex shift, std::size_t k,
                                 const TargetedOptions& options = {});

struct SlowRate {
  double rate = 0.0;
  int zero_multiplicity = 0;
};

/// -Re of the slowest mode after removing one stationary eigenvalue; zero when
/// the kernel is degenerate.
SlowRate second_slowest_rate(const SpectrumResult& spectrum, double zero_tol = kDefaultZeroTol);
SlowRate second_slowest_rate(const Liouvillian& l, double zero_tol = kDefaultZeroTol);

/// Slowest nonzero decay rate: min |Re lambda| over eigenvalues with |lambda| >= zero_tol.
double slowest_nonzero_rate(const SpectrumResult& spectrum, double zero_tol = kDefaultZeroTol);

int kernel_dimension(const SpectrumResult& spectrum, double tol = kDefaultZeroTol);
int kernel_dimension(const Liouvillian& l, double tol = kDefaultZeroTol);

/// Number of eigenvalues with |Re lambda| < threshold * gamma_1d.
int count_below(const SpectrumResult& spectrum, double threshold);

struct SubradiantCount {
  int count = 0;          ///< at the requested omega_r
  int count_doubled = 0;  ///< at 2 omega_r
  bool stable = false;
};

/// Thresholded count with a doubling-stability check. N beyond the dense
/// budget is routed through targeted_spectrum at shift 0.
SubradiantCount subradiant_count(const ArrayParams& params,
                                 double threshold = kDefaultSubradiantThreshold,
                                 const SpectrumOptions& options = {});

/// Eigen-operator reshaped to 2^N x 2^N, normalized as in SpectrumResult.
struct EigenDensityMatrix {
  Complex eigenvalue;
  Eigen::MatrixXcd rho;
};

EigenDensityMatrix eigen_density_matrix(const SpectrumResult& spectrum, std::size_t index);

/// (n, m) entry Tr[rho sigma_n^dag sigma_m], zero-based indices.
Eigen::MatrixXcd eigenstate_correlations(const EigenDensityMatrix& state);

enum class Observable { second_slowest_rate, subradiant_count };

std::string to_string(Observable o);
Observable observable_from_string(const std::string& name);

struct SweepRow {
  ArrayParams params;
  Observable observable = Observable::second_slowest_rate;
  double value = 0.0;
  int zero_multiplicity = 0;
  std::string status = "ok";  ///< "ok", "unstable" or "error: ..."
};

struct SweepOptions {
  unsigned jobs = 0;  ///< 0 means hardware concurrency
  double zero_tol = kDefaultZeroTol;
  double subradiant_threshold = kDefaultSubradiantThreshold;
  SpectrumOptions spectrum;
};

/// Evaluates one observable per grid point on a worker pool; rows come back in grid order.
std::vector<SweepRow> sweep(const std::vector<ArrayParams>& grid, Observable observable,
                            const SweepOptions& options = {});

/// `phi,d_over_lambda,omega_r,n_qubits,observable,value,zero_multiplicity,status`
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double rate_scale = 1.0);
/// `index,re,im`
void write_eigenvalues_csv(std::ostream& out, const SpectrumResult& spectrum, double scale = 1.0);

}  // namespace wqed
