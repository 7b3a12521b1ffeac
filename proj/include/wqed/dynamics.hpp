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
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "wqed/operators.hpp"

namespace wqed {

/// Sampled solution of d rho / dt = L rho.
struct Trajectory {
  int n_qubits = 0;
  std::vector<double> times;                 ///< units of 1/gamma_1d
  std::vector<Eigen::MatrixXcd> states;      ///< empty unless kept
  std::vector<Eigen::MatrixXcd> correlators; ///< <sigma_n^dag sigma_m>, zero-based (n, m)
  std::vector<double> trace_drift;           ///< |Tr rho - 1|
  std::vector<double> purity;                ///< Tr rho^2
  std::size_t steps = 0;
  /// Sum of per-step local error tolerances; bounds the accumulated local error.
  double error_estimate = 0.0;
};

struct EvolveOptions {
  double tolerance = 1e-10;
  bool keep_states = true;
  /// positivity is checked every this many samples (0 disables)
  std::size_t positivity_stride = 20;
  double positivity_floor = -1e-6;
  std::size_t max_steps = 50'000'000;
  /// use LiouvillianAction instead of the assembled sparse matrix
  bool matrix_free = false;
};

/// Projector onto |e e ... e>.
Eigen::MatrixXcd fully_excited_state(int n_qubits);

/// Tr[rho sigma_n^dag sigma_m] with 1-based site indices.
Complex correlator(const Eigen::MatrixXcd& rho, int n, int m);

/// Adaptive Dormand-Prince 5(4) propagation sampled at `samples` uniform times in
/// [0, t_max]. rho0 must be a density matrix (ArgumentError otherwise); step
/// underflow or a positivity violation raise NumericError.
Trajectory evolve(const ArrayParams& params, const Eigen::MatrixXcd& rho0, double t_max,
                  std::size_t samples = 200, const EvolveOptions& options = {});

/// `t,re_c_1_1,im_c_1_1,...,trace_drift,purity`, pairs in row-major (n, m) order.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace wqed
