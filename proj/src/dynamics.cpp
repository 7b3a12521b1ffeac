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

#include "wqed/dynamics.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "wqed/error.hpp"
#include "wqed/model.hpp"

namespace wqed {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<Complex>;

void check_density_matrix(const Eigen::MatrixXcd& rho, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (rho.rows() != d || rho.cols() != d) throw ArgumentError("rho0 has the wrong dimension");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ArgumentError("rho0 is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw ArgumentError("rho0 does not have unit trace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw ArgumentError("rho0 is not positive semidefinite");
}

}  // namespace

Eigen::MatrixXcd fully_excited_state(int n_qubits) {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be >= 1");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  rho(d - 1, d - 1) = 1.0;
  return rho;
}

Complex correlator(const Eigen::MatrixXcd& rho, int n, int m) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  int n_qubits = 0;
  while ((std::size_t{1} << n_qubits) < dim) ++n_qubits;
  if ((std::size_t{1} << n_qubits) != dim || rho.cols() != rho.rows()) {
    throw ArgumentError("correlator: rho is not 2^N x 2^N");
  }
  if (n < 1 || n > n_qubits || m < 1 || m > n_qubits) {
    throw ArgumentError("correlator: site index outside 1.." + std::to_string(n_qubits));
  }
  return trace_product(rho, op_product(raising_op(n, n_qubits), lowering_op(m, n_qubits)));
}

Trajectory evolve(const ArrayParams& params, const Eigen::MatrixXcd& rho0, double t_max,
                  std::size_t samples, const EvolveOptions& options) {
  params.validate();
  const std::size_t dim = params.hilbert_dim();
  check_density_matrix(rho0, dim);
  if (!(t_max > 0.0)) throw ArgumentError("t_max must be positive");
  if (samples < 2) throw ArgumentError("need at least two samples");

  std::function<void(const State&, State&)> rhs;
  std::optional<Liouvillian> assembled;
  std::optional<LiouvillianAction> action;
  if (options.matrix_free) {
    action.emplace(params);
    rhs = [&](const State& x, State& dxdt) {
      const Eigen::Map<const Eigen::MatrixXcd> rho(x.data(), static_cast<Eigen::Index>(dim),
                                                   static_cast<Eigen::Index>(dim));
      const Eigen::MatrixXcd out = (*action)(rho);
      std::copy(out.data(), out.data() + out.size(), dxdt.begin());
    };
  } else {
    assembled = build_liouvillian(params);
    rhs = [&](const State& x, State& dxdt) { assembled->matrix.multiply(x, dxdt); };
  }
  auto system = [&](const State& x, State& dxdt, double /*t*/) { rhs(x, dxdt); };

  Trajectory traj;
  traj.n_qubits = params.n_qubits;
  auto record = [&](double t, const State& x) {
    const Eigen::Map<const Eigen::MatrixXcd> rho(x.data(), static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
    traj.times.push_back(t);
    traj.correlators.push_back(correlation_matrix(rho, params.n_qubits));
    traj.trace_drift.push_back(std::abs(rho.trace() - Complex(1.0)));
    traj.purity.push_back((rho * rho).trace().real());
    if (options.keep_states) traj.states.emplace_back(rho);
    const std::size_t index = traj.times.size() - 1;
    if (options.positivity_stride && index % options.positivity_stride == 0) {
      const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
      const double lowest = es.eigenvalues().minCoeff();
      if (lowest < options.positivity_floor) {
        std::ostringstream diag;
        diag << "t=" << t << " smallest eigenvalue " << lowest;
        throw NumericError("evolve: density matrix lost positivity", diag.str());
      }
    }
  };

  State x(rho0.data(), rho0.data() + rho0.size());
  auto stepper = odeint::make_dense_output(options.tolerance, options.tolerance,
                                           odeint::runge_kutta_dopri5<State>());
  const double initial_step = std::min(1e-3 / params.gamma_1d, t_max / static_cast<double>(samples));
  stepper.initialize(x, 0.0, initial_step);
  record(0.0, x);

  State sample(x.size());
  for (std::size_t k = 1; k < samples; ++k) {
    const double target = t_max * static_cast<double>(k) / static_cast<double>(samples - 1);
    while (stepper.current_time() < target) {
      const auto [t0, t1] = stepper.do_step(system);
      ++traj.steps;
      traj.error_estimate += options.tolerance;
      if (t1 - t0 < 1e-13 * std::max(1.0, std::abs(t1))) {
        std::ostringstream diag;
        diag << "step " << (t1 - t0) << " at last good time " << t0;
        throw NumericError("evolve: step size underflow", diag.str());
      }
      if (traj.steps > options.max_steps) {
        throw NumericError("evolve: step limit exceeded", "last good time " + std::to_string(t0));
      }
    }
    stepper.calc_state(target, sample);
    record(target, sample);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const int n = trajectory.n_qubits;
  out << 't';
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) out << ",re_c_" << a << '_' << b << ",im_c_" << a << '_' << b;
  }
  out << ",trace_drift,purity\n" << std::setprecision(17);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    const auto& c = trajectory.correlators[k];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) out << ',' << c(a, b).real() << ',' << c(a, b).imag();
    }
    out << ',' << trajectory.trace_drift[k] << ',' << trajectory.purity[k] << '\n';
  }
}

}  // namespace wqed
