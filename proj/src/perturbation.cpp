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

#include "wqed/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "wqed/error.hpp"
#include "wqed/model.hpp"
#include "wqed/spectra.hpp"

namespace wqed {

namespace {

constexpr Complex kI(0.0, 1.0);

Eigen::MatrixXcd dense_kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// L0 = L - L_V expressed in the drive eigenbasis, dense.
Eigen::MatrixXcd rotated_l0(const ArrayParams& params, const Eigen::MatrixXcd& u) {
  const int n = params.n_qubits;
  const auto dim = static_cast<Eigen::Index>(params.hilbert_dim());
  const auto h = build_hamiltonian(params);
  const Eigen::MatrixXcd h0 = u.adjoint() * h.h0.to_dense() * u;
  const Eigen::MatrixXd coupling = jump_coupling(params);

  std::vector<Eigen::MatrixXcd> lower;
  for (int s = 1; s <= n; ++s) lower.push_back(u.adjoint() * lowering_op(s, n).to_dense() * u);

  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd l0 = -kI * dense_kron(eye, h0) + kI * dense_kron(h0.conjugate(), eye);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (coupling(m, k) != 0.0) l0 += coupling(m, k) * dense_kron(lower[k].conjugate(), lower[m]);
    }
  }
  return l0;
}

}  // namespace

std::pair<std::size_t, std::size_t> DriveEigenbasis::pair(std::size_t index) const {
  const std::size_t d = hilbert_dim();
  return {index % d, index / d};
}

Eigen::MatrixXcd DriveEigenbasis::element(std::size_t index) const {
  const auto [a, b] = pair(index);
  return v_eigenvectors.col(static_cast<Eigen::Index>(a)) *
         v_eigenvectors.col(static_cast<Eigen::Index>(b)).adjoint();
}

DriveEigenbasis drive_eigenbasis(const ArrayParams& params) {
  params.validate();
  if (!(params.omega_r > 0.0)) throw ArgumentError("drive_eigenbasis requires omega_r > 0");
  const auto h = build_hamiltonian(params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.v.to_dense());
  if (es.info() != Eigen::Success) throw NumericError("drive_eigenbasis: diagonalization of V failed");

  DriveEigenbasis basis;
  basis.n_qubits = params.n_qubits;
  basis.omega_r = params.omega_r;
  basis.v_eigenvalues = es.eigenvalues();
  basis.v_eigenvectors = es.eigenvectors();

  // V is a sum of single-site fields of strength 2 Omega, so its levels are 2 Omega Jz.
  for (Eigen::Index i = 0; i < basis.v_eigenvalues.size(); ++i) {
    const double jz = basis.v_eigenvalues[i] / (2.0 * params.omega_r);
    const double snapped = std::round(2.0 * jz) / 2.0;
    if (std::abs(jz - snapped) > 1e-8) {
      std::ostringstream diag;
      diag << "V eigenvalue " << basis.v_eigenvalues[i] << " is not a multiple of Omega";
      throw NumericError("drive_eigenbasis: unexpected drive spectrum", diag.str());
    }
    basis.jz_labels.push_back(snapped);
  }

  const std::size_t d = basis.hilbert_dim();
  basis.superop_eigenvalues.resize(d * d);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t a = 0; a < d; ++a) {
      basis.superop_eigenvalues[b * d + a] =
          -2.0 * kI * params.omega_r * (basis.jz_labels[a] - basis.jz_labels[b]);
    }
  }
  return basis;
}

Eigen::MatrixXcd apply_drive_superoperator(const ArrayParams& params, const Eigen::MatrixXcd& x) {
  const Eigen::MatrixXcd v = build_hamiltonian(params).v.to_dense();
  return kI * (x * v - v * x);
}

Eigen::MatrixXcd EffectivePT::cumulative(int order) const {
  if (order < 1 || order > 3) throw ArgumentError("cumulative: order must be 1, 2 or 3");
  if (order1.size() == 0) throw ArgumentError("cumulative: effective operators not computed");
  Eigen::MatrixXcd out = order1;
  if (order >= 2) out += order2;
  if (order >= 3) out += order3;
  return out;
}

Eigen::VectorXcd EffectivePT::project(const Eigen::MatrixXcd& op) const {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(p0_basis.size()));
  for (std::size_t i = 0; i < p0_basis.size(); ++i) {
    const auto [a, b] = basis.pair(p0_basis[i]);
    // <a| op |b> = Tr[(|a><b|)^dag op]
    c[static_cast<Eigen::Index>(i)] = basis.v_eigenvectors.col(static_cast<Eigen::Index>(a)).dot(
        op * basis.v_eigenvectors.col(static_cast<Eigen::Index>(b)));
  }
  return c;
}

EffectivePT zero_projector(const DriveEigenbasis& basis) {
  EffectivePT pt;
  pt.basis = basis;
  const std::size_t d = basis.hilbert_dim();
  for (std::size_t j = 0; j < d * d; ++j) {
    const auto [a, b] = basis.pair(j);
    if (basis.jz_labels[a] == basis.jz_labels[b]) {
      pt.p0_basis.push_back(j);
    } else {
      pt.excited.push_back(j);
    }
  }
  return pt;
}

EffectivePT effective_liouvillian(const ArrayParams& params) {
  return effective_liouvillian(params, drive_eigenbasis(params));
}

EffectivePT effective_liouvillian(const ArrayParams& params, const DriveEigenbasis& basis) {
  EffectivePT pt = zero_projector(basis);
  pt.params = params;

  pt.g_diagonal.resize(static_cast<Eigen::Index>(pt.excited.size()));
  for (std::size_t i = 0; i < pt.excited.size(); ++i) {
    const Complex lambda = basis.superop_eigenvalues[pt.excited[i]];
    if (std::abs(lambda) < 1e-12 * params.omega_r) {
      throw NumericError("effective_liouvillian: degenerate mode leaked into the resolvent",
                         "|lambda_V| = " + std::to_string(std::abs(lambda)));
    }
    pt.g_diagonal[static_cast<Eigen::Index>(i)] = -1.0 / lambda;
  }

  const Eigen::MatrixXcd l0 = rotated_l0(params, basis.v_eigenvectors);
  const auto& z = pt.p0_basis;
  const auto& m = pt.excited;
  const Eigen::MatrixXcd zz = l0(z, z);
  const Eigen::MatrixXcd zm = l0(z, m);
  const Eigen::MatrixXcd mz = l0(m, z);
  const Eigen::MatrixXcd mm = l0(m, m);
  const auto g = pt.g_diagonal.asDiagonal();
  const Eigen::MatrixXcd g_mz = g * mz;
  const Eigen::MatrixXcd g2_mz = pt.g_diagonal.cwiseProduct(pt.g_diagonal).asDiagonal() * mz;

  pt.order1 = zz;
  pt.order2 = zm * g_mz;
  const Eigen::MatrixXcd second_resolvent = zm * g2_mz;
  pt.order3 = zm * g * (mm * g_mz) - 0.5 * (second_resolvent * zz + zz * second_resolvent);
  return pt;
}

int order1_nullspace_dim(const EffectivePT& pt, double tol) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(pt.order1);
  const auto& s = svd.singularValues();
  return static_cast<int>((s.array() < tol * pt.params.gamma_1d).count());
}

int pt_dark_count(const ArrayParams& params) { return order1_nullspace_dim(effective_liouvillian(params)); }

std::vector<Complex> effective_spectrum(const EffectivePT& pt, int order) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(pt.cumulative(order), false);
  std::vector<Complex> values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(values.begin(), values.end(),
                   [](const Complex& a, const Complex& b) { return std::abs(a) < std::abs(b); });
  return values;
}

XiReport xi_coefficient(const ArrayParams& params, const XiOptions& options) {
  params.validate();
  if (params.n_qubits != 3 || std::abs(params.phi - std::numbers::pi / 2) > 1e-12) {
    throw ArgumentError("xi_coefficient is defined for N = 3 at phi = pi/2");
  }
  const double gamma = params.gamma_1d;
  const double omega = params.omega_r;
  const double to_xi = omega * omega / (gamma * gamma * gamma);

  XiReport report;
  report.omega_r = omega;
  const auto pt = effective_liouvillian(params);
  for (int order = 1; order <= 3; ++order) {
    // The doublet is the pair of eigenvalues that vanish at first order.
    const auto values = effective_spectrum(pt, order);
    report.xi_by_order[static_cast<std::size_t>(order - 1)] = -values.at(1).real() * to_xi;
    if (report.first_lifting_order == 0 && std::abs(values.at(1)) > kDefaultZeroTol * gamma) {
      report.first_lifting_order = order;
    }
  }
  report.xi_pt = report.xi_by_order[2];

  auto slow_rate = [&](double om) {
    ArrayParams p = params;
    p.omega_r = om;
    return slowest_nonzero_rate(full_spectrum(build_liouvillian(p), false));
  };

  const int points = std::max(2, options.fit_points);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double om = options.fit_min * std::pow(options.fit_max / options.fit_min, t);
    const double rate = slow_rate(om);
    report.fit_samples.emplace_back(om, rate);
    const double x = std::log(om);
    const double y = std::log(rate);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope_fit = (points * sxy - sx * sy) / (points * sxx - sx * sx);
  report.xi_fit = slow_rate(omega) * to_xi;

  const double mismatch = std::abs(report.xi_pt - report.xi_fit) / std::abs(report.xi_fit);
  if (!(mismatch <= options.max_mismatch)) {
    std::ostringstream diag;
    diag << "xi_pt=" << report.xi_pt << " xi_fit=" << report.xi_fit << " relative mismatch=" << mismatch;
    throw NumericError("perturbative and numerical splitting disagree", diag.str());
  }
  return report;
}

PtReport pt_report(const ArrayParams& params) {
  PtReport report;
  report.n_qubits = params.n_qubits;
  report.omega_r = params.omega_r;
  const auto pt = effective_liouvillian(params);
  report.zero_dim = pt.zero_dim();
  report.order1_nullspace_dim = order1_nullspace_dim(pt);
  if (params.n_qubits == 3 && std::abs(params.phi - std::numbers::pi / 2) <= 1e-12) {
    report.xi = xi_coefficient(params);
  }
  return report;
}

void write_pt_json(std::ostream& out, const PtReport& report) {
  nlohmann::ordered_json j;
  j["n_qubits"] = report.n_qubits;
  j["omega_r"] = report.omega_r;
  j["zero_dim"] = report.zero_dim;
  j["order1_nullspace_dim"] = report.order1_nullspace_dim;
  if (report.xi) {
    j["xi_pt"] = report.xi->xi_pt;
    j["xi_fit"] = report.xi->xi_fit;
    j["slope_fit"] = report.xi->slope_fit;
    j["xi_by_order"] = report.xi->xi_by_order;
    j["first_lifting_order"] = report.xi->first_lifting_order;
    j["xi_reference"] = 59.0 / 9.0;
  } else {
    j["xi_pt"] = nullptr;
    j["xi_fit"] = nullptr;
    j["slope_fit"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

}  // namespace wqed
