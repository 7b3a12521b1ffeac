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

#include "wqed/model.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "wqed/error.hpp"

namespace wqed {

namespace {

constexpr Complex kI(0.0, 1.0);

// Site index entering the drive phase e^{-i phi n}.
int drive_position(const ArrayParams& p, int site) {
  return p.incidence == DriveIncidence::left ? site : p.n_qubits + 1 - site;
}

void append_scaled(std::vector<SparseComplexMatrix::Entry>& out, const SparseComplexMatrix& m,
                   Complex factor) {
  for (auto e : m.entries()) {
    e.value *= factor;
    out.push_back(e);
  }
}

}  // namespace

Eigen::MatrixXd jump_coupling(const ArrayParams& params) {
  const int n = params.n_qubits;
  Eigen::MatrixXd c(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const double value = 2.0 * params.gamma_1d * std::cos(params.phi * (m - k));
      // cos(pi/2) evaluates to 6e-17, not zero
      c(m, k) = std::abs(value) < kPruneThreshold ? 0.0 : value;
    }
  }
  return c;
}

Hamiltonian build_hamiltonian(const ArrayParams& params) {
  params.validate();
  const int n = params.n_qubits;
  const std::size_t dim = params.hilbert_dim();

  std::vector<SparseComplexMatrix> lower, raise;
  for (int s = 1; s <= n; ++s) {
    lower.push_back(lowering_op(s, n));
    raise.push_back(raising_op(s, n));
  }

  std::vector<SparseComplexMatrix::Entry> h0_entries;
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const Complex coupling = -kI * params.gamma_1d * std::exp(kI * (params.phi * std::abs(m - k)));
      append_scaled(h0_entries, op_product(raise[m], lower[k]), coupling);
    }
  }

  std::vector<SparseComplexMatrix::Entry> v_entries;
  for (int s = 1; s <= n; ++s) {
    const Complex phase = std::exp(-kI * (params.phi * drive_position(params, s)));
    append_scaled(v_entries, raise[s - 1], params.omega_r * phase);
    append_scaled(v_entries, lower[s - 1], params.omega_r * std::conj(phase));
  }

  Hamiltonian h;
  h.h0 = SparseComplexMatrix::from_entries(dim, dim, h0_entries);
  h.v = SparseComplexMatrix::from_entries(dim, dim, v_entries);
  h0_entries.insert(h0_entries.end(), v_entries.begin(), v_entries.end());
  h.total = SparseComplexMatrix::from_entries(dim, dim, std::move(h0_entries));
  return h;
}

Liouvillian build_liouvillian(const ArrayParams& params, const LiouvillianOptions& options) {
  params.validate();
  if (params.n_qubits > options.max_qubits) {
    throw ResourceError("Liouvillian for N=" + std::to_string(params.n_qubits) +
                        " exceeds the assembly budget (max N=" + std::to_string(options.max_qubits) +
                        "); use the matrix-free LiouvillianAction instead");
  }
  const int n = params.n_qubits;
  const std::size_t dim = params.hilbert_dim();
  const auto h = build_hamiltonian(params);
  const auto id = SparseComplexMatrix::identity(dim);
  const auto coupling = jump_coupling(params);

  std::vector<SparseComplexMatrix> lower;
  for (int s = 1; s <= n; ++s) lower.push_back(lowering_op(s, n));

  std::vector<SparseComplexMatrix::Entry> entries;
  // sigma_m rho sigma_n^dag -> conj(sigma_n) kron sigma_m
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      append_scaled(entries, kron(lower[k].conjugate(), lower[m]), coupling(m, k));
    }
  }
  // -i H rho -> -i (I kron H);  +i rho H^dag -> +i ((H^dag)^T kron I)
  append_scaled(entries, kron(id, h.total), -kI);
  append_scaled(entries, kron(h.total.adjoint().transpose(), id), kI);

  Liouvillian l;
  l.params = params;
  l.matrix = SparseComplexMatrix::from_entries(dim * dim, dim * dim, std::move(entries));
  return l;
}

LiouvillianAction::LiouvillianAction(const ArrayParams& params)
    : params_(params), hamiltonian_(build_hamiltonian(params)), coupling_(jump_coupling(params)) {
  for (int s = 1; s <= params.n_qubits; ++s) lowering_.push_back(lowering_op(s, params.n_qubits));
}

Eigen::MatrixXcd LiouvillianAction::operator()(const Eigen::MatrixXcd& rho) const {
  const auto dim = static_cast<Eigen::Index>(params_.hilbert_dim());
  if (rho.rows() != dim || rho.cols() != dim) {
    throw ArgumentError("apply_liouvillian: rho must be " + std::to_string(dim) + "x" +
                        std::to_string(dim));
  }
  const int n = params_.n_qubits;
  const Eigen::MatrixXcd rho_adj = rho.adjoint();

  // rho sigma_k^dag = (sigma_k rho^dag)^dag
  std::vector<Eigen::MatrixXcd> right(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) right[k] = (lowering_[k] * rho_adj).adjoint();

  Eigen::MatrixXcd out = -kI * (hamiltonian_.total * rho);
  // rho H^dag = (H rho^dag)^dag
  out += kI * (hamiltonian_.total * rho_adj).adjoint();
  Eigen::MatrixXcd acc(dim, dim);
  for (int m = 0; m < n; ++m) {
    acc.setZero();
    for (int k = 0; k < n; ++k) {
      if (coupling_(m, k) != 0.0) acc += coupling_(m, k) * right[k];
    }
    out += lowering_[m] * acc;
  }
  return out;
}

Eigen::MatrixXcd apply_liouvillian(const ArrayParams& params, const Eigen::MatrixXcd& rho) {
  return LiouvillianAction(params)(rho);
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (v.size() != d * d) throw ArgumentError("unvec: length is not dim^2");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

}  // namespace wqed
