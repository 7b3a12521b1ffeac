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

#include "wqed/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseLU>
#include <lapacke.h>

#include "pauli_basis.hpp"
#include "wqed/error.hpp"

namespace wqed {

namespace {

bool spectral_less(const Complex& a, const Complex& b) {
  const double ra = std::abs(a.real());
  const double rb = std::abs(b.real());
  if (ra != rb) return ra < rb;
  return a.imag() < b.imag();
}

std::vector<std::size_t> spectral_order(const std::vector<Complex>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return spectral_less(values[i], values[j]);
  });
  return order;
}

// Pivot is the first entry within a relative 1e-10 of the largest magnitude, so
// ties (common for symmetric modes) do not depend on rounding.
void fix_phase(Eigen::VectorXcd& v) {
  const double top = v.cwiseAbs().maxCoeff();
  Eigen::Index arg = 0;
  while (std::abs(v[arg]) < top * (1.0 - 1e-10)) ++arg;
  const Complex pivot = v[arg];
  if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
  v[arg] = Complex(v[arg].real(), 0.0);
}

// Normalizes, orthonormalizes degenerate groups in sorted order and fixes phases.
void canonicalize_vectors(SpectrumResult& s, double degeneracy_tol) {
  const std::size_t n = s.eigenvalues.size();
  std::vector<char> done(n, 0);
  for (auto& v : s.eigenvectors) v.normalize();
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!done[j] && std::abs(s.eigenvalues[j] - s.eigenvalues[i]) < degeneracy_tol * s.gamma_1d) {
        group.push_back(j);
      }
    }
    for (std::size_t a = 0; a < group.size(); ++a) {
      Eigen::VectorXcd w = s.eigenvectors[group[a]];
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t b = 0; b < a; ++b) {
          const auto& q = s.eigenvectors[group[b]];
          w -= q.dot(w) * q;
        }
      }
      // A (numerically) defective group cannot be orthonormalized; keep the raw vector.
      if (w.norm() > 1e-8) s.eigenvectors[group[a]] = w.normalized();
      done[group[a]] = 1;
    }
  }
  for (auto& v : s.eigenvectors) fix_phase(v);
}

double residual_of(const SparseComplexMatrix& m, const Eigen::VectorXcd& v, Complex lambda) {
  return (m * v - lambda * v).norm();
}

void fill_residuals(SpectrumResult& s, const SparseComplexMatrix& m) {
  const double scale = std::max(m.norm1(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    worst = std::max(worst, residual_of(m, s.eigenvectors[i], s.eigenvalues[i]) / scale);
  }
  s.max_residual = worst;
}

std::size_t smallest_modulus(const std::vector<Complex>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) < std::abs(values[best])) best = i;
  }
  return best;
}

}  // namespace

SpectrumResult full_spectrum(const Liouvillian& l, bool want_vectors, const SpectrumOptions& options) {
  const std::size_t big = l.matrix.rows();
  if (big > options.dense_budget) {
    throw ResourceError("dense spectrum of dimension " + std::to_string(big) +
                        " exceeds the dense budget " + std::to_string(options.dense_budget) +
                        "; use targeted_spectrum");
  }
  const int n = l.params.n_qubits;
  Eigen::MatrixXd real = detail::real_representation(l.matrix, n);

  const auto dim = static_cast<lapack_int>(big);
  std::vector<double> wr(big), wi(big);
  Eigen::MatrixXd vr;
  if (want_vectors) vr.resize(static_cast<Eigen::Index>(big), static_cast<Eigen::Index>(big));
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', dim,
                                        real.data(), dim, wr.data(), wi.data(), &dummy, 1,
                                        want_vectors ? vr.data() : &dummy, want_vectors ? dim : 1);
  if (info != 0) {
    throw NumericError("dense eigensolver failed", "LAPACKE_dgeev info=" + std::to_string(info));
  }

  std::vector<Complex> values(big);
  for (std::size_t i = 0; i < big; ++i) values[i] = {wr[i], wi[i]};

  SpectrumResult s;
  s.n_qubits = n;
  s.gamma_1d = l.params.gamma_1d;
  const auto order = spectral_order(values);
  s.eigenvalues.reserve(big);
  for (std::size_t i : order) s.eigenvalues.push_back(values[i]);
  s.zero_index = smallest_modulus(s.eigenvalues);
  s.max_residual = std::numeric_limits<double>::quiet_NaN();

  if (want_vectors) {
    // dgeev packs a conjugate pair as (re, im) in consecutive columns.
    std::vector<Eigen::VectorXcd> coeffs(big);
    for (std::size_t j = 0; j < big; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      if (wi[j] == 0.0) {
        coeffs[j] = vr.col(col).cast<Complex>();
      } else if (wi[j] > 0.0) {
        coeffs[j] = vr.col(col).cast<Complex>() + Complex(0.0, 1.0) * vr.col(col + 1).cast<Complex>();
        coeffs[j + 1] = coeffs[j].conjugate();
        ++j;
      }
    }
    s.eigenvectors.reserve(big);
    for (std::size_t i : order) s.eigenvectors.push_back(vec(detail::from_pauli_coefficients(coeffs[i], n)));
    canonicalize_vectors(s, options.degeneracy_tol);
    fill_residuals(s, l.matrix);
  }
  return s;
}

SpectrumResult targeted_spectrum(const Liouvillian& l, Complex shift, std::size_t k,
                                 const TargetedOptions& options) {
  const std::size_t big = l.matrix.rows();
  if (k == 0 || k >= big) throw ArgumentError("targeted_spectrum: need 0 < k < 4^N");
  const std::size_t extra = options.oversample > 0 ? static_cast<std::size_t>(options.oversample)
                                                   : std::max<std::size_t>(k, 20);
  const std::size_t block = std::min(big, k + extra);
  const double gamma = l.params.gamma_1d;

  // Offset keeps the factorization regular when the shift is an exact eigenvalue;
  // Ritz values come from L itself, so the offset does not bias them.
  const Complex offset = 1e-7 * std::max(gamma, std::abs(shift)) * Complex(M_SQRT1_2, M_SQRT1_2);
  Eigen::SparseMatrix<Complex> shifted = l.matrix.to_eigen();
  Eigen::SparseMatrix<Complex> eye(shifted.rows(), shifted.cols());
  eye.setIdentity();
  shifted -= (shift + offset) * eye;
  shifted.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(shifted);
  lu.factorize(shifted);
  if (lu.info() != Eigen::Success) {
    throw NumericError("targeted_spectrum: sparse factorization failed", lu.lastErrorMessage());
  }

  const auto rows = static_cast<Eigen::Index>(big);
  const auto cols = static_cast<Eigen::Index>(block);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd basis(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) basis(i, j) = Complex(normal(rng), normal(rng));
  }

  const double scale = std::max(l.matrix.norm1(), std::numeric_limits<double>::min());
  std::vector<double> residuals(k, std::numeric_limits<double>::infinity());
  // Ill-conditioned clusters plateau above tol; accept them once the worst
  // residual is below stall_tol and has stopped improving.
  std::vector<double> history;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Eigen::MatrixXcd image = lu.solve(basis);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(image);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
    const Eigen::MatrixXcd lq = l.matrix * q;
    const Eigen::MatrixXcd projected = q.adjoint() * lq;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(projected);
    if (es.info() != Eigen::Success) throw NumericError("targeted_spectrum: Ritz problem failed");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(cols));
    std::iota(order.begin(), order.end(), 0);
    const auto& theta = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(theta[a] - shift) < std::abs(theta[b] - shift);
    });

    Eigen::MatrixXcd ritz(rows, cols);
    bool converged = true;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Eigen::VectorXcd y = es.eigenvectors().col(order[static_cast<std::size_t>(j)]).normalized();
      ritz.col(j) = q * y;
      if (static_cast<std::size_t>(j) < k) {
        const Complex value = theta[order[static_cast<std::size_t>(j)]];
        const double r = (lq * y - value * ritz.col(j)).norm() / scale;
        residuals[static_cast<std::size_t>(j)] = r;
        if (!(r <= options.tol)) converged = false;
      }
    }

    const double worst = *std::max_element(residuals.begin(), residuals.end());
    history.push_back(worst);
    constexpr std::size_t kWindow = 8;
    if (!converged && worst <= options.stall_tol && history.size() > kWindow &&
        worst > 0.5 * history[history.size() - 1 - kWindow]) {
      converged = true;
    }

    if (converged) {
      SpectrumResult s;
      s.n_qubits = l.params.n_qubits;
      s.gamma_1d = gamma;
      std::vector<Complex> values;
      std::vector<Eigen::VectorXcd> vectors;
      for (std::size_t j = 0; j < k; ++j) {
        values.push_back(theta[order[j]]);
        vectors.emplace_back(ritz.col(static_cast<Eigen::Index>(j)));
      }
      for (std::size_t i : spectral_order(values)) {
        s.eigenvalues.push_back(values[i]);
        s.eigenvectors.push_back(std::move(vectors[i]));
      }
      s.zero_index = smallest_modulus(s.eigenvalues);
      canonicalize_vectors(s, 1e-8);
      fill_residuals(s, l.matrix);
      return s;
    }
    basis = std::move(ritz);
  }

  std::ostringstream diag;
  diag << "residuals/||L||_1 after " << options.max_iterations << " iterations:";
  for (double r : residuals) diag << ' ' << r;
  throw NumericError("targeted_spectrum did not converge", diag.str());
}

SlowRate second_slowest_rate(const SpectrumResult& spectrum, double zero_tol) {
  SlowRate out;
  out.zero_multiplicity = kernel_dimension(spectrum, zero_tol);
  if (out.zero_multiplicity >= 2) return out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    if (i == spectrum.zero_index) continue;
    best = std::min(best, -spectrum.eigenvalues[i].real());
  }
  out.rate = best;
  return out;
}

SlowRate second_slowest_rate(const Liouvillian& l, double zero_tol) {
  return second_slowest_rate(full_spectrum(l, false), zero_tol);
}

double slowest_nonzero_rate(const SpectrumResult& spectrum, double zero_tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum.eigenvalues) {
    if (std::abs(z) >= zero_tol * spectrum.gamma_1d) best = std::min(best, std::abs(z.real()));
  }
  return best;
}

int kernel_dimension(const SpectrumResult& spectrum, double tol) {
  return static_cast<int>(std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                        [&](const Complex& z) { return std::abs(z) < tol * spectrum.gamma_1d; }));
}

int kernel_dimension(const Liouvillian& l, double tol) {
  return kernel_dimension(full_spectrum(l, false), tol);
}

int count_below(const SpectrumResult& spectrum, double threshold) {
  return static_cast<int>(std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                        [&](const Complex& z) {
                                          return std::abs(z.real()) < threshold * spectrum.gamma_1d;
                                        }));
}

namespace {

// Grows k until the nearest-to-zero window extends past the threshold.
int targeted_count(const Liouvillian& l, double threshold) {
  std::size_t k = 32;
  const std::size_t big = l.matrix.rows();
  for (;;) {
    k = std::min(k, big - 1);
    const auto s = targeted_spectrum(l, 0.0, k);
    const int count = count_below(s, threshold);
    double reach = 0.0;
    for (const auto& z : s.eigenvalues) reach = std::max(reach, std::abs(z));
    if (static_cast<std::size_t>(count) < k && reach > threshold * l.params.gamma_1d) return count;
    if (k == big - 1) return count;
    k *= 2;
  }
}

int count_at(const ArrayParams& params, double threshold, const SpectrumOptions& options) {
  const auto l = build_liouvillian(params);
  if (l.matrix.rows() <= options.dense_budget) return count_below(full_spectrum(l, false, options), threshold);
  return targeted_count(l, threshold);
}

}  // namespace

SubradiantCount subradiant_count(const ArrayParams& params, double threshold,
                                 const SpectrumOptions& options) {
  SubradiantCount out;
  out.count = count_at(params, threshold, options);
  ArrayParams doubled = params;
  doubled.omega_r *= 2.0;
  out.count_doubled = count_at(doubled, threshold, options);
  out.stable = out.count == out.count_doubled;
  return out;
}

EigenDensityMatrix eigen_density_matrix(const SpectrumResult& spectrum, std::size_t index) {
  if (!spectrum.has_vectors()) throw ArgumentError("eigen_density_matrix: spectrum has no eigenvectors");
  if (index >= spectrum.eigenvalues.size()) throw ArgumentError("eigen_density_matrix: index out of range");
  const std::size_t dim = std::size_t{1} << spectrum.n_qubits;
  return {spectrum.eigenvalues[index], unvec(spectrum.eigenvectors[index], dim)};
}

Eigen::MatrixXcd eigenstate_correlations(const EigenDensityMatrix& state) {
  const auto dim = static_cast<std::size_t>(state.rho.rows());
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return correlation_matrix(state.rho, n);
}

std::string to_string(Observable o) {
  return o == Observable::second_slowest_rate ? "second_slowest_rate" : "subradiant_count";
}

Observable observable_from_string(const std::string& name) {
  if (name == "second_slowest_rate") return Observable::second_slowest_rate;
  if (name == "subradiant_count") return Observable::subradiant_count;
  throw ArgumentError("unknown observable '" + name + "'");
}

namespace {

SweepRow evaluate_row(const ArrayParams& params, Observable observable, const SweepOptions& options) {
  SweepRow row;
  row.params = params;
  row.observable = observable;
  try {
    const auto spectrum = full_spectrum(build_liouvillian(params), false, options.spectrum);
    if (observable == Observable::second_slowest_rate) {
      const auto slow = second_slowest_rate(spectrum, options.zero_tol);
      row.value = slow.rate;
      row.zero_multiplicity = slow.zero_multiplicity;
    } else {
      ArrayParams doubled = params;
      doubled.omega_r *= 2.0;
      const int count = count_below(spectrum, options.subradiant_threshold);
      const int count2 =
          count_below(full_spectrum(build_liouvillian(doubled), false, options.spectrum),
                      options.subradiant_threshold);
      row.value = count;
      row.zero_multiplicity = kernel_dimension(spectrum, options.zero_tol);
      if (count != count2) row.status = "unstable";
    }
  } catch (const std::exception& e) {
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<ArrayParams>& grid, Observable observable,
                            const SweepOptions& options) {
  std::vector<SweepRow> rows(grid.size());
  unsigned jobs = options.jobs ? options.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(grid.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = evaluate_row(grid[i], observable, options);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double rate_scale) {
  out << "phi,d_over_lambda,omega_r,n_qubits,observable,value,zero_multiplicity,status\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    const double value = r.observable == Observable::second_slowest_rate ? r.value * rate_scale : r.value;
    out << r.params.phi << ',' << r.params.d_over_lambda() << ',' << r.params.omega_r << ','
        << r.params.n_qubits << ',' << to_string(r.observable) << ',' << value << ','
        << r.zero_multiplicity << ',';
    // statuses may carry commas in error text
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << status << '\n';
  }
}

void write_eigenvalues_csv(std::ostream& out, const SpectrumResult& spectrum, double scale) {
  out << "index,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    out << i << ',' << spectrum.eigenvalues[i].real() * scale << ',' << spectrum.eigenvalues[i].imag() * scale
        << '\n';
  }
}

}  // namespace wqed
