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


#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dense_oracle.hpp"
#include "doctest.h"
#include "wqed/error.hpp"
#include "wqed/spectra.hpp"

using namespace wqed;

namespace {

constexpr double kPi = std::numbers::pi;

ArrayParams params(int n, double phi, double omega) {
  ArrayParams p;
  p.n_qubits = n;
  p.phi = phi;
  p.omega_r = omega;
  return p;
}

SpectrumResult dense(int n, double phi, double omega, bool vectors = false) {
  return full_spectrum(build_liouvillian(params(n, phi, omega)), vectors);
}

}  // namespace

TEST_CASE("single-qubit spectrum") {
  const auto s = dense(1, 0.0, 0.0, true);
  REQUIRE(s.eigenvalues.size() == 4);
  const Complex expected[] = {0.0, -1.0, -1.0, -2.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - expected[i]) < 1e-12);
  CHECK(s.zero_index == 0);
  CHECK(s.max_residual < 1e-12);
  // degenerate pair orthonormal
  CHECK(std::abs(s.eigenvectors[1].dot(s.eigenvectors[2])) < 1e-12);
  for (const auto& v : s.eigenvectors) CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("sort order and canonical phase") {
  const auto s = dense(3, 1.3, 2.0, true);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    const double a = std::abs(s.eigenvalues[i - 1].real()), b = std::abs(s.eigenvalues[i].real());
    CHECK(a <= b + 1e-12);
  }
  for (const auto& v : s.eigenvectors) {
    const double top = v.cwiseAbs().maxCoeff();
    Eigen::Index imax = 0;
    while (std::abs(v(imax)) < top * (1.0 - 1e-10)) ++imax;
    CHECK(std::abs(v(imax).imag()) < 1e-14);
    CHECK(v(imax).real() > 0.0);
  }
  CHECK(s.max_residual < 1e-8);
}

TEST_CASE("dense spectrum matches oracle eigenvalues") {
  const auto s = dense(2, 0.9, 1.5);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(oracle::liouvillian(2, 0.9, 1.5), false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex z = es.eigenvalues()(i);
    double best = 1e300;
    for (Complex w : s.eigenvalues) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("conjugation symmetry") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int t = 0; t < 6; ++t) {
    const auto s = dense(2 + t % 3, u(rng), 0.7 * t);
    for (Complex z : s.eigenvalues) {
      double best = 1e300;
      for (Complex w : s.eigenvalues) best = std::min(best, std::abs(std::conj(z) - w));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("kernel dimensions at half-wavelength spacing") {
  CHECK(kernel_dimension(dense(2, kPi, 5.0)) >= 2);
  CHECK(kernel_dimension(build_liouvillian(params(2, kPi, 7.0))) == 2);
  CHECK(kernel_dimension(dense(3, 0.0, 3.0)) == 5);
  CHECK(kernel_dimension(dense(3, kPi, 1.0)) == 5);
  CHECK(kernel_dimension(dense(4, kPi, 2.0)) == 14);
}

TEST_CASE("dense budget") {
  SpectrumOptions small;
  small.dense_budget = 16;
  CHECK_THROWS_AS(full_spectrum(build_liouvillian(params(3, 0.0, 0.0)), false, small), ResourceError);
}

TEST_CASE("targeted spectrum") {
  SUBCASE("kernel of a half-wavelength pair") {
    const auto s = targeted_spectrum(build_liouvillian(params(2, kPi, 1.0)), 0.0, 2);
    REQUIRE(s.eigenvalues.size() == 2);
    for (Complex z : s.eigenvalues) CHECK(std::abs(z) < 1e-8);
  }
  SUBCASE("single qubit at -2") {
    const auto s = targeted_spectrum(build_liouvillian(params(1, 0.0, 0.0)), -2.0, 1);
    REQUIRE(s.eigenvalues.size() == 1);
    CHECK(std::abs(s.eigenvalues[0] + 2.0) < 1e-10);
  }
  SUBCASE("five qubits against the dense oracle") {
    const auto l = build_liouvillian(params(5, kPi / 2, 10.0));
    const auto full = full_spectrum(l, false);
    const auto part = targeted_spectrum(l, 0.0, 12);
    REQUIRE(part.eigenvalues.size() == 12);
    for (int i = 0; i < 10; ++i) CHECK(std::abs(part.eigenvalues[i] - full.eigenvalues[i]) < 1e-7);
    CHECK(part.max_residual <= 1e-8);
  }
  CHECK_THROWS_AS(targeted_spectrum(build_liouvillian(params(1, 0.0, 0.0)), 0.0, 4), ArgumentError);
}

TEST_CASE("second slowest rate") {
  const auto one = second_slowest_rate(build_liouvillian(params(1, 0.0, 0.0)));
  CHECK(one.rate == doctest::Approx(1.0));
  CHECK(one.zero_multiplicity == 1);

  const auto pair = second_slowest_rate(build_liouvillian(params(2, kPi, 10.0)));
  CHECK(pair.rate == 0.0);
  CHECK(pair.zero_multiplicity == 2);

  const double weak = second_slowest_rate(build_liouvillian(params(5, kPi / 2, 0.1))).rate;
  const double strong = second_slowest_rate(build_liouvillian(params(5, kPi / 2, 10.0))).rate;
  CHECK(strong * 10.0 <= weak);
}

TEST_CASE("subradiant counts") {
  const auto four = subradiant_count(params(4, kPi / 2, 10.0));
  CHECK(four.count == 4);
  CHECK(four.stable);
  const auto five = subradiant_count(params(5, kPi / 2, 10.0));
  CHECK(five.count == 10);
  CHECK(five.count_doubled == 10);
  CHECK(five.stable);
}

TEST_CASE("undriven quarter-wave scaling") {
  for (int n : {4, 5, 6}) {
    const double rate = slowest_nonzero_rate(dense(n, kPi / 2, 0.0));
    const double scaled = rate * n * n * n;
    CHECK(scaled >= 0.5 * kPi * kPi);
    CHECK(scaled <= 2.0 * kPi * kPi);
  }
}

TEST_CASE("strong-drive power law") {
  std::vector<double> x, y;
  for (double omega : {10.0, 14.7, 21.5, 31.6, 46.4, 68.1, 100.0}) {
    x.push_back(std::log(omega));
    y.push_back(std::log(slowest_nonzero_rate(dense(3, kPi / 2, omega))));
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.075));
}

TEST_CASE("eigenstate correlations") {
  SUBCASE("maximally mixed") {
    EigenDensityMatrix m{0.0, Eigen::MatrixXcd::Identity(8, 8) / 8.0};
    const auto c = eigenstate_correlations(m);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(std::abs(c(a, b) - Complex(a == b ? 0.5 : 0.0)) < 1e-15);
  }
  SUBCASE("dark projector") {
    const auto c = eigenstate_correlations({0.0, oracle::dark_projector_pair()});
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(std::abs(c(a, b)) == doctest::Approx(0.5));
  }
  SUBCASE("checkerboard of the second slowest mode") {
    const auto s = dense(5, kPi / 2, 10.0, true);
    const auto c = eigenstate_correlations(eigen_density_matrix(s, 1));
    double same = 1e300, opposite = 0.0;
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) {
        if (a == b) continue;
        if ((a - b) % 2 == 0) same = std::min(same, std::abs(c(a, b)));
        else opposite = std::max(opposite, std::abs(c(a, b)));
      }
    }
    CHECK(same >= 10.0 * opposite);
  }
  CHECK_THROWS_AS(eigen_density_matrix(dense(1, 0.0, 0.0, false), 0), ArgumentError);
}

TEST_CASE("sweep") {
  SUBCASE("single point equals the scalar call") {
    const auto p = params(3, 1.0, 2.0);
    const auto rows = sweep({p}, Observable::second_slowest_rate, {.jobs = 1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].value == second_slowest_rate(build_liouvillian(p)).rate);
    CHECK(rows[0].status == "ok");
  }
  SUBCASE("rows in grid order independent of job count") {
    std::vector<ArrayParams> grid;
    for (int i = 0; i < 6; ++i) grid.push_back(params(2 + i % 2, 0.5 * i, 1.0));
    const auto a = sweep(grid, Observable::second_slowest_rate, {.jobs = 1});
    const auto b = sweep(grid, Observable::second_slowest_rate, {.jobs = 3});
    std::ostringstream sa, sb;
    write_sweep_csv(sa, a);
    write_sweep_csv(sb, b);
    CHECK(sa.str() == sb.str());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[i].params.phi == grid[i].phi);
  }
  SUBCASE("errors stay in their row") {
    auto bad = params(3, 1.0, 2.0);
    bad.n_qubits = 0;
    const auto rows = sweep({params(1, 0.0, 0.0), bad}, Observable::second_slowest_rate, {.jobs = 2});
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status.rfind("error", 0) == 0);
  }
  SUBCASE("weak-drive minima sit at the ends of the period range") {
    std::vector<ArrayParams> grid;
    for (int i = 0; i < 19; ++i) grid.push_back(ArrayParams::from_d_over_lambda(5, 0.05 + 0.05 * i, 0.1));
    const auto rows = sweep(grid, Observable::second_slowest_rate);
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.value);
    // local minima at both ends of the range, none at d/lambda = 0.25
    CHECK(v[0] < v[1]);
    CHECK(v[18] < v[17]);
    CHECK(v[4] > v[3]);
    CHECK(v[4] > v[5]);
    CHECK(*std::min_element(v.begin(), v.end()) < v[4]);
  }
  SUBCASE("drive dependence is non-monotonic") {
    std::vector<ArrayParams> grid;
    std::vector<double> omegas;
    for (int i = 0; i <= 8; ++i) {
      omegas.push_back(std::pow(10.0, -1.0 + 0.25 * i));
      grid.push_back(params(5, kPi / 2, omegas.back()));
    }
    const auto rows = sweep(grid, Observable::second_slowest_rate);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].value > rows[peak].value) peak = i;
    CHECK(peak > 0);
    CHECK(peak < rows.size() - 1);
    CHECK(omegas[peak] >= 0.3);
    CHECK(omegas[peak] <= 3.2);
  }
}

TEST_CASE("observable names") {
  CHECK(observable_from_string(to_string(Observable::subradiant_count)) == Observable::subradiant_count);
  CHECK_THROWS_AS(observable_from_string("nope"), ArgumentError);
}

TEST_CASE("eigenvalue csv") {
  std::ostringstream out;
  write_eigenvalues_csv(out, dense(1, 0.0, 0.0));
  CHECK(out.str().rfind("index,re,im\n0,", 0) == 0);
}
