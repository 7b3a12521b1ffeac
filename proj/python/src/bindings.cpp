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


#include <cstdint>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wqed/dynamics.hpp"
#include "wqed/error.hpp"
#include "wqed/perturbation.hpp"
#include "wqed/spectra.hpp"

namespace py = pybind11;
using namespace wqed;

namespace {

py::dict spectrum_dict(const SpectrumResult& s) {
  py::dict d;
  d["eigenvalues"] = Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(
      s.eigenvalues.data(), static_cast<Eigen::Index>(s.eigenvalues.size())));
  if (s.has_vectors()) {
    Eigen::MatrixXcd v(s.eigenvectors.front().size(), static_cast<Eigen::Index>(s.eigenvectors.size()));
    for (std::size_t i = 0; i < s.eigenvectors.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = s.eigenvectors[i];
    d["eigenvectors"] = v;
    d["max_residual"] = s.max_residual;
  }
  d["zero_index"] = s.zero_index;
  return d;
}

}  // namespace

PYBIND11_MODULE(_wqed, m) {
  m.doc() = "Lindblad spectra and dynamics of driven qubit arrays in a waveguide";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::enum_<DriveIncidence>(m, "DriveIncidence")
      .value("left", DriveIncidence::left)
      .value("right", DriveIncidence::right);

  py::class_<ArrayParams>(m, "ArrayParams")
      .def(py::init([](int n_qubits, double phi, double omega_r, double gamma_1d, DriveIncidence incidence) {
             ArrayParams p{n_qubits, phi, gamma_1d, omega_r, incidence};
             p.validate();
             return p;
           }),
           py::arg("n_qubits"), py::arg("phi"), py::arg("omega_r") = 0.0, py::arg("gamma_1d") = 1.0,
           py::arg("incidence") = DriveIncidence::left)
      .def_static("from_d_over_lambda", &ArrayParams::from_d_over_lambda, py::arg("n_qubits"),
                  py::arg("d_over_lambda"), py::arg("omega_r") = 0.0, py::arg("gamma_1d") = 1.0)
      .def_readwrite("n_qubits", &ArrayParams::n_qubits)
      .def_readwrite("phi", &ArrayParams::phi)
      .def_readwrite("gamma_1d", &ArrayParams::gamma_1d)
      .def_readwrite("omega_r", &ArrayParams::omega_r)
      .def_readwrite("incidence", &ArrayParams::incidence)
      .def_property_readonly("d_over_lambda", &ArrayParams::d_over_lambda)
      .def("__repr__", [](const ArrayParams& p) {
        return "ArrayParams(n_qubits=" + std::to_string(p.n_qubits) + ", phi=" + std::to_string(p.phi) +
               ", omega_r=" + std::to_string(p.omega_r) + ")";
      });

  m.def(
      "liouvillian_triplets",
      [](const ArrayParams& p) {
        const auto l = build_liouvillian(p);
        const auto e = l.matrix.entries();
        py::array_t<std::int64_t> rows(static_cast<py::ssize_t>(e.size())), cols(static_cast<py::ssize_t>(e.size()));
        py::array_t<Complex> values(static_cast<py::ssize_t>(e.size()));
        auto r = rows.mutable_unchecked<1>();
        auto c = cols.mutable_unchecked<1>();
        auto v = values.mutable_unchecked<1>();
        for (std::size_t i = 0; i < e.size(); ++i) {
          const auto k = static_cast<py::ssize_t>(i);
          r(k) = static_cast<std::int64_t>(e[i].row);
          c(k) = static_cast<std::int64_t>(e[i].col);
          v(k) = e[i].value;
        }
        return py::make_tuple(rows, cols, values, l.matrix.rows());
      },
      py::arg("params"), "Column-stacked Liouvillian as (rows, cols, values, dim).");

  m.def(
      "full_spectrum",
      [](const ArrayParams& p, bool vectors) {
        SpectrumResult s;
        {
          py::gil_scoped_release release;
          s = full_spectrum(build_liouvillian(p), vectors);
        }
        return spectrum_dict(s);
      },
      py::arg("params"), py::arg("want_vectors") = false);

  m.def(
      "targeted_spectrum",
      [](const ArrayParams& p, Complex shift, std::size_t k, std::uint64_t seed) {
        TargetedOptions opts;
        opts.seed = seed;
        return spectrum_dict(targeted_spectrum(build_liouvillian(p), shift, k, opts));
      },
      py::arg("params"), py::arg("shift"), py::arg("k"), py::arg("seed") = 7);

  m.def(
      "second_slowest_rate",
      [](const ArrayParams& p, double zero_tol) {
        const auto r = second_slowest_rate(build_liouvillian(p), zero_tol);
        return py::make_tuple(r.rate, r.zero_multiplicity);
      },
      py::arg("params"), py::arg("zero_tol") = kDefaultZeroTol, "Returns (rate, zero_multiplicity).");

  m.def(
      "kernel_dimension",
      [](const ArrayParams& p, double tol) { return kernel_dimension(build_liouvillian(p), tol); },
      py::arg("params"), py::arg("tol") = kDefaultZeroTol);

  m.def(
      "subradiant_count",
      [](const ArrayParams& p, double threshold) {
        const auto r = subradiant_count(p, threshold);
        py::dict d;
        d["count"] = r.count;
        d["count_doubled"] = r.count_doubled;
        d["stable"] = r.stable;
        return d;
      },
      py::arg("params"), py::arg("threshold") = kDefaultSubradiantThreshold);

  m.def(
      "eigenstate_correlations",
      [](const ArrayParams& p, std::size_t index) {
        const auto s = full_spectrum(build_liouvillian(p), true);
        return eigenstate_correlations(eigen_density_matrix(s, index));
      },
      py::arg("params"), py::arg("index"),
      "Tr[rho sigma_n^dag sigma_m] of the index-th eigen-operator in sorted order.");

  m.def(
      "sweep",
      [](const std::vector<ArrayParams>& grid, const std::string& observable, unsigned jobs) {
        SweepOptions opts;
        opts.jobs = jobs;
        const auto obs = observable_from_string(observable);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(grid, obs, opts);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["phi"] = r.params.phi;
          d["d_over_lambda"] = r.params.d_over_lambda();
          d["omega_r"] = r.params.omega_r;
          d["n_qubits"] = r.params.n_qubits;
          d["value"] = r.value;
          d["zero_multiplicity"] = r.zero_multiplicity;
          d["status"] = r.status;
          out.append(d);
        }
        return out;
      },
      py::arg("grid"), py::arg("observable") = "second_slowest_rate", py::arg("jobs") = 0);

  m.def(
      "pt_report",
      [](const ArrayParams& p) {
        const auto r = pt_report(p);
        py::dict d;
        d["n_qubits"] = r.n_qubits;
        d["omega_r"] = r.omega_r;
        d["zero_dim"] = r.zero_dim;
        d["order1_nullspace_dim"] = r.order1_nullspace_dim;
        if (r.xi) {
          d["xi_pt"] = r.xi->xi_pt;
          d["xi_fit"] = r.xi->xi_fit;
          d["slope_fit"] = r.xi->slope_fit;
          d["xi_by_order"] = r.xi->xi_by_order;
          d["first_lifting_order"] = r.xi->first_lifting_order;
        }
        return d;
      },
      py::arg("params"));

  m.def("fully_excited_state", &fully_excited_state, py::arg("n_qubits"));
  m.def("correlator", &correlator, py::arg("rho"), py::arg("n"), py::arg("m"));

  m.def(
      "evolve",
      [](const ArrayParams& p, const Eigen::MatrixXcd& rho0, double t_max, std::size_t samples, double tolerance) {
        EvolveOptions opts;
        opts.tolerance = tolerance;
        opts.keep_states = false;
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = evolve(p, rho0, t_max, samples, opts);
        }
        const int n = tr.n_qubits;
        py::array_t<Complex> corr({static_cast<py::ssize_t>(tr.times.size()), static_cast<py::ssize_t>(n),
                                   static_cast<py::ssize_t>(n)});
        auto c = corr.mutable_unchecked<3>();
        for (std::size_t k = 0; k < tr.times.size(); ++k)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) c(static_cast<py::ssize_t>(k), a, b) = tr.correlators[k](a, b);
        py::dict d;
        d["times"] = tr.times;
        d["correlators"] = corr;
        d["trace_drift"] = tr.trace_drift;
        d["purity"] = tr.purity;
        d["steps"] = tr.steps;
        return d;
      },
      py::arg("params"), py::arg("rho0"), py::arg("t_max"), py::arg("samples") = 200,
      py::arg("tolerance") = 1e-10);
}
