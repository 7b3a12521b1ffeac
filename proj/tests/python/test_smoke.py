# Copyright 2026 The wqed Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math

import numpy as np
import pytest

import wqed


def test_single_qubit_spectrum():
    p = wqed.ArrayParams(1, 0.0)
    s = wqed.full_spectrum(p, want_vectors=True)
    np.testing.assert_allclose(s["eigenvalues"], [0, -1, -1, -2], atol=1e-12)
    assert s["eigenvectors"].shape == (4, 4)
    assert s["max_residual"] < 1e-12


def test_params_from_period():
    p = wqed.ArrayParams.from_d_over_lambda(3, 0.25, 2.0)
    assert p.phi == pytest.approx(math.pi / 2)
    assert p.d_over_lambda == pytest.approx(0.25)
    with pytest.raises(ValueError):
        wqed.ArrayParams(0, 0.0)


def test_liouvillian_is_trace_preserving():
    rows, cols, vals, dim = wqed.liouvillian_triplets(wqed.ArrayParams(2, 0.7, 1.3))
    dense = np.zeros((dim, dim), complex)
    dense[rows, cols] = vals
    d = int(round(math.sqrt(dim)))
    left = np.eye(d).reshape(-1, order="F")
    assert np.abs(left @ dense).max() < 1e-12


def test_dark_counts():
    assert wqed.kernel_dimension(wqed.ArrayParams(4, math.pi, 2.0)) == 14
    assert wqed.subradiant_count(wqed.ArrayParams(3, math.pi / 2, 20.0))["count"] == 2
    rate, zeros = wqed.second_slowest_rate(wqed.ArrayParams(2, math.pi, 10.0))
    assert rate == 0.0 and zeros == 2


def test_targeted_matches_dense():
    p = wqed.ArrayParams(3, math.pi / 2, 5.0)
    full = wqed.full_spectrum(p)["eigenvalues"]
    part = wqed.targeted_spectrum(p, 0.0, 4)["eigenvalues"]
    np.testing.assert_allclose(part, full[:4], atol=1e-8)


def test_pt_report():
    r = wqed.pt_report(wqed.ArrayParams(3, math.pi / 2, 50.0))
    assert r["zero_dim"] == 20
    assert r["order1_nullspace_dim"] == 2
    assert abs(r["xi_pt"] - r["xi_fit"]) < 0.1 * r["xi_fit"]


def test_sweep_rows_in_order():
    grid = [wqed.ArrayParams.from_d_over_lambda(3, d, 1.0) for d in (0.1, 0.2, 0.3)]
    rows = wqed.sweep(grid, "second_slowest_rate", jobs=2)
    assert [r["d_over_lambda"] for r in rows] == pytest.approx([0.1, 0.2, 0.3])
    assert all(r["status"] == "ok" for r in rows)


def test_single_qubit_decay():
    p = wqed.ArrayParams(1, 0.0)
    tr = wqed.evolve(p, wqed.fully_excited_state(1), 2.0, samples=21)
    pop = tr["correlators"][:, 0, 0].real
    np.testing.assert_allclose(pop, np.exp(-2 * np.asarray(tr["times"])), atol=1e-8)
    assert max(tr["trace_drift"]) < 1e-8


def test_correlator_and_errors():
    rho = wqed.fully_excited_state(2)
    assert wqed.correlator(rho, 1, 1) == 1
    with pytest.raises(wqed.ArgumentError):
        wqed.correlator(rho, 3, 1)
    with pytest.raises(wqed.ResourceError):
        wqed.full_spectrum(wqed.ArrayParams(7, 0.0))


def test_eigenstate_correlations_shape():
    c = wqed.eigenstate_correlations(wqed.ArrayParams(2, math.pi, 1.0), 0)
    assert c.shape == (2, 2)
    np.testing.assert_allclose(c, c.conj().T, atol=1e-12)
