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


"""Driven-dissipative waveguide QED qubit arrays: Liouvillian spectra, dark
states, strong-drive perturbation theory and correlator dynamics."""

from ._wqed import (
    ArgumentError,
    ArrayParams,
    NumericError,
    ResourceError,
    correlator,
    eigenstate_correlations,
    evolve,
    full_spectrum,
    fully_excited_state,
    kernel_dimension,
    liouvillian_triplets,
    pt_report,
    second_slowest_rate,
    subradiant_count,
    sweep,
    targeted_spectrum,
)

__all__ = [
    "ArgumentError",
    "ArrayParams",
    "NumericError",
    "ResourceError",
    "correlator",
    "eigenstate_correlations",
    "evolve",
    "full_spectrum",
    "fully_excited_state",
    "kernel_dimension",
    "liouvillian_triplets",
    "pt_report",
    "second_slowest_rate",
    "subradiant_count",
    "sweep",
    "targeted_spectrum",
]
