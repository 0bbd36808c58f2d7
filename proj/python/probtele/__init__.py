# Copyright 2026 The probtele Authors
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

"""Probabilistic teleportation of N-qubit states over non-maximal channels."""

import json

from ._core import (
    Channel,
    ConfigError,
    Gate,
    Message,
    Netlist,
    NetlistParseError,
    StateVector,
    apply_cnot,
    apply_multi_controlled,
    apply_single,
    basis_state,
    build_un_matrix,
    compensator,
    compensator_angle,
    enumerate_branches,
    expand_u2_full,
    fidelity,
    inner_product,
    lambda_matrix,
    measure_qubit,
    parse_netlist,
    prepare_channel_circuit,
    random_channel,
    random_message,
    ry,
    sample_shot,
    split_on_qubit,
    standard_gate,
    success_probability,
    tensor,
    un_netlist,
)
from . import _core

__version__ = "0.1.0"


def run(n, y=None, x=None, *, mode="exact", shots=1000, seed=0,
        un_path="matrix", include_states=False, threads=0):
    """Runs one experiment and returns the report as a dict.

    `y` and `x` default to random inputs drawn from `seed`.
    """
    return json.loads(_core.run_json(n, y, x, mode, shots, seed, un_path,
                                     include_states, threads))


def verify(max_n=4, trials=10, seed=0):
    """Runs the invariant suites and returns the report as a dict."""
    return json.loads(_core.verify_json(max_n, trials, seed))
