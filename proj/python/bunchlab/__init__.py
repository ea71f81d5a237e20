# Copyright 2026 The bunchlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Boson bunching probabilities and permanent inequalities.

Matrices are complex128 NumPy arrays. Mode and photon indices are 0-based.
"""

import json as _json

import numpy as _np

from . import _core
from ._core import (
    ConvergenceError,
    DataCorruptionError,
    DimensionError,
    DomainError,
    Error,
    IndexError,
    ParseError,
    PrecisionError,
    SizeError,
    counterexample,
    f_matrix,
    haar_unitary,
    permanent,
    permanent_scaled,
    simulate_bunching,
)

__version__ = "0.1.0"


def _states(states):
    return [_np.asarray(s, dtype=complex) for s in states]


def anomaly_criterion(g):
    """lambda_max of Sym(Re F^g) against perm(g), with tau_max."""
    return _json.loads(_core.anomaly_criterion(g))


def bunching_prob(h, s):
    return _json.loads(_core.bunching_prob(h, s))


def h_matrix(u, n, kappa):
    return _core.h_matrix(u, n, sorted(kappa))


def gram_from_vectors(states):
    return _core.gram_from_vectors(_states(states))


def compile_gram(spec):
    """spec is a GramSpec dict, e.g. {"kind": "x_model", "n": 3, "x": 0.5}."""
    return _core.compile_gram(_json.dumps(spec))


def reck_decompose(u):
    return _json.loads(_core.reck_decompose(u))


def reconstruct(network):
    return _core.reconstruct(_json.dumps(network))


def violation_scan(h, tau, start=0.0, stop=2.0, step=0.001):
    return _json.loads(_core.violation_scan(h, _np.asarray(tau, dtype=float), start, stop, step))


def reproduce():
    """Rebuilds the 16-photon counterexample and checks the quoted numbers."""
    return _json.loads(_core.reproduce())


def conjecture_search(n, trials, sampler="haar_gram", seed=0):
    return _json.loads(_core.conjecture_search(n, trials, sampler, seed))


def simulate(u, states, kappa):
    """First-quantization bunching probability (n <= 3, m <= 4, L <= 3)."""
    return simulate_bunching(u, _states(states), list(kappa))


def selftest(quick=True, seed=0):
    return _core.selftest(quick, seed)
