#  Copyright 2026 The holoris Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.


# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import pytest

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError, SingularSupportError, StructuralError
from holoris.ce_uplink import DscScheme, allocate_dsc, sensing_matrices
from holoris.sparse_recovery import (
    KroneckerOperator,
    OmpConfig,
    matched_filter,
    omp,
    support_ls,
)
from holoris.metrics import nmse, omp_mult_count

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def _complex_normal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def _operator(rng, N_P: int, B: int, N_CP: int, N_UE: int, scheme=DscScheme.RANDOM):
    alloc = allocate_dsc(scheme, N_CP, N_UE, rng)
    theta = rng.uniform(0, 2 * math.pi, size=(N_P, B, 1))
    sensing = sensing_matrices(theta, alloc, 1, P_tx_ul=1.0)
    return KroneckerOperator.from_sensing(sensing.W, sensing.F_u)


def _sparse_channel(rng, B: int, N_CP: int, k: int) -> np.ndarray:
    H = np.zeros(B * N_CP, dtype=complex)
    H[rng.choice(B * N_CP, size=k, replace=False)] = _complex_normal(rng, k)
    return H.reshape((B, N_CP), order="F")


# -----------------------------------------------------------------------------
# operator
# -----------------------------------------------------------------------------


def test_implicit_products_match_the_materialized_operator(rng):
    for _ in range(50):
        n_p, B, n_used, n_cp = rng.integers(1, 9, size=4)
        op = KroneckerOperator(
            left=_complex_normal(rng, (n_used, n_cp)), right=_complex_normal(rng, (n_p, B))
        )
        A = op.materialize()
        assert A.shape == op.shape

        h = _complex_normal(rng, A.shape[1])
        r = _complex_normal(rng, A.shape[0])
        assert np.linalg.norm(op.apply(h) - A @ h) <= 1e-12 * np.linalg.norm(A @ h)
        assert np.linalg.norm(op.adjoint_apply(r) - A.conj().T @ r) <= 1e-12 * np.linalg.norm(
            A.conj().T @ r
        )

        picks = rng.choice(A.shape[1], size=min(3, A.shape[1]), replace=False)
        assert np.allclose(op.columns(picks), A[:, picks])


def test_adjoint_identity(rng):
    op = _operator(rng, 12, 9, 16, 4)
    h = _complex_normal(rng, op.shape[1])
    r = _complex_normal(rng, op.shape[0])
    assert np.vdot(r, op.apply(h)) == pytest.approx(np.vdot(op.adjoint_apply(r), h))


def test_matched_filter_ties_and_shape_check():
    op = KroneckerOperator(left=np.ones((1, 1)), right=np.eye(2))
    index, corr = matched_filter(op, np.array([1.0 + 0j, 1.0 + 0j]))
    assert index == 0
    assert np.allclose(corr, [1.0, 1.0])

    with pytest.raises(StructuralError):
        matched_filter(op, np.ones(3, dtype=complex))


def test_dependent_support_is_rejected(rng):
    op = _operator(rng, 8, 4, 16, 2)
    Y = _complex_normal(rng, op.measurement_shape)
    with pytest.raises(SingularSupportError) as excinfo:
        support_ls(op, Y, [3, 3])
    assert excinfo.value.condition > 1e12


# -----------------------------------------------------------------------------
# recovery
# -----------------------------------------------------------------------------


def test_one_sparse_channel_is_recovered_exactly(rng):
    for _ in range(100):
        op = _operator(rng, 16, 16, 16, 2, scheme=DscScheme.BLOCK)
        H = _sparse_channel(rng, 16, 16, 1)
        Y = op.apply(H.ravel(order="F")).reshape(op.measurement_shape, order="F")

        cfg = OmpConfig(max_iters=5, residual_tol=1e-12 * np.linalg.norm(Y))
        estimate = omp(op, Y, cfg)
        assert nmse(estimate.H_hat, H) < 1e-20


def test_three_sparse_recovery_with_two_ues(rng):
    hits = 0
    for _ in range(100):
        op = _operator(rng, 32, 64, 16, 2)
        H = _sparse_channel(rng, 64, 16, 3)
        Y = op.apply(H.ravel(order="F")).reshape(op.measurement_shape, order="F")

        cfg = OmpConfig(max_iters=20, residual_tol=1e-9 * np.linalg.norm(Y))
        if nmse(omp(op, Y, cfg).H_hat, H) < 1e-10:
            hits += 1

    assert hits >= 95


def test_residual_never_grows_and_counts_multiplications(rng):
    op = _operator(rng, 16, 16, 16, 4)
    H = _sparse_channel(rng, 16, 16, 4)
    Y = op.apply(H.ravel(order="F")).reshape(op.measurement_shape, order="F")
    Y = Y + 0.05 * _complex_normal(rng, Y.shape)

    estimate = omp(op, Y, OmpConfig(max_iters=10))
    norms = np.asarray(estimate.residual_norms)
    assert norms[0] == pytest.approx(np.linalg.norm(Y))
    assert np.all(np.diff(norms) <= 1e-9 * norms[0])

    assert len(estimate.support) == len(set(estimate.support)) == 10
    off = np.ones(op.shape[1], dtype=bool)
    off[list(estimate.support)] = False
    assert not np.any(estimate.H_hat.ravel(order="F")[off])

    assert estimate.mult_count == omp_mult_count(16, 4, 16, 16, 10)


def test_omp_checks_the_measurement_shape(rng):
    op = _operator(rng, 8, 4, 16, 2)
    with pytest.raises(StructuralError):
        omp(op, np.zeros((8, 9), dtype=complex))


def test_omp_rejects_more_iterations_than_measurements(rng):
    op = _operator(rng, 2, 4, 16, 4)
    Y = _complex_normal(rng, op.measurement_shape)
    with pytest.raises(ConfigurationError, match="N_max=20"):
        omp(op, Y, OmpConfig(max_iters=20))

    estimate = omp(op, Y, OmpConfig(max_iters=4))
    assert len(estimate.support) <= 4
