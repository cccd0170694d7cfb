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

"""
Orthogonal matching pursuit over Kronecker-structured sensing operators
A = F_u^T (x) W, applied through the two-sided identity
A vec(H) = vec(W H F_u) so that A is never formed.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import List, Sequence, Tuple
from dataclasses import dataclass, field

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt
from scipy.linalg import qr, solve_triangular

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError, SingularSupportError, StructuralError
from holoris.logger import get_logger

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "KroneckerOperator",
    "OmpConfig",
    "SparseEstimate",
    "matched_filter",
    "support_ls",
    "omp",
    "MAX_CONDITION",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

MAX_CONDITION = 1e12


@dataclass(frozen=True)
class KroneckerOperator:
    """
    Implicit operator A = left (x) right with left = F_u^T (N_used x N_CP) and
    right = W (N_P x B).  Vectorization is column-major throughout, so entry
    (b, t) of H sits at linear index t * B + b.
    """

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "left", np.asarray(self.left, dtype=complex))
        object.__setattr__(self, "right", np.asarray(self.right, dtype=complex))
        if self.left.ndim != 2 or self.right.ndim != 2:
            raise StructuralError("Kronecker factors must be matrices")

    @classmethod
    def from_sensing(cls, W: np.ndarray, F_u: np.ndarray) -> "KroneckerOperator":
        return cls(left=np.asarray(F_u).T, right=W)

    # -------------------------------------------------------------------------
    # shapes
    # -------------------------------------------------------------------------

    @property
    def n_directions(self) -> int:
        return self.right.shape[1]

    @property
    def n_taps(self) -> int:
        return self.left.shape[1]

    @property
    def measurement_shape(self) -> Tuple[int, int]:
        """(N_P, N_used)"""
        return self.right.shape[0], self.left.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        n_p, n_used = self.measurement_shape
        return n_p * n_used, self.n_directions * self.n_taps

    # -------------------------------------------------------------------------
    # products
    # -------------------------------------------------------------------------

    def apply(self, h: np.ndarray) -> np.ndarray:
        """vec(W H F_u) for h = vec(H)"""
        H = np.reshape(h, (self.n_directions, self.n_taps), order="F")
        return (self.right @ H @ self.left.T).ravel(order="F")

    def adjoint_apply(self, r: np.ndarray) -> np.ndarray:
        """vec(W^H R conj(F_u)) for r = vec(R)"""
        R = np.reshape(r, self.measurement_shape, order="F")
        return (self.right.conj().T @ R @ self.left.conj()).ravel(order="F")

    def columns(self, indices: Sequence[int]) -> np.ndarray:
        """selected columns of A; column t*B + b is F_u[t, :] (x) W[:, b]"""
        B = self.n_directions
        cols = [np.kron(self.left[:, i // B], self.right[:, i % B]) for i in indices]
        return np.stack(cols, axis=1) if cols else np.empty((self.shape[0], 0), complex)

    def materialize(self) -> np.ndarray:
        return np.kron(self.left, self.right)

    # -------------------------------------------------------------------------
    # complexity accounting
    # -------------------------------------------------------------------------

    @property
    def matched_filter_mults(self) -> int:
        """complex multiplications of A^H r counted as a dense product"""
        rows, cols = self.shape
        return rows * cols


class OmpConfig(BaseModel):
    """
    `residual_tol = 0` keeps the fixed-iteration behaviour; a positive value
    stops once the residual norm drops to it.
    """

    model_config = ConfigDict(frozen=True)

    max_iters: PositiveInt = 20
    residual_tol: float = Field(0.0, ge=0)


@dataclass(frozen=True)
class SparseEstimate:
    support: Tuple[int, ...]
    values: np.ndarray
    H_hat: np.ndarray
    residual_norms: Tuple[float, ...] = field(default_factory=tuple)
    mult_count: int = 0


def matched_filter(op: KroneckerOperator, residual: np.ndarray) -> Tuple[int, np.ndarray]:
    """
    Index of the largest |A^H r| (first one on ties) together with the
    correlation vector.
    """
    if residual.size != op.shape[0]:
        raise StructuralError(
            f"residual length {residual.size} does not match operator rows {op.shape[0]}"
        )
    corr = op.adjoint_apply(residual)
    return int(np.argmax(np.abs(corr))), corr


def support_ls(
    op: KroneckerOperator, measurements: np.ndarray, support: Sequence[int]
) -> np.ndarray:
    """
    Least-squares coefficients of vec(Y) on the selected columns, through a
    thin QR factorization.

    Raises
    ------
    SingularSupportError
        The selected columns have condition number above MAX_CONDITION.
    """
    y = np.ravel(measurements, order="F")
    A_s = op.columns(support)
    if A_s.shape[1] > A_s.shape[0]:
        raise SingularSupportError(
            f"support of size {A_s.shape[1]} exceeds {A_s.shape[0]} measurements",
            condition=np.inf,
        )

    Q, R = qr(A_s, mode="economic")
    diag = np.abs(np.diag(R))
    condition = np.linalg.cond(R) if diag.min() > 0 else np.inf
    if condition > MAX_CONDITION:
        raise SingularSupportError(
            f"selected columns {list(support)} are numerically dependent "
            f"(condition {condition:.3g})",
            condition=float(condition),
        )

    return solve_triangular(R, Q.conj().T @ y)


def omp(
    op: KroneckerOperator, measurements: np.ndarray, cfg: OmpConfig = OmpConfig()
) -> SparseEstimate:
    """
    Greedy recovery of vec(H) from vec(Y) = A vec(H) + noise.

    Each iteration correlates the residual with every column, adds the best
    unused column to the support, solves least squares on the support and
    updates the residual.  Runs `cfg.max_iters` iterations unless the
    residual reaches `cfg.residual_tol` or vanishes exactly.

    Returns
    -------
    SparseEstimate
        `H_hat` has shape (B, N_CP) with zeros off the support; the residual
        norms start with the norm of vec(Y).

    Raises
    ------
    ConfigurationError
        More iterations than measurements N_P N_used; the support would turn
        rank deficient before the last iteration.
    """
    Y = np.asarray(measurements, dtype=complex)
    if Y.shape != op.measurement_shape:
        raise StructuralError(
            f"measurement shape {Y.shape} does not match operator {op.measurement_shape}"
        )

    if cfg.max_iters > Y.size:
        n_p, n_used = Y.shape
        raise ConfigurationError(
            f"N_max={cfg.max_iters} exceeds the {Y.size} measurements "
            f"(N_P={n_p} x N_used={n_used})"
        )

    log = get_logger()
    y = Y.ravel(order="F")
    rows = y.size

    support: List[int] = []
    values = np.zeros(0, dtype=complex)
    residual = y.copy()
    norms = [float(np.linalg.norm(residual))]
    mults = 0

    for iteration in range(cfg.max_iters):
        if norms[-1] == 0.0 or norms[-1] <= cfg.residual_tol:
            break

        _, corr = matched_filter(op, residual)
        mults += op.matched_filter_mults

        magnitude = np.abs(corr)
        magnitude[support] = -1.0
        index = int(np.argmax(magnitude))
        support.append(index)

        values = support_ls(op, Y, support)
        size = len(support)
        mults += rows * size * size + rows * size

        residual = y - op.columns(support) @ values
        mults += rows * size
        norms.append(float(np.linalg.norm(residual)))

        log.debug(f"omp iter {iteration + 1}: index={index} residual={norms[-1]:.3e}")

    h = np.zeros(op.n_directions * op.n_taps, dtype=complex)
    h[support] = values
    H_hat = h.reshape((op.n_directions, op.n_taps), order="F")

    return SparseEstimate(
        support=tuple(support),
        values=values,
        H_hat=H_hat,
        residual_norms=tuple(norms),
        mult_count=mults,
    )
