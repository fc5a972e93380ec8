"""Exact linear algebra over a :class:`~foldcodes.field.GF`.

Matrices are 2-D ``int64`` numpy arrays holding field integers.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .field import GF


def as_matrix(M, cols: int | None = None) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(0, cols) if A.size == 0 and cols is not None else A.reshape(1, -1)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return A


def rref(field: "GF", M) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form with zero rows dropped, and the pivot columns."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = field.mul(field.inv(lead), A[r])
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others] = field.sub(A[others], field.mul(A[others, c][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(field: "GF", M) -> int:
    return len(rref(field, M)[1])


def kernel(field: "GF", M) -> np.ndarray:
    """Basis (as rows) of the right kernel {v : M v^T = 0}."""
    A = as_matrix(M)
    cols = A.shape[1]
    R, pivots = rref(field, A)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for row, pc in enumerate(pivots):
            K[i, pc] = field.neg(int(R[row, f]))
    return K


def matmul(field: "GF", A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = field.add(out, field.mul(A[:, k][:, None], B[k][None, :]))
    return np.asarray(out, dtype=np.int64).reshape(A.shape[0], B.shape[1])


def in_row_space(field: "GF", R: np.ndarray, pivots, v) -> bool:
    """Membership test of v in the row space of an RREF matrix R."""
    v = np.array(v, dtype=np.int64)
    for row, pc in enumerate(pivots):
        c = int(v[pc])
        if c:
            v = field.sub(v, field.mul(c, R[row]))
    return not np.any(v)
