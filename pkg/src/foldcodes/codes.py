"""Linear codes in canonical RREF form, GRS / alternant / Goppa constructors."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import GF, SubfieldView, field_new
from .linalg import as_matrix, in_row_space, kernel, matmul, rref
from .poly import Polynomial


class LinearCode:
    """A subspace of field^n stored by its unique reduced row-echelon generator."""

    __slots__ = ("field", "n", "generator", "pivots")

    def __init__(self, field: GF, rows, n: int | None = None):
        A = as_matrix(rows, cols=n)
        if n is None:
            n = A.shape[1]
        if A.shape[0] == 0:
            A = np.zeros((0, n), dtype=np.int64)
        if A.shape[1] != n:
            raise ValueError(f"rows have length {A.shape[1]}, expected {n}")
        R, piv = rref(field, A)
        R.setflags(write=False)
        self.field = field
        self.n = n
        self.generator = R
        self.pivots = piv

    @classmethod
    def full(cls, field: GF, n: int) -> "LinearCode":
        return cls(field, np.eye(n, dtype=np.int64), n)

    @classmethod
    def zero(cls, field: GF, n: int) -> "LinearCode":
        return cls(field, np.zeros((0, n), dtype=np.int64), n)

    @property
    def dimension(self) -> int:
        return self.generator.shape[0]

    k = dimension

    def dual(self) -> "LinearCode":
        if self.dimension == 0:
            return LinearCode.full(self.field, self.n)
        return LinearCode(self.field, kernel(self.field, self.generator), self.n)

    def contains(self, v) -> bool:
        return in_row_space(self.field, self.generator, self.pivots, v)

    def contains_code(self, other: "LinearCode") -> bool:
        _check_compatible(self, other)
        return all(self.contains(row) for row in other.generator)

    def __eq__(self, other):
        return isinstance(other, LinearCode) and code_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.dimension}, field=GF({self.field.p}^{self.field.m}))"


def _check_compatible(c1: LinearCode, c2: LinearCode) -> None:
    if c1.field != c2.field:
        raise ValueError("codes over different fields")
    if c1.n != c2.n:
        raise ValueError(f"codes of different lengths {c1.n} and {c2.n}")


def code_equal(c1: LinearCode, c2: LinearCode) -> bool:
    _check_compatible(c1, c2)
    return c1.pivots == c2.pivots and np.array_equal(c1.generator, c2.generator)


def permute_code(code: LinearCode, perm) -> LinearCode:
    """The code {c^sigma} with c^sigma = (c_sigma(0), ..., c_sigma(n-1))."""
    perm = np.asarray(getattr(perm, "perm", perm), dtype=np.int64)
    if perm.shape != (code.n,) or sorted(perm.tolist()) != list(range(code.n)):
        raise ValueError("not a permutation of the code positions")
    return LinearCode(code.field, code.generator[:, perm], code.n)


def _vec(field: GF, values, name: str) -> np.ndarray:
    v = np.array([int(x) for x in values], dtype=np.int64)
    if np.any((v < 0) | (v >= field.order)):
        raise ValueError(f"{name} has entries outside {field!r}")
    return v


def check_support(field: GF, x) -> np.ndarray:
    x = _vec(field, x, "support")
    if len(set(x.tolist())) != x.size:
        raise ValueError("support entries must be pairwise distinct")
    return x


def check_multiplier(field: GF, y, n: int) -> np.ndarray:
    y = _vec(field, y, "multiplier")
    if y.size != n:
        raise ValueError("support and multiplier differ in length")
    if np.any(y == 0):
        raise ValueError("multiplier entries must be nonzero")
    return y


def grs_rows(field: GF, k: int, x, y) -> np.ndarray:
    """Rows (y_j x_j^i)_j for i < k, with no restriction on k."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    rows = np.zeros((max(k, 0), x.size), dtype=np.int64)
    cur = y.copy()
    for i in range(max(k, 0)):
        rows[i] = cur
        cur = np.atleast_1d(field.mul(cur, x))
    return rows


def grs_code(field: GF, k: int, x, y) -> LinearCode:
    x = check_support(field, x)
    y = check_multiplier(field, y, x.size)
    n = x.size
    if not 1 <= k < n <= field.order:
        raise ValueError(f"GRS parameters need 1 <= k < n <= {field.order}")
    return LinearCode(field, grs_rows(field, k, x, y), n)


def grs_dual_multiplier(field: GF, k: int, x, y) -> np.ndarray:
    """z with GRS_k(x, y)^perp = GRS_{n-k}(x, z): z_i = 1 / (y_i prod_{j != i}(x_i - x_j))."""
    x = check_support(field, x)
    y = check_multiplier(field, y, x.size)
    n = x.size
    if not 1 <= k < n:
        raise ValueError("GRS parameters need 1 <= k < n")
    z = np.zeros(n, dtype=np.int64)
    for i in range(n):
        diffs = field.sub(x[i], np.delete(x, i))
        prod = 1
        for d in np.atleast_1d(diffs):
            prod = field.mul(prod, int(d))
        z[i] = field.inv(field.mul(int(y[i]), prod))
    return z


# -- subfield subcodes and trace codes --------------------------------------

def _subfield_kernel(H: np.ndarray, view: SubfieldView) -> LinearCode:
    """{c in GF(q)^n : H c^T = 0} with H over the big field.

    Each unknown c_j = sum_u c_{j,u} beta^u splits into s coordinates over GF(p)
    and each big-field equation into m_abs equations over GF(p).
    """
    big, small = view.big, view.small
    p, s = big.p, view.s
    H = as_matrix(H)
    r, n = H.shape
    if r == 0:
        return LinearCode.full(small, n)
    # column (j, u) of the expanded system holds the digits of H[:, j] * beta^u
    blocks = []
    for u, bu in enumerate(view.basis):
        prod = big.mul(H, bu)
        blocks.append(big.digits[prod])  # (r, n, m_abs)
    E = np.stack(blocks, axis=2)  # (r, n, s, m_abs)
    E = E.transpose(0, 3, 1, 2).reshape(r * big.m, n * s)
    sol = kernel(field_new(p, 1), E % p)
    if sol.shape[0] == 0:
        return LinearCode.zero(small, n)
    weights = np.array([p ** u for u in range(s)], dtype=np.int64)
    rows = sol.reshape(sol.shape[0], n, s) @ weights
    return LinearCode(small, rows, n)


def subfield_subcode(code: LinearCode, view: SubfieldView) -> LinearCode:
    if code.field != view.big:
        raise ValueError("code is not defined over the view's big field")
    if code.dimension == code.n:
        return LinearCode.full(view.small, code.n)
    return _subfield_kernel(code.dual().generator, view)


def trace_code(code: LinearCode, view: SubfieldView) -> LinearCode:
    """GF(q)-span of the coordinatewise traces of the codewords."""
    big = view.big
    if code.field != big:
        raise ValueError("code is not defined over the view's big field")
    if code.dimension == 0:
        return LinearCode.zero(view.small, code.n)
    # the GF(p)-multiples z^i * g of the generator rows already span C over GF(p)
    scaled = [big.mul(code.generator, big.p ** i) for i in range(big.m)]
    rows = np.concatenate(scaled, axis=0)
    return LinearCode(view.small, view.trace_small(rows), code.n)


def alternant_code(r: int, x, y, view: SubfieldView) -> LinearCode:
    """A_r(x, y) = GRS_r(x, y)^perp restricted to GF(q); r = 0 gives the full space."""
    big = view.big
    x = check_support(big, x)
    y = check_multiplier(big, y, x.size)
    if r < 0:
        raise ValueError("degree must be nonnegative")
    return _subfield_kernel(grs_rows(big, r, x, y), view)


def alternant_dual(r: int, x, y, view: SubfieldView) -> LinearCode:
    """A_r(x, y)^perp computed as the trace code of GRS_r(x, y)."""
    big = view.big
    x = check_support(big, x)
    y = check_multiplier(big, y, x.size)
    if r <= 0:
        return LinearCode.zero(view.small, x.size)
    return trace_code(LinearCode(big, grs_rows(big, r, x, y), x.size), view)


def goppa_multiplier(x, gamma: Polynomial) -> np.ndarray:
    F = gamma.field
    vals = np.atleast_1d(gamma(np.asarray(x, dtype=np.int64)))
    if np.any(vals == 0):
        bad = int(np.flatnonzero(vals == 0)[0])
        raise ValueError(f"Goppa polynomial vanishes on support point x_{bad}")
    return np.atleast_1d(F.inv(vals))


def goppa_code(x, gamma: Polynomial, view: SubfieldView) -> LinearCode:
    x = check_support(view.big, x)
    if gamma.is_zero():
        raise ValueError("zero Goppa polynomial")
    return alternant_code(int(gamma.degree), x, goppa_multiplier(x, gamma), view)


def goppa_dual(x, gamma: Polynomial, view: SubfieldView) -> LinearCode:
    x = check_support(view.big, x)
    if gamma.is_zero():
        raise ValueError("zero Goppa polynomial")
    return alternant_dual(int(gamma.degree), x, goppa_multiplier(x, gamma), view)


@dataclass
class CodeSpec:
    """Algebraic description of a GRS, alternant or Goppa code.

    ``degree`` is k for GRS, r for alternant codes and deg(gamma) for Goppa codes.
    """

    kind: str
    view: SubfieldView
    support: tuple
    degree: int
    multiplier: tuple | None = None
    goppa: Polynomial | None = None
    notes: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        big = self.view.big
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        self.support = tuple(int(v) for v in check_support(big, self.support))
        if self.kind == "goppa":
            if self.goppa is None:
                raise ValueError("Goppa spec needs a Goppa polynomial")
            if self.goppa.field != big:
                raise ValueError("Goppa polynomial over the wrong field")
            goppa_multiplier(self.support, self.goppa)
            if self.degree != self.goppa.degree:
                raise ValueError("degree must equal deg(gamma)")
        elif self.kind in ("alternant", "grs"):
            if self.multiplier is None:
                raise ValueError(f"{self.kind} spec needs a multiplier")
            self.multiplier = tuple(int(v) for v in check_multiplier(big, self.multiplier, self.n))
        else:
            raise ValueError(f"unknown code kind {self.kind!r}")

    @property
    def field(self) -> GF:
        return self.view.big

    @property
    def n(self) -> int:
        return len(self.support)

    def multiplier_values(self) -> np.ndarray:
        if self.kind == "goppa":
            return goppa_multiplier(self.support, self.goppa)
        return np.array(self.multiplier, dtype=np.int64)

    def code(self) -> LinearCode:
        if self.kind == "grs":
            return grs_code(self.field, self.degree, self.support, self.multiplier)
        return alternant_code(self.degree, self.support, self.multiplier_values(), self.view)

    def dual_code(self) -> LinearCode:
        if self.kind == "grs":
            return self.code().dual()
        return alternant_dual(self.degree, self.support, self.multiplier_values(), self.view)


def orthogonal(c1: LinearCode, c2: LinearCode) -> bool:
    _check_compatible(c1, c2)
    if c1.dimension == 0 or c2.dimension == 0:
        return True
    return not np.any(matmul(c1.field, c1.generator, c2.generator.T))
