"""Dense univariate polynomials over a finite field."""
from __future__ import annotations

import math

import numpy as np

from .field import GF, FieldElement

NEG_INF = -math.inf


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of z^i.

    The zero polynomial has degree ``-inf``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        c = [int(v) for v in coeffs]
        for v in c:
            if not 0 <= v < field.order:
                raise ValueError(f"coefficient {v} not in {field!r}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, field: GF) -> "Polynomial":
        return cls(field)

    @classmethod
    def constant(cls, field: GF, c) -> "Polynomial":
        return cls(field, [int(c)])

    @classmethod
    def monomial(cls, field: GF, k: int, c=1) -> "Polynomial":
        return cls(field, [0] * k + [int(c)])

    @classmethod
    def z(cls, field: GF) -> "Polynomial":
        return cls(field, [0, 1])

    @classmethod
    def from_roots(cls, field: GF, roots) -> "Polynomial":
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [field.neg(int(r)), 1])
        return out

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    # -- ring operations -----------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def _arr(self, length: int | None = None) -> np.ndarray:
        a = np.array(self.coeffs, dtype=np.int64)
        if length is not None and length > a.size:
            a = np.concatenate([a, np.zeros(length - a.size, dtype=np.int64)])
        return a

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self), len(other))
        return Polynomial(self.field, np.atleast_1d(self.field.add(self._arr(n), other._arr(n))))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self), len(other))
        return Polynomial(self.field, np.atleast_1d(self.field.sub(self._arr(n), other._arr(n))))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, np.atleast_1d(self.field.neg(self._arr())))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)
        F = self.field
        b = other._arr()
        acc = np.zeros(len(self) + len(other) - 1, dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            if c:
                acc[i:i + b.size] = F.add(acc[i:i + b.size], F.mul(c, b))
        return Polynomial(F, acc)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.field, np.atleast_1d(self.field.mul(int(c), self._arr())) if self.coeffs else [])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.leading))

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        rem = self._arr().copy()
        b = other._arr()
        inv_lead = F.inv(other.leading)
        dq = len(self) - len(other)
        if dq < 0:
            return Polynomial(F), self
        quot = np.zeros(dq + 1, dtype=np.int64)
        for shift in range(dq, -1, -1):
            c = int(rem[shift + b.size - 1])
            if c:
                c = F.mul(c, inv_lead)
                quot[shift] = c
                rem[shift:shift + b.size] = F.sub(rem[shift:shift + b.size], F.mul(c, b))
        return Polynomial(F, quot), Polynomial(F, rem[: b.size - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation and composition -----------------------------------------
    def __call__(self, z):
        F = self.field
        if isinstance(z, FieldElement):
            if z.field != F:
                raise ValueError("field mismatch")
            return FieldElement(F, int(self(z.value)))
        if isinstance(z, Polynomial):
            return self.compose(z)
        z = np.asarray(z, dtype=np.int64)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, z), c)
        return F._ret(acc)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """The polynomial z -> self(inner(z))."""
        self._check(inner)
        out = Polynomial(self.field)
        for c in reversed(self.coeffs):
            out = out * inner + Polynomial(self.field, [c])
        return out

    def derivative(self) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.mul(F.scalar(i), c) for i, c in enumerate(self.coeffs)][1:])

    def roots(self, candidates=None) -> np.ndarray:
        """Roots among ``candidates`` (default: the whole field), by evaluation."""
        pts = self.field.elements() if candidates is None else np.asarray(candidates, dtype=np.int64)
        vals = np.atleast_1d(self(pts))
        return pts[vals == 0]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a
