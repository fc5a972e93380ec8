"""Polynomials satisfying P(az + b) = alpha * P(z) for an affine map of finite order.

The invariant ring of z -> az + b is generated by one polynomial R of degree
equal to the order l of the map: ``z^p - b^(p-1) z`` for a shift (a = 1) and
``(z - z0)^l`` otherwise, z0 being the fixed point. Every solution of the
functional equation is ``(z - z0)^d * Q(R(z))`` (d = 0 for shifts), and
:func:`build_invariant_poly` / :func:`decompose_invariant` convert between the
two descriptions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GF
from .poly import Polynomial


@dataclass(frozen=True)
class AffineMap:
    """z -> a*z + b over ``field`` with a != 0."""

    field: GF
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        if self.a == 0:
            raise ValueError("affine map needs a != 0")
        for v in (self.a, self.b):
            if not 0 <= v < self.field.order:
                raise ValueError(f"{v} is not an element of {self.field!r}")

    def __call__(self, z):
        return self.field.add(self.field.mul(self.a, z), self.b)

    @property
    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    @property
    def is_shift(self) -> bool:
        return self.a == 1

    @property
    def order(self) -> int:
        if self.a == 1:
            return 1 if self.b == 0 else self.field.p
        return self.field.element_order(self.a)

    @property
    def fixed_point(self) -> int | None:
        if self.a == 1:
            return None
        F = self.field
        return F.div(self.b, F.sub(1, self.a))

    def power(self, k: int) -> "AffineMap":
        """The k-fold composite, a^k z + b(1 + a + ... + a^(k-1))."""
        F = self.field
        a, b = 1, 0
        for _ in range(k % self.order if self.order > 1 else 0):
            a, b = F.mul(self.a, a), F.add(F.mul(self.a, b), self.b)
        return AffineMap(F, a, b)

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.field, [self.b, self.a])

    def root_of_unity(self, d: int) -> int:
        """alpha = a^d, forced to 1 for shifts."""
        if self.a == 1:
            if d != 0:
                raise ValueError("a shift only admits alpha = 1 (d = 0)")
            return 1
        return self.field.pow(self.a, d)


@dataclass(frozen=True)
class InvariantSpaceSpec:
    """Polynomials of degree <= t with P(sigma(z)) = alpha * P(z)."""

    sigma: AffineMap
    alpha: int
    t: int

    def __post_init__(self):
        F, s = self.sigma.field, self.sigma
        if s.is_identity:
            raise ValueError("sigma must not be the identity")
        if s.is_shift and self.alpha != 1:
            raise ValueError("a shift only admits alpha = 1")
        if not s.is_shift:
            F.discrete_log_in_cyclic(self.alpha, s.a, s.order)

    @property
    def d(self) -> int:
        if self.sigma.is_shift:
            return 0
        return self.sigma.field.discrete_log_in_cyclic(self.alpha, self.sigma.a, self.sigma.order)


def invariant_generator(sigma: AffineMap) -> Polynomial:
    """Monic generator R of the ring of sigma-invariant polynomials (deg R = order)."""
    F = sigma.field
    if sigma.is_identity:
        raise ValueError("the identity map has no invariant generator")
    ell = sigma.order
    if sigma.is_shift:
        coef = F.neg(F.pow(sigma.b, ell - 1))
        return Polynomial.monomial(F, ell) + Polynomial.monomial(F, 1, coef)
    z0 = sigma.fixed_point
    return Polynomial(F, [F.neg(z0), 1]) ** ell


def check_functional_eq(gamma: Polynomial, sigma: AffineMap, alpha) -> bool:
    return gamma.compose(sigma.as_polynomial()) == gamma.scale(int(alpha))


def solve_alpha(gamma: Polynomial, sigma: AffineMap) -> int | None:
    """The alpha with gamma(az + b) = alpha * gamma(z), or None when there is none."""
    if gamma.is_zero():
        raise ValueError("the zero polynomial satisfies every equation")
    F = sigma.field
    alpha = F.pow(sigma.a, gamma.degree)
    return alpha if check_functional_eq(gamma, sigma, alpha) else None


def build_invariant_poly(Q: Polynomial, sigma: AffineMap, d: int = 0) -> Polynomial:
    F = sigma.field
    ell = sigma.order
    R = invariant_generator(sigma)
    if sigma.is_shift:
        if d != 0:
            raise ValueError("a shift forces d = 0")
        return Q.compose(R)
    if not 0 <= d < ell:
        raise ValueError(f"d must lie in [0, {ell})")
    lin = Polynomial(F, [F.neg(sigma.fixed_point), 1])
    return lin ** d * Q.compose(R)


def decompose_invariant(P: Polynomial, sigma: AffineMap, alpha) -> tuple[int, Polynomial]:
    """Inverse of :func:`build_invariant_poly`: returns (d, Q)."""
    F = sigma.field
    alpha = int(alpha)
    if not check_functional_eq(P, sigma, alpha):
        raise ValueError("polynomial does not satisfy the functional equation")
    R = invariant_generator(sigma)
    if sigma.is_shift:
        if alpha != 1:
            raise ValueError("a shift forces alpha = 1")
        d = 0
        rest = P
    else:
        d = F.discrete_log_in_cyclic(alpha, sigma.a, sigma.order)
        lin = Polynomial(F, [F.neg(sigma.fixed_point), 1])
        rest = P
        for _ in range(d):
            rest, r = divmod(rest, lin)
            if not r.is_zero():
                raise ArithmeticError("missing zero at the fixed point")
    coeffs = []
    while not rest.is_zero():
        rest, r = divmod(rest, R)
        if r.degree > 0:
            raise ArithmeticError("non-constant remainder while dividing by the generator")
        coeffs.append(r.coeff(0))
    return d, Polynomial(F, coeffs)


def symmetrize(P: Polynomial, sigma: AffineMap, d: int = 0) -> Polynomial:
    """sum_{i<l} alpha^i P(sigma^i(z)) with alpha = a^d.

    The result S satisfies S(sigma(z)) = S(z) / alpha.
    """
    F = sigma.field
    alpha = sigma.root_of_unity(d)
    out = Polynomial(F)
    coef = 1
    for i in range(sigma.order):
        out = out + P.compose(sigma.power(i).as_polynomial()).scale(coef)
        coef = F.mul(coef, alpha)
    return out


def invariant_space_basis(spec: InvariantSpaceSpec) -> list[Polynomial]:
    """Basis of the solutions of degree <= t; empty when t is below the smallest degree."""
    sigma, t = spec.sigma, spec.t
    d = spec.d
    F = sigma.field
    ell = sigma.order
    if t < d:
        return []
    return [build_invariant_poly(Polynomial.monomial(F, k), sigma, d) for k in range((t - d) // ell + 1)]


def symmetrized_image_basis(sigma: AffineMap, d: int, t: int) -> list[Polynomial]:
    """Predicted basis of symmetrize(F[z]_{<=t}, sigma, d).

    Shifts: the invariants of degree <= floor((t - p + 1)/p) * p.
    Otherwise: (z - z0)^e R^k with e = (-d) mod l and e + l*k <= t, since only
    monomials (z - z0)^j with j + d = 0 mod l survive the weighted sum.
    """
    F = sigma.field
    ell = sigma.order
    R = invariant_generator(sigma)
    if sigma.is_shift:
        top = (t - ell + 1) // ell
        return [R ** k for k in range(top + 1)] if top >= 0 else []
    e = (-d) % ell
    if t < e:
        return []
    lin = Polynomial(F, [F.neg(sigma.fixed_point), 1])
    return [lin ** e * R ** k for k in range((t - e) // ell + 1)]


def power_sum_residue(p: int, k: int) -> int:
    """(1^k + ... + (p-1)^k) mod p: p-1 when (p-1) | k, else 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return (p - 1) % p if k % (p - 1) == 0 else 0


def coefficient_matrix(polys: list[Polynomial], length: int) -> np.ndarray:
    M = np.zeros((len(polys), length), dtype=np.int64)
    for i, P in enumerate(polys):
        if len(P) > length:
            raise ValueError("polynomial longer than the requested width")
        M[i, : len(P)] = P.coeffs
    return M
