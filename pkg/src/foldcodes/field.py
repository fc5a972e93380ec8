"""Finite fields GF(p^m) with table-driven arithmetic.

Elements are plain integers: the residue polynomial ``sum c_i z^i`` (0 <= c_i < p)
is packed little-endian in base p, so ``c_0 + c_1*p + ... + c_{m-1}*p^(m-1)``.
The same integers are used on disk by the CLI. Every arithmetic method accepts
python ints or numpy integer arrays and broadcasts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over GF(p), lists low -> high ---------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else 1
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(q), a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b))
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                prod[i + j] = (prod[i + j] + ac * bc) % p
    return _pdivmod(prod, f, p)[1]


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Irreducibility over GF(p): gcd(f, z^(p^k) - z) = 1 for every k <= deg f / 2."""
    f = _trim([c % p for c in modulus])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    z = [0, 1]
    power = z[:]
    for _ in range(deg // 2):
        # power <- power^p mod f, so after k rounds power = z^(p^k)
        acc = [1]
        base = power
        e = p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        power = acc
        diff = power + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Candidates are ordered by the base-p integer formed by their low
    coefficients, so GF(2^4) gets z^4 + z + 1.
    """
    for idx in range(p ** m):
        low = [(idx // p ** i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")  # unreachable


class GF:
    """The field GF(p^m) defined by a monic irreducible modulus.

    Use :func:`field_new` rather than the constructor so identical parameters
    share one cached, immutable context.
    """

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        if p ** m > MAX_FIELD_SIZE:
            raise ValueError(f"GF({p}^{m}) exceeds the supported size 2^20")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(list(modulus))) != m + 1:
            raise ValueError(f"modulus must have degree {m}")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p ** m
        self._powers = np.array([p ** i for i in range(m)], dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        self.digits = ((idx[:, None] // self._powers[None, :]) % p).astype(np.int64)
        self._build_tables()

    # -- construction helpers ------------------------------------------------
    def _to_poly(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.m)]

    def _from_poly(self, c: list[int]) -> int:
        c = list(c) + [0] * (self.m - len(c))
        return sum(int(v) % self.p * self.p ** i for i, v in enumerate(c[: self.m]))

    def _mul_slow(self, a: int, b: int) -> int:
        return self._from_poly(_pmulmod(self._to_poly(a), self._to_poly(b), list(self.modulus), self.p))

    def _pow_slow(self, a: int, e: int) -> int:
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._mul_slow(acc, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return acc

    def _build_tables(self) -> None:
        n = self.order - 1
        factors = prime_factors(n) if n > 1 else []
        gen = next(g for g in range(1, self.order)
                   if all(self._pow_slow(g, n // r) != 1 for r in factors))
        self.generator = gen
        # multiplication by gen is GF(p)-linear: apply its matrix to every element at once
        cols = [self._to_poly(self._mul_slow(gen, self.p ** i)) for i in range(self.m)]
        mat = np.array(cols, dtype=np.int64)  # row i = image of z^i
        times_gen = self._pack((self.digits @ mat) % self.p)
        exp = np.empty(n, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for k in range(n):
            exp[k] = v
            log[v] = k
            v = int(times_gen[v])
        self.exp = exp
        self.log = log

    def _pack(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._powers

    # -- identity ------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, int(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def nonzero_elements(self) -> np.ndarray:
        return np.arange(1, self.order, dtype=np.int64)

    def embed_int(self, c: int) -> int:
        """Image of the integer c in the prime subfield."""
        return c % self.p

    # -- arithmetic (ints or arrays) -----------------------------------------
    @staticmethod
    def _ret(r):
        if np.ndim(r) == 0:
            return int(r)
        return np.asarray(r, dtype=np.int64)

    def add(self, a, b):
        if self.p == 2:
            return self._ret(np.bitwise_xor(a, b))
        if self.m == 1:
            return self._ret(np.add(a, b) % self.p)
        return self._ret(self._pack((self.digits[a] + self.digits[b]) % self.p))

    def neg(self, a):
        if self.p == 2:
            return self._ret(a)
        if self.m == 1:
            return self._ret(np.negative(a) % self.p)
        return self._ret(self._pack((-self.digits[a]) % self.p))

    def sub(self, a, b):
        if self.p == 2:
            return self._ret(np.bitwise_xor(a, b))
        if self.m == 1:
            return self._ret(np.subtract(a, b) % self.p)
        return self._ret(self._pack((self.digits[a] - self.digits[b]) % self.p))

    def mul(self, a, b):
        if self.m == 1:
            return self._ret(np.multiply(a, b) % self.p)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]
        return self._ret(np.where((a == 0) | (b == 0), 0, r))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._ret(self.exp[(-self.log[a]) % (self.order - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        zero = a == 0
        if e < 0 and np.any(zero):
            raise ZeroDivisionError("negative power of zero")
        r = self.exp[(self.log[a] * e) % (self.order - 1)]
        if e == 0:
            return self._ret(np.ones_like(a))
        return self._ret(np.where(zero, 0, r))

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.p ** k)

    def scalar(self, c: int) -> int:
        return c % self.p

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, int(v))
        return acc

    # -- orders and logarithms -----------------------------------------------
    def element_order(self, a) -> int:
        a = int(a)
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        return n // math.gcd(int(self.log[a]), n)

    def elements_of_order(self, ell: int) -> np.ndarray:
        n = self.order - 1
        if n % ell:
            return np.zeros(0, dtype=np.int64)
        logs = np.arange(n)
        mask = (n // np.gcd(logs, n)) == ell
        return np.sort(self.exp[logs[mask]])

    def discrete_log_in_cyclic(self, alpha, a, ell: int | None = None) -> int:
        """The unique d in [0, ell) with a^d = alpha, ell being the order of a."""
        alpha, a = int(alpha), int(a)
        if ell is None:
            ell = self.element_order(a)
        v = 1
        for d in range(ell):
            if v == alpha:
                return d
            v = self.mul(v, a)
        raise ValueError(f"{alpha} is not a power of {a} in {self!r}")


def field_new(p: int, m: int, modulus=None) -> GF:
    """Cached field constructor; the default modulus is the smallest irreducible."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _field_cached(p, m, modulus)


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...] | None) -> GF:
    return GF(p, m, modulus)


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its context; a thin wrapper over the integer encoding."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field!r}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, k))

    def order(self) -> int:
        return self.field.element_order(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@GF({self.field.p}^{self.field.m})"


class SubfieldView:
    """GF(q), q = p^s, realised inside a larger field GF(q^m).

    ``small`` is GF(p^s) with its own default modulus; ``embed`` maps its
    integers into the big field by sending z to a fixed root ``beta`` of that
    modulus. The embedded image is checked against the subspace fixed by
    w -> w^q, which is computed as a GF(p)-linear kernel.
    """

    def __init__(self, big: GF, s: int):
        if s < 1 or big.m % s:
            raise ValueError(f"subfield degree {s} does not divide {big.m}")
        self.big = big
        self.s = s
        self.q = big.p ** s
        self.m = big.m // s
        self.small = field_new(big.p, s)
        # smallest root of the small modulus in the big field
        elems = big.elements()
        val = np.zeros_like(elems)
        for c in reversed(self.small.modulus):
            val = big.add(big.mul(val, elems), big.scalar(c))
        roots = elems[val == 0]
        self.beta = int(roots[0])
        beta_pows = [big.pow(self.beta, i) for i in range(s)]
        sd = self.small.digits
        embed = np.zeros(self.small.order, dtype=np.int64)
        for i, bp in enumerate(beta_pows):
            embed = big.add(embed, big.mul(sd[:, i], bp))
        self.embed = np.atleast_1d(embed)
        self.basis = tuple(int(b) for b in beta_pows)
        restrict = np.full(big.order, -1, dtype=np.int64)
        restrict[self.embed] = np.arange(self.small.order)
        self.restrict = restrict
        self._check_fixed_field()
        self._trace = None

    def _check_fixed_field(self) -> None:
        from .linalg import kernel

        big, prime = self.big, field_new(self.big.p, 1)
        unit_images = [big.frobenius(big.p ** i, self.s) for i in range(big.m)]
        frob = big.digits[np.array(unit_images)].T  # column i = image of z^i
        mat = (frob - np.eye(big.m, dtype=np.int64)) % big.p
        fixed = kernel(prime, mat)
        if fixed.shape[0] != self.s:
            raise ArithmeticError("fixed field of w -> w^q has the wrong dimension")
        combos = np.array(np.meshgrid(*[np.arange(big.p)] * self.s, indexing="ij")).reshape(self.s, -1).T
        span = big._pack((combos @ fixed) % big.p)
        if set(span.tolist()) != set(self.embed.tolist()):
            raise ArithmeticError("embedded subfield differs from the fixed field of Frobenius")

    def __repr__(self):
        return f"SubfieldView(q={self.q}, m={self.m}, big={self.big!r})"

    def __eq__(self, other):
        return isinstance(other, SubfieldView) and (self.big, self.s) == (other.big, other.s)

    def __hash__(self):
        return hash((self.big, self.s))

    def in_subfield(self, a) -> bool | np.ndarray:
        r = self.restrict[a] >= 0
        return bool(r) if np.ndim(r) == 0 else r

    def to_small(self, a):
        r = self.restrict[a]
        if np.any(r < 0):
            raise ValueError("element does not lie in the subfield")
        return GF._ret(r)

    def to_big(self, c):
        return GF._ret(self.embed[c])

    def trace(self, a):
        """Relative trace GF(q^m) -> GF(q) as big-field integers."""
        if self._trace is None:
            elems = self.big.elements()
            acc = np.zeros_like(elems)
            cur = elems
            for _ in range(self.m):
                acc = self.big.add(acc, cur)
                cur = self.big.frobenius(cur, self.s)
            self._trace = np.atleast_1d(acc)
        return GF._ret(self._trace[a])

    def trace_small(self, a):
        return self.to_small(self.trace(a))


@lru_cache(maxsize=None)
def subfield_view(big: GF, s: int) -> SubfieldView:
    return SubfieldView(big, s)


def view_for(big: GF, q: int) -> SubfieldView:
    """View of GF(q) inside ``big``; q must be a power of the characteristic."""
    s = round(math.log(q, big.p))
    if big.p ** s != q:
        raise ValueError(f"{q} is not a power of {big.p}")
    return subfield_view(big, s)


def trace_rel(z, view: SubfieldView) -> FieldElement:
    v = int(z)
    return FieldElement(view.big, view.trace(v))
