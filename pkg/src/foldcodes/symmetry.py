"""Supports, multipliers and Goppa polynomials with affine-induced automorphisms.

Builders return a :class:`SymmetricInstance`: a :class:`CodeSpec` plus the
group acting on its positions. Supports are laid out orbit by orbit, so the
orbit representatives (smallest indices) are 0, l, 2l, ...
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec, LinearCode, code_equal, permute_code
from .field import GF, SubfieldView
from .invariant import AffineMap, build_invariant_poly
from .linalg import rank
from .poly import Polynomial


@dataclass(frozen=True)
class InducedPermutation:
    """sigma on {0..n-1} with x_sigma(i) = a x_i + b."""

    perm: tuple
    order: int
    source: AffineMap | None = None

    def __len__(self):
        return len(self.perm)

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def power(self, k: int) -> tuple:
        out = list(range(len(self.perm)))
        for _ in range(k):
            out = [self.perm[i] for i in out]
        return tuple(out)


def permutation_order(perm) -> int:
    perm = list(perm)
    seen = [False] * len(perm)
    order = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = order * length // np.gcd(order, length)
    return int(order)


def make_permutation(perm, source: AffineMap | None = None) -> InducedPermutation:
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation")
    return InducedPermutation(perm, permutation_order(perm), source)


def induced_permutation(x, phi: AffineMap) -> InducedPermutation:
    x = [int(v) for v in x]
    index = {v: i for i, v in enumerate(x)}
    images = np.atleast_1d(phi(np.array(x, dtype=np.int64)))
    perm = []
    for i, v in enumerate(images.tolist()):
        if v not in index:
            raise ValueError(f"support is not invariant: image of x_{i} = {x[i]} is {v}")
        perm.append(index[v])
    return make_permutation(perm, phi)


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of a permutation group, each sorted, ordered by smallest element."""

    orbits: tuple
    group_order: int

    @property
    def representatives(self) -> tuple:
        return tuple(o[0] for o in self.orbits)

    @property
    def n(self) -> int:
        return sum(len(o) for o in self.orbits)

    def __len__(self):
        return len(self.orbits)

    def multiplicity(self, j: int) -> int:
        """How often each member of orbit j occurs in a sum over group elements."""
        return self.group_order // len(self.orbits[j])

    def orbit_index(self) -> np.ndarray:
        idx = np.empty(self.n, dtype=np.int64)
        for j, o in enumerate(self.orbits):
            idx[list(o)] = j
        return idx

    def all_full(self) -> bool:
        return all(len(o) == self.group_order for o in self.orbits)


def group_elements(perms, n: int) -> list[tuple]:
    """Closure of the generated permutation group (breadth-first)."""
    gens = [tuple(getattr(g, "perm", g)) for g in perms]
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                e = tuple(g[i] for i in h)
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return sorted(seen)


def orbit_partition(perms, n: int | None = None) -> OrbitPartition:
    perms = list(perms)
    if n is None:
        if not perms:
            raise ValueError("need n when no permutation is given")
        n = len(perms[0])
    gens = [tuple(getattr(g, "perm", g)) for g in perms]
    if any(len(g) != n for g in gens):
        raise ValueError("permutations act on different index sets")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gens:
        for i in range(n):
            a, b = find(i), find(g[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    orbits = tuple(sorted(tuple(v) for v in groups.values()))
    return OrbitPartition(orbits, len(group_elements(gens, n)))


@dataclass(frozen=True)
class GroupSpec:
    """Generators of an affine-induced group; ``shifts`` is set for (Z/pZ)^lambda."""

    generators: tuple
    structure: str
    shifts: tuple = ()

    @property
    def lam(self) -> int:
        return len(self.shifts) if self.structure == "elementary-abelian" else 1

    @property
    def order(self) -> int:
        if self.structure == "elementary-abelian":
            return self.generators[0].field.p ** len(self.shifts)
        return self.generators[0].order

    def permutations(self, x) -> list[InducedPermutation]:
        return [induced_permutation(x, g) for g in self.generators]


def cyclic_group(phi: AffineMap) -> GroupSpec:
    if phi.is_identity:
        raise ValueError("identity generates the trivial group")
    return GroupSpec((phi,), "cyclic")


def shift_span(field: GF, alphas) -> list[int]:
    """All F_p-combinations sum i_j alpha_j, indexed by the base-p integer i."""
    p = field.p
    alphas = [int(a) for a in alphas]
    out = []
    for i in range(p ** len(alphas)):
        acc = 0
        for j, a in enumerate(alphas):
            acc = field.add(acc, field.mul(field.scalar((i // p ** j) % p), a))
        out.append(int(acc))
    return out


def shift_group(field: GF, alphas) -> GroupSpec:
    alphas = tuple(int(a) for a in alphas)
    span = shift_span(field, alphas)
    if not alphas or len(set(span)) != len(span):
        raise ValueError("shift elements are not F_p-independent")
    gens = tuple(AffineMap(field, 1, a) for a in alphas)
    return GroupSpec(gens, "elementary-abelian", alphas)


@dataclass
class SymmetricInstance:
    spec: CodeSpec
    group: GroupSpec
    seed: int | None = None
    d: int = 0

    @property
    def permutations(self) -> list[InducedPermutation]:
        return self.group.permutations(self.spec.support)

    def orbits(self) -> OrbitPartition:
        return orbit_partition(self.permutations, self.spec.n)


def affine_orbits(phi: AffineMap) -> list[tuple]:
    """Orbits of phi on the field minus its fixed point, each listed as u, phi(u), ..."""
    F = phi.field
    skip = phi.fixed_point
    seen = np.zeros(F.order, dtype=bool)
    if skip is not None:
        seen[skip] = True
    out = []
    for u in range(F.order):
        if seen[u]:
            continue
        orb = [u]
        v = phi(u)
        while v != u:
            orb.append(v)
            v = phi(v)
        seen[orb] = True
        out.append(tuple(orb))
    return out


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _qc_support(phi: AffineMap, n0: int, rng, keep=None) -> list[int]:
    orbits = affine_orbits(phi)
    if keep is not None:
        orbits = [o for o in orbits if keep(o)]
    if n0 < 1 or n0 > len(orbits):
        raise ValueError(f"requested {n0} orbits but only {len(orbits)} are available")
    chosen = rng.choice(len(orbits), size=n0, replace=False)
    x = []
    for c in sorted(chosen.tolist()):
        orb = orbits[c]
        start = int(rng.integers(len(orb)))
        x.extend(orb[start:] + orb[:start])
    return x


def build_qc_instance(view: SubfieldView, phi: AffineMap, n0: int, t: int, d: int = 0,
                      seed=None) -> SymmetricInstance:
    """Quasi-cyclic alternant code: y propagated along each orbit by alpha = a^d."""
    F = view.big
    if phi.is_identity:
        raise ValueError("phi must not be the identity")
    ell = phi.order
    if not 0 <= d < ell:
        raise ValueError(f"d must lie in [0, {ell})")
    alpha = phi.root_of_unity(d)
    rng = _rng(seed)
    x = _qc_support(phi, n0, rng)
    y = []
    for _ in range(n0):
        v = int(rng.integers(1, F.order))
        for _ in range(ell):
            y.append(v)
            v = F.mul(v, alpha)
    spec = CodeSpec("alternant", view, tuple(x), t, multiplier=tuple(y))
    return SymmetricInstance(spec, cyclic_group(phi), seed if isinstance(seed, int) else None, d)


def build_qc_goppa(view: SubfieldView, phi: AffineMap, n0: int, Q: Polynomial, d: int = 0,
                   seed=None) -> SymmetricInstance:
    """Quasi-cyclic Goppa code with gamma = build_invariant_poly(Q, phi, d).

    Orbits where gamma vanishes are skipped (gamma is zero on whole orbits).
    """
    gamma = build_invariant_poly(Q, phi, d)
    if gamma.is_zero():
        raise ValueError("zero Goppa polynomial")
    rng = _rng(seed)
    x = _qc_support(phi, n0, rng, keep=lambda o: bool(np.all(np.atleast_1d(gamma(list(o))) != 0)))
    spec = CodeSpec("goppa", view, tuple(x), int(gamma.degree), goppa=gamma)
    return SymmetricInstance(spec, cyclic_group(phi), seed if isinstance(seed, int) else None, d)


def same_coset(field: GF, span: list[int], u: int, v: int) -> bool:
    return field.sub(u, v) in set(span)


def build_qm_support(field: GF, alphas, n0: int, coset_seeds) -> list[int]:
    """x_{k P + i} = seed_k + sum_j i_j alpha_j with P = p^lambda and i_j the base-p digits of i."""
    span = shift_span(field, alphas)
    if len(set(span)) != len(span):
        raise ValueError("shift elements are not F_p-independent")
    seeds = [int(s) for s in coset_seeds]
    if len(seeds) != n0:
        raise ValueError(f"expected {n0} coset seeds")
    group = set(span)
    for a, b in itertools.combinations(seeds, 2):
        if field.sub(a, b) in group:
            raise ValueError(f"coset seeds {a} and {b} lie in the same coset")
    x = []
    for s in seeds:
        x.extend(int(field.add(s, g)) for g in span)
    return x


def coset_representatives(field: GF, alphas) -> list[tuple]:
    """The cosets of the span, each listed in span order from its smallest element."""
    span = shift_span(field, alphas)
    seen = np.zeros(field.order, dtype=bool)
    out = []
    for u in range(field.order):
        if seen[u]:
            continue
        coset = tuple(int(v) for v in np.atleast_1d(field.add(u, np.array(span))))
        seen[list(coset)] = True
        out.append(coset)
    return out


def _pick_cosets(field: GF, alphas, n0: int, rng, keep=None, distinct_key=None) -> list[int]:
    cosets = coset_representatives(field, alphas)
    if keep is not None:
        cosets = [c for c in cosets if keep(c)]
    order = rng.permutation(len(cosets))
    seeds, keys = [], set()
    for i in order.tolist():
        c = cosets[i]
        if distinct_key is not None:
            k = distinct_key(c)
            if k in keys:
                continue
            keys.add(k)
        seeds.append(c[int(rng.integers(len(c)))])
        if len(seeds) == n0:
            return seeds
    raise ValueError(f"requested {n0} cosets but only {len(seeds)} are usable")


def subspace_polynomial(field: GF, alphas) -> Polynomial:
    """prod_{g in G} (z - g) for the F_p-span G of the shifts."""
    return Polynomial.from_roots(field, shift_span(field, alphas))


def build_qm_alternant(view: SubfieldView, alphas, n0: int, t: int, seed=None,
                       strict: bool = False) -> SymmetricInstance:
    """Quasi-dyadic / quasi-monoidic alternant code: y constant on each coset."""
    F = view.big
    rng = _rng(seed)
    group = shift_group(F, alphas)
    seeds = _pick_cosets(F, alphas, n0, rng)
    x = build_qm_support(F, alphas, n0, seeds)
    size = F.p ** len(group.shifts)
    if strict:
        if n0 > F.order - 1:
            raise ValueError("not enough distinct multiplier values")
        vals = (rng.permutation(F.order - 1)[:n0] + 1).tolist()
    else:
        vals = rng.integers(1, F.order, n0).tolist()
    y = [int(v) for v in vals for _ in range(size)]
    spec = CodeSpec("alternant", view, tuple(x), t, multiplier=tuple(y))
    return SymmetricInstance(spec, group, seed if isinstance(seed, int) else None)


def build_qm_goppa(view: SubfieldView, alphas, n0: int, Q: Polynomial, seed=None,
                   strict: bool = False) -> SymmetricInstance:
    """Goppa code with gamma = Q(prod_{g in G}(z - g)), degree p^lambda deg Q.

    With ``strict`` the chosen cosets also get pairwise distinct multipliers.
    """
    F = view.big
    rng = _rng(seed)
    group = shift_group(F, alphas)
    gamma = Q.compose(subspace_polynomial(F, alphas))
    if gamma.is_zero():
        raise ValueError("zero Goppa polynomial")

    def nonvanishing(c):
        return bool(gamma(c[0]) != 0)

    key = (lambda c: int(gamma(c[0]))) if strict else None
    seeds = _pick_cosets(F, alphas, n0, rng, keep=nonvanishing, distinct_key=key)
    x = build_qm_support(F, alphas, n0, seeds)
    spec = CodeSpec("goppa", view, tuple(x), int(gamma.degree), goppa=gamma)
    return SymmetricInstance(spec, group, seed if isinstance(seed, int) else None)


def check_automorphism(code: LinearCode, sigma) -> bool:
    perm = getattr(sigma, "perm", sigma)
    if len(perm) != code.n:
        raise ValueError("permutation length differs from the code length")
    return code_equal(permute_code(code, perm), code)


def symmetric_generator(code: LinearCode, perms, seed=None, attempts: int = 64) -> np.ndarray | None:
    """A generator matrix whose row set is closed under the group, all row orbits full.

    Rows are added one group orbit {c^g : g in G} at a time from random codewords;
    returns None if no such basis turns up within ``attempts`` failed draws.
    """
    F = code.field
    n, k = code.n, code.dimension
    elems = group_elements(perms, n)
    size = len(elems)
    if k % size:
        return None
    if k == 0:
        return np.zeros((0, n), dtype=np.int64)
    rng = _rng(seed)
    rows = np.zeros((0, n), dtype=np.int64)
    failures = 0
    while rows.shape[0] < k:
        coef = rng.integers(0, F.order, k)
        c = np.zeros(n, dtype=np.int64)
        for ci, g in zip(coef.tolist(), code.generator):
            if ci:
                c = F.add(c, F.mul(ci, g))
        orbit = np.array([c[list(g)] for g in elems], dtype=np.int64)
        cand = np.concatenate([rows, orbit])
        if rank(F, cand) == cand.shape[0]:
            rows = cand
        else:
            failures += 1
            if failures > attempts:
                return None
    return rows


def rows_closed(rows: np.ndarray, perms) -> bool:
    have = {tuple(r) for r in rows.tolist()}
    for g in perms:
        g = list(getattr(g, "perm", g))
        for r in rows:
            if tuple(r[g].tolist()) not in have:
                return False
    return True
