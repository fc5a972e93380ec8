"""Folding codes along permutation groups and predicting the folded alternant / Goppa codes.

A fold sums the coordinates of every codeword over each orbit of a group
acting on the positions (over group elements, so a member of an orbit of size
s is counted |G|/s times). When the group is induced by affine maps of the
support, the folded dual of an alternant (resp. Goppa) code is again the dual of
an alternant (resp. Goppa) code, with support x' = R(x) for the invariant
generator R and a degree divided by the group order.

Exponent convention for a != 1: with y_sigma(i) = a^d y_i, the weighted orbit
sums only keep monomials (z - u0)^j with j = -d mod l, so the folded multiplier
is y (x - u0)^e0 with e0 = (-d) mod l and the folded degree is
floor((t - 1 - e0)/l) + 1. For d >= 1 this is l - d; for d = 0 it is 0.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .codes import CodeSpec, LinearCode, alternant_code, code_equal
from .field import GF
from .invariant import AffineMap, decompose_invariant, invariant_generator, solve_alpha
from .poly import Polynomial
from .symmetry import (
    GroupSpec,
    InducedPermutation,
    OrbitPartition,
    SymmetricInstance,
    induced_permutation,
    make_permutation,
    orbit_partition,
    symmetric_generator,
)


class PreconditionError(ValueError):
    """The instance does not satisfy the hypotheses needed for a prediction."""


# -- the folding operator ----------------------------------------------------

def fold_matrix(field: GF, orbits: OrbitPartition) -> np.ndarray:
    """n x (#orbits) matrix of the orbit-summing map, multiplicities included."""
    M = np.zeros((orbits.n, len(orbits)), dtype=np.int64)
    for j, orb in enumerate(orbits.orbits):
        M[list(orb), j] = field.scalar(orbits.multiplicity(j))
    return M


def fold_vector(field: GF, c, orbits: OrbitPartition) -> np.ndarray:
    c = np.asarray(c, dtype=np.int64)
    out = np.zeros(len(orbits), dtype=np.int64)
    for j, orb in enumerate(orbits.orbits):
        out[j] = field.mul(field.scalar(orbits.multiplicity(j)), field.sum(c[list(orb)]))
    return out


def fold_code(C: LinearCode, orbits: OrbitPartition) -> LinearCode:
    if orbits.n != C.n:
        raise ValueError(f"partition covers {orbits.n} positions, code has {C.n}")
    F = C.field
    if C.dimension == 0:
        return LinearCode.zero(F, len(orbits))
    rows = np.array([fold_vector(F, g, orbits) for g in C.generator], dtype=np.int64)
    return LinearCode(F, rows, len(orbits))


def sigma_subcode(C: LinearCode, sigma) -> LinearCode:
    """{c + c^sigma + ... + c^(sigma^(l-1))} with c^sigma = (c_sigma(i))_i."""
    F = C.field
    perm = np.asarray(getattr(sigma, "perm", sigma), dtype=np.int64)
    if perm.shape != (C.n,):
        raise ValueError("permutation length differs from the code length")
    if C.dimension == 0:
        return LinearCode.zero(F, C.n)
    acc = np.zeros_like(C.generator)
    cur = np.arange(C.n)
    while True:
        acc = F.add(acc, C.generator[:, cur])
        cur = perm[cur]
        if np.array_equal(cur, np.arange(C.n)):
            break
    return LinearCode(F, acc, C.n)


@dataclass
class DimLawResult:
    holds: bool | None
    n: int
    k: int
    n_folded: int
    k_folded: int
    group_order: int
    full_orbits: bool
    generator_found: bool


def check_dim_law(C: LinearCode, perms, seed=None) -> DimLawResult:
    """Prop.-6-style law: dim fold = k/|G| and length n/|G|.

    ``holds`` is None when the hypotheses cannot be established (no row-closed
    generator with full row orbits was found, or some position orbit is short).
    """
    perms = list(perms)
    orbits = orbit_partition(perms, C.n)
    folded = fold_code(C, orbits)
    size = orbits.group_order
    rows = symmetric_generator(C, perms, seed=seed)
    full = orbits.all_full()
    holds = None
    if rows is not None and full:
        holds = folded.n * size == C.n and folded.dimension * size == C.dimension
    return DimLawResult(holds, C.n, C.dimension, folded.n, folded.dimension, size, full, rows is not None)


# -- lifted permutations and iterated folds ----------------------------------

@dataclass(frozen=True)
class LiftedPermutation:
    """Action of sigma on the orbits of a subgroup (indices into its partition)."""

    perm: tuple
    order: int


def lift_permutation(sigma, orbits: OrbitPartition) -> LiftedPermutation:
    perm = getattr(sigma, "perm", sigma)
    where = orbits.orbit_index()
    out = []
    for orb in orbits.orbits:
        images = {int(where[perm[u]]) for u in orb}
        if len(images) != 1:
            raise PreconditionError("permutation does not commute with the subgroup")
        out.append(images.pop())
    p = make_permutation(out)
    return LiftedPermutation(p.perm, p.order)


def compose_partitions(outer: OrbitPartition, inner: OrbitPartition, group_order: int) -> OrbitPartition:
    """Orbits on original positions from orbits of ``outer`` on the blocks of ``inner``."""
    merged = []
    for orb in outer.orbits:
        merged.append(tuple(sorted(i for j in orb for i in inner.orbits[j])))
    return OrbitPartition(tuple(sorted(merged)), group_order)


def fold_group_iterative(C: LinearCode, perms) -> LinearCode:
    """Fold by <g_1>, then by the lift of g_2, and so on.

    Each lifted generator must have the same order as the original one.
    """
    perms = list(perms)
    if not perms:
        return C
    current = orbit_partition(perms[:1], C.n)
    code = fold_code(C, current)
    for h in range(1, len(perms)):
        g = perms[h]
        lifted = lift_permutation(g, current)
        if lifted.order != permutation_order_of(g):
            raise PreconditionError(
                f"lifted generator has order {lifted.order}, expected {permutation_order_of(g)}")
        step = orbit_partition([lifted.perm], len(current))
        code = fold_code(code, step)
        current = compose_partitions(step, current, current.group_order * step.group_order)
    return code


def permutation_order_of(g) -> int:
    order = getattr(g, "order", None)
    return order if order is not None else make_permutation(g).order


# -- predictions --------------------------------------------------------------

def folded_exponent(ell: int, d: int) -> int:
    return (-d) % ell


def folded_degree(t: int, phi: AffineMap, d: int = 0) -> int:
    ell = phi.order
    if phi.is_shift:
        r = (t - ell) // ell + 1
        r_p = (t - phi.field.p) // phi.field.p + 1
        if r != r_p:
            raise AssertionError("shift degree disagrees between the l and p forms")
        return r
    return (t - 1 - folded_exponent(ell, d)) // ell + 1


def ell_minus_d_parameters(t: int, phi: AffineMap, d: int) -> tuple[int, int]:
    """(r, exponent of (x - u0) in y') in the l - d form, for a != 1.

    Agrees with :func:`folded_degree` / :func:`folded_exponent` for d >= 1 only.
    """
    ell = phi.order
    return (t - ell + d - 1) // ell + 1, ell - d


def representatives(x, phi: AffineMap) -> tuple:
    sigma = induced_permutation(x, phi)
    return orbit_partition([sigma], len(x)).representatives


def predict_fold_alternant(t: int, x, y, phi: AffineMap, d: int = 0, reps=None):
    """(r, x', y') describing the folded dual as the dual of A_r(x', y')."""
    F = phi.field
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if phi.is_identity:
        raise PreconditionError("identity map")
    u0 = phi.fixed_point
    if u0 is not None and u0 in set(x.tolist()):
        raise PreconditionError("support contains the fixed point")
    if phi.is_shift and d != 0:
        raise PreconditionError("a shift forces d = 0")
    if reps is None:
        reps = representatives(x, phi)
    reps = list(reps)
    R = invariant_generator(phi)
    xr = x[reps]
    x_new = np.atleast_1d(R(xr))
    if len(set(x_new.tolist())) != len(reps):
        raise PreconditionError("folded support is not pairwise distinct")
    if phi.is_shift:
        y_new = y[reps].copy()
    else:
        e0 = folded_exponent(phi.order, d)
        y_new = np.atleast_1d(F.mul(y[reps], F.pow(F.sub(xr, u0), e0)))
    return folded_degree(t, phi, d), tuple(int(v) for v in x_new), tuple(int(v) for v in y_new)


def predict_fold_goppa(x, gamma: Polynomial, phi: AffineMap, reps=None):
    """(x', gamma') with gamma = gamma'(R) (shift) or (z - u0)^d gamma'((z - u0)^l)."""
    x = np.asarray(x, dtype=np.int64)
    alpha = solve_alpha(gamma, phi)
    if alpha is None:
        raise PreconditionError("Goppa polynomial does not satisfy the functional equation")
    u0 = phi.fixed_point
    if u0 is not None and u0 in set(x.tolist()):
        raise PreconditionError("support contains the fixed point")
    d, small = decompose_invariant(gamma, phi, alpha)
    if reps is None:
        reps = representatives(x, phi)
    x_new = np.atleast_1d(invariant_generator(phi)(x[list(reps)]))
    if len(set(x_new.tolist())) != len(x_new):
        raise PreconditionError("folded support is not pairwise distinct")
    if small.degree * phi.order + d != gamma.degree:
        raise AssertionError("degree bookkeeping failed")
    return tuple(int(v) for v in x_new), small


def recover_d(x, y, phi: AffineMap, sigma: InducedPermutation | None = None) -> int:
    """The d with y_sigma(i) = a^d y_i for all i, from the multiplier itself."""
    F = phi.field
    if sigma is None:
        sigma = induced_permutation(x, phi)
    y = np.asarray(y, dtype=np.int64)
    ratios = set(np.atleast_1d(F.div(y[list(sigma.perm)], y)).tolist())
    if len(ratios) != 1:
        raise PreconditionError("multiplier is not compatible with the permutation")
    alpha = ratios.pop()
    if phi.is_shift:
        if alpha != 1:
            raise PreconditionError("a shift needs a multiplier constant on orbits")
        return 0
    try:
        return F.discrete_log_in_cyclic(alpha, phi.a, phi.order)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


# -- reports -------------------------------------------------------------------

@dataclass
class FoldReport:
    family: str
    spec: CodeSpec
    group: GroupSpec
    verdict: bool
    folded: LinearCode | None = None
    predicted: CodeSpec | None = None
    n: int = 0
    k: int = 0
    n_folded: int = 0
    k_folded: int = 0
    degree: int = 0
    degree_folded: int | None = None
    seconds: float = 0.0
    error: str | None = None
    notes: dict = dc_field(default_factory=dict)

    def summary(self, timing: bool = False) -> dict:
        out = {
            "family": self.family,
            "verdict": bool(self.verdict),
            "n": self.n, "k": self.k,
            "n_folded": self.n_folded, "k_folded": self.k_folded,
            "degree": self.degree, "degree_folded": self.degree_folded,
            "group_order": self.group.order,
            "error": self.error,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _report(family, spec, group, folded, predicted, degree_folded, started, notes=None) -> FoldReport:
    if predicted is None:
        verdict = False
    elif predicted.n != folded.n:
        verdict = False
    else:
        verdict = code_equal(folded, predicted.dual_code())
    dual_dim = spec.dual_code().dimension if folded is not None else 0
    return FoldReport(
        family, spec, group, verdict, folded, predicted,
        n=spec.n, k=dual_dim, n_folded=folded.n, k_folded=folded.dimension,
        degree=spec.degree, degree_folded=degree_folded,
        seconds=time.perf_counter() - started, notes=notes or {})


def _failed(family, spec, group, started, exc) -> FoldReport:
    return FoldReport(family, spec, group, False, n=spec.n, degree=spec.degree,
                      seconds=time.perf_counter() - started, error=f"{type(exc).__name__}: {exc}")


def _cyclic_setup(spec: CodeSpec, phi: AffineMap):
    sigma = induced_permutation(spec.support, phi)
    orbits = orbit_partition([sigma], spec.n)
    if phi.fixed_point is not None and phi.fixed_point in set(spec.support):
        raise PreconditionError("support contains the fixed point")
    if not orbits.all_full():
        raise PreconditionError("orbits are not all of full size")
    return sigma, orbits


def verify_cyclic_alternant(inst: SymmetricInstance, prediction=None) -> FoldReport:
    """Folded dual of a QC alternant code against the predicted A_r(x', y')^perp.

    ``prediction`` may override (r, x', y'), which is how negative controls run.
    """
    started = time.perf_counter()
    spec, group = inst.spec, inst.group
    phi = group.generators[0]
    try:
        sigma, orbits = _cyclic_setup(spec, phi)
        y = spec.multiplier_values()
        d = recover_d(spec.support, y, phi, sigma)
        folded = fold_code(spec.dual_code(), orbits)
        r, xn, yn = prediction or predict_fold_alternant(
            spec.degree, spec.support, y, phi, d, orbits.representatives)
        predicted = CodeSpec("alternant", spec.view, xn, r, multiplier=yn)
    except (PreconditionError, ValueError) as exc:
        return _failed("alternant-cyclic", spec, group, started, exc)
    notes = {"d": d, "ell": phi.order}
    if not phi.is_shift:
        notes["ell_minus_d"] = ell_minus_d_parameters(spec.degree, phi, d)
    return _report("alternant-cyclic", spec, group, folded, predicted, r, started, notes)


def verify_cyclic_goppa(inst: SymmetricInstance, prediction=None) -> FoldReport:
    """Folded dual of a QC Goppa code against the predicted G(x', gamma')^perp."""
    started = time.perf_counter()
    spec, group = inst.spec, inst.group
    phi = group.generators[0]
    try:
        if spec.kind != "goppa":
            raise PreconditionError("not a Goppa instance")
        sigma, orbits = _cyclic_setup(spec, phi)
        folded = fold_code(spec.dual_code(), orbits)
        xn, gn = prediction or predict_fold_goppa(spec.support, spec.goppa, phi, orbits.representatives)
        predicted = CodeSpec("goppa", spec.view, xn, int(gn.degree), goppa=gn)
    except (PreconditionError, ValueError) as exc:
        return _failed("goppa-cyclic", spec, group, started, exc)
    alpha = solve_alpha(spec.goppa, phi)
    d = 0 if phi.is_shift else phi.field.discrete_log_in_cyclic(alpha, phi.a, phi.order)
    notes = {"d": d, "ell": phi.order,
             "degree_law": gn.degree * phi.order + d == spec.degree}
    return _report("goppa-cyclic", spec, group, folded, predicted, int(gn.degree), started, notes)


def _shift_chain(spec: CodeSpec, group: GroupSpec):
    """Orbit partitions, lifted shifts and transformed shift values step by step."""
    if group.structure != "elementary-abelian":
        raise PreconditionError("expected a group of shifts")
    F = spec.field
    x = spec.support
    perms = group.permutations(x)
    steps = []
    current = orbit_partition(perms[:1], spec.n)
    beta = [int(b) for b in group.shifts]
    steps.append((AffineMap(F, 1, beta[0]), current))
    R = invariant_generator(steps[0][0])
    beta = [int(R(b)) for b in beta]
    for h in range(1, len(perms)):
        lifted = lift_permutation(perms[h], current)
        if lifted.order != perms[h].order:
            raise PreconditionError("lifted generator has lower order")
        step = orbit_partition([lifted.perm], len(current))
        phi = AffineMap(F, 1, beta[h])
        steps.append((phi, step, lifted))
        current = compose_partitions(step, current, current.group_order * step.group_order)
        R = invariant_generator(phi)
        beta = [int(R(b)) for b in beta]
    return perms, steps, current


def _iterate_predictions(spec: CodeSpec, group: GroupSpec, goppa: bool):
    perms, steps, final = _shift_chain(spec, group)
    x = spec.support
    t = spec.degree
    y = None if goppa else spec.multiplier_values()
    gamma = spec.goppa
    for idx, st in enumerate(steps):
        phi = st[0]
        part = st[1]
        if idx > 0:
            # the lifted permutation must be the one induced by the transformed shift
            if induced_permutation(x, phi).perm != st[2].perm:
                raise AssertionError("transformed shift does not induce the lifted permutation")
        if goppa:
            x, gamma = predict_fold_goppa(x, gamma, phi, part.representatives)
        else:
            recover_d(x, y, phi)
            t, x, y = predict_fold_alternant(t, x, y, phi, 0, part.representatives)
    return perms, final, (x, gamma if goppa else y, int(gamma.degree) if goppa else t)


def verify_shift_goppa(inst: SymmetricInstance, prediction=None, check_iterated: bool = True) -> FoldReport:
    """Folded dual of a QD/QM Goppa code along the whole shift group, predicted step by step."""
    started = time.perf_counter()
    spec, group = inst.spec, inst.group
    try:
        if spec.kind != "goppa":
            raise PreconditionError("not a Goppa instance")
        perms, final, (xn, gn, deg) = _iterate_predictions(spec, group, goppa=True)
        if prediction is not None:
            xn, gn = prediction
        if not final.all_full():
            raise PreconditionError("orbits are not all of full size")
        dual = spec.dual_code()
        folded = fold_code(dual, final)
        predicted = CodeSpec("goppa", spec.view, xn, int(gn.degree), goppa=gn)
    except (PreconditionError, ValueError) as exc:
        return _failed("goppa-shift-group", spec, group, started, exc)
    size = group.order
    notes = {"lambda": group.lam,
             "degree_law": gn.degree * size == spec.degree}
    if check_iterated:
        notes["iterated_matches"] = code_equal(fold_group_iterative(dual, perms), folded)
    rep = _report("goppa-shift-group", spec, group, folded, predicted, int(gn.degree), started, notes)
    rep.verdict = rep.verdict and notes["degree_law"] and notes.get("iterated_matches", True)
    return rep


def verify_shift_alternant(inst: SymmetricInstance, prediction=None, check_iterated: bool = True) -> FoldReport:
    """Folded dual of a QD/QM alternant code against the composed alternant prediction."""
    started = time.perf_counter()
    spec, group = inst.spec, inst.group
    try:
        perms, final, (xn, yn, r) = _iterate_predictions(spec, group, goppa=False)
        if prediction is not None:
            r, xn, yn = prediction
        if not final.all_full():
            raise PreconditionError("orbits are not all of full size")
        dual = spec.dual_code()
        folded = fold_code(dual, final)
        predicted = CodeSpec("alternant", spec.view, xn, r, multiplier=yn)
    except (PreconditionError, ValueError) as exc:
        return _failed("alternant-shift-group", spec, group, started, exc)
    notes = {"lambda": group.lam}
    if check_iterated:
        notes["iterated_matches"] = code_equal(fold_group_iterative(dual, perms), folded)
    rep = _report("alternant-shift-group", spec, group, folded, predicted, r, started, notes)
    rep.verdict = rep.verdict and notes.get("iterated_matches", True)
    return rep


def verify_instance(inst: SymmetricInstance, prediction=None) -> FoldReport:
    shift_group = inst.group.structure == "elementary-abelian"
    if inst.spec.kind == "goppa":
        return (verify_shift_goppa if shift_group else verify_cyclic_goppa)(inst, prediction)
    return (verify_shift_alternant if shift_group else verify_cyclic_alternant)(inst, prediction)


def predicted_parameters(inst: SymmetricInstance):
    """The prediction verify_instance would use, in the shape its ``prediction`` argument takes."""
    spec, group = inst.spec, inst.group
    if group.structure == "elementary-abelian":
        _, _, (xn, tail, deg) = _iterate_predictions(spec, group, spec.kind == "goppa")
        return (xn, tail) if spec.kind == "goppa" else (deg, xn, tail)
    phi = group.generators[0]
    if spec.kind == "goppa":
        return predict_fold_goppa(spec.support, spec.goppa, phi)
    y = spec.multiplier_values()
    return predict_fold_alternant(spec.degree, spec.support, y, phi, recover_d(spec.support, y, phi))


# -- primal side ------------------------------------------------------------------

def primal_fold_inclusion(inst: SymmetricInstance) -> tuple[bool, bool]:
    """(fold(A_t) inside A_r'(x', y'), equality), for a cyclic alternant instance.

    r' is floor((t-1)/p) + 1 for shifts and the dual-side r otherwise; equality is
    only ever reported.
    """
    spec = inst.spec
    phi = inst.group.generators[0]
    y = spec.multiplier_values()
    d = recover_d(spec.support, y, phi)
    r, xn, yn = predict_fold_alternant(spec.degree, spec.support, y, phi, d)
    if phi.is_shift:
        r = (spec.degree - 1) // phi.field.p + 1
    orbits = inst.orbits()
    folded = fold_code(spec.code(), orbits)
    target = alternant_code(r, xn, yn, spec.view)
    inside = target.contains_code(folded)
    return inside, inside and code_equal(folded, target)


# -- negative controls --------------------------------------------------------------

def corrupt_prediction(inst: SymmetricInstance, rng, what: str | None = None, attempts: int = 50):
    """A perturbed prediction whose predicted dual differs from the honest one.

    Perturbs one of x', y', r (alternant) or x', gamma' (Goppa). Perturbations that
    leave the predicted code unchanged are resampled.
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    spec = inst.spec
    F, view = spec.field, spec.view
    honest = predicted_parameters(inst)
    goppa = spec.kind == "goppa"

    def dual_of(pred):
        if goppa:
            return CodeSpec("goppa", view, pred[0], int(pred[1].degree), goppa=pred[1]).dual_code()
        return CodeSpec("alternant", view, pred[1], pred[0], multiplier=pred[2]).dual_code()

    base = dual_of(honest)
    choices = ["x", "gamma"] if goppa else ["x", "y", "r"]
    for _ in range(attempts):
        kind = what or choices[int(rng.integers(len(choices)))]
        xs = list(honest[0] if goppa else honest[1])
        try:
            if kind == "x":
                free = sorted(set(range(F.order)) - set(xs))
                if not free:
                    continue
                xs[int(rng.integers(len(xs)))] = int(free[int(rng.integers(len(free)))])
                pred = (tuple(xs), honest[1]) if goppa else (honest[0], tuple(xs), honest[2])
            elif kind == "y":
                ys = list(honest[2])
                j = int(rng.integers(len(ys)))
                ys[j] = int(F.mul(ys[j], int(rng.integers(2, F.order)) if F.order > 2 else 1))
                pred = (honest[0], honest[1], tuple(ys))
            elif kind == "r":
                # any other degree in [0, r + 1]; lower ones matter when the dual is saturated
                r = max(honest[0], 0)
                others = [v for v in range(r + 2) if v != honest[0]]
                pred = (others[int(rng.integers(len(others)))], honest[1], honest[2])
            elif kind == "gamma":
                g = honest[1]
                if rng.random() < 0.25:
                    # a nonzero constant: the predicted dual collapses to {0}
                    g = Polynomial.constant(F, int(rng.integers(1, F.order)))
                else:
                    k = int(rng.integers(0, max(int(g.degree), 0) + 2))
                    g = g + Polynomial.monomial(F, k, int(rng.integers(1, F.order)))
                if g.is_zero():
                    continue
                pred = (honest[0], g)
            else:
                raise ValueError(f"unknown corruption {kind!r}")
            other = dual_of(pred)
            if other.n != base.n or not code_equal(other, base):
                return kind, pred
        except ValueError:
            continue
    raise RuntimeError("could not find a corruption that changes the predicted code")


def corrupt_multiplier(inst: SymmetricInstance, rng) -> SymmetricInstance:
    """Copy of an alternant instance with one multiplier entry changed."""
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    spec = inst.spec
    if spec.kind != "alternant":
        raise ValueError("only alternant instances carry an explicit multiplier")
    F = spec.field
    y = list(spec.multiplier)
    j = int(rng.integers(len(y)))
    y[j] = int(F.mul(y[j], int(rng.integers(2, F.order))))
    new = CodeSpec("alternant", spec.view, spec.support, spec.degree, multiplier=tuple(y))
    return SymmetricInstance(new, inst.group, inst.seed, inst.d)

