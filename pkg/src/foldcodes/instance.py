"""Instance files, report files and the random instance factory shared by the CLI.

Instance files are JSON with one top-level key per line, in a fixed key order,
so ``serialize(parse(text)) == text`` for every canonical file. Field elements
are the little-endian base-p integers used throughout the package.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec
from .field import GF, SubfieldView, field_new, view_for
from .invariant import AffineMap
from .poly import Polynomial
from .symmetry import (
    GroupSpec,
    SymmetricInstance,
    build_qc_goppa,
    build_qc_instance,
    build_qm_alternant,
    build_qm_goppa,
    cyclic_group,
    shift_group,
)

FORMAT = "foldcodes-instance/1"
REPORT_FORMAT = "foldcodes-report/1"
DEFAULT_LENGTH = 64
KEYS = ("format", "field", "view", "kind", "degree", "support", "multiplier",
        "goppa_polynomial", "group", "seed")
REPORT_COLUMNS = ("digest", "label", "family", "verdict", "corrupted", "n", "k", "n_folded",
                  "k_folded", "degree", "degree_folded", "group_order", "error")


class FormatError(ValueError):
    pass


# -- textual parameters --------------------------------------------------------

def parse_field(text: str) -> GF:
    """``p:m`` or ``p:m:c0,c1,...,cm`` (modulus coefficients, constant term first)."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise FormatError(f"bad field {text!r}; expected p:m[:c0,...,cm]")
    try:
        p, m = int(parts[0]), int(parts[1])
        modulus = [int(c) for c in parts[2].split(",")] if len(parts) == 3 else None
    except ValueError:
        raise FormatError(f"bad field {text!r}") from None
    return field_new(p, m, modulus)


def parse_view(big: GF, text: str | None) -> SubfieldView:
    """``q:m`` with q^m = |big|; None means the prime subfield."""
    if text is None:
        return view_for(big, big.p)
    try:
        q, m = (int(v) for v in text.split(":"))
    except ValueError:
        raise FormatError(f"bad view {text!r}; expected q:m") from None
    if q ** m != big.order:
        raise FormatError(f"view {q}^{m} does not match the field order {big.order}")
    return view_for(big, q)


@dataclass(frozen=True)
class GroupRequest:
    """A parsed ``--group`` value; unset entries are sampled by :func:`make_instance`."""

    family: str  # "qc" or "qm"
    a: int | None = None
    b: int | None = None
    order: int | None = None
    shifts: tuple = ()
    lam: int | None = None


def parse_group(text: str) -> GroupRequest:
    """``qc:a,b`` | ``qc:order=l`` | ``qm:s0,s1,...`` | ``qm:lambda=k`` (``qd`` is an alias of ``qm``)."""
    family, _, rest = text.partition(":")
    family = family.lower()
    if family == "qd":
        family = "qm"
    if family not in ("qc", "qm") or not rest:
        raise FormatError(f"bad group {text!r}")
    try:
        if family == "qc":
            if rest.startswith("order="):
                order = int(rest[6:])
                if order < 2:
                    raise FormatError(f"group order must be at least 2 in {text!r}")
                return GroupRequest("qc", order=order)
            a, b = (int(v) for v in rest.split(","))
            return GroupRequest("qc", a=a, b=b)
        if rest.startswith("lambda="):
            lam = int(rest[7:])
            if lam < 1:
                raise FormatError(f"lambda must be positive in {text!r}")
            return GroupRequest("qm", lam=lam)
        return GroupRequest("qm", shifts=tuple(int(v) for v in rest.split(",")))
    except ValueError:
        raise FormatError(f"bad group {text!r}") from None


# -- random instances ------------------------------------------------------------

def random_monic(F: GF, degree: int, rng) -> Polynomial:
    coeffs = [int(v) for v in rng.integers(0, F.order, degree)] + [1]
    return Polynomial(F, coeffs)


def random_affine(F: GF, order: int, rng) -> AffineMap:
    if order == F.p:
        return AffineMap(F, 1, int(rng.integers(1, F.order)))
    candidates = F.elements_of_order(order)
    if len(candidates) == 0:
        raise ValueError(f"no element of order {order} in GF({F.p}^{F.m})")
    return AffineMap(F, int(rng.choice(candidates)), int(rng.integers(0, F.order)))


def random_shifts(F: GF, lam: int, rng, attempts: int = 200) -> tuple:
    for _ in range(attempts):
        shifts = tuple(int(v) for v in rng.integers(1, F.order, lam))
        try:
            shift_group(F, shifts)
            return shifts
        except ValueError:
            continue
    raise ValueError(f"could not sample {lam} independent shifts")


def make_instance(view: SubfieldView, group: GroupRequest, code: str, degree: int, rng,
                  d: int = 0, n0: int | None = None, seed: int | None = None,
                  strict: bool = False, retries: int = 20) -> SymmetricInstance:
    """Build a random symmetric instance.

    Without ``n0`` the support holds as many orbits as fit in about
    ``DEFAULT_LENGTH`` positions.

    ``degree`` is t for alternant codes and deg Q for Goppa codes (the Goppa
    polynomial is then built from Q). Goppa polynomials with too few usable
    orbits are resampled up to ``retries`` times.
    """
    F = view.big
    if code not in ("alternant", "goppa"):
        raise ValueError(f"unknown code kind {code!r}")
    if group.family == "qc":
        phi = (AffineMap(F, group.a, group.b) if group.a is not None
               else random_affine(F, group.order, rng))
        if phi.is_identity:
            raise ValueError("the identity map does not define a group")
        avail = F.order - (0 if phi.is_shift else 1)
        # a root of Q removes at most one orbit, so this default always fits
        n0 = n0 or max(1, min(avail // phi.order - (degree + 1 if code == "goppa" else 0),
                              DEFAULT_LENGTH // phi.order))
        if code == "alternant":
            inst = build_qc_instance(view, phi, n0, degree, d, seed=rng)
        else:
            last = None
            for _ in range(retries):
                try:
                    inst = build_qc_goppa(view, phi, n0, random_monic(F, degree, rng), d, seed=rng)
                    break
                except ValueError as exc:
                    last = exc
            else:
                raise ValueError(f"no usable Goppa polynomial: {last}")
    else:
        shifts = group.shifts or random_shifts(F, group.lam, rng)
        size = F.p ** len(shifts)
        n0 = n0 or max(1, min(F.order // size - (degree if code == "goppa" else 0),
                              DEFAULT_LENGTH // size))
        if code == "alternant":
            inst = build_qm_alternant(view, shifts, n0, degree, seed=rng, strict=strict)
        else:
            last = None
            for _ in range(retries):
                try:
                    inst = build_qm_goppa(view, shifts, n0, random_monic(F, degree, rng), seed=rng,
                                          strict=strict)
                    break
                except ValueError as exc:
                    last = exc
            else:
                raise ValueError(f"no usable Goppa polynomial: {last}")
    inst.seed = seed
    return inst


# -- instance files ----------------------------------------------------------------

def symmetry_tag(group: GroupSpec | None) -> str:
    if group is None:
        return "none"
    if group.structure == "cyclic":
        return "qc"
    return "qd" if group.generators[0].field.p == 2 else "qm"


def instance_to_dict(inst: SymmetricInstance) -> dict:
    spec, group = inst.spec, inst.group
    F = spec.field
    if group is None:
        gdict = None
    elif group.structure == "cyclic":
        gdict = {"generators": [[g.a, g.b] for g in group.generators]}
    else:
        gdict = {"shifts": list(group.shifts)}
    return {
        "format": FORMAT,
        "field": {"p": F.p, "m": F.m, "modulus": list(F.modulus)},
        "view": {"q": spec.view.q, "m": spec.view.m},
        "kind": {"symmetry": symmetry_tag(group), "code": spec.kind},
        "degree": spec.degree,
        "support": list(spec.support),
        "multiplier": list(spec.multiplier) if spec.kind != "goppa" else None,
        "goppa_polynomial": list(spec.goppa.coeffs) if spec.kind == "goppa" else None,
        "group": gdict,
        "seed": inst.seed,
    }


def dumps_canonical(doc: dict, keys=KEYS) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(doc[k], separators=(',', ':'))}" for k in keys]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def serialize(inst: SymmetricInstance) -> str:
    return dumps_canonical(instance_to_dict(inst))


def _need(doc: dict, key: str, kind):
    if key not in doc:
        raise FormatError(f"missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise FormatError(f"key {key!r} has the wrong type")
    return doc[key]


def instance_from_dict(doc: dict) -> SymmetricInstance:
    if doc.get("format") != FORMAT:
        raise FormatError(f"unsupported format {doc.get('format')!r}")
    unknown = set(doc) - set(KEYS)
    if unknown:
        raise FormatError(f"unknown keys {sorted(unknown)}")
    fd = _need(doc, "field", dict)
    F = field_new(int(fd["p"]), int(fd["m"]), fd.get("modulus"))
    vd = _need(doc, "view", dict)
    if int(vd["q"]) ** int(vd["m"]) != F.order:
        raise FormatError("view does not match the field")
    view = view_for(F, int(vd["q"]))
    kind = _need(doc, "kind", dict)
    code = kind.get("code")
    degree = _need(doc, "degree", int)
    support = _need(doc, "support", list)
    if code == "goppa":
        gamma = Polynomial(F, _need(doc, "goppa_polynomial", list))
        spec = CodeSpec("goppa", view, support, degree, goppa=gamma)
    elif code in ("alternant", "grs"):
        spec = CodeSpec(code, view, support, degree, multiplier=_need(doc, "multiplier", list))
    else:
        raise FormatError(f"unknown code kind {code!r}")
    gd = doc.get("group")
    sym = kind.get("symmetry")
    if gd is None:
        group = None
        if sym != "none":
            raise FormatError("symmetry declared without a group")
    elif "generators" in gd:
        gens = gd["generators"]
        if len(gens) != 1:
            raise FormatError("cyclic groups take exactly one generator")
        group = cyclic_group(AffineMap(F, gens[0][0], gens[0][1]))
    elif "shifts" in gd:
        group = shift_group(F, gd["shifts"])
    else:
        raise FormatError("group needs 'generators' or 'shifts'")
    if group is not None and symmetry_tag(group) != sym:
        raise FormatError(f"symmetry tag {sym!r} does not match the group")
    seed = doc.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise FormatError("seed must be an integer or null")
    return SymmetricInstance(spec, group, seed)


def parse(text: str) -> SymmetricInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("instance must be a JSON object")
    return instance_from_dict(doc)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# -- reports -------------------------------------------------------------------------

def report_row(report, text: str, label: str = "", corrupted: bool = False, timing: bool = False) -> dict:
    row = {"digest": digest(text), "label": label, "corrupted": corrupted}
    row.update(report.summary(timing=timing))
    return row


def error_row(text: str, label: str, exc: Exception, corrupted: bool = False) -> dict:
    row = {c: None for c in REPORT_COLUMNS}
    row.update(digest=digest(text), label=label, family=None, verdict=False,
               corrupted=corrupted, error=f"{type(exc).__name__}: {exc}")
    return row


def report_document(rows: list[dict]) -> dict:
    rows = sorted(rows, key=lambda r: (r["digest"], r.get("label") or ""))
    passed = sum(1 for r in rows if r["verdict"])
    return {"format": REPORT_FORMAT, "count": len(rows), "passed": passed,
            "failed": len(rows) - passed, "instances": rows}


def report_json(rows: list[dict]) -> str:
    return json.dumps(report_document(rows), indent=1, sort_keys=False) + "\n"


def report_csv(rows: list[dict]) -> str:
    doc = report_document(rows)
    cols = list(REPORT_COLUMNS)
    for extra in ("primal_inclusion", "primal_equal", "seconds"):
        if any(extra in r for r in rows):
            cols.append(extra)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in doc["instances"]:
        w.writerow({c: r.get(c) for c in cols})
    return buf.getvalue()


def rng_for(base_seed: int, index: int) -> np.random.Generator:
    """Per-instance generator: the counter scheme keeps results scheduling-independent."""
    return np.random.default_rng([int(base_seed), int(index)])
