"""Parameter-grid campaigns: build instances, fold them, compare against predictions.

Job i of a sweep draws all of its randomness from ``rng_for(seed, i)``, so the
aggregate report does not depend on the worker count or scheduling order.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .folding import corrupt_prediction, primal_fold_inclusion, verify_instance
from .instance import (
    error_row,
    make_instance,
    parse_field,
    parse_group,
    parse_view,
    report_row,
    rng_for,
    serialize,
)


@dataclass(frozen=True)
class Job:
    index: int
    field: str
    view: str | None
    group: str
    code: str
    degree: int
    d: int
    n0: int | None
    trial: int

    @property
    def label(self) -> str:
        return f"{self.field}|{self.view}|{self.group}|{self.code}|deg={self.degree}|d={self.d}|#{self.trial}"


def _orders(case: dict, F) -> list[int]:
    g = case["group"]
    if g.startswith("qc:order="):
        return [int(g.split("=")[1])]
    if g.startswith("qc:") and "," in g:
        return []
    return [F.p]


def expand_grid(grid: dict) -> list[Job]:
    """Jobs of a grid document ``{"trials": k, "cases": [...]}``.

    Each case has ``field`` (p:m), optional ``view`` (q:m), ``group`` (as for
    ``--group``), ``code``, ``degrees`` [lo, hi] (t for alternant, deg Q for
    Goppa), optional ``d`` ("all" or a list; cyclic non-shift groups only),
    optional ``n0`` and ``trials``.
    """
    jobs = []
    default_trials = int(grid.get("trials", 1))
    for case in grid.get("cases", []):
        F = parse_field(case["field"])
        lo, hi = case["degrees"]
        group = case["group"]
        ds = [0]
        if group.startswith("qc:"):
            orders = _orders(case, F)
            if orders and orders[0] != F.p:
                want = case.get("d", "all")
                ds = list(range(orders[0])) if want == "all" else [int(v) for v in want]
            elif case.get("d") not in (None, "all", [0]):
                ds = [int(v) for v in case["d"]]
        for d in ds:
            for deg in range(int(lo), int(hi) + 1):
                for trial in range(int(case.get("trials", default_trials))):
                    jobs.append(Job(len(jobs), case["field"], case.get("view"), group,
                                    case.get("code", "alternant"), deg, d, case.get("n0"), trial))
    return jobs


def run_job(args) -> dict:
    job, seed, corrupt_rate, timing, primal = args
    rng = rng_for(seed, job.index)
    corrupt = corrupt_rate > 0 and rng.random() < corrupt_rate
    text = ""
    try:
        F = parse_field(job.field)
        view = parse_view(F, job.view)
        inst = make_instance(view, parse_group(job.group), job.code, job.degree, rng,
                             d=job.d, n0=job.n0, seed=None)
        text = serialize(inst)
        prediction = None
        if corrupt:
            _, prediction = corrupt_prediction(inst, rng)
        rep = verify_instance(inst, prediction)
        row = report_row(rep, text, job.label, corrupted=corrupt, timing=timing)
        if primal and job.code == "alternant" and inst.group.structure == "cyclic" and rep.error is None:
            inside, equal = primal_fold_inclusion(inst)
            row["primal_inclusion"] = inside
            row["primal_equal"] = equal
        return row
    except Exception as exc:  # recorded per instance, never fatal for the sweep
        return error_row(text or job.label, job.label, exc, corrupted=corrupt)


def run_sweep(jobs: list[Job], seed: int = 0, workers: int = 1, corrupt_rate: float = 0.0,
              timing: bool = False, primal: bool = False) -> list[dict]:
    args = [(job, seed, corrupt_rate, timing, primal) for job in jobs]
    if workers <= 1 or len(jobs) <= 1:
        return [run_job(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_job, args, chunksize=max(1, len(args) // (4 * workers))))


def default_grid() -> dict:
    """Desk-scale grid over q in {2, 3}: QC alternant and Goppa, QD/QM alternant and Goppa."""
    cases = []
    qc = [("2:4", "2:4", 3), ("2:4", "2:4", 5), ("2:6", "2:6", 7), ("2:6", "2:6", 2),
          ("2:4", "4:2", 3), ("3:2", "3:2", 2), ("3:3", "3:3", 3), ("3:4", "3:4", 5)]
    for field, view, ell in qc:
        cases.append({"field": field, "view": view, "group": f"qc:order={ell}",
                      "code": "alternant", "degrees": [1, 3 * ell]})
        cases.append({"field": field, "view": view, "group": f"qc:order={ell}",
                      "code": "goppa", "degrees": [0, 2]})
    for field, view, lam in [("2:6", "2:6", 1), ("2:6", "2:6", 2), ("2:6", "2:6", 3),
                             ("3:3", "3:3", 1), ("3:4", "3:4", 2)]:
        cases.append({"field": field, "view": view, "group": f"qm:lambda={lam}",
                      "code": "goppa", "degrees": [1, 2]})
        cases.append({"field": field, "view": view, "group": f"qm:lambda={lam}",
                      "code": "alternant", "degrees": [1, 2 * int(field[0]) ** lam]})
    return {"trials": 1, "cases": cases}


def load_grid(path: str | None) -> dict:
    if path is None:
        return default_grid()
    with open(path) as fh:
        grid = json.load(fh)
    if not isinstance(grid, dict):
        raise ValueError("grid file must hold a JSON object")
    return grid


def summarize(rows: list[dict]) -> dict:
    out = {"count": len(rows), "passed": 0, "failed": 0, "errors": 0, "corrupted": 0,
           "corrupted_flipped": 0, "by_family": {}}
    primal = [r for r in rows if "primal_equal" in r]
    for r in rows:
        ok = bool(r["verdict"])
        out["passed" if ok else "failed"] += 1
        out["errors"] += r.get("error") is not None
        if r.get("corrupted"):
            out["corrupted"] += 1
            out["corrupted_flipped"] += not ok
        th = out["by_family"].setdefault(r.get("family") or "error", [0, 0])
        th[0] += ok
        th[1] += 1
    if primal:
        out["primal_checked"] = len(primal)
        out["primal_inclusion"] = sum(bool(r["primal_inclusion"]) for r in primal)
        out["primal_equal"] = sum(bool(r["primal_equal"]) for r in primal)
    return out

