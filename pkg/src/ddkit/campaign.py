"""Exhaustive campaigns over the instance family.

Each campaign runs per :class:`~ddkit.instances.Task` (optionally in a
process pool) and merges the per-task results in task order, so the
report does not depend on scheduling.  Reports are plain JSON-able dicts;
timings go to the progress callback only.
"""
from __future__ import annotations

import multiprocessing
import time
from collections import Counter
from dataclasses import asdict
from typing import Callable, Iterable

from .deldyn import aut_id, expected_aut_id_count, type_of
from .fileformat import pair_data, to_data
from .hodge import ConstructionError, all_choices, deligne_construct
from .instances import Bounds, Task, library, task_diagrams, task_instances, tasks
from .localglobal import COUNTEREXAMPLE, PASS, VACUOUS, locally_same_aut, locally_same_type, verify_theorem

Progress = Callable[[str], None]


def _local_global_task(job: tuple[Task, Bounds]) -> tuple[int, dict]:
    task, bounds = job
    counts: Counter = Counter()
    failures = []
    for inst in task_instances(task, bounds):
        v = verify_theorem(inst)
        counts[v.status] += 1
        if v.status not in (PASS, VACUOUS):
            failures.append({"instance": pair_data(inst.d1, inst.d2, inst.f, inst.label), "verdict": v.status, "detail": _jsonable(v.detail)})
    return task.index, {"counts": dict(counts), "failures": failures}


def _diagram_task(job: tuple[Task, Bounds]) -> tuple[int, dict]:
    task, bounds = job
    counts: Counter = Counter()
    failures = []
    for single in task_diagrams(task, bounds):
        d = single.diagram
        counts["diagrams"] += 1
        problems = []
        got, want = len(aut_id(d)), expected_aut_id_count(d)
        if got != want:
            problems.append(f"aut_id has {got} elements, case table says {want}")
        if locally_same_type(d) is None:
            problems.append("no local piece of the global type")
        if locally_same_aut(d) is None:
            problems.append("no local piece with the global automorphism count")
        for cover, phi in all_choices(d):
            counts["deligne_choices"] += 1
            try:
                deligne_construct(d, cover, phi, 1)
            except ConstructionError as e:
                problems.append(f"construction failed for phi={sorted(phi)}: {e}")
        counts[f"type {type_of(d)}"] += 1
        if problems:
            failures.append({"label": single.label, "diagram": to_data(d), "problems": problems})
    return task.index, {"counts": dict(counts), "failures": failures}


RUNNERS = {"local-global": _local_global_task, "diagrams": _diagram_task}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _execute(kind: str, jobs_list: list[tuple[Task, Bounds]], jobs: int, progress: Progress | None) -> Iterable[tuple[int, dict]]:
    runner = RUNNERS[kind]
    if jobs <= 1:
        for job in jobs_list:
            yield runner(job)
        return
    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap_unordered(runner, jobs_list, chunksize=1)


def run_campaign(kind: str, bounds: Bounds = Bounds(), jobs: int = 1, progress: Progress | None = None) -> dict:
    """Run one campaign and return its deterministic report."""
    if kind not in RUNNERS:
        raise ValueError(f"unknown campaign {kind!r}")
    start = time.monotonic()
    all_tasks = tasks(bounds)
    lib = library(bounds.max_order, bounds.degree)
    results: dict[int, dict] = {}
    for n, (idx, res) in enumerate(_execute(kind, [(t, bounds) for t in all_tasks], jobs, progress), 1):
        results[idx] = res
        if progress and (n % 25 == 0 or n == len(all_tasks)):
            progress(f"{kind}: {n}/{len(all_tasks)} tasks, {time.monotonic() - start:.1f}s")
    totals: Counter = Counter()
    by_group: dict[str, Counter] = {}
    failures = []
    for t in all_tasks:
        res = results[t.index]
        totals.update(res["counts"])
        by_group.setdefault(lib[t.group].name, Counter()).update(res["counts"])
        failures.extend(res["failures"])
    return {
        "campaign": kind,
        "bounds": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(bounds).items()},
        "groups": [g.name for g in lib],
        "tasks": len(all_tasks),
        "totals": dict(sorted(totals.items())),
        "by_group": {g: dict(sorted(c.items())) for g, c in by_group.items()},
        "failures": failures,
    }


def campaign_ok(report: dict) -> bool:
    return not report["failures"] and report["totals"].get(COUNTEREXAMPLE, 0) == 0
