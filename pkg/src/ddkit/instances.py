"""Deterministic generation of equivariant diagrams and instance pairs.

An irreducible diagram with ``k`` components is induced from a subgroup
``H`` of index ``k`` in the acting group ``G`` and a homomorphism
``chi: H -> Aut(T)`` for a connected type ``T``.  Groups come from the
library of small subgroups of a symmetric group (one per isomorphism
type); subgroups ``H`` are taken up to conjugacy and ``chi`` up to
conjugation in ``Aut(T)``.

Work is cut into :class:`Task` slices ``(group, subgroup, type)`` so that a
campaign can run them in any order and merge results by task index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from .deldyn import DeligneDynkinDiagram, ddiagram
from .gaction import ComponentMap, EquivariantDiagram, equivariant_isoms
from .groups import FiniteGroup, bits, homomorphisms, small_group_library
from .localglobal import Instance, in_hypothesis
from .perm import Perm, compose, identity, inverse
from .rootsys import (
    DiagramError,
    DynkinDiagram,
    build_diagram,
    canonical_type,
    check_type,
    diagram_automorphisms,
    special_nodes,
)


@dataclass(frozen=True)
class Bounds:
    """Caps for the exhaustive families."""

    max_order: int = 24
    max_rank: int = 4
    types: tuple[str, ...] = ("A", "B", "C", "D")
    max_components: int = 3
    degree: int = 6
    cross_types: bool = True

    def connected_types(self) -> list[tuple[str, int]]:
        out = []
        for tag in self.types:
            for rank in range(1, self.max_rank + 1):
                try:
                    check_type(tag, rank)
                except DiagramError:
                    continue
                if canonical_type(tag, rank) == (tag, rank):
                    out.append((tag, rank))
        return out


@lru_cache(maxsize=None)
def library(max_order: int, degree: int) -> tuple[FiniteGroup, ...]:
    return small_group_library(max_order, degree)


@dataclass(frozen=True)
class Task:
    index: int
    group: int
    subgroup: int
    tag: str
    rank: int


@dataclass(frozen=True)
class Induction:
    """``G`` acting on ``k`` copies of ``T`` through cosets of ``H``."""

    group: FiniteGroup
    subgroup: int  # bitmask of H inside G
    cosets: tuple[int, ...]  # coset representatives, cosets[0] = identity
    tag: str
    rank: int

    @property
    def k(self) -> int:
        return len(self.cosets)

    @property
    def diagram(self) -> DynkinDiagram:
        return _induced_diagram(self.tag, self.rank, self.k)

    def node_perm(self, gamma: int, chi: dict[int, Perm]) -> Perm:
        g = self.group
        out = [0] * (self.k * self.rank)
        for i, t in enumerate(self.cosets):
            gt = g.mul(gamma, t)
            j = self.coset_index(gt)
            h = g.mul(g.inv(self.cosets[j]), gt)
            a = chi[h]
            for x in range(self.rank):
                out[i * self.rank + x] = j * self.rank + a[x]
        return tuple(out)

    def coset_index(self, x: int) -> int:
        g = self.group
        for j, t in enumerate(self.cosets):
            if (self.subgroup >> g.mul(g.inv(t), x)) & 1:
                return j
        raise AssertionError("element outside every coset")


@lru_cache(maxsize=None)
def _induced_diagram(tag: str, rank: int, k: int) -> DynkinDiagram:
    return build_diagram([(tag, rank)] * k)


@lru_cache(maxsize=None)
def _aut_group(tag: str, rank: int) -> FiniteGroup:
    return FiniteGroup.from_perms(f"Aut({tag}{rank})", diagram_automorphisms(build_diagram([(tag, rank)])).elements)


def tasks(bounds: Bounds) -> list[Task]:
    out = []
    lib = library(bounds.max_order, bounds.degree)
    for gi, g in enumerate(lib):
        for hi, h in enumerate(_subgroups(gi, bounds)):
            for tag, rank in bounds.connected_types():
                out.append(Task(len(out), gi, hi, tag, rank))
    return out


def _subgroups(gi: int, bounds: Bounds) -> list[int]:
    g = library(bounds.max_order, bounds.degree)[gi]
    return [h for h in g.subgroups_up_to_conjugacy() if g.order // bin(h).count("1") <= bounds.max_components]


def induction(task: Task, bounds: Bounds, tag: str | None = None, rank: int | None = None) -> Induction:
    g = library(bounds.max_order, bounds.degree)[task.group]
    h = _subgroups(task.group, bounds)[task.subgroup]
    reps: list[int] = []
    covered = 0
    for x in range(g.order):
        if (covered >> x) & 1:
            continue
        reps.append(x)
        for y in bits(h):
            covered |= 1 << g.mul(x, y)
    return Induction(g, h, tuple(reps), tag or task.tag, rank or task.rank)


def characters(ind: Induction) -> list[dict[int, Perm]]:
    """Homomorphisms ``H -> Aut(T)`` up to conjugation, as ``{h: perm}``."""
    g = ind.group
    els = bits(ind.subgroup)
    sub = g.subgroup("H", ind.subgroup)
    aut = _aut_group(ind.tag, ind.rank)
    seen = set()
    out = []
    for hom in homomorphisms(sub, aut):
        key = min(tuple(aut.mul(aut.mul(a, y), aut.inv(a)) for y in hom) for a in range(aut.order))
        if key in seen:
            continue
        seen.add(key)
        out.append({els[i]: aut.perms[key[i]] for i in range(len(els))})
    return out


def action(ind: Induction, chi: dict[int, Perm]) -> tuple[tuple[Perm, ...], tuple[Perm, ...]]:
    """Generator perms and the perms of every group element."""
    g = ind.group
    every = tuple(ind.node_perm(x, chi) for x in range(g.order))
    gens = tuple(every[x] for x in g.generators_of(g.full))
    return gens, every


def _faithful(*actions: tuple[Perm, ...]) -> bool:
    n = len(actions[0])
    ids = [identity(len(a[0])) for a in actions]
    return sum(1 for x in range(n) if all(a[x] == e for a, e in zip(actions, ids))) == 1


def mu_choices(dg: DynkinDiagram) -> Iterator[frozenset[int]]:
    """At most one special node per component, in a fixed order."""
    slots = [[None] + sorted(special_nodes(dg, c)) for c in range(len(dg.components))]
    for pick in product(*slots):
        yield frozenset(v for v in pick if v is not None)


def _reduce_mu(base: EquivariantDiagram, mus: list[frozenset[int]]) -> tuple[list[frozenset[int]], list[Perm]]:
    """Representatives of ``mus`` under equivariant automorphisms over the identity."""
    auts = list(equivariant_isoms(base, base, ComponentMap.identity(len(base.diagram.components))))
    reps, seen = [], set()
    for mu in mus:
        if mu in seen:
            continue
        reps.append(mu)
        for a in auts:
            seen.add(frozenset(a[v] for v in mu))
    return reps, auts


@dataclass(frozen=True)
class Single:
    diagram: DeligneDynkinDiagram
    label: str
    faithful: bool


def _label(g: FiniteGroup, task: Task, tag: str, rank: int, chi_i: int, mu: frozenset[int]) -> str:
    return f"{g.name}/H{task.subgroup} {tag}{rank} chi{chi_i} mu={sorted(mu)}"


def task_diagrams(task: Task, bounds: Bounds, *, faithful_only: bool = True) -> list[Single]:
    """In-hypothesis diagrams of one task, one per ``mu`` up to automorphism."""
    ind = induction(task, bounds)
    out = []
    for ci, chi in enumerate(characters(ind)):
        gens, every = action(ind, chi)
        faithful = _faithful(every)
        if faithful_only and not faithful:
            continue
        base = EquivariantDiagram(ind.diagram, gens)
        good = [mu for mu in mu_choices(ind.diagram) if in_hypothesis(DeligneDynkinDiagram(base, mu))]
        reps, _ = _reduce_mu(base, good)
        for mu in reps:
            out.append(Single(DeligneDynkinDiagram(base, mu), _label(ind.group, task, task.tag, task.rank, ci, mu), faithful))
    return out


def enumerate_diagrams(bounds: Bounds = Bounds()) -> Iterator[Single]:
    for t in tasks(bounds):
        yield from task_diagrams(t, bounds)


def task_instances(task: Task, bounds: Bounds) -> list[Instance]:
    """Twisted pairs over one task, plus different-type probes."""
    ind = induction(task, bounds)
    chis = characters(ind)
    sides = []
    for ci, chi in enumerate(chis):
        gens, every = action(ind, chi)
        base = EquivariantDiagram(ind.diagram, gens)
        good = [mu for mu in mu_choices(ind.diagram) if in_hypothesis(DeligneDynkinDiagram(base, mu))]
        if not good:
            continue
        reps, auts = _reduce_mu(base, good)
        sides.append((ci, base, every, good, reps, auts))
    f = ComponentMap.identity(ind.k)
    out = []
    name = ind.group.name
    for (c1, b1, ev1, good1, reps1, _), (c2, b2, ev2, good2, _, auts2) in product(sides, sides):
        if not _faithful(ev1, ev2):
            continue
        for mu1 in reps1:
            seen: set[frozenset[int]] = set()
            for mu2 in good2:
                if mu2 in seen:
                    continue
                for a in auts2:
                    seen.add(frozenset(a[v] for v in mu2))
                label = f"{name}/H{task.subgroup} {task.tag}{task.rank} chi{c1} mu={sorted(mu1)} ~ chi{c2} mu={sorted(mu2)}"
                out.append(Instance(DeligneDynkinDiagram(b1, mu1), DeligneDynkinDiagram(b2, mu2), f, label))
    if bounds.cross_types:
        out.extend(_probes(task, bounds, ind, sides))
    return out


def _probes(task: Task, bounds: Bounds, ind: Induction, sides: list) -> list[Instance]:
    """Pair each faithful diagram with one diagram of every other type of the same rank."""
    others = [(tg, r) for tg, r in bounds.connected_types() if r == task.rank and tg != task.tag]
    out = []
    f = ComponentMap.identity(ind.k)
    for tag, rank in others:
        other = Induction(ind.group, ind.subgroup, ind.cosets, tag, rank)
        triv = {h: identity(rank) for h in bits(ind.subgroup)}
        gens, _ = action(other, triv)
        base2 = EquivariantDiagram(other.diagram, gens)
        mu2 = next((m for m in mu_choices(other.diagram) if in_hypothesis(DeligneDynkinDiagram(base2, m))), None)
        if mu2 is None:
            continue
        d2 = DeligneDynkinDiagram(base2, mu2)
        for c1, b1, ev1, _, reps1, _ in sides:
            if not _faithful(ev1):
                continue
            for mu1 in reps1:
                label = f"{ind.group.name}/H{task.subgroup} {task.tag}{task.rank} chi{c1} mu={sorted(mu1)} ~ {tag}{rank} mu={sorted(mu2)}"
                out.append(Instance(DeligneDynkinDiagram(b1, mu1), d2, f, label))
    return out


def enumerate_instances(bounds: Bounds = Bounds()) -> Iterator[Instance]:
    """Every instance of the family, task by task in a fixed order."""
    for t in tasks(bounds):
        yield from task_instances(t, bounds)


def twist(d: DeligneDynkinDiagram, a: Perm) -> DeligneDynkinDiagram:
    """Transport ``d`` along a node relabelling ``a`` (a copy isomorphic to ``d``)."""
    ai = inverse(a)
    gens = tuple(compose(a, compose(g, ai)) for g in d.generators)
    return ddiagram(d.diagram, gens, (a[v] for v in d.mu))


__all__ = [
    "Bounds",
    "Induction",
    "Single",
    "Task",
    "action",
    "characters",
    "enumerate_diagrams",
    "enumerate_instances",
    "induction",
    "library",
    "mu_choices",
    "task_diagrams",
    "task_instances",
    "tasks",
    "twist",
]
