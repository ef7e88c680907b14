"""Deligne-Dynkin diagrams: a Dynkin diagram with a group action and a
choice ``mu`` of special nodes, at most one per connected component.

Types are reported with the canonical low-rank identifications
``C2 = B2`` and ``D3 = A3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .gaction import (
    ComponentMap,
    EquivariantDiagram,
    closure,
    degree_over_pi0,
    equivariant_isoms,
    pi0,
)
from .perm import Perm, PermGroup
from .rootsys import (
    Component,
    DiagramError,
    DynkinDiagram,
    canonical_type,
    extremal_nodes,
    opposition_involution,
    special_nodes,
    symplectic_nodes,
)

NOT_SYMPLECTIC = "NOT_SYMPLECTIC"
NOT_POPULATED = "NOT_POPULATED"


@dataclass(frozen=True, order=True)
class DiagramType:
    """``tag`` is one of A, B, C, DR, DH or an outcome marker."""

    tag: str
    rank: int = 0

    def __str__(self) -> str:
        if self.tag in (NOT_SYMPLECTIC, NOT_POPULATED):
            return self.tag
        if self.tag in ("DR", "DH"):
            return f"D{self.rank}^{self.tag[1]}"
        return f"{self.tag}{self.rank}"

    @property
    def is_outcome(self) -> bool:
        return self.tag in (NOT_SYMPLECTIC, NOT_POPULATED)


@dataclass(frozen=True)
class DeligneDynkinDiagram:
    base: EquivariantDiagram
    mu: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", frozenset(self.mu))

    @property
    def diagram(self) -> DynkinDiagram:
        return self.base.diagram

    @property
    def generators(self) -> tuple[Perm, ...]:
        return self.base.generators

    @cached_property
    def mu_bar(self) -> frozenset[int]:
        return closure(self.base, self.mu)


@dataclass(frozen=True)
class Validation:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(d: DeligneDynkinDiagram) -> Validation:
    """Check that ``mu`` consists of special nodes, one per component at most."""
    dg = d.diagram
    problems = []
    seen: dict[int, int] = {}
    for v in sorted(d.mu):
        if not 0 <= v < dg.size:
            problems.append(f"node {v}: not in the diagram")
            continue
        c = dg.component_of(v)
        if dg.components[c].affine or v not in special_nodes(dg, c):
            problems.append(f"node {v}: not a special node of component {c}")
        if c in seen:
            problems.append(f"node {v}: component {c} already meets mu in node {seen[c]}")
        else:
            seen[c] = v
    return Validation(tuple(problems))


def _check_valid(d: DeligneDynkinDiagram) -> None:
    v = validate(d)
    if not v.ok:
        raise DiagramError(v.problems[0])


def is_irreducible(d: DeligneDynkinDiagram) -> bool:
    return pi0(d.base).transitive


def is_populated(d: DeligneDynkinDiagram) -> bool:
    """``mu`` meets every irreducible component (orbit of components)."""
    dg = d.diagram
    hit = {dg.component_of(v) for v in d.mu}
    return all(orb & hit for orb in pi0(d.base).orbits)


def symplectic_set(d: DeligneDynkinDiagram) -> frozenset[int]:
    """Union of the node orbits ``O`` with ``O`` inside ``Delta_alpha``
    consisting of ``alpha``-symplectic nodes for every ``alpha`` in ``mu``."""
    _check_valid(d)
    dg = d.diagram
    allowed = {a: symplectic_nodes(dg, a) for a in d.mu}
    comp_nodes = {a: frozenset(dg.components[dg.component_of(a)].nodes) for a in d.mu}
    out: set[int] = set()
    for orb in d.base.group.orbits():
        if all((orb & comp_nodes[a]) <= allowed[a] for a in d.mu):
            out |= orb
    return frozenset(out)


def is_symplectic(d: DeligneDynkinDiagram) -> bool:
    dg = d.diagram
    s = symplectic_set(d)
    hit = {dg.component_of(v) for v in s}
    return all(orb & hit for orb in pi0(d.base).orbits)


def _component_type(d: DeligneDynkinDiagram) -> tuple[str, int]:
    c = d.diagram.components[0]
    return canonical_type(c.tag, c.rank)


def _d_side(dg: DynkinDiagram, alpha: int) -> str:
    """R if ``alpha`` is the end of the long arm of ``D_n`` (n >= 5), else H."""
    return "R" if dg.local_index(alpha) == 1 else "H"


def type_of(d: DeligneDynkinDiagram) -> DiagramType:
    """Classify an irreducible diagram."""
    _check_valid(d)
    if not is_irreducible(d):
        raise DiagramError("type_of needs an irreducible diagram")
    if not is_populated(d):
        return DiagramType(NOT_POPULATED)
    tag, rank = _component_type(d)
    if not is_symplectic(d):
        return DiagramType(NOT_SYMPLECTIC)
    if tag in ("A", "B", "C"):
        return DiagramType(tag, rank)
    if tag != "D":
        raise AssertionError(f"symplectic diagram of exceptional type {tag}{rank}")
    dg = d.diagram
    if rank == 4:
        deg = degree_over_pi0(d.base, d.mu_bar)
        out = {1: DiagramType("DR", 4), 2: DiagramType("DH", 4)}.get(deg, DiagramType(NOT_SYMPLECTIC))
    else:
        sides = {_d_side(dg, a) for a in d.mu}
        out = DiagramType("D" + sides.pop(), rank) if len(sides) == 1 else DiagramType(NOT_SYMPLECTIC)
    if not out.is_outcome:
        want = 2 if out.tag == "DR" else 1
        got = degree_over_pi0(d.base, symplectic_set(d))
        if got != want:
            raise AssertionError(f"type {out} but the symplectic set has degree {got}")
    return out


def _require_isp(d: DeligneDynkinDiagram) -> DiagramType:
    t = type_of(d)
    if t.is_outcome:
        raise DiagramError(f"diagram is {t}")
    return t


def u_set(d: DeligneDynkinDiagram) -> frozenset[int]:
    """The determining subset ``U``: ``S`` or the closure of ``mu``.

    For type ``A_n`` the extremal nodes are used; they coincide with ``S``
    except when a node of ``mu`` sits at an end of its chain, where ``S``
    is larger.
    """
    t = _require_isp(d)
    dg = d.diagram
    if t.tag == "A":
        return frozenset(v for ci in range(len(dg.components)) for v in extremal_nodes(dg, ci))
    if t.tag in ("B", "DR"):
        return symplectic_set(d)
    return d.mu_bar


def preserves_mu(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, phi: Perm) -> bool:
    return frozenset(phi[v] for v in d1.mu) == d2.mu


def aut_id(d: DeligneDynkinDiagram, *, check: bool = True) -> list[Perm]:
    """Equivariant automorphisms over the identity of ``pi0`` fixing ``mu`` setwise."""
    if check:
        _require_isp(d)
    f = ComponentMap.identity(len(d.diagram.components))
    return [p for p in equivariant_isoms(d.base, d.base, f) if preserves_mu(d, d, p)]


def expected_aut_id_count(d: DeligneDynkinDiagram) -> int:
    """The count predicted by the case table (1 or 2)."""
    t = _require_isp(d)
    if t.tag == "DR":
        return 2
    if t.tag == "A" and t.rank >= 2:
        tau = opposition_involution(d.diagram)
        return 2 if frozenset(tau(v) for v in d.mu) == d.mu else 1
    return 1


@dataclass(frozen=True)
class LocalPiece:
    """An irreducible piece of a restricted diagram, with its node embedding."""

    diagram: DeligneDynkinDiagram
    nodes: tuple[int, ...]
    components: tuple[int, ...]


def sub_diagram(dg: DynkinDiagram, comps: Iterable[int]) -> tuple[DynkinDiagram, tuple[int, ...]]:
    """Induced diagram on some components; returns it with ``local -> global``."""
    nodes: list[int] = []
    parts = []
    for c in sorted(comps):
        comp = dg.components[c]
        parts.append(Component(comp.tag, comp.rank, tuple(range(len(nodes), len(nodes) + comp.rank)), comp.affine))
        nodes.extend(comp.nodes)
    cart = tuple(tuple(dg.cartan[i][j] for j in nodes) for i in nodes)
    return DynkinDiagram(cart, tuple(parts)), tuple(nodes)


def restrict_perm(p: Perm, nodes: tuple[int, ...]) -> Perm:
    pos = {v: i for i, v in enumerate(nodes)}
    return tuple(pos[p[v]] for v in nodes)


def local_components(d: DeligneDynkinDiagram, h: PermGroup) -> list[LocalPiece]:
    """Restrict to ``h`` and split into ``h``-orbits of components."""
    _check_valid(d)
    dg = d.diagram
    if h.degree != dg.size or not h.is_subgroup_of(d.base.group):
        raise DiagramError("not a subgroup of the acting group")
    comp_gens = [tuple(dg.component_of(g[c.nodes[0]]) for c in dg.components) for g in h.generators]
    orbits = PermGroup(len(dg.components), tuple(comp_gens)).orbits()
    out = []
    for orb in orbits:
        sub, nodes = sub_diagram(dg, orb)
        gens = tuple(restrict_perm(g, nodes) for g in h.generators)
        pos = {v: i for i, v in enumerate(nodes)}
        mu = frozenset(pos[v] for v in d.mu if v in pos)
        out.append(LocalPiece(DeligneDynkinDiagram(EquivariantDiagram(sub, gens), mu), nodes, tuple(sorted(orb))))
    return out


def trivial_group(d: DeligneDynkinDiagram) -> PermGroup:
    return PermGroup(d.diagram.size, ())


def ddiagram(diagram: DynkinDiagram, generators: Iterable[Perm] = (), mu: Iterable[int] = ()) -> DeligneDynkinDiagram:
    """Convenience constructor."""
    return DeligneDynkinDiagram(EquivariantDiagram(diagram, tuple(generators)), frozenset(mu))

