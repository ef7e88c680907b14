"""Finite permutation-group actions on Dynkin diagrams.

The acting group is always concrete: an :class:`EquivariantDiagram` carries
one node permutation per generator label.  Two equivariant diagrams are
"over the same group" when they have the same number of generator labels;
equivariance of a map is checked generator by generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .perm import Perm, PermGroup, inverse
from .rootsys import DiagramError, DynkinDiagram, cartan_isomorphisms


@dataclass(frozen=True)
class EquivariantDiagram:
    diagram: DynkinDiagram
    generators: tuple[Perm, ...]

    def __post_init__(self) -> None:
        a = self.diagram.cartan
        n = self.diagram.size
        for g in self.generators:
            if len(g) != n or sorted(g) != list(range(n)):
                raise DiagramError(f"generator {g} is not a permutation of the nodes")
            if any(a[g[i]][g[j]] != a[i][j] for i in range(n) for j in range(n)):
                raise DiagramError(f"generator {g} does not preserve the Cartan matrix")

    @classmethod
    def trivial(cls, diagram: DynkinDiagram) -> EquivariantDiagram:
        return cls(diagram, ())

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup(self.diagram.size, self.generators)

    @cached_property
    def component_generators(self) -> tuple[Perm, ...]:
        """Induced permutations of the connected components."""
        d = self.diagram
        out = []
        for g in self.generators:
            out.append(tuple(d.component_of(g[c.nodes[0]]) for c in d.components))
        return tuple(out)

    @cached_property
    def component_group(self) -> PermGroup:
        return PermGroup(len(self.diagram.components), self.component_generators)


def orbits(e: EquivariantDiagram, subset: Iterable[int]) -> list[frozenset[int]]:
    """Orbit partition of ``subset`` (each orbit intersected with ``subset``).

    ``subset`` need not be stable; orbits are taken in the whole diagram and
    cut down to the subset.
    """
    sub = frozenset(subset)
    _check_nodes(e, sub)
    out = []
    done: set[int] = set()
    for v in sorted(sub):
        if v in done:
            continue
        o = e.group.orbit(v) & sub
        out.append(o)
        done |= o
    return out


def closure(e: EquivariantDiagram, subset: Iterable[int]) -> frozenset[int]:
    """Smallest group-stable superset."""
    sub = frozenset(subset)
    _check_nodes(e, sub)
    out: set[int] = set()
    for v in sub:
        if v not in out:
            out |= e.group.orbit(v)
    return frozenset(out)


def _check_nodes(e: EquivariantDiagram, sub: frozenset[int]) -> None:
    bad = [v for v in sub if not 0 <= v < e.diagram.size]
    if bad:
        raise DiagramError(f"nodes {sorted(bad)} are not in the diagram")


def is_stable(e: EquivariantDiagram, subset: Iterable[int]) -> bool:
    sub = frozenset(subset)
    return all(g[v] in sub for g in e.generators for v in sub)


@dataclass(frozen=True)
class Pi0:
    """The G-set of connected components."""

    generators: tuple[Perm, ...]
    orbits: tuple[frozenset[int], ...]

    @property
    def transitive(self) -> bool:
        return len(self.orbits) <= 1


def pi0(e: EquivariantDiagram) -> Pi0:
    return Pi0(e.component_generators, tuple(e.component_group.orbits()))


def degree_over_pi0(e: EquivariantDiagram, subset: Iterable[int]) -> int | dict[frozenset[int], int]:
    """Nodes of ``subset`` per component, one value per component-orbit.

    Returns a plain int when the value is the same on every component-orbit.
    """
    sub = frozenset(subset)
    if not is_stable(e, sub):
        raise DiagramError("subset is not group-stable")
    d = e.diagram
    per_orbit: dict[frozenset[int], int] = {}
    for orb in pi0(e).orbits:
        counts = {sum(1 for v in d.components[c].nodes if v in sub) for c in orb}
        if len(counts) != 1:
            raise AssertionError("stable subset has non-constant degree on an orbit")
        per_orbit[orb] = counts.pop()
    values = set(per_orbit.values())
    if len(values) == 1:
        return values.pop()
    return per_orbit


def restrict(e: EquivariantDiagram, h: PermGroup) -> EquivariantDiagram:
    """Restrict the action to the subgroup ``h`` of ``e.group``."""
    if h.degree != e.diagram.size or not h.is_subgroup_of(e.group):
        raise DiagramError("not a subgroup of the acting group")
    return EquivariantDiagram(e.diagram, h.generators)


@dataclass(frozen=True)
class ComponentMap:
    """A bijection ``pi0(Delta_1) -> pi0(Delta_2)``, ``mapping[c1] = c2``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise DiagramError("component map is not a bijection")

    @classmethod
    def identity(cls, n: int) -> ComponentMap:
        return cls(tuple(range(n)))

    def __call__(self, c: int) -> int:
        return self.mapping[c]

    def is_equivariant(self, e1: EquivariantDiagram, e2: EquivariantDiagram) -> bool:
        return all(
            self.mapping[g1[c]] == g2[self.mapping[c]]
            for g1, g2 in zip(e1.component_generators, e2.component_generators)
            for c in range(len(self.mapping))
        )


def component_isomorphisms(d1: DynkinDiagram, c1: int, d2: DynkinDiagram, c2: int) -> list[dict[int, int]]:
    """All Cartan-preserving bijections between two components, as node dicts."""
    n1 = d1.components[c1].nodes
    n2 = d2.components[c2].nodes
    a = tuple(tuple(d1.cartan[i][j] for j in n1) for i in n1)
    b = tuple(tuple(d2.cartan[i][j] for j in n2) for i in n2)
    return [{n1[i]: n2[p[i]] for i in range(len(n1))} for p in cartan_isomorphisms(a, b)]


def _check_same_group(e1: EquivariantDiagram, e2: EquivariantDiagram, f: ComponentMap) -> None:
    if len(e1.generators) != len(e2.generators):
        raise DiagramError("the two diagrams are not acted on by the same group")
    if len(f.mapping) != len(e1.diagram.components) or len(f.mapping) != len(e2.diagram.components):
        raise DiagramError("component map has the wrong size")


def equivariant_isoms(
    e1: EquivariantDiagram, e2: EquivariantDiagram, f: ComponentMap
) -> Iterator[Perm]:
    """Lazily yield every equivariant Cartan-preserving bijection over ``f``.

    Backtracks over components in ascending order.  Each choice of a
    component isomorphism is propagated along the generators and their
    inverses (``phi_{g c} = g_2 phi_c g_1^{-1}``), so a transitive action
    fixes a whole orbit from one choice.  Yields tuples ``phi`` with
    ``phi[v1] = v2``.
    """
    _check_same_group(e1, e2, f)
    d1, d2 = e1.diagram, e2.diagram
    if d1.size != d2.size or not f.is_equivariant(e1, e2):
        return
    ncomp = len(d1.components)
    choices = [component_isomorphisms(d1, c, d2, f(c)) for c in range(ncomp)]
    if any(not ch for ch in choices):
        return
    pairs = [(g1, g2, inverse(g1), inverse(g2)) for g1, g2 in zip(e1.generators, e2.generators)]
    phi: list[int] = [-1] * d1.size
    assigned = [False] * ncomp

    def propagate(start: int, newly: list[int]) -> bool:
        """Fill the orbit of ``start``, recording set components in ``newly``."""
        stack = [start]
        while stack:
            c = stack.pop()
            nodes = d1.components[c].nodes
            for g1, g2, g1i, g2i in pairs:
                for h1, h2 in ((g1, g2), (g1i, g2i)):
                    gc = d1.component_of(h1[nodes[0]])
                    # phi(h1 v) = h2 phi(v)
                    if assigned[gc]:
                        if any(phi[h1[v]] != h2[phi[v]] for v in nodes):
                            return False
                        continue
                    for v in nodes:
                        phi[h1[v]] = h2[phi[v]]
                    assigned[gc] = True
                    newly.append(gc)
                    stack.append(gc)
        return True

    def undo(comps: list[int]) -> None:
        for c in comps:
            assigned[c] = False
            for v in d1.components[c].nodes:
                phi[v] = -1

    def search(c: int) -> Iterator[Perm]:
        while c < ncomp and assigned[c]:
            c += 1
        if c == ncomp:
            out = tuple(phi)
            if is_equivariant_iso(e1, e2, f, out):
                yield out
            return
        for choice in choices[c]:
            for v, w in choice.items():
                phi[v] = w
            assigned[c] = True
            newly = [c]
            if propagate(c, newly):
                yield from search(c + 1)
            undo(newly)

    yield from search(0)


def is_equivariant_iso(e1: EquivariantDiagram, e2: EquivariantDiagram, f: ComponentMap, phi: Sequence[int]) -> bool:
    d1, d2 = e1.diagram, e2.diagram
    n = d1.size
    if sorted(phi) != list(range(d2.size)) or n != d2.size:
        return False
    a, b = d1.cartan, d2.cartan
    if any(b[phi[i]][phi[j]] != a[i][j] for i in range(n) for j in range(n)):
        return False
    if any(d2.component_of(phi[c.nodes[0]]) != f(ci) for ci, c in enumerate(d1.components)):
        return False
    return all(phi[g1[v]] == g2[phi[v]] for g1, g2 in zip(e1.generators, e2.generators) for v in range(n))

