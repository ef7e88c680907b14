from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from ddkit.gaction import (
    ComponentMap,
    EquivariantDiagram,
    closure,
    degree_over_pi0,
    equivariant_isoms,
    is_equivariant_iso,
    is_stable,
    orbits,
    pi0,
    restrict,
)
from ddkit.instances import enumerate_diagrams, twist
from ddkit.perm import PermGroup, compose, from_cycles, inverse
from ddkit.rootsys import DiagramError, build_diagram, diagram_automorphisms

from conftest import SMALL

SINGLES = [s.diagram for s in enumerate_diagrams(SMALL) if s.diagram.diagram.size <= 6]


def _brute(e1: EquivariantDiagram, e2: EquivariantDiagram, f: ComponentMap) -> set:
    n = e1.diagram.size
    return {p for p in permutations(range(n)) if is_equivariant_iso(e1, e2, f, p)}


def test_rejects_non_automorphism():
    d = build_diagram([("B", 2)])
    with pytest.raises(DiagramError):
        EquivariantDiagram(d, ((1, 0),))


def test_orbits_and_closure():
    d = build_diagram([("A", 2)] * 3)
    g = from_cycles("(0 2 4)(1 3 5)", 6)
    e = EquivariantDiagram(d, (g,))
    assert orbits(e, [0, 1]) == [frozenset({0}), frozenset({1})]
    assert closure(e, [0]) == frozenset({0, 2, 4})
    assert is_stable(e, [1, 3, 5]) and not is_stable(e, [1])
    assert pi0(e).transitive
    assert degree_over_pi0(e, [0, 2, 4]) == 1
    assert degree_over_pi0(e, range(6)) == 2


def test_restrict_requires_subgroup():
    d = build_diagram([("A", 1)] * 2)
    e = EquivariantDiagram(d, ((1, 0),))
    with pytest.raises(DiagramError):
        restrict(e, PermGroup(3, ()))
    assert restrict(e, PermGroup(2, ())).generators == ()


@pytest.mark.parametrize("idx", range(0, len(SINGLES), max(1, len(SINGLES) // 40)))
def test_isoms_match_bruteforce(idx):
    d = SINGLES[idx]
    f = ComponentMap.identity(len(d.diagram.components))
    assert set(equivariant_isoms(d.base, d.base, f)) == _brute(d.base, d.base, f)


@given(st.sampled_from(SINGLES), st.data())
def test_isoms_form_a_torsor(d, data):
    """Isomorphisms to a relabelled copy are the relabelling composed with automorphisms."""
    dg = d.diagram
    ident = ComponentMap.identity(len(dg.components))
    auts = list(equivariant_isoms(d.base, d.base, ident))
    a = data.draw(st.sampled_from(diagram_automorphisms(dg).elements))
    f = ComponentMap(tuple(dg.component_of(a[c.nodes[0]]) for c in dg.components))
    other = twist(d, a)
    got = set(equivariant_isoms(d.base, other.base, f))
    assert got == {compose(a, b) for b in auts}
    assert got == _brute(d.base, other.base, f)


def test_component_map_equivariance():
    d = build_diagram([("A", 1)] * 3)
    g = from_cycles("(0 1 2)", 3)
    e = EquivariantDiagram(d, (g,))
    assert ComponentMap((1, 2, 0)).is_equivariant(e, e)
    assert not ComponentMap((1, 0, 2)).is_equivariant(e, e)
    assert not list(equivariant_isoms(e, e, ComponentMap((1, 0, 2))))
