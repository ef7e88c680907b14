from __future__ import annotations

from hypothesis import given, strategies as st

from ddkit.perm import (
    PermGroup,
    closure,
    compose,
    from_cycles,
    identity,
    inverse,
    perm_order,
    perm_power,
    to_cycles,
)

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(n)).map(tuple))


@given(perms)
def test_cycles_roundtrip(p):
    assert from_cycles(to_cycles(p), len(p)) == p


@given(perms)
def test_inverse_and_order(p):
    e = identity(len(p))
    assert compose(p, inverse(p)) == e
    assert perm_power(p, perm_order(p)) == e
    assert all(perm_power(p, k) != e for k in range(1, perm_order(p)))


def test_compose_is_right_to_left():
    p = from_cycles("(0 1)", 3)
    q = from_cycles("(1 2)", 3)
    # (p o q)(1) = p(q(1)) = p(2) = 2
    assert compose(p, q)[1] == 2


def test_closure_symmetric_group():
    gens = [from_cycles("(0 1)", 4), from_cycles("(0 1 2 3)", 4)]
    assert len(closure(gens, 4)) == 24


def test_cyclic_subgroups_cover_group():
    g = PermGroup(4, (from_cycles("(0 1)", 4), from_cycles("(0 1 2 3)", 4)))
    cyc = g.cyclic_subgroups()
    # S4: 1 trivial, 9 of order 2, 4 of order 3, 3 of order 4
    assert sorted(len(s) for _, s in cyc) == [1] + [2] * 9 + [3] * 4 + [4] * 3
    assert set().union(*(s for _, s in cyc)) == set(g.elements)


def test_orbits():
    g = PermGroup(5, (from_cycles("(0 1)(3 4)", 5),))
    assert g.orbits() == [frozenset({0, 1}), frozenset({2}), frozenset({3, 4})]
