from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ddkit.rootsys import (
    DiagramError,
    affine_cartan_matrix,
    affine_from_highest_root,
    all_permutations_preserving,
    build_diagram,
    cartan_matrix,
    diagram_automorphisms,
    extremal_nodes,
    highest_root,
    invert,
    lie_dim_bruteforce,
    opposition_involution,
    oppinv_bruteforce_oracle,
    pairing,
    positive_roots,
    special_nodes,
    symplectic_nodes,
    weyl_dimension,
    weyl_group,
)

CONNECTED = [("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 9)] + [("C", n) for n in range(2, 9)]
CONNECTED += [("D", n) for n in range(3, 9)] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
SMALL = [t for t in CONNECTED if t[1] <= 4]

# |Phi^+| by type
POSITIVE = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n, "D": lambda n: n * (n - 1)}
EXCEPTIONAL_POSITIVE = {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}
WEYL_ORDER = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("B", 2): 8, ("B", 3): 48, ("B", 4): 384,
              ("C", 2): 8, ("C", 3): 48, ("C", 4): 384, ("D", 3): 24, ("D", 4): 192, ("F", 4): 1152, ("G", 2): 12}


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_positive_root_count(tag, rank):
    want = EXCEPTIONAL_POSITIVE.get((tag, rank)) or POSITIVE[tag](rank)
    assert len(positive_roots(cartan_matrix(tag, rank))) == want


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_inverse_is_exact(tag, rank):
    a = cartan_matrix(tag, rank)
    inv = invert(a)
    n = len(a)
    for i in range(n):
        for j in range(n):
            assert sum(a[i][k] * inv[k][j] for k in range(n)) == (1 if i == j else 0)
    assert all(x > 0 for row in inv for x in row)


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_affine_matrix_from_highest_root(tag, rank):
    assert affine_from_highest_root(tag, rank) == affine_cartan_matrix(tag, rank)


def test_highest_roots():
    assert highest_root(cartan_matrix("E", 8)) == (2, 3, 4, 6, 5, 4, 3, 2)
    assert highest_root(cartan_matrix("B", 4)) == (1, 2, 2, 2)
    assert highest_root(cartan_matrix("C", 4)) == (2, 2, 2, 1)
    assert highest_root(cartan_matrix("G", 2)) == (3, 2)


@pytest.mark.parametrize("tag, rank", [t for t in SMALL if t != ("F", 4)], ids=lambda x: str(x))
def test_weyl_group_order(tag, rank):
    assert len(weyl_group(cartan_matrix(tag, rank))) == WEYL_ORDER[(tag, rank)]


@pytest.mark.parametrize("tag, rank", [t for t in CONNECTED if t[1] <= 6], ids=lambda x: str(x))
def test_automorphisms_match_naive_search(tag, rank):
    d = build_diagram([(tag, rank)])
    assert sorted(diagram_automorphisms(d).elements) == sorted(all_permutations_preserving(d))


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_special_node_classification(tag, rank):
    d = build_diagram([(tag, rank)])
    got = {d.local_index(v) for v in special_nodes(d, 0)}
    want = {
        "A": set(range(1, rank + 1)),
        "B": {1},
        "C": {rank},
        "D": {1, 2, 3} if rank == 3 else {1, rank - 1, rank},
        "E": {1, 6} if rank == 6 else {7} if rank == 7 else set(),
        "F": set(),
        "G": set(),
    }[tag]
    assert got == want
    if tag == "D" and rank >= 4:
        assert special_nodes(d, 0) == extremal_nodes(d, 0)


def _multi_specs(total: int):
    parts = [t for t in SMALL if t[1] <= total]
    out = []

    def rec(start, left, acc):
        if acc:
            out.append(list(acc))
        for i in range(start, len(parts)):
            if parts[i][1] <= left:
                rec(i, left - parts[i][1], acc + [parts[i]])

    rec(0, total, [])
    return out


@pytest.mark.parametrize("spec", _multi_specs(4), ids=lambda s: "+".join(f"{t}{r}" for t, r in s))
def test_opposition_matches_weyl_oracle(spec):
    d = build_diagram(spec)
    assert opposition_involution(d) == oppinv_bruteforce_oracle(d)


def test_oracle_refuses_large_rank():
    with pytest.raises(DiagramError):
        oppinv_bruteforce_oracle(build_diagram([("A", 5)]))


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_opposition_nontrivial_exactly(tag, rank):
    d = build_diagram([(tag, rank)])
    nontrivial = (tag == "A" and rank >= 2) or (tag == "D" and rank % 2 == 1) or (tag, rank) == ("E", 6)
    assert (not opposition_involution(d).is_identity()) == nontrivial


def test_pairing_is_inverse_cartan_entry():
    d = build_diagram([("B", 3)])
    assert [pairing(d, 0, w) for w in range(3)] == [1, 1, Fraction(1, 2)]
    d = build_diagram([("A", 1), ("C", 3)])
    assert pairing(d, 3, 1) == Fraction(1, 2)
    with pytest.raises(DiagramError):
        pairing(d, 0, 1)


def test_symplectic_nodes_b_and_c():
    b4 = build_diagram([("B", 4)])
    assert {b4.local_index(v) for v in symplectic_nodes(b4, 0)} == {4}
    c4 = build_diagram([("C", 4)])
    assert {c4.local_index(v) for v in symplectic_nodes(c4, 3)} == {1}


@pytest.mark.parametrize("tag, rank", CONNECTED, ids=lambda x: str(x))
def test_adjoint_weyl_dimension(tag, rank):
    a = cartan_matrix(tag, rank)
    # highest root in fundamental weight coordinates is a * theta
    theta = highest_root(a)
    lam = [sum(a[i][j] * theta[j] for j in range(rank)) for i in range(rank)]
    assert weyl_dimension(tag, rank, lam) == lie_dim_bruteforce(tag, rank)


@given(st.integers(1, 8), st.integers(0, 7))
def test_weyl_dimension_fundamental_a(n, k):
    from math import comb
    k = k % n
    lam = [1 if i == k else 0 for i in range(n)]
    assert weyl_dimension("A", n, lam) == comb(n + 1, k + 1)


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("F", 3), ("X", 2)])
def test_invalid_types(bad):
    with pytest.raises(DiagramError):
        build_diagram([bad])
