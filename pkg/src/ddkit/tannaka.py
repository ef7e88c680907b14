"""Adjoint/hyperadjoint iteration on reductive data and Goursat's lemma.

A representation is remembered only through the datum of the group it
generates (simple factors plus the rank of the central torus) and its
dimension.  That is all the iteration ``V -> Lie(G_V)`` needs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .groups import FiniteGroup, bits, cyclic, dihedral, direct_product, symmetric, alternating
from .rootsys import DiagramError, canonical_type, check_type

# -- reductive data ------------------------------------------------------------


def lie_dim(tag: str, rank: int) -> int:
    """Dimension of the simple Lie algebra of the given type."""
    check_type(tag, rank)
    n = rank
    if tag == "A":
        return n * (n + 2)
    if tag in ("B", "C"):
        return n * (2 * n + 1)
    if tag == "D":
        return n * (2 * n - 1)
    return {("E", 6): 78, ("E", 7): 133, ("E", 8): 248, ("F", 4): 52, ("G", 2): 14}[(tag, rank)]


@dataclass(frozen=True)
class ReductiveDatum:
    """Simple factors (a sorted multiset of types) and the central torus rank.

    ``adjoint`` is bookkeeping only and does not take part in comparisons.
    """

    components: tuple[tuple[str, int], ...] = ()
    center_rank: int = 0
    adjoint: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        comps = []
        for tag, rank in self.components:
            check_type(tag, rank)
            comps.append(canonical_type(tag, rank))
        object.__setattr__(self, "components", tuple(sorted(comps)))
        if self.center_rank < 0:
            raise DiagramError("center rank must be non-negative")

    @property
    def trivial(self) -> bool:
        return not self.components and self.center_rank == 0

    @property
    def lie_dim(self) -> int:
        return self.center_rank + sum(lie_dim(t, r) for t, r in self.components)

    def __str__(self) -> str:
        parts = [f"{t}{r}" for t, r in self.components]
        if self.center_rank:
            parts.append(f"T{self.center_rank}")
        return "x".join(parts) or "1"


TRIVIAL = ReductiveDatum()


@dataclass(frozen=True)
class TannakianObject:
    acting: ReductiveDatum
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise DiagramError("dimension must be non-negative")
        if self.dim == 0 and not self.acting.trivial:
            raise DiagramError("the zero object generates the trivial category")


ZERO = TannakianObject(TRIVIAL, 0)


def adjoint_object(v: TannakianObject) -> TannakianObject:
    """``Lie`` of the acting group, acted on by the adjoint group."""
    a = v.acting
    if a.trivial:
        return ZERO
    acting = ReductiveDatum(a.components, 0, adjoint=True) if a.components else TRIVIAL
    return TannakianObject(acting, a.lie_dim)


def adjoint_chain(v: TannakianObject, limit: int = 10) -> list[TannakianObject]:
    """``V^(0), V^(1), ...`` up to and including the first repeat."""
    chain = [v]
    while len(chain) <= limit:
        nxt = adjoint_object(chain[-1])
        chain.append(nxt)
        if nxt == chain[-2]:
            return chain
    raise AssertionError("adjoint chain did not stabilise")


def hyperadjoint(v: TannakianObject) -> tuple[TannakianObject, int]:
    """The stable object and the first index ``i`` with ``V^(i) = V^(i+1)``."""
    chain = adjoint_chain(v)
    index = len(chain) - 2
    if index > 2:
        raise AssertionError(f"stabilised only at index {index}")
    return chain[-1], index


def all_data(max_components: int = 4, max_rank: int = 8, max_center: int = 3) -> Iterator[ReductiveDatum]:
    """Every datum within the caps, each multiset once."""
    types = []
    for tag in ("A", "B", "C", "D", "E", "F", "G"):
        for rank in range(1, max_rank + 1):
            try:
                check_type(tag, rank)
            except DiagramError:
                continue
            if canonical_type(tag, rank) == (tag, rank):
                types.append((tag, rank))

    def multisets(start: int, left: int) -> Iterator[tuple[tuple[str, int], ...]]:
        yield ()
        if left == 0:
            return
        for i in range(start, len(types)):
            for rest in multisets(i, left - 1):
                yield (types[i],) + rest

    for comps in multisets(0, max_components):
        for c in range(max_center + 1):
            yield ReductiveDatum(comps, c)


def _multiset_le(a: Iterable, b: Iterable) -> bool:
    ca, cb = Counter(a), Counter(b)
    return all(cb[k] >= n for k, n in ca.items())


def ha_sum_summand_check(v1: TannakianObject, v2: TannakianObject, joint: ReductiveDatum) -> bool:
    """Datum-level check that ``(V1 + V2)^ha`` sits inside ``V1^ha + V2^ha``."""
    union = list(v1.acting.components) + list(v2.acting.components)
    if not _multiset_le(joint.components, union):
        raise DiagramError("joint simple factors do not embed into the two factors")
    ha, _ = hyperadjoint(ZERO if joint.trivial else TannakianObject(joint, v1.dim + v2.dim))
    h1, _ = hyperadjoint(v1)
    h2, _ = hyperadjoint(v2)
    return _multiset_le(ha.acting.components, list(h1.acting.components) + list(h2.acting.components)) and ha.dim <= h1.dim + h2.dim


# -- Goursat -------------------------------------------------------------------


@dataclass(frozen=True)
class SubdirectProduct:
    """A subgroup of ``g1 x g2`` given by its set of pairs ``(a, b)``."""

    g1: FiniteGroup
    g2: FiniteGroup
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if {a for a, _ in self.pairs} != set(range(self.g1.order)):
            raise DiagramError("first projection is not surjective")
        if {b for _, b in self.pairs} != set(range(self.g2.order)):
            raise DiagramError("second projection is not surjective")
        t1, t2 = self.g1.table, self.g2.table
        for (a, b), (c, d) in product(self.pairs, repeat=2):
            if (t1[a][c], t2[b][d]) not in self.pairs:
                raise DiagramError("pairs are not closed under multiplication")


@dataclass(frozen=True)
class GoursatData:
    n1: frozenset[int]
    n2: frozenset[int]
    iso: dict[frozenset[int], frozenset[int]]  # coset of N1 -> coset of N2


def _coset(g: FiniteGroup, a: int, n: frozenset[int]) -> frozenset[int]:
    return frozenset(g.table[a][x] for x in n)


def goursat(s: SubdirectProduct) -> GoursatData:
    """Kernels and the induced isomorphism ``G1/N1 -> G2/N2``, re-verified."""
    g1, g2 = s.g1, s.g2
    n1 = frozenset(a for a, b in s.pairs if b == 0)
    n2 = frozenset(b for a, b in s.pairs if a == 0)
    iso: dict[frozenset[int], frozenset[int]] = {}
    for a, b in sorted(s.pairs):
        c1, c2 = _coset(g1, a, n1), _coset(g2, b, n2)
        if iso.setdefault(c1, c2) != c2:
            raise AssertionError("quotient map is not well defined")
    out = GoursatData(n1, n2, iso)
    problems = verify_goursat(s, out)
    if problems:
        raise AssertionError(problems[0])
    return out


def verify_goursat(s: SubdirectProduct, gd: GoursatData) -> list[str]:
    g1, g2 = s.g1, s.g2
    problems = []
    for g, n, name in ((g1, gd.n1, "N1"), (g2, gd.n2, "N2")):
        if 0 not in n or any(g.table[a][b] not in n for a in n for b in n):
            problems.append(f"{name} is not a subgroup")
        elif any(_coset(g, x, n) != frozenset(g.table[y][x] for y in n) for x in range(g.order)):
            problems.append(f"{name} is not normal")
    q1 = {_coset(g1, a, gd.n1) for a in range(g1.order)}
    q2 = {_coset(g2, b, gd.n2) for b in range(g2.order)}
    if set(gd.iso) != q1 or set(gd.iso.values()) != q2 or len(q1) != len(q2):
        problems.append("quotient map is not a bijection")
        return problems
    rep1 = {c: min(c) for c in q1}
    rep2 = {c: min(c) for c in q2}
    for c, d in product(q1, repeat=2):
        prod1 = _coset(g1, g1.table[rep1[c]][rep1[d]], gd.n1)
        prod2 = _coset(g2, g2.table[rep2[gd.iso[c]]][rep2[gd.iso[d]]], gd.n2)
        if gd.iso[prod1] != prod2:
            problems.append("quotient map is not a homomorphism")
            break
    graph = frozenset((a, b) for a in range(g1.order) for b in gd.iso[_coset(g1, a, gd.n1)])
    if graph != s.pairs:
        problems.append("graph does not reproduce the subgroup")
    return problems


def subdirect_subgroups(g1: FiniteGroup, g2: FiniteGroup) -> list[frozenset[tuple[int, int]]]:
    """Every subgroup of ``g1 x g2`` with both projections onto.

    Such a subgroup ``S`` is ``S0 * (1 x N)`` where ``S0`` is generated by
    lifts ``(x_i, y_i)`` of a fixed generating list of ``g1`` and
    ``N = {b : (1, b) in S}`` is normal in ``g2``; both are enumerated.
    """
    prod = direct_product(g1, g2)
    n2 = g2.order
    xs = g1.generators_of(g1.full)
    normals = g2.normal_subgroups()
    found: set[int] = set()
    for ys in product(range(n2), repeat=len(xs)):
        s0 = prod.closure([x * n2 + y for x, y in zip(xs, ys)])
        for nm in normals:
            mask = 0
            for e in bits(s0):
                for n in bits(nm):
                    mask |= 1 << prod.table[e][n]
            found.add(mask)
    out = []
    for mask in sorted(found):
        pairs = frozenset(divmod(e, n2) for e in bits(mask))
        if len({b for _, b in pairs}) == n2 and len({a for a, _ in pairs}) == g1.order:
            out.append(pairs)
    return out


def subdirect_bruteforce(g1: FiniteGroup, g2: FiniteGroup) -> list[frozenset[tuple[int, int]]]:
    """Same list, from every subgroup of the product (slow; for cross-checks)."""
    prod = direct_product(g1, g2)
    n2 = g2.order
    out = []
    for mask in prod.subgroups():
        pairs = frozenset(divmod(e, n2) for e in bits(mask))
        if len({a for a, _ in pairs}) == g1.order and len({b for _, b in pairs}) == n2:
            out.append(pairs)
    return sorted(out, key=lambda p: sum(1 << (a * n2 + b) for a, b in p))


def goursat_groups(max_order: int = 12) -> list[FiniteGroup]:
    """Cyclic and dihedral groups, ``S3`` and ``A4`` up to the order cap."""
    out = [cyclic(n) for n in range(1, max_order + 1)]
    out += [dihedral(n) for n in range(2, max_order // 2 + 1) if n != 3]
    out += [g for g in (symmetric(3), alternating(4)) if g.order <= max_order]
    return sorted(out, key=lambda g: (g.order, g.name))


def goursat_sweep(max_order: int = 12) -> dict:
    """Apply :func:`goursat` to every subdirect subgroup of every pair."""
    groups = goursat_groups(max_order)
    rows = []
    total = 0
    failures = []
    for g1, g2 in product(groups, repeat=2):
        subs = subdirect_subgroups(g1, g2)
        for pairs in subs:
            try:
                goursat(SubdirectProduct(g1, g2, pairs))
            except (AssertionError, DiagramError) as e:
                failures.append({"g1": g1.name, "g2": g2.name, "size": len(pairs), "error": str(e)})
        total += len(subs)
        rows.append({"g1": g1.name, "g2": g2.name, "subdirect": len(subs)})
    return {"groups": [g.name for g in groups], "pairs": rows, "subdirect_total": total, "failures": failures}
