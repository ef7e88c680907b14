"""Bidegree bookkeeping for fractional Hodge structures and Deligne's
construction of a weight-one Hodge structure from a Deligne-Dynkin diagram.

Fields and etale algebras are modelled by their sets of complex embeddings
(finite sets with a group action); a Hodge structure is modelled by the
dimensions of its ``(p, q)`` pieces.  The CM field ``F`` is a double cover
of the component set: cover point ``2c + i`` is sheet ``i`` over component
``c`` and complex conjugation swaps the two sheets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .deldyn import DeligneDynkinDiagram, is_irreducible, is_populated, is_symplectic, symplectic_set, type_of
from .gaction import EquivariantDiagram
from .perm import Perm, PermGroup
from .rootsys import DiagramError, build_diagram, cartan_inverse, pairing, weyl_dimension

Bidegree = tuple[Fraction, Fraction]


class ConstructionError(AssertionError):
    """A bidegree identity of the construction failed (would be a model bug)."""


def _bd(p, q) -> Bidegree:
    return (Fraction(p), Fraction(q))


@dataclass(frozen=True)
class Bigraded:
    """Multiset of bidegrees: ``entries`` maps ``(p, q)`` to a dimension.

    Pieces living over a single complex embedding need not be symmetric
    under conjugation; :class:`FractionalPreHodge` adds that requirement.
    """

    entries: tuple[tuple[Bidegree, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[object, object, int]] | Mapping[Bidegree, int]):
        acc: Counter = Counter()
        pairs = items.items() if isinstance(items, Mapping) else (((p, q), d) for p, q, d in items)
        for (p, q), d in pairs:
            if d < 0:
                raise ValueError("negative dimension")
            if d:
                acc[_bd(p, q)] += d
        return cls(tuple(sorted(acc.items())))

    @property
    def dim(self) -> int:
        return sum(d for _, d in self.entries)

    @property
    def types(self) -> frozenset[Bidegree]:
        return frozenset(b for b, _ in self.entries)

    def as_dict(self) -> dict[Bidegree, int]:
        return dict(self.entries)

    @property
    def symmetric(self) -> bool:
        acc = dict(self.entries)
        return all(acc.get((q, p), 0) == d for (p, q), d in acc.items())


@dataclass(frozen=True)
class FractionalPreHodge(Bigraded):
    """A conjugation-symmetric :class:`Bigraded`."""

    def __post_init__(self) -> None:
        if not self.symmetric:
            raise ValueError("bidegrees are not conjugation symmetric")


def weight_profile(h: Bigraded) -> dict[Fraction, int]:
    out: Counter = Counter()
    for (p, q), d in h.entries:
        out[p + q] += d
    return dict(sorted(out.items()))


def is_pure(h: Bigraded, n=None) -> bool:
    """Single weight (equal to ``n`` when given); the empty structure is pure."""
    weights = set(weight_profile(h))
    if n is None:
        return len(weights) <= 1
    return weights <= {Fraction(n)}


def is_classical(h: Bigraded) -> bool:
    return all(p.denominator == 1 and q.denominator == 1 for (p, q), _ in h.entries)


def tensor(a: Bigraded, b: Bigraded) -> Bigraded:
    """Bidegrees add, dimensions multiply; symmetric inputs give a symmetric output."""
    out: Counter = Counter()
    for (p1, q1), d1 in a.entries:
        for (p2, q2), d2 in b.entries:
            out[(p1 + p2, q1 + q2)] += d1 * d2
    both = isinstance(a, FractionalPreHodge) and isinstance(b, FractionalPreHodge)
    return (FractionalPreHodge if both else Bigraded).of(out)


@dataclass(frozen=True)
class EtaleModule:
    """Points of ``Hom(A, Qbar)`` with a bidegree and a rank at each point."""

    points: tuple[object, ...]
    bidegree: Mapping[object, Bidegree]
    rank: Mapping[object, int]
    base: Mapping[object, int] = field(default_factory=dict)
    conjugation: Mapping[object, object] | None = None

    def __post_init__(self) -> None:
        for x in self.points:
            if self.rank.get(x, 0) < 1:
                raise ValueError(f"point {x!r} needs a positive rank")
        if self.conjugation is not None:
            for x in self.points:
                y = self.conjugation[x]
                p, q = self.bidegree[x]
                if self.bidegree[y] != (q, p):
                    raise ValueError(f"conjugation does not swap the bidegree at {x!r}")

    def profile(self) -> Bigraded:
        return Bigraded.of((p, q, self.rank[x]) for x in self.points for p, q in [self.bidegree[x]])


def cm_rank_one(m: EtaleModule) -> bool:
    return all(m.rank[x] == 1 for x in m.points)


def tensor_over_etale(w: EtaleModule, v: Mapping[object, Bigraded]) -> FractionalPreHodge:
    """Pointwise tensor product, then forget the points.

    Raises ``ValueError`` when the result is not conjugation symmetric.
    """
    if set(v) != set(w.points):
        raise DiagramError("module and family are indexed by different points")
    out: Counter = Counter()
    for x in w.points:
        p0, q0 = w.bidegree[x]
        for (p, q), d in v[x].entries:
            out[(p0 + p, q0 + q)] += d * w.rank[x]
    return FractionalPreHodge.of(out)


# -- the double cover and partial CM types ------------------------------------

@dataclass(frozen=True)
class DoubleCover:
    """Equivariant double cover of the component set with free conjugation."""

    components: int
    generators: tuple[Perm, ...]

    @staticmethod
    def conj(point: int) -> int:
        return point ^ 1

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(range(2 * self.components))


def split_cover(d: DeligneDynkinDiagram) -> DoubleCover:
    """``F = E x E``-style cover: every generator keeps the sheet."""
    k = len(d.diagram.components)
    return DoubleCover(k, tuple(tuple(2 * g[c] + i for c in range(k) for i in (0, 1)) for g in d.base.component_generators))


def check_cover(d: DeligneDynkinDiagram, cover: DoubleCover) -> None:
    _check_cover(d.base, cover)


def _check_cover(base: EquivariantDiagram, cover: DoubleCover) -> None:
    k = len(base.diagram.components)
    comp_gens = base.component_generators
    if cover.components != k or len(cover.generators) != len(comp_gens):
        raise DiagramError("cover does not match the diagram")
    for g, gc in zip(cover.generators, comp_gens):
        if sorted(g) != list(range(2 * k)):
            raise DiagramError("cover generator is not a permutation")
        for x in range(2 * k):
            if g[x] // 2 != gc[x // 2]:
                raise DiagramError("cover generator does not lie over the component action")
            if g[x ^ 1] != g[x] ^ 1:
                raise DiagramError("cover generator does not commute with conjugation")
    n = base.diagram.size
    joint = PermGroup(n + 2 * k, tuple(a + tuple(n + x for x in b) for a, b in zip(base.generators, cover.generators)))
    if joint.order != base.group.order:
        raise DiagramError("cover generators do not define an action of the same group")


def covers(d: DeligneDynkinDiagram) -> list[DoubleCover]:
    """Every equivariant double cover, one per isomorphism class over the base."""
    return list(_covers(d.base))


@lru_cache(maxsize=4096)
def _covers(base: EquivariantDiagram) -> tuple[DoubleCover, ...]:
    k = len(base.diagram.components)
    comp_gens = base.component_generators
    found: list[DoubleCover] = []
    seen: set[tuple[Perm, ...]] = set()
    for flips in product(range(1 << k), repeat=len(comp_gens)):
        gens = tuple(
            tuple(2 * gc[c] + (i ^ ((fl >> c) & 1)) for c in range(k) for i in (0, 1)) for gc, fl in zip(comp_gens, flips)
        )
        if gens in seen:
            continue
        cover = DoubleCover(k, gens)
        try:
            _check_cover(base, cover)
        except DiagramError:
            continue
        found.append(cover)
        for swap in range(1 << k):
            relabel = [x ^ ((swap >> (x // 2)) & 1) for x in range(2 * k)]
            seen.add(tuple(tuple(relabel[g[relabel[x]]] for x in range(2 * k)) for g in gens))
    return tuple(found)


def mu_components(d: DeligneDynkinDiagram) -> frozenset[int]:
    return frozenset(d.diagram.component_of(v) for v in d.mu)


def check_cm_type(d: DeligneDynkinDiagram, cover: DoubleCover, phi: Iterable[int]) -> frozenset[int]:
    phi = frozenset(phi)
    if any(not 0 <= x < 2 * cover.components for x in phi):
        raise DiagramError("CM type uses a point outside the cover")
    if any(cover.conj(x) in phi for x in phi):
        raise DiagramError("CM type contains a conjugate pair")
    over = [x // 2 for x in phi]
    want = set(range(cover.components)) - mu_components(d)
    if len(set(over)) != len(over) or set(over) != want:
        raise DiagramError("CM type must map bijectively onto the components missed by mu")
    return phi


def cm_types(d: DeligneDynkinDiagram, cover: DoubleCover) -> Iterator[frozenset[int]]:
    free = sorted(set(range(cover.components)) - mu_components(d))
    for sheets in product((0, 1), repeat=len(free)):
        yield frozenset(2 * c + i for c, i in zip(free, sheets))


# -- V(s) ----------------------------------------------------------------------

def minuscule_weights(a: Sequence[Sequence[int]], s: int) -> list[tuple[int, ...]]:
    """Weyl orbit of the fundamental weight ``s`` in fundamental-weight coordinates."""
    n = len(a)
    start = tuple(1 if i == s else 0 for i in range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            for j in range(n):
                if lam[j]:
                    mu = tuple(lam[i] - lam[j] * a[i][j] for i in range(n))
                    if mu not in seen:
                        seen.add(mu)
                        nxt.append(mu)
        frontier = nxt
    return sorted(seen)


def v_profile(d: DeligneDynkinDiagram, s: int) -> tuple[Fraction | None, Bigraded]:
    """``(r, type of V(s))``; ``r`` is None on a component that misses ``mu``."""
    dg = d.diagram
    c = dg.component_of(s)
    comp = dg.components[c]
    alpha = next((a for a in d.mu if dg.component_of(a) == c), None)
    first = comp.nodes[0]
    return _local_v(comp.tag, comp.rank, s - first, None if alpha is None else alpha - first)


@lru_cache(maxsize=None)
def _local_v(tag: str, rank: int, s: int, alpha: int | None) -> tuple[Fraction | None, Bigraded]:
    dg = build_diagram([(tag, rank)])
    highest = [1 if i == s else 0 for i in range(rank)]
    dim = weyl_dimension(tag, rank, highest)
    weights = minuscule_weights(dg.cartan, s)
    if len(weights) != dim:
        raise ConstructionError(f"node {s}: orbit size {len(weights)} but Weyl dimension {dim}")
    if alpha is None:
        return None, Bigraded.of([(0, 0, dim)])
    r = pairing(dg, alpha, s)
    inv = cartan_inverse(dg)[0]
    grades = Counter(sum(lam[j] * inv[alpha][j] for j in range(rank)) for lam in weights)
    if not set(grades) <= {r, r - 1}:
        raise ConstructionError(f"node {s}: grades {sorted(grades)} are not r and r-1")
    return r, Bigraded.of([(r, -r, grades[r]), (r - 1, 1 - r, grades[r - 1])])


# -- the pipeline -------------------------------------------------------------

@dataclass(frozen=True)
class DeligneReport:
    S: tuple[int, ...]
    r: dict[int, Fraction | None]
    v: dict[int, Bigraded]
    F: EtaleModule
    F_S: EtaleModule
    W_F: EtaleModule
    V_prime: FractionalPreHodge
    n: int

    @property
    def dim(self) -> int:
        return self.V_prime.dim

    @property
    def abelian_dim(self) -> int:
        return self.dim // 2

    def summary(self) -> dict:
        def fmt(h: Bigraded) -> list[list[str]]:
            return [[str(p), str(q), str(dm)] for (p, q), dm in h.entries]

        return {
            "S": list(self.S),
            "r": {str(s): (None if r is None else str(r)) for s, r in self.r.items()},
            "V(s)": {str(s): fmt(h) for s, h in self.v.items()},
            "F": {str(x): [str(p), str(q)] for x in self.F.points for p, q in [self.F.bidegree[x]]},
            "F_S": {str(x): [str(p), str(q)] for x in self.F_S.points for p, q in [self.F_S.bidegree[x]]},
            "W_F": fmt(self.W_F.profile()),
            "V'": fmt(self.V_prime),
            "n": self.n,
            "dim V'": self.dim,
            "abelian variety dimension": self.abelian_dim,
        }


def deligne_construct(
    d: DeligneDynkinDiagram, cover: DoubleCover | None = None, phi: Iterable[int] | None = None, n: int = 1
) -> DeligneReport:
    """Run the construction and check its bidegree claims."""
    if not (is_irreducible(d) and is_populated(d) and is_symplectic(d)) or type_of(d).is_outcome:
        raise DiagramError("the construction needs an irreducible symplectic populated diagram")
    if n < 1:
        raise DiagramError("multiplicity must be positive")
    cover = cover or split_cover(d)
    check_cover(d, cover)
    if phi is None:
        phi = next(cm_types(d, cover))
    phi = check_cm_type(d, cover, phi)
    dg = d.diagram
    S = tuple(sorted(symplectic_set(d)))
    r: dict[int, Fraction | None] = {}
    v: dict[int, Bigraded] = {}
    for s in S:
        r[s], v[s] = v_profile(d, s)

    f_bd = {}
    for x in cover.points:
        f_bd[x] = _bd(1, 0) if x in phi else _bd(0, 1) if cover.conj(x) in phi else _bd(0, 0)
    F = EtaleModule(cover.points, f_bd, {x: 1 for x in cover.points}, {x: x // 2 for x in cover.points}, {x: cover.conj(x) for x in cover.points})
    fs_bd = {s: _bd(0, 0) if r[s] is None else _bd(1 - r[s], r[s]) for s in S}
    F_S = EtaleModule(S, fs_bd, {s: 1 for s in S}, {s: dg.component_of(s) for s in S})

    wpts = tuple((y, s) for y in cover.points for s in S if y // 2 == dg.component_of(s))
    w_bd = {(y, s): (f_bd[y][0] + fs_bd[s][0], f_bd[y][1] + fs_bd[s][1]) for y, s in wpts}
    W_F = EtaleModule(wpts, w_bd, {x: 1 for x in wpts}, {x: x[0] // 2 for x in wpts})

    vn = {(y, s): Bigraded.of({b: dm * n for b, dm in v[s].entries}) for y, s in wpts}
    V_prime = tensor_over_etale(W_F, vn)

    report = DeligneReport(S, r, v, F, F_S, W_F, V_prime, n)
    _check_report(report)
    return report


def _check_report(rep: DeligneReport) -> None:
    if not rep.W_F.profile().symmetric or not rep.F_S.profile().symmetric:
        raise ConstructionError("F_S or W_F is not conjugation symmetric")
    if not is_pure(rep.W_F.profile(), 1):
        raise ConstructionError(f"W_F is not pure of weight 1: {weight_profile(rep.W_F.profile())}")
    if not rep.V_prime.types <= {_bd(1, 0), _bd(0, 1)}:
        raise ConstructionError(f"V' has types {sorted(rep.V_prime.types)}")
    if rep.V_prime.dim % 2:
        raise ConstructionError("V' has odd dimension")
    for m in (rep.F, rep.F_S, rep.W_F):
        if not cm_rank_one(m):
            raise ConstructionError("a module is not of rank one")
    per_point = sum(h.dim for h in rep.v.values())
    if rep.V_prime.dim != 2 * rep.n * per_point:
        raise ConstructionError("dim V' differs from 2 n sum dim V(s)")


def all_choices(d: DeligneDynkinDiagram) -> Iterator[tuple[DoubleCover, frozenset[int]]]:
    """Every valid ``(F, Phi)`` up to isomorphism of ``F``."""
    for cover in covers(d):
        for phi in cm_types(d, cover):
            yield cover, phi
