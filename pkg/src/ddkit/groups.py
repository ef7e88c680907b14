"""Small finite groups with integer-labelled elements.

A :class:`FiniteGroup` numbers its elements ``0..n-1`` (``0`` is the
identity) and stores a full multiplication table, which keeps subgroup
and homomorphism searches cheap.  Subgroups are bitmasks over element ids.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .perm import Perm, PermGroup, compose, from_cycles, identity

Mask = int


def bits(mask: Mask) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]
    perms: tuple[Perm, ...] = ()

    @classmethod
    def from_perms(cls, name: str, elements: Sequence[Perm]) -> FiniteGroup:
        """Table of the group whose elements are ``elements`` (closed under composition)."""
        els = sorted(set(elements))
        e = identity(len(els[0]))
        els.remove(e)
        els.insert(0, e)
        index = {p: i for i, p in enumerate(els)}
        table = tuple(tuple(index[compose(a, b)] for b in els) for a in els)
        return cls(name, table, tuple(els))

    @classmethod
    def from_generators(cls, name: str, degree: int, generators: Sequence[Perm]) -> FiniteGroup:
        return cls.from_perms(name, PermGroup(degree, tuple(generators)).elements)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        out = [0] * self.order
        for a in range(self.order):
            out[a] = self.table[a].index(0)
        return tuple(out)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @property
    def full(self) -> Mask:
        return (1 << self.order) - 1

    def closure(self, gens: Iterable[int], bound: int | None = None) -> Mask | None:
        """Subgroup generated by ``gens``; None once it exceeds ``bound`` elements."""
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        frontier = [0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                row = t[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if bound is not None and len(seen) > bound:
                return None
            frontier = nxt
        mask = 0
        for x in seen:
            mask |= 1 << x
        return mask

    def conjugate(self, g: int, mask: Mask) -> Mask:
        gi = self.inv(g)
        out = 0
        for x in bits(mask):
            out |= 1 << self.table[self.table[g][x]][gi]
        return out

    def is_normal(self, mask: Mask) -> bool:
        return all(self.conjugate(g, mask) == mask for g in range(self.order))

    @cached_property
    def cyclic_subgroups(self) -> tuple[tuple[int, Mask], ...]:
        """``(smallest generator, subgroup)`` for each distinct cyclic subgroup."""
        found: dict[Mask, int] = {}
        for g in range(self.order):
            m = self.closure([g])
            found.setdefault(m, g)
        return tuple(sorted(((g, m) for m, g in found.items()), key=lambda t: (bin(t[1]).count("1"), t[1])))

    def subgroups(self, max_order: int | None = None) -> list[Mask]:
        """Every subgroup (of order at most ``max_order``), by joining cyclic subgroups."""
        gens_of: dict[Mask, list[int]] = {1: []}
        frontier = [1]
        cyc = self.cyclic_subgroups
        while frontier:
            nxt = []
            for s in frontier:
                for g, z in cyc:
                    if z & ~s == 0:
                        continue
                    t = self.closure(gens_of[s] + [g], max_order)
                    if t is not None and t not in gens_of:
                        gens_of[t] = gens_of[s] + [g]
                        nxt.append(t)
            frontier = nxt
        return sorted(gens_of, key=lambda m: (bin(m).count("1"), m))

    def subgroups_up_to_conjugacy(self, max_order: int | None = None) -> list[Mask]:
        reps: list[Mask] = []
        seen: set[Mask] = set()
        for s in self.subgroups(max_order):
            if s in seen:
                continue
            reps.append(s)
            for g in range(self.order):
                seen.add(self.conjugate(g, s))
        return reps

    def normal_subgroups(self) -> list[Mask]:
        return [s for s in self.subgroups() if self.is_normal(s)]

    def generators_of(self, mask: Mask) -> list[int]:
        """A short generating list (greedy, smallest ids first)."""
        gens: list[int] = []
        cur = 1
        for x in bits(mask):
            if not (cur >> x) & 1:
                gens.append(x)
                cur = self.closure(gens)
            if cur == mask:
                break
        return gens

    def subgroup(self, name: str, mask: Mask) -> FiniteGroup:
        els = bits(mask)
        pos = {x: i for i, x in enumerate(els)}
        table = tuple(tuple(pos[self.table[a][b]] for b in els) for a in els)
        perms = tuple(self.perms[x] for x in els) if self.perms else ()
        return FiniteGroup(name, table, perms)

    @cached_property
    def invariant(self) -> tuple:
        """Isomorphism invariant: order, element-order profile, centre and derived sizes."""
        n = self.order
        t = self.table
        centre = sum(1 for a in range(n) if all(t[a][b] == t[b][a] for b in range(n)))
        comms = {t[t[a][b]][t[self.inv(a)][self.inv(b)]] for a in range(n) for b in range(n)}
        derived = bin(self.closure(comms)).count("1")
        squares = len({t[a][a] for a in range(n)})
        return (n, tuple(sorted(self.element_orders)), centre, derived, squares)


def homomorphisms(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """All homomorphisms as full image tuples, found from generator images."""
    gens = list(gens) if gens is not None else src.generators_of(src.full)
    so = src.element_orders
    do = dst.element_orders
    choices = [[y for y in range(dst.order) if so[g] % do[y] == 0] for g in gens]
    for imgs in product(*choices):
        hom = _extend(src, dst, gens, imgs)
        if hom is not None:
            yield hom


def _extend(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> tuple[int, ...] | None:
    img = [-1] * src.order
    img[0] = 0
    frontier = [0]
    st, dt = src.table, dst.table
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, imgs):
                y = st[x][g]
                z = dt[img[x]][h]
                if img[y] < 0:
                    img[y] = z
                    nxt.append(y)
                elif img[y] != z:
                    return None
        frontier = nxt
    if min(img) < 0:
        return None
    n = src.order
    for a in range(n):
        for b in range(n):
            if img[st[a][b]] != dt[img[a]][img[b]]:
                return None
    return tuple(img)


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return find_isomorphism(a, b) is not None


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> tuple[int, ...] | None:
    if a.invariant != b.invariant:
        return None
    gens = a.generators_of(a.full)
    for hom in homomorphisms(a, b, gens):
        if len(set(hom)) == a.order:
            return hom
    return None


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Element ``i * |b| + j`` is the pair ``(i, j)``."""
    nb = b.order
    table = tuple(
        tuple(a.table[i][k] * nb + b.table[j][l] for k in range(a.order) for l in range(nb))
        for i in range(a.order)
        for j in range(nb)
    )
    return FiniteGroup(name or f"{a.name}x{b.name}", table)


# -- named groups ------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    g = tuple((i + 1) % n for i in range(n)) if n > 1 else (0,)
    return FiniteGroup.from_generators(f"C{n}", n, [g])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular ``n``-gon (order ``2n``), for ``n >= 2``."""
    if n == 2:
        return FiniteGroup.from_generators("V4", 4, [from_cycles("(0 1)(2 3)", 4), from_cycles("(0 2)(1 3)", 4)])
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_generators(f"D{2 * n}", n, [r, s])


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.from_perms("S1", [(0,)])
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_generators(f"S{n}", n, gens)


def alternating(n: int) -> FiniteGroup:
    even = [p for p in permutations(range(n)) if _sign(p) == 1]
    return FiniteGroup.from_perms(f"A{n}", even)


def _sign(p: Perm) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _named_candidates() -> list[FiniteGroup]:
    out = [symmetric(3), symmetric(4), alternating(4)]
    out += [cyclic(n) for n in range(1, 25)]
    out += [dihedral(n) for n in range(2, 13)]
    out += [
        FiniteGroup.from_generators("C3^2:C2", 6, [from_cycles("(0 1 2)", 6), from_cycles("(3 4 5)", 6), from_cycles("(1 2)(4 5)", 6)]),
        FiniteGroup.from_generators("F20", 5, [from_cycles("(0 1 2 3 4)", 5), from_cycles("(1 2 4 3)", 5)]),
    ]
    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    s3, a4, d8 = symmetric(3), alternating(4), dihedral(4)
    v4 = dihedral(2)
    out += [
        direct_product(v4, c2, "C2^3"),
        direct_product(c4, c2, "C4xC2"),
        direct_product(d8, c2, "D8xC2"),
        direct_product(c3, c3, "C3^2"),
        direct_product(s3, c3, "S3xC3"),
        direct_product(a4, c2, "A4xC2"),
        direct_product(v4, c3, "C6xC2"),
        direct_product(s3, v4, "S3xV4"),
        direct_product(v4, v4, "C2^4"),
        direct_product(c4, c4, "C4^2"),
        direct_product(c3, c4, "C12b"),
    ]
    return out


@lru_cache(maxsize=None)
def _names_by_invariant() -> dict[tuple, list[FiniteGroup]]:
    out: dict[tuple, list[FiniteGroup]] = {}
    for g in _named_candidates():
        out.setdefault(g.invariant, []).append(g)
    return out


def group_name(g: FiniteGroup) -> str:
    """A familiar name when one of the built-in constructions matches."""
    for cand in _names_by_invariant().get(g.invariant, []):
        if is_isomorphic(g, cand):
            return cand.name
    return f"G{g.order}"


@lru_cache(maxsize=None)
def small_group_library(max_order: int = 24, degree: int = 6) -> tuple[FiniteGroup, ...]:
    """Subgroups of ``S_degree`` of order at most ``max_order``, one per isomorphism type.

    Sorted by (order, name); each carries its permutation realisation.
    """
    sym = symmetric(degree)
    reps: list[FiniteGroup] = []
    for mask in sym.subgroups_up_to_conjugacy(max_order):
        sub = sym.subgroup("", mask)
        if any(is_isomorphic(sub, r) for r in reps):
            continue
        reps.append(sub)
    named = [FiniteGroup(group_name(r), r.table, r.perms) for r in reps]
    seen: dict[str, int] = {}
    out = []
    for g in sorted(named, key=lambda g: (g.order, g.name)):
        k = seen.get(g.name, 0)
        seen[g.name] = k + 1
        out.append(g if k == 0 else FiniteGroup(f"{g.name}#{k}", g.table, g.perms))
    return tuple(out)


def as_perm_group(g: FiniteGroup) -> PermGroup:
    """Regular representation when no realisation is stored."""
    if g.perms:
        return PermGroup(len(g.perms[0]), tuple(g.perms[x] for x in g.generators_of(g.full)))
    return PermGroup(g.order, tuple(g.table[x] for x in g.generators_of(g.full)))


__all__ = [
    "FiniteGroup",
    "alternating",
    "as_perm_group",
    "bits",
    "cyclic",
    "dihedral",
    "direct_product",
    "find_isomorphism",
    "group_name",
    "homomorphisms",
    "is_isomorphic",
    "small_group_library",
    "symmetric",
]
