"""Permutations as tuples, cycle notation, and small permutation groups.

A permutation of ``range(n)`` is stored as a tuple ``p`` with ``p[i]`` the
image of ``i``.  Products are composed right-to-left: ``compose(p, q)`` is
the map ``i -> p[q[i]]``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p o q``."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_perm(p: Sequence[int], n: int | None = None) -> bool:
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def perm_power(p: Perm, k: int) -> Perm:
    out = identity(len(p))
    for _ in range(k):
        out = compose(p, out)
    return out


def perm_order(p: Perm) -> int:
    q, k = p, 1
    ident = identity(len(p))
    while q != ident:
        q = compose(p, q)
        k += 1
    return k


def to_cycles(p: Perm) -> str:
    """Cycle notation, ``"()"`` for the identity; fixed points omitted."""
    seen: set[int] = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def from_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation over ``range(n)``; raises ``ValueError``."""
    stripped = text.replace(" ", "").replace(",", "")
    if _CYCLE_RE.sub("", text).strip(" ,"):
        raise ValueError(f"malformed cycle notation: {text!r}")
    if not stripped:
        raise ValueError("empty permutation string")
    img = list(range(n))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        items = [int(t) for t in body.replace(",", " ").split()]
        for x in items:
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range 0..{n - 1}")
            if x in seen:
                raise ValueError(f"point {x} appears twice in {text!r}")
            seen.add(x)
        for a, b in zip(items, items[1:] + items[:1]):
            img[a] = b
    return tuple(img)


def closure(generators: Iterable[Perm], n: int) -> list[Perm]:
    """All elements of the group generated by ``generators`` (BFS), sorted."""
    gens = [g for g in generators]
    start = identity(n)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on ``range(degree)`` given by generators."""

    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if not is_perm(g, self.degree):
                raise ValueError(f"not a permutation of {self.degree} points: {g}")

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls(degree, ())

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(closure(self.generators, self.degree))

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def orbit(self, point: int) -> frozenset[int]:
        seen = {point}
        stack = [point]
        while stack:
            x = stack.pop()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def orbits(self, points: Iterable[int] | None = None) -> list[frozenset[int]]:
        pts = sorted(range(self.degree) if points is None else points)
        out: list[frozenset[int]] = []
        done: set[int] = set()
        for p in pts:
            if p not in done:
                o = self.orbit(p)
                out.append(o)
                done |= o
        return out

    def cyclic_subgroups(self) -> list[tuple[Perm, frozenset[Perm]]]:
        """Distinct cyclic subgroups with a canonical generator each.

        The generator is the smallest element (tuple order) generating the
        subgroup; subgroups are sorted by (order, sorted elements).
        """
        found: dict[frozenset[Perm], Perm] = {}
        for g in self.elements:
            sub = frozenset(closure([g], self.degree))
            if sub not in found:
                found[sub] = g
        return sorted(((g, s) for s, g in found.items()), key=lambda t: (len(t[1]), sorted(t[1])))
