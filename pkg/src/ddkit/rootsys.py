"""Exact root-system combinatorics for finite and untwisted affine diagrams.

Conventions
-----------
Nodes of a finite component of type ``X_n`` are numbered ``1..n`` following
Bourbaki (Plates I-IX):

* ``A_n``: chain ``1 - 2 - ... - n``.
* ``B_n``: chain, ``n`` is the short root (``a[n-1][n] = -1``, ``a[n][n-1] = -2``).
* ``C_n``: chain, ``n`` is the long root (``a[n-1][n] = -2``, ``a[n][n-1] = -1``).
* ``D_n``: chain ``1 - ... - (n-2)`` with ``n-1`` and ``n`` both attached to ``n-2``.
* ``E_n``: chain ``1 - 3 - 4 - ... - n`` with ``2`` attached to ``4``.
* ``F_4``: ``1 - 2 => 3 - 4`` with ``1, 2`` long.  ``G_2``: ``1`` short, ``2`` long.

The Cartan matrix is ``a[i][j] = <alpha_i^vee, alpha_j>``.  With this
convention the coefficient of ``alpha_i`` in the fundamental weight
``omega_j`` is ``inv(a)[i][j]``; :func:`pairing` returns exactly that number,
i.e. the fundamental coweight at ``alpha`` evaluated on the fundamental weight
at ``omega``.

In a diagram with several components, nodes carry global identifiers
``0..N-1``; component ``c`` occupies a contiguous block and its Bourbaki node
``i`` is global node ``offset + i - 1``.  Affine diagrams built by
:func:`affine_extension` number ``alpha_0`` as node ``0`` and ``alpha_i`` as
node ``i``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .perm import Perm, PermGroup, compose, identity

Matrix = tuple[tuple[int, ...], ...]

FINITE_TAGS = ("A", "B", "C", "D", "E", "F", "G")


class DiagramError(ValueError):
    """Invalid diagram input or violated precondition."""


def check_type(tag: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(tag)
    if ok is None:
        raise DiagramError(f"unknown type tag {tag!r}")
    if not ok:
        raise DiagramError(f"invalid rank {rank} for type {tag}")


def _edges(tag: str, n: int) -> list[tuple[int, int, int, int]]:
    """Bonds as (i, j, a_ij, a_ji), 1-based Bourbaki indices."""
    if tag in "ABCD":
        chain = n - 1 if tag == "D" else n
        e = [(i, i + 1, -1, -1) for i in range(1, chain)]
        if tag == "B":
            e[-1] = (n - 1, n, -1, -2)
        elif tag == "C":
            e[-1] = (n - 1, n, -2, -1)
        elif tag == "D":
            e.append((n - 2, n, -1, -1))
        return e
    if tag == "E":
        return [(1, 3, -1, -1), (2, 4, -1, -1)] + [(i, i + 1, -1, -1) for i in range(3, n)]
    if tag == "F":
        return [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
    if tag == "G":
        return [(1, 2, -3, -1)]
    raise DiagramError(f"unknown type tag {tag!r}")


def cartan_matrix(tag: str, rank: int) -> Matrix:
    """Bourbaki-numbered Cartan matrix of a finite type."""
    check_type(tag, rank)
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    for i, j, aij, aji in _edges(tag, rank):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji
    return tuple(map(tuple, a))


# alpha_0 bonds in the untwisted affine diagrams: (j, a_0j, a_j0).
def _affine_bonds(tag: str, n: int) -> list[tuple[int, int, int]]:
    if tag == "A":
        return [(1, -2, -2)] if n == 1 else [(1, -1, -1), (n, -1, -1)]
    if tag == "B":
        return [(2, -1, -2)] if n == 2 else [(2, -1, -1)]
    if tag == "C":
        return [(1, -1, -2)]
    if tag == "D":
        return [(2, -1, -1), (3, -1, -1)] if n == 3 else [(2, -1, -1)]
    if tag == "E":
        return [{6: (2, -1, -1), 7: (1, -1, -1), 8: (8, -1, -1)}[n]]
    if tag == "F":
        return [(1, -1, -1)]
    if tag == "G":
        return [(2, -1, -1)]
    raise DiagramError(f"unknown type tag {tag!r}")


def affine_cartan_matrix(tag: str, rank: int) -> Matrix:
    """Untwisted affine Cartan matrix, ``alpha_0`` at index 0."""
    fin = cartan_matrix(tag, rank)
    a = [[0] * (rank + 1) for _ in range(rank + 1)]
    a[0][0] = 2
    for i in range(rank):
        for j in range(rank):
            a[i + 1][j + 1] = fin[i][j]
    for j, a0j, aj0 in _affine_bonds(tag, rank):
        a[0][j] = a0j
        a[j][0] = aj0
    return tuple(map(tuple, a))


def check_cartan(a: Sequence[Sequence[int]]) -> None:
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise DiagramError("Cartan matrix is not square")
        if a[i][i] != 2:
            raise DiagramError(f"diagonal entry {i} is {a[i][i]}, expected 2")
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise DiagramError(f"positive off-diagonal entry at ({i}, {j})")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise DiagramError(f"asymmetric zero pattern at ({i}, {j})")


@dataclass(frozen=True)
class Component:
    tag: str
    rank: int
    nodes: tuple[int, ...]
    affine: bool = False

    @property
    def name(self) -> str:
        return f"{self.tag}{self.rank}" + ("+" if self.affine else "")


@dataclass(frozen=True)
class DynkinDiagram:
    """A (possibly disconnected) Dynkin diagram with typed components."""

    cartan: Matrix
    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        check_cartan(self.cartan)
        covered = sorted(v for c in self.components for v in c.nodes)
        if covered != list(range(len(self.cartan))):
            raise DiagramError("components do not partition the nodes")
        for c in self.components:
            local = tuple(tuple(self.cartan[i][j] for j in c.nodes) for i in c.nodes)
            want = affine_cartan_matrix(c.tag, c.rank) if c.affine else cartan_matrix(c.tag, c.rank)
            if local != want:
                raise DiagramError(f"component {c.name} does not match its Cartan matrix")
        for ci, c in enumerate(self.components):
            for cj, d in enumerate(self.components):
                if ci != cj and any(self.cartan[i][j] for i in c.nodes for j in d.nodes):
                    raise DiagramError("distinct components are joined by a bond")

    @property
    def size(self) -> int:
        return len(self.cartan)

    @property
    def nodes(self) -> range:
        return range(self.size)

    @cached_property
    def _component_index(self) -> tuple[int, ...]:
        out = [0] * self.size
        for ci, c in enumerate(self.components):
            for v in c.nodes:
                out[v] = ci
        return tuple(out)

    def component_of(self, node: int) -> int:
        return self._component_index[node]

    def local_index(self, node: int) -> int:
        """Bourbaki index of ``node`` in its component (0 for ``alpha_0``)."""
        c = self.components[self.component_of(node)]
        pos = c.nodes.index(node)
        return pos if c.affine else pos + 1

    def node(self, component: int, index: int) -> int:
        """Global id of Bourbaki node ``index`` of ``component``."""
        c = self.components[component]
        return c.nodes[index if c.affine else index - 1]

    def neighbours(self, node: int) -> list[int]:
        return [j for j in self.nodes if j != node and self.cartan[node][j]]

    def degree(self, node: int) -> int:
        return len(self.neighbours(node))

    def spec(self) -> list[tuple[str, int]]:
        return [(c.tag, c.rank) for c in self.components]


def build_diagram(spec: Sequence[tuple[str, int]]) -> DynkinDiagram:
    """Disjoint union of finite-type components, Bourbaki-numbered, in order."""
    if not spec:
        raise DiagramError("no components given")
    comps = []
    blocks = []
    offset = 0
    for tag, rank in spec:
        tag = str(tag).upper()
        rank = int(rank)
        m = cartan_matrix(tag, rank)
        comps.append(Component(tag, rank, tuple(range(offset, offset + rank))))
        blocks.append(m)
        offset += rank
    a = [[0] * offset for _ in range(offset)]
    for c, m in zip(comps, blocks):
        for i, vi in enumerate(c.nodes):
            for j, vj in enumerate(c.nodes):
                a[vi][vj] = m[i][j]
    return DynkinDiagram(tuple(map(tuple, a)), tuple(comps))


def _finite_component(d: DynkinDiagram, component: int) -> Component:
    c = d.components[component]
    if c.affine:
        raise DiagramError(f"component {component} ({c.name}) is affine")
    return c


# -- exact linear algebra ----------------------------------------------------

def invert(a: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan inverse over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DiagramError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def cartan_inverse(d: DynkinDiagram) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Inverse Cartan matrix of every component, Bourbaki-indexed from 0."""
    out = []
    for ci, c in enumerate(d.components):
        _finite_component(d, ci)
        out.append(_component_inverse(c.tag, c.rank))
    return out


@lru_cache(maxsize=None)
def _component_inverse(tag: str, rank: int) -> tuple[tuple[Fraction, ...], ...]:
    return invert(cartan_matrix(tag, rank))


def pairing(d: DynkinDiagram, alpha: int, omega: int) -> Fraction:
    """``<alpha, omega>``: coweight at ``alpha`` against weight at ``omega``."""
    ca, co = d.component_of(alpha), d.component_of(omega)
    if ca != co:
        raise DiagramError(f"nodes {alpha} and {omega} lie in different components")
    c = _finite_component(d, ca)
    inv = _component_inverse(c.tag, c.rank)
    return inv[d.local_index(alpha) - 1][d.local_index(omega) - 1]


# -- root systems (used as independent oracles) -------------------------------

def symmetrizer(a: Matrix) -> tuple[Fraction, ...]:
    """Half squared root lengths ``d`` with ``d_i a_ij = d_j a_ji`` (min 1 per component)."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and a[i][j] and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    queue.append(j)
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / low
    return tuple(d)  # type: ignore[arg-type]


def roots(a: Matrix) -> list[tuple[int, ...]]:
    """All roots, in simple-root coordinates, by Weyl-orbit closure of the simple roots."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        b = queue.popleft()
        for i in range(n):
            c = sum(a[i][j] * b[j] for j in range(n))
            if c:
                r = tuple(b[j] - (c if j == i else 0) for j in range(n))
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
    return sorted(seen)


def positive_roots(a: Matrix) -> list[tuple[int, ...]]:
    return [r for r in roots(a) if all(x >= 0 for x in r)]


def highest_root(a: Matrix) -> tuple[int, ...]:
    return max(positive_roots(a), key=lambda r: (sum(r), r))


def affine_from_highest_root(tag: str, rank: int) -> Matrix:
    """Affine Cartan matrix derived from the highest root (oracle for the table)."""
    a = cartan_matrix(tag, rank)
    d = symmetrizer(a)
    n = rank
    b = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    theta = highest_root(a)
    th_alpha = [sum(theta[k] * b[k][j] for k in range(n)) for j in range(n)]
    th_th = sum(theta[j] * th_alpha[j] for j in range(n))
    out = [[0] * (n + 1) for _ in range(n + 1)]
    out[0][0] = 2
    for i in range(n):
        for j in range(n):
            out[i + 1][j + 1] = a[i][j]
    for j in range(n):
        out[0][j + 1] = int(-2 * th_alpha[j] / th_th)
        out[j + 1][0] = int(-2 * th_alpha[j] / (2 * d[j]))
    return tuple(map(tuple, out))


# -- diagrams and their symmetries --------------------------------------------

def affine_extension(d: DynkinDiagram, component: int) -> DynkinDiagram:
    """The extended diagram of one finite component; ``alpha_0`` is node 0."""
    c = _finite_component(d, component)
    a = affine_cartan_matrix(c.tag, c.rank)
    return DynkinDiagram(a, (Component(c.tag, c.rank, tuple(range(c.rank + 1)), affine=True),))


def cartan_isomorphisms(
    a: Matrix, b: Matrix, fixed: dict[int, int] | None = None
) -> Iterator[Perm]:
    """Bijections ``p`` with ``b[p(i)][p(j)] == a[i][j]``, lexicographic order.

    ``fixed`` pre-assigns some images.  Candidates are pruned by the sorted
    row signature (degree sequence with bond labels).
    """
    n = len(a)
    if len(b) != n:
        return
    sig_a = [tuple(sorted((a[i][j], a[j][i]) for j in range(n) if j != i and a[i][j])) for i in range(n)]
    sig_b = [tuple(sorted((b[i][j], b[j][i]) for j in range(n) if j != i and b[i][j])) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return
    fixed = dict(fixed or {})
    img: list[int] = [-1] * n
    used = [False] * n
    for i, j in fixed.items():
        if sig_a[i] != sig_b[j] or used[j]:
            return
        img[i] = j
        used[j] = True
    for i in fixed:
        for k in fixed:
            if b[img[i]][img[k]] != a[i][k]:
                return
    free = [i for i in range(n) if img[i] < 0]

    def extend(pos: int) -> Iterator[Perm]:
        if pos == len(free):
            yield tuple(img)
            return
        i = free[pos]
        for j in range(n):
            if used[j] or sig_a[i] != sig_b[j]:
                continue
            if all(img[k] < 0 or (b[j][img[k]] == a[i][k] and b[img[k]][j] == a[k][i]) for k in range(n)):
                img[i] = j
                used[j] = True
                yield from extend(pos + 1)
                img[i] = -1
                used[j] = False

    yield from extend(0)


def _generators_of(elements: Sequence[Perm], n: int) -> tuple[Perm, ...]:
    """A small generating set: greedily add elements not yet generated."""
    gens: list[Perm] = []
    have = {identity(n)}
    for g in elements:
        if g not in have:
            gens.append(g)
            have = set(PermGroup(n, tuple(gens)).elements)
            if len(have) == len(elements):
                break
    return tuple(gens)


@dataclass(frozen=True)
class AutomorphismGroup:
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbit(self, node: int) -> frozenset[int]:
        return frozenset(g[node] for g in self.elements)


def diagram_automorphisms(d: DynkinDiagram) -> AutomorphismGroup:
    """All node permutations preserving the Cartan matrix."""
    els = tuple(cartan_isomorphisms(d.cartan, d.cartan))
    return AutomorphismGroup(els, _generators_of(els, d.size))


def special_nodes(d: DynkinDiagram, component: int) -> frozenset[int]:
    """Nodes of ``component`` in the Aut-orbit of ``alpha_0`` in the extended diagram."""
    c = _finite_component(d, component)
    return frozenset(d.node(component, i) for i in _special_local(c.tag, c.rank))


@lru_cache(maxsize=None)
def _special_local(tag: str, rank: int) -> frozenset[int]:
    ext = affine_extension(build_diagram([(tag, rank)]), 0)
    return frozenset(i for i in diagram_automorphisms(ext).orbit(0) if i != 0)


def all_special_nodes(d: DynkinDiagram) -> frozenset[int]:
    out: set[int] = set()
    for ci in range(len(d.components)):
        out |= special_nodes(d, ci)
    return frozenset(out)


@dataclass(frozen=True)
class NodeInvolution:
    mapping: Perm

    def __post_init__(self) -> None:
        if compose(self.mapping, self.mapping) != identity(len(self.mapping)):
            raise DiagramError("mapping is not an involution")

    def __call__(self, node: int) -> int:
        return self.mapping[node]

    def is_identity(self) -> bool:
        return self.mapping == identity(len(self.mapping))


def _local_opposition(tag: str, n: int) -> dict[int, int]:
    if tag == "A" and n >= 2:
        return {i: n + 1 - i for i in range(1, n + 1)}
    if tag == "D" and n % 2 == 1:
        return {n - 1: n, n: n - 1}
    if tag == "E" and n == 6:
        return {1: 6, 6: 1, 3: 5, 5: 3}
    return {}


def opposition_involution(d: DynkinDiagram) -> NodeInvolution:
    """``-w_0`` on the simple roots, from the classification of types."""
    img = list(range(d.size))
    for ci, c in enumerate(d.components):
        _finite_component(d, ci)
        for i, j in _local_opposition(c.tag, c.rank).items():
            img[d.node(ci, i)] = d.node(ci, j)
    return NodeInvolution(tuple(img))


ORACLE_MAX_RANK = 4


def weyl_group(a: Matrix) -> list[tuple[tuple[int, ...], ...]]:
    """Every Weyl group element as the tuple of images of the simple roots."""
    n = len(a)
    start = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def times_s(w, i):
        # (w s_i)(alpha_j) = w(alpha_j) - a_ij w(alpha_i)
        wi = w[i]
        return tuple(tuple(x - a[i][j] * y for x, y in zip(w[j], wi)) for j in range(n))

    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(n):
            v = times_s(w, i)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return sorted(seen)


def longest_element(a: Matrix) -> tuple[tuple[int, ...], ...]:
    """The unique Weyl element sending every simple root to a negative root."""
    hits = [w for w in weyl_group(a) if all(all(x <= 0 for x in img) for img in w)]
    if len(hits) != 1:
        raise AssertionError("longest element is not unique")
    return hits[0]


def oppinv_bruteforce_oracle(d: DynkinDiagram) -> NodeInvolution:
    """Opposition involution by exhausting the Weyl group (total rank <= 4)."""
    if d.size > ORACLE_MAX_RANK:
        raise DiagramError(f"oracle refuses total rank {d.size} > {ORACLE_MAX_RANK}")
    img = list(range(d.size))
    for ci, c in enumerate(d.components):
        _finite_component(d, ci)
        a = cartan_matrix(c.tag, c.rank)
        w0 = longest_element(a)
        for j in range(c.rank):
            neg = tuple(-x for x in w0[j])
            k = neg.index(1)
            if sum(neg) != 1:
                raise AssertionError("-w0 does not permute the simple roots")
            img[c.nodes[j]] = c.nodes[k]
    return NodeInvolution(tuple(img))


def is_symplectic_node(d: DynkinDiagram, alpha: int, omega: int) -> bool:
    """Whether ``<alpha, omega + tau(omega)> == 1`` for the special node ``alpha``."""
    ca = d.component_of(alpha)
    if ca != d.component_of(omega):
        raise DiagramError(f"nodes {alpha} and {omega} lie in different components")
    c = _finite_component(d, ca)
    if d.local_index(alpha) not in _special_local(c.tag, c.rank):
        raise DiagramError(f"node {alpha} is not special")
    return d.local_index(omega) in _symplectic_local(c.tag, c.rank, d.local_index(alpha))


@lru_cache(maxsize=None)
def _symplectic_local(tag: str, rank: int, alpha: int) -> frozenset[int]:
    inv = _component_inverse(tag, rank)
    tau = _local_opposition(tag, rank)
    return frozenset(
        w for w in range(1, rank + 1) if inv[alpha - 1][w - 1] + inv[alpha - 1][tau.get(w, w) - 1] == 1
    )


def symplectic_nodes(d: DynkinDiagram, alpha: int) -> frozenset[int]:
    """All ``alpha``-symplectic nodes (``alpha`` must be special)."""
    ca = d.component_of(alpha)
    return frozenset(w for w in d.components[ca].nodes if is_symplectic_node(d, alpha, w))


def weyl_dimension(tag: str, rank: int, highest: Sequence[int]) -> int:
    """Weyl dimension formula for an irreducible highest-weight module.

    ``highest`` gives the weight in the fundamental-weight basis.
    """
    a = cartan_matrix(tag, rank)
    d = symmetrizer(a)
    num = Fraction(1)
    for beta in positive_roots(a):
        # <lambda + rho, beta^vee> / <rho, beta^vee>; the common factor 1/|beta|^2 cancels
        top = sum(Fraction((highest[i] + 1) * d[i] * beta[i]) for i in range(rank))
        bot = sum(Fraction(d[i] * beta[i]) for i in range(rank))
        num *= top / bot
    if num.denominator != 1:
        raise AssertionError("non-integral Weyl dimension")
    return int(num)


def lie_dim_bruteforce(tag: str, rank: int) -> int:
    """``len(roots) + rank`` by brute-force enumeration."""
    return len(roots(cartan_matrix(tag, rank))) + rank


# -- canonical isomorphism types ----------------------------------------------

def canonical_type(tag: str, rank: int) -> tuple[str, int]:
    """Collapse the low-rank coincidences ``C2 = B2`` and ``D3 = A3``."""
    if (tag, rank) == ("C", 2):
        return ("B", 2)
    if (tag, rank) == ("D", 3):
        return ("A", 3)
    return (tag, rank)


def extremal_nodes(d: DynkinDiagram, component: int) -> frozenset[int]:
    c = d.components[component]
    if len(c.nodes) == 1:
        return frozenset(c.nodes)
    return frozenset(v for v in c.nodes if d.degree(v) == 1)


def all_permutations_preserving(d: DynkinDiagram) -> list[Perm]:
    """Naive automorphism enumeration over all ``n!`` permutations (test oracle)."""
    n = d.size
    return [
        p
        for p in permutations(range(n))
        if all(d.cartan[p[i]][p[j]] == d.cartan[i][j] for i in range(n) for j in range(n))
    ]
