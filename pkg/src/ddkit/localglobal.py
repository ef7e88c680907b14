"""Local-global gluing of Deligne-Dynkin diagram isomorphisms.

Two diagrams over the same group are compared through their *joint* action
on ``Delta_1 + Delta_2``: generator ``i`` acts by ``g1[i]`` on the first
summand and ``g2[i]`` on the second.  Local groups are modelled by the
cyclic subgroups of this joint group, one for each element (the finite
stand-in for decomposition groups hit by Chebotarev's theorem).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .deldyn import (
    DeligneDynkinDiagram,
    DiagramType,
    aut_id,
    is_irreducible,
    is_populated,
    is_symplectic,
    local_components,
    preserves_mu,
    type_of,
    u_set,
    validate,
)
from .gaction import (
    ComponentMap,
    EquivariantDiagram,
    equivariant_isoms,
    is_equivariant_iso,
)
from .perm import Perm, PermGroup, compose, identity, inverse
from .rootsys import DiagramError, cartan_isomorphisms, opposition_involution


# -- joint action ------------------------------------------------------------

def joint_generators(e1: EquivariantDiagram, e2: EquivariantDiagram) -> tuple[Perm, ...]:
    if len(e1.generators) != len(e2.generators):
        raise DiagramError("the two diagrams are not acted on by the same group")
    n1 = e1.diagram.size
    return tuple(g1 + tuple(n1 + x for x in g2) for g1, g2 in zip(e1.generators, e2.generators))


def joint_group(e1: EquivariantDiagram, e2: EquivariantDiagram) -> PermGroup:
    return PermGroup(e1.diagram.size + e2.diagram.size, joint_generators(e1, e2))


def split(p: Perm, n1: int) -> tuple[Perm, Perm]:
    return p[:n1], tuple(x - n1 for x in p[n1:])


@dataclass(frozen=True)
class ChebotarevFamily:
    """Distinct cyclic subgroups of ``base``, each with a canonical generator."""

    base: PermGroup
    generators: tuple[Perm, ...]
    subgroups: tuple[frozenset[Perm], ...]

    def __len__(self) -> int:
        return len(self.generators)

    def covers(self) -> bool:
        """Every element generates (hence lies in) some member."""
        return all(any(g in s for s in self.subgroups) for g in self.base.elements)


@lru_cache(maxsize=4096)
def chebotarev_family(g: PermGroup) -> ChebotarevFamily:
    cyc = g.cyclic_subgroups()
    return ChebotarevFamily(g, tuple(x for x, _ in cyc), tuple(s for _, s in cyc))


def pair_family(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram) -> ChebotarevFamily:
    return chebotarev_family(joint_group(d1.base, d2.base))


def with_generators(d: DeligneDynkinDiagram, gens: Sequence[Perm]) -> DeligneDynkinDiagram:
    return DeligneDynkinDiagram(EquivariantDiagram(d.diagram, tuple(gens)), d.mu)


def restrict_pair(
    d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, joint: Perm
) -> tuple[DeligneDynkinDiagram, DeligneDynkinDiagram]:
    """Both diagrams restricted to the cyclic group of one joint element."""
    g1, g2 = split(joint, d1.diagram.size)
    return with_generators(d1, (g1,)), with_generators(d2, (g2,))


# -- oracle and witnesses ----------------------------------------------------

def isoms(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, f: ComponentMap) -> Iterator[Perm]:
    """``Isom_f((Delta_1, mu_1), (Delta_2, mu_2))`` in search order."""
    for p in equivariant_isoms(d1.base, d2.base, f):
        if preserves_mu(d1, d2, p):
            yield p


def decide_isom_oracle(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, f: ComponentMap) -> Perm | None:
    """First isomorphism over ``f`` by plain backtracking, or None."""
    return next(isoms(d1, d2, f), None)


def is_isom(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, f: ComponentMap, phi: Perm) -> bool:
    return is_equivariant_iso(d1.base, d2.base, f, phi) and preserves_mu(d1, d2, phi)


@dataclass(frozen=True)
class LocalWitnessSet:
    """``witnesses[i]`` is an isomorphism over local ``i`` of ``family`` (or None)."""

    family: ChebotarevFamily
    witnesses: tuple[Perm | None, ...]

    @classmethod
    def build(
        cls,
        d1: DeligneDynkinDiagram,
        d2: DeligneDynkinDiagram,
        f: ComponentMap,
        family: ChebotarevFamily,
        witnesses: Sequence[Perm | None],
    ) -> LocalWitnessSet:
        if len(witnesses) != len(family):
            raise DiagramError("one witness slot per local subgroup is required")
        for gen, psi in zip(family.generators, witnesses):
            if psi is None:
                continue
            l1, l2 = restrict_pair(d1, d2, gen)
            if not is_isom(l1, l2, f, psi):
                raise DiagramError(f"witness {psi} is not an isomorphism over the local group")
        return cls(family, tuple(witnesses))

    @property
    def complete(self) -> bool:
        return all(w is not None for w in self.witnesses)

    def missing(self) -> list[int]:
        return [i for i, w in enumerate(self.witnesses) if w is None]


def compute_witnesses(
    d1: DeligneDynkinDiagram,
    d2: DeligneDynkinDiagram,
    f: ComponentMap,
    family: ChebotarevFamily | None = None,
    *,
    stop_at_missing: bool = False,
) -> LocalWitnessSet:
    """Run the oracle on every restriction."""
    family = family or pair_family(d1, d2)
    out: list[Perm | None] = []
    for gen in family.generators:
        l1, l2 = restrict_pair(d1, d2, gen)
        psi = decide_isom_oracle(l1, l2, f)
        out.append(psi)
        if psi is None and stop_at_missing:
            out.extend([None] * (len(family) - len(out)))
            break
    return LocalWitnessSet.build(d1, d2, f, family, out)


# -- gluing ------------------------------------------------------------------

@dataclass(frozen=True)
class GlueResult:
    phi: Perm
    local: int
    place: tuple[int, ...]
    adjust: Perm
    stages: tuple[str, ...]
    global_aut: int
    local_aut: int

    ok = True


@dataclass(frozen=True)
class GlueFailure:
    stage: str
    reason: str
    stages: tuple[str, ...] = ()

    ok = False


def _require_hypotheses(d: DeligneDynkinDiagram, name: str) -> DiagramType:
    v = validate(d)
    if not v.ok:
        raise DiagramError(f"{name}: {v.problems[0]}")
    if not is_irreducible(d):
        raise DiagramError(f"{name} is not irreducible")
    t = type_of(d)
    if t.is_outcome:
        raise DiagramError(f"{name} is {t}")
    return t


def _component_maps(
    d1: DeligneDynkinDiagram, c1: int, d2: DeligneDynkinDiagram, c2: int, fixed: dict[int, int]
) -> list[dict[int, int]]:
    """Cartan isomorphisms of one component extending ``fixed`` (global ids)."""
    n1 = d1.diagram.components[c1].nodes
    n2 = d2.diagram.components[c2].nodes
    a1, a2 = d1.diagram.cartan, d2.diagram.cartan
    a = tuple(tuple(a1[i][j] for j in n1) for i in n1)
    b = tuple(tuple(a2[i][j] for j in n2) for i in n2)
    loc = {n1.index(v): n2.index(w) for v, w in fixed.items()}
    return [{n1[i]: n2[p[i]] for i in range(len(n1))} for p in cartan_isomorphisms(a, b, loc)]


def _transport_u(
    d1: DeligneDynkinDiagram,
    d2: DeligneDynkinDiagram,
    f: ComponentMap,
    u1: frozenset[int],
    u2: frozenset[int],
    seed_hint: Perm | None,
) -> dict[int, int] | None:
    """An equivariant bijection ``U_1 -> U_2`` over ``f``, or None.

    The seed on component 0 is tried first as suggested by ``seed_hint``
    (the trivial-subgroup witness), then in lexicographic order; each seed
    is propagated along the generators and their inverses.
    """
    dg1, dg2 = d1.diagram, d2.diagram
    ncomp = len(dg1.components)
    per1 = [sorted(v for v in dg1.components[c].nodes if v in u1) for c in range(ncomp)]
    per2 = [sorted(v for v in dg2.components[f(c)].nodes if v in u2) for c in range(ncomp)]
    if any(len(per1[c]) != len(per2[c]) for c in range(ncomp)):
        return None
    seeds = [dict(zip(per1[0], p)) for p in permutations(per2[0])]
    if seed_hint is not None:
        hinted = {v: seed_hint[v] for v in per1[0]}
        if hinted in seeds:
            seeds.remove(hinted)
            seeds.insert(0, hinted)
    moves = [(g1, g2) for g1, g2 in zip(d1.generators, d2.generators)]
    moves += [(inverse(g1), inverse(g2)) for g1, g2 in moves]
    for seed in seeds:
        beta = dict(seed)
        stack = list(seed)
        ok = True
        while stack and ok:
            v = stack.pop()
            for g1, g2 in moves:
                x, y = g1[v], g2[beta[v]]
                if x in beta:
                    if beta[x] != y:
                        ok = False
                        break
                elif y not in u2:
                    ok = False
                    break
                else:
                    beta[x] = y
                    stack.append(x)
        if ok and set(beta) == set(u1) and set(beta.values()) == set(u2):
            return beta
    return None


def _equivariant_involutions(d: DeligneDynkinDiagram, keep: frozenset[int]) -> list[Perm]:
    """Non-trivial equivariant involutions over the identity preserving ``keep``."""
    n = d.diagram.size
    e = identity(n)
    f = ComponentMap.identity(len(d.diagram.components))
    out = []
    for p in equivariant_isoms(d.base, d.base, f):
        if p != e and compose(p, p) == e and frozenset(p[v] for v in keep) == keep:
            out.append(p)
    return out


def glue(
    d1: DeligneDynkinDiagram,
    d2: DeligneDynkinDiagram,
    f: ComponentMap,
    witnesses: LocalWitnessSet,
) -> GlueResult | GlueFailure:
    """Build a global isomorphism from complete local witnesses."""
    t1 = _require_hypotheses(d1, "first diagram")
    t2 = _require_hypotheses(d2, "second diagram")
    if not witnesses.complete:
        raise DiagramError(f"missing local witnesses at {witnesses.missing()}")
    fam = witnesses.family
    stages = ["type"]
    if t1 != t2:
        return GlueFailure("type", f"locally isomorphic diagrams of types {t1} and {t2}", tuple(stages))
    dg1, dg2 = d1.diagram, d2.diagram
    ncomp = len(dg1.components)
    trivial_idx = fam.generators.index(identity(fam.base.degree))
    psi_triv = witnesses.witnesses[trivial_idx]

    phi_map: dict[int, int] = {}
    if t1.tag in ("B", "C"):
        stages.append("unique")
        for c in range(ncomp):
            maps = _component_maps(d1, c, d2, f(c), {})
            if len(maps) != 1:
                return GlueFailure("unique", f"component {c} has {len(maps)} isomorphisms", tuple(stages))
            phi_map.update(maps[0])
    else:
        stages.append("transport")
        u1, u2 = u_set(d1), u_set(d2)
        beta = _transport_u(d1, d2, f, u1, u2, psi_triv)
        if beta is None:
            return GlueFailure("transport", "no equivariant bijection of the U-sets", tuple(stages))
        stages.append("extend")
        for c in range(ncomp):
            fixed = {v: beta[v] for v in dg1.components[c].nodes if v in beta}
            maps = _component_maps(d1, c, d2, f(c), fixed)
            if len(maps) != 1:
                return GlueFailure("extend", f"component {c}: {len(maps)} extensions of the U-map", tuple(stages))
            phi_map.update(maps[0])
    phi = tuple(phi_map[v] for v in range(dg1.size))
    if not is_equivariant_iso(d1.base, d2.base, f, phi):
        return GlueFailure(stages[-1], "assembled map is not equivariant", tuple(stages))

    if not preserves_mu(d1, d2, phi):
        stages.append("tau")
        tau1 = opposition_involution(dg1)
        movable = [a for a in sorted(d1.mu) if tau1(a) != a] or sorted(d1.mu)
        alpha = movable[0]
        if phi[alpha] not in d2.mu:
            cands = _equivariant_involutions(d2, u_set(d2))
            if len(cands) != 1:
                return GlueFailure("tau", f"{len(cands)} candidate involutions on the second diagram", tuple(stages))
            phi = compose(cands[0], phi)
        if phi[alpha] not in d2.mu:
            return GlueFailure("tau", f"node {alpha} cannot be sent into mu_2", tuple(stages))
    stages.append("propagate")
    if not preserves_mu(d1, d2, phi):
        return GlueFailure("propagate", "phi(mu_1) != mu_2 after fixing one node", tuple(stages))

    stages.append("place")
    place = find_place(d1, d2, f, phi, witnesses)
    if place is None:
        return GlueFailure("place", "no local piece where the glued map agrees with a witness", tuple(stages))
    idx, comps, a, ga, la = place
    return GlueResult(compose(a, phi), idx, comps, a, tuple(stages), ga, la)


def find_place(
    d1: DeligneDynkinDiagram,
    d2: DeligneDynkinDiagram,
    f: ComponentMap,
    phi: Perm,
    witnesses: LocalWitnessSet,
) -> tuple[int, tuple[int, ...], Perm, int, int] | None:
    """First ``(local, piece, a)`` with equal automorphism counts and
    ``(a o phi) = psi`` on the piece, ``a`` running over ``Aut_id(Delta_2, mu_2)``.
    """
    fam = witnesses.family
    auts1 = aut_id(d1, check=False)
    auts2 = aut_id(d2, check=False)
    n1 = d1.diagram.size
    for idx, (gen, psi) in enumerate(zip(fam.generators, witnesses.witnesses)):
        g1, _ = split(gen, n1)
        h = PermGroup(n1, (g1,))
        for piece in local_components(d1, h):
            local_auts = aut_id(piece.diagram, check=False)
            if len(local_auts) != len(auts1):
                continue
            restricted = {tuple(a[v] for v in piece.nodes) for a in auts1}
            if len(restricted) != len(auts1):
                continue
            for a in auts2:
                if all(a[phi[v]] == psi[v] for v in piece.nodes):
                    return idx, piece.components, a, len(auts1), len(local_auts)
    return None


def check_glue(
    d1: DeligneDynkinDiagram,
    d2: DeligneDynkinDiagram,
    f: ComponentMap,
    witnesses: LocalWitnessSet,
    res: GlueResult,
) -> list[str]:
    """Independent re-verification of a glue result; returns problems."""
    problems = []
    if not is_isom(d1, d2, f, res.phi):
        problems.append("phi is not an isomorphism over f")
    psi = witnesses.witnesses[res.local]
    gen = witnesses.family.generators[res.local]
    g1, _ = split(gen, d1.diagram.size)
    comps = set(res.place)
    nodes = [v for v in range(d1.diagram.size) if d1.diagram.component_of(v) in comps]
    dg = d1.diagram
    on_comps = tuple(dg.component_of(g1[c.nodes[0]]) for c in dg.components)
    if set(PermGroup(len(dg.components), (on_comps,)).orbit(res.place[0])) != comps:
        problems.append("reported place is not an orbit of the local group")
    if psi is None or any(res.phi[v] != psi[v] for v in nodes):
        problems.append("phi and the witness differ on the reported place")
    if res.local_aut != res.global_aut:
        problems.append("automorphism counts differ at the reported place")
    return problems


# -- verdicts ----------------------------------------------------------------

PASS = "PASS"
VACUOUS = "VACUOUS"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
OUT_OF_HYPOTHESIS = "OUT_OF_HYPOTHESIS"


@dataclass(frozen=True)
class Instance:
    d1: DeligneDynkinDiagram
    d2: DeligneDynkinDiagram
    f: ComponentMap
    label: str = ""


@dataclass(frozen=True)
class Verdict:
    status: str
    detail: dict = field(default_factory=dict)


@lru_cache(maxsize=1 << 16)
def in_hypothesis(d: DeligneDynkinDiagram) -> bool:
    return validate(d).ok and is_irreducible(d) and is_populated(d) and is_symplectic(d) and not type_of(d).is_outcome


def verify_theorem(inst: Instance, family: ChebotarevFamily | None = None) -> Verdict:
    """Check the local-global implication on one instance."""
    d1, d2, f = inst.d1, inst.d2, inst.f
    if not (in_hypothesis(d1) and in_hypothesis(d2)) or not f.is_equivariant(d1.base, d2.base):
        return Verdict(OUT_OF_HYPOTHESIS)
    family = family or pair_family(d1, d2)
    ws = compute_witnesses(d1, d2, f, family, stop_at_missing=True)
    if not ws.complete:
        return Verdict(VACUOUS, {"missing_local": ws.missing()[0]})
    oracle = decide_isom_oracle(d1, d2, f)
    res = glue(d1, d2, f, ws)
    detail: dict = {"locals": len(family)}
    if not res.ok:
        detail.update(stage=res.stage, reason=res.reason, oracle=oracle is not None)
        return Verdict(COUNTEREXAMPLE, detail)
    problems = check_glue(d1, d2, f, ws, res)
    if oracle is None:
        problems.append("oracle finds no global isomorphism")
    if problems:
        detail.update(problems=problems)
        return Verdict(COUNTEREXAMPLE, detail)
    detail.update(stages=list(res.stages), local=res.local, place=list(res.place), aut=res.global_aut)
    return Verdict(PASS, detail)


# -- the two local lemmas ----------------------------------------------------

def locally_same_type(d: DeligneDynkinDiagram) -> tuple[int, tuple[int, ...]] | None:
    """A (local index, piece) whose populated piece has the global type."""
    t = type_of(d)
    fam = chebotarev_family(d.base.group)
    for idx, gen in enumerate(fam.generators):
        for piece in local_components(d, PermGroup(d.diagram.size, (gen,))):
            if is_populated(piece.diagram) and type_of(piece.diagram) == t:
                return idx, piece.components
    return None


def locally_same_aut(d: DeligneDynkinDiagram) -> tuple[int, tuple[int, ...]] | None:
    """A (local index, piece) onto whose automorphisms the global ones restrict bijectively."""
    glob = aut_id(d)
    fam = chebotarev_family(d.base.group)
    for idx, gen in enumerate(fam.generators):
        for piece in local_components(d, PermGroup(d.diagram.size, (gen,))):
            loc = aut_id(piece.diagram, check=False)
            images = {tuple(a[v] for v in piece.nodes) for a in glob}
            if len(loc) == len(glob) and len(images) == len(glob):
                return idx, piece.components
    return None
