"""Command-line interface: ``ddkit <command> ...``.

Exit codes: 0 success, 1 a campaign found a failure, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Any, Sequence

from . import __version__
from .campaign import campaign_ok, run_campaign
from .deldyn import (
    aut_id,
    is_irreducible,
    is_populated,
    is_symplectic,
    symplectic_set,
    type_of,
    u_set,
    validate,
)
from .fileformat import FileFormatError, load
from .gaction import ComponentMap
from .hodge import deligne_construct
from .instances import Bounds
from .localglobal import (
    compute_witnesses,
    decide_isom_oracle,
    pair_family,
    restrict_pair,
)
from .perm import compose, identity, inverse, to_cycles
from .rootsys import DiagramError, build_diagram, opposition_involution, special_nodes
from .table import deligne_table
from .tannaka import ReductiveDatum, TannakianObject, adjoint_chain, goursat_sweep, hyperadjoint


class InputError(ValueError):
    pass


def _emit(args: argparse.Namespace, data: Any, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _progress(args: argparse.Namespace):
    if getattr(args, "quiet", False):
        return None
    return lambda msg: print(msg, file=sys.stderr, flush=True)


# -- commands ------------------------------------------------------------------


def cmd_table(args: argparse.Namespace) -> int:
    rows = deligne_table(args.max_rank)
    _emit(args, [r.as_dict() for r in rows], "\n".join(r.as_text() for r in rows))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    d = load(args.file).diagram
    out: dict[str, Any] = {"valid": validate(d).ok, "irreducible": is_irreducible(d), "populated": is_populated(d)}
    out["symplectic"] = is_symplectic(d)
    out["S"] = sorted(symplectic_set(d))
    if out["irreducible"]:
        t = type_of(d)
        out["type"] = str(t)
        out["U"] = None if t.is_outcome else sorted(u_set(d))
        out["aut_id"] = None if t.is_outcome else len(aut_id(d))
    else:
        out["type"] = None
        out["U"] = None
        out["aut_id"] = None
    lines = [f"{k}: {out[k]}" for k in ("type", "valid", "irreducible", "populated", "symplectic", "S", "U", "aut_id")]
    _emit(args, out, "\n".join(lines))
    return 0


def _type_arg(tag: str, rank: int):
    try:
        return build_diagram([(tag.upper(), rank)])
    except DiagramError as e:
        raise InputError(str(e)) from None


def cmd_special(args: argparse.Namespace) -> int:
    d = _type_arg(args.tag, args.rank)
    nodes = sorted(v + 1 for v in special_nodes(d, 0))
    _emit(args, {"type": [args.tag.upper(), args.rank], "special": nodes}, " ".join(map(str, nodes)) or "none")
    return 0


def cmd_oppinv(args: argparse.Namespace) -> int:
    d = _type_arg(args.tag, args.rank)
    tau = opposition_involution(d)
    mapping = {str(v + 1): tau(v) + 1 for v in range(d.size)}
    text = " ".join(f"{k}->{v}" for k, v in mapping.items())
    _emit(args, {"type": [args.tag.upper(), args.rank], "tau": mapping, "trivial": tau.is_identity()}, text)
    return 0


_WORD_TOKEN = re.compile(r"^(\d+)(\^-1)?$")


def _word(gens, word: str, n: int):
    """Product of generators named by comma-separated indices, ``i^-1`` for an inverse."""
    p = identity(n)
    for tok in filter(None, (t.strip() for t in word.split(","))):
        m = _WORD_TOKEN.match(tok)
        if not m or int(m.group(1)) >= len(gens):
            raise InputError(f"--local: bad generator token {tok!r}")
        g = gens[int(m.group(1))]
        p = compose(p, inverse(g) if m.group(2) else g)
    return p


def cmd_isom(args: argparse.Namespace) -> int:
    d1, d2 = load(args.file1).diagram, load(args.file2).diagram
    if len(d1.generators) != len(d2.generators):
        raise InputError("the two files must list the same number of generators")
    if len(d1.diagram.components) != len(d2.diagram.components):
        raise InputError("the two diagrams have different numbers of components")
    f = ComponentMap.identity(len(d1.diagram.components))
    out: dict[str, Any] = {}
    if args.local is not None:
        n1, n2 = d1.diagram.size, d2.diagram.size
        joint_gens = [a + tuple(n1 + x for x in b) for a, b in zip(d1.generators, d2.generators)]
        g = _word(joint_gens, args.local, n1 + n2)
        l1, l2 = restrict_pair(d1, d2, g)
        psi = decide_isom_oracle(l1, l2, f)
        out = {"local": to_cycles(g), "witness": None if psi is None else list(psi)}
        text = f"local <{to_cycles(g)}>: " + ("none" if psi is None else " ".join(map(str, psi)))
    else:
        phi = decide_isom_oracle(d1, d2, f)
        fam = pair_family(d1, d2)
        ws = compute_witnesses(d1, d2, f, fam)
        locs = [{"generator": to_cycles(g), "witness": None if w is None else list(w)} for g, w in zip(fam.generators, ws.witnesses)]
        out = {"global": None if phi is None else list(phi), "locals": locs}
        lines = ["global: " + ("none" if phi is None else " ".join(map(str, phi)))]
        lines += [f"local <{x['generator']}>: " + ("none" if x["witness"] is None else " ".join(map(str, x["witness"]))) for x in locs]
        text = "\n".join(lines)
    _emit(args, out, text)
    return 0


def _bounds(args: argparse.Namespace) -> Bounds:
    types = tuple(t.strip().upper() for t in args.types.split(",") if t.strip())
    for t in types:
        if t not in ("A", "B", "C", "D", "E", "F", "G"):
            raise InputError(f"--types: unknown type {t!r}")
    return Bounds(max_order=args.max_order, max_rank=args.max_rank, types=types, max_components=args.max_components)


def _campaign(kind: str, args: argparse.Namespace) -> int:
    report = run_campaign(kind, _bounds(args), args.jobs, _progress(args))
    ok = campaign_ok(report)
    if not ok and args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(report["failures"], fh, sort_keys=True, indent=2)
            fh.write("\n")
    totals = " ".join(f"{k}={v}" for k, v in report["totals"].items())
    text = f"{kind}: {report['tasks']} tasks, {totals}, failures={len(report['failures'])}"
    _emit(args, report, text)
    return 0 if ok else 1


def cmd_verify_local_global(args: argparse.Namespace) -> int:
    return _campaign("local-global", args)


def cmd_verify_diagrams(args: argparse.Namespace) -> int:
    return _campaign("diagrams", args)


def cmd_deligne(args: argparse.Namespace) -> int:
    df = load(args.file)
    rep = deligne_construct(df.diagram, df.cover, df.phi, args.n)
    s = rep.summary()
    text = "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in s.items())
    _emit(args, s, text)
    return 0


def parse_datum(spec: str) -> ReductiveDatum:
    """``"D4xA1xT2"``: simple factors and a torus ``T<rank>``; ``"1"`` is trivial."""
    comps, center = [], 0
    for part in filter(None, spec.replace(" ", "").split("x")):
        if part == "1":
            continue
        tag, rest = part[0].upper(), part[1:]
        if not rest.isdigit():
            raise InputError(f"bad factor {part!r} in {spec!r}")
        if tag == "T":
            center += int(rest)
        else:
            comps.append((tag, int(rest)))
    try:
        return ReductiveDatum(tuple(comps), center)
    except DiagramError as e:
        raise InputError(str(e)) from None


def cmd_hyperadjoint(args: argparse.Namespace) -> int:
    datum = parse_datum(args.spec)
    dim = args.dim if args.dim is not None else max(datum.lie_dim, 0)
    try:
        v = TannakianObject(datum, dim)
    except DiagramError as e:
        raise InputError(str(e)) from None
    chain = adjoint_chain(v)
    ha, index = hyperadjoint(v)
    out = {
        "chain": [{"acting": str(x.acting), "dim": x.dim} for x in chain],
        "index": index,
        "hyperadjoint": {"acting": str(ha.acting), "dim": ha.dim},
    }
    text = "\n".join(f"V^({i}): dim {x.dim}, group {x.acting}" for i, x in enumerate(chain))
    _emit(args, out, text + f"\nstabilises at index {index}")
    return 0


def cmd_goursat(args: argparse.Namespace) -> int:
    rep = goursat_sweep(args.max_order)
    text = f"{len(rep['groups'])} groups, {rep['subdirect_total']} subdirect subgroups, failures={len(rep['failures'])}"
    _emit(args, rep, text)
    return 0 if not rep["failures"] else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--format", choices=("text", "json"), default="text")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="ddkit", description=__doc__.splitlines()[0], parents=[top])
    p.add_argument("--version", action="version", version=f"ddkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table", parents=[fmt], help="special nodes, symplectic nodes and labels per type")
    s.add_argument("--max-rank", type=int, default=8)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("classify", parents=[fmt], help="flags, type, S, U and Aut_id of a diagram file")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    for name, func in (("special", cmd_special), ("oppinv", cmd_oppinv)):
        s = sub.add_parser(name, parents=[fmt], help=f"{name} for a connected type (1-based nodes)")
        s.add_argument("tag")
        s.add_argument("rank", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("isom", parents=[fmt], help="isomorphism search between two diagram files")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--local", metavar="WORD", help="restrict to the cyclic group of a generator word, e.g. '0,1^-1'")
    s.set_defaults(func=cmd_isom)

    jobs_default = int(os.environ.get("DDKIT_JOBS", "1"))
    for name, func in (("verify-local-global", cmd_verify_local_global), ("verify-diagrams", cmd_verify_diagrams)):
        s = sub.add_parser(name, parents=[fmt], help="exhaustive campaign over the instance family")
        s.add_argument("--max-order", type=int, default=24)
        s.add_argument("--max-rank", type=int, default=4)
        s.add_argument("--types", default="A,B,C,D")
        s.add_argument("--max-components", type=int, default=3)
        s.add_argument("--jobs", type=int, default=jobs_default)
        s.add_argument("--dump", default="counterexamples.json", help="where failures are written")
        s.add_argument("--quiet", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("deligne", parents=[fmt], help="run Deligne's construction on a diagram file")
    s.add_argument("file")
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_deligne)

    s = sub.add_parser("hyperadjoint", parents=[fmt], help="adjoint chain of a reductive datum such as D4xA1xT2")
    s.add_argument("spec")
    s.add_argument("--dim", type=int)
    s.set_defaults(func=cmd_hyperadjoint)

    s = sub.add_parser("goursat", parents=[fmt], help="Goursat decomposition of all subdirect products")
    s.add_argument("--max-order", type=int, default=12)
    s.set_defaults(func=cmd_goursat)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileFormatError, InputError, DiagramError) as e:
        print(f"ddkit {args.command}: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"ddkit {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
