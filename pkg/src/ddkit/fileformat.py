"""JSON diagram files.

A diagram file looks like::

    {
      "components": [["D", 4]],
      "generators": ["(1 3 4)"],
      "mu": [0],
      "cover": ["(0 1)"],
      "phi": [1]
    }

Node ids are global and 0-based; component ``c`` of rank ``r`` occupies
the next ``r`` ids in Bourbaki order.  ``cover`` and ``phi`` are optional
and only used by the Deligne pipeline: cover point ``2c + i`` is sheet
``i`` over component ``c``.  A pair file (used for dumps) holds two such
objects under ``"d1"`` and ``"d2"`` plus a ``"f"`` component map.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .deldyn import DeligneDynkinDiagram, validate
from .gaction import ComponentMap, EquivariantDiagram
from .hodge import DoubleCover
from .perm import from_cycles, to_cycles
from .rootsys import DiagramError, build_diagram


class FileFormatError(ValueError):
    """Malformed input; the message starts with ``line N:`` when a line is known."""


@dataclass(frozen=True)
class DiagramFile:
    diagram: DeligneDynkinDiagram
    cover: DoubleCover | None = None
    phi: frozenset[int] | None = None


def _line_of(text: str, key: str) -> int:
    m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    return text.count("\n", 0, m.start()) + 1 if m else 1


def _fail(text: str, key: str, msg: str) -> FileFormatError:
    return FileFormatError(f"line {_line_of(text, key)}: {key}: {msg}")


def loads(text: str) -> DiagramFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise FileFormatError("line 1: expected a JSON object")
    return from_data(data, text)


def from_data(data: dict[str, Any], text: str = "") -> DiagramFile:
    unknown = set(data) - {"components", "generators", "mu", "cover", "phi"}
    if unknown:
        raise _fail(text, sorted(unknown)[0], "unknown key")
    try:
        spec = [(str(t), int(r)) for t, r in data["components"]]
    except KeyError:
        raise FileFormatError("line 1: components: missing") from None
    except (TypeError, ValueError):
        raise _fail(text, "components", "expected a list of [tag, rank] pairs") from None
    try:
        dg = build_diagram(spec)
    except DiagramError as e:
        raise _fail(text, "components", str(e)) from None
    gens = []
    for g in data.get("generators", []):
        try:
            gens.append(from_cycles(str(g), dg.size))
        except (ValueError, DiagramError) as e:
            raise _fail(text, "generators", f"{g!r}: {e}") from None
    try:
        base = EquivariantDiagram(dg, tuple(gens))
    except DiagramError as e:
        raise _fail(text, "generators", str(e)) from None
    mu = data.get("mu", [])
    if not isinstance(mu, list) or not all(isinstance(v, int) for v in mu):
        raise _fail(text, "mu", "expected a list of node ids")
    d = DeligneDynkinDiagram(base, frozenset(mu))
    v = validate(d)
    if not v.ok:
        raise _fail(text, "mu", "; ".join(v.problems))
    cover = phi = None
    if "cover" in data:
        k = len(dg.components)
        try:
            cover = DoubleCover(k, tuple(from_cycles(str(c), 2 * k) for c in data["cover"]))
        except (ValueError, DiagramError) as e:
            raise _fail(text, "cover", str(e)) from None
    if "phi" in data:
        if not isinstance(data["phi"], list):
            raise _fail(text, "phi", "expected a list of cover points")
        phi = frozenset(int(x) for x in data["phi"])
    return DiagramFile(d, cover, phi)


def load(path: str) -> DiagramFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_data(d: DeligneDynkinDiagram, cover: DoubleCover | None = None, phi=None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "components": [[t, r] for t, r in d.diagram.spec()],
        "generators": [to_cycles(g) for g in d.generators],
        "mu": sorted(d.mu),
    }
    if cover is not None:
        out["cover"] = [to_cycles(g) for g in cover.generators]
    if phi is not None:
        out["phi"] = sorted(phi)
    return out


def dumps(d: DeligneDynkinDiagram, cover: DoubleCover | None = None, phi=None) -> str:
    return json.dumps(to_data(d, cover, phi), indent=2, sort_keys=True) + "\n"


def pair_data(d1: DeligneDynkinDiagram, d2: DeligneDynkinDiagram, f: ComponentMap, label: str = "") -> dict[str, Any]:
    return {"d1": to_data(d1), "d2": to_data(d2), "f": list(f.mapping), "label": label}


def pair_from_data(data: dict[str, Any]) -> tuple[DeligneDynkinDiagram, DeligneDynkinDiagram, ComponentMap]:
    return from_data(data["d1"]).diagram, from_data(data["d2"]).diagram, ComponentMap(tuple(data["f"]))
