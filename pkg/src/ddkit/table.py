"""Connected Dynkin diagrams with a special node, one row per isomorphism class.

Each row lists the special node ``alpha``, the ``alpha``-symplectic nodes
and the labels ``<alpha, omega>`` for every node ``omega`` (Bourbaki
numbering, 1-based in the output).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import build_diagram, pairing, special_nodes, symplectic_nodes


@dataclass(frozen=True)
class TableRow:
    name: str
    tag: str
    rank: int
    special: int  # 1-based
    symplectic: tuple[int, ...]  # 1-based
    labels: tuple[Fraction, ...]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "type": [self.tag, self.rank],
            "special": self.special,
            "symplectic": list(self.symplectic),
            "labels": [str(x) for x in self.labels],
        }

    def as_text(self) -> str:
        labels = " ".join(str(x) for x in self.labels)
        sym = ",".join(str(x) for x in self.symplectic) or "-"
        return f"{self.name:<8} special={self.special:<2} symplectic={{{sym}}}  labels: {labels}"


def row(tag: str, rank: int, alpha: int, name: str | None = None) -> TableRow:
    """Row for ``tag``/``rank`` with special node ``alpha`` (1-based)."""
    d = build_diagram([(tag, rank)])
    a = alpha - 1
    if a not in special_nodes(d, 0):
        raise ValueError(f"node {alpha} of {tag}{rank} is not special")
    sym = tuple(sorted(v + 1 for v in symplectic_nodes(d, a)))
    labels = tuple(pairing(d, a, w) for w in range(rank))
    return TableRow(name or f"{tag}{rank}", tag, rank, alpha, sym, labels)


def deligne_table(max_rank: int = 8) -> list[TableRow]:
    """Rows in a fixed order: A (each special position), B, C, D^R, D^H, E6, E7."""
    rows = []
    for n in range(1, max_rank + 1):
        for p in range(1, n + 1):
            rows.append(row("A", n, p, f"A{n}[{p}]"))
    rows += [row("B", n, 1) for n in range(2, max_rank + 1)]
    rows += [row("C", n, n) for n in range(3, max_rank + 1)]
    rows += [row("D", n, 1, f"D{n}^R") for n in range(4, max_rank + 1)]
    rows += [row("D", n, n, f"D{n}^H") for n in range(5, max_rank + 1)]
    if max_rank >= 6:
        rows.append(row("E", 6, 6))
    if max_rank >= 7:
        rows.append(row("E", 7, 7))
    return rows
