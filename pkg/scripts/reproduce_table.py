"""Print the special-node table up to a rank cap and compare it with the closed forms."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import expected_table  # noqa: E402

from ddkit.table import deligne_table  # noqa: E402


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=8)
    args = p.parse_args()
    want = expected_table(args.max_rank)
    bad = 0
    for r in deligne_table(args.max_rank):
        w = want[r.name]
        ok = (r.special, set(r.symplectic), r.labels) == (w["special"], w["symplectic"], w["labels"])
        bad += not ok
        print(("   " if ok else "!! ") + r.as_text())
    print(f"{len(want) - bad}/{len(want)} rows agree with the closed forms")
    return int(bad > 0)


if __name__ == "__main__":
    sys.exit(main())
