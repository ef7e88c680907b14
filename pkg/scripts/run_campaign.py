"""Run a campaign at chosen caps and write its JSON report."""
from __future__ import annotations

import argparse
import json
import os
import sys

from ddkit.campaign import campaign_ok, run_campaign
from ddkit.instances import Bounds


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("kind", choices=("local-global", "diagrams"))
    p.add_argument("--max-order", type=int, default=24)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("DDKIT_JOBS", "1")))
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    args = p.parse_args()
    bounds = Bounds(max_order=args.max_order, max_rank=args.max_rank)
    report = run_campaign(args.kind, bounds, jobs=args.jobs, progress=lambda m: print(m, file=sys.stderr))
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"totals: {report['totals']}  failures: {len(report['failures'])}", file=sys.stderr)
    return 0 if campaign_ok(report) else 1


if __name__ == "__main__":
    sys.exit(main())
