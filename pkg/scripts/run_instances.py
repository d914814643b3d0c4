"""Run the fixture suite and print one row per instance, optionally sweeping the degree bound.

    python scripts/run_instances.py
    python scripts/run_instances.py --bounds 0 1 2 --csv sweep.csv
"""

import argparse
import csv
import sys
import time
from pathlib import Path

from quatnss.instances import instance_files, load_instance
from quatnss.nss import check_nullstellensatz_instance

ROOT = Path(__file__).resolve().parents[1]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("directory", nargs="?", default=str(ROOT / "instances"))
    ap.add_argument("--bounds", type=int, nargs="+", default=[None],
                    help="degree bounds to try (default: each instance's own)")
    ap.add_argument("--max-tuple", type=int, default=None)
    ap.add_argument("--csv", help="also write the rows to this CSV file")
    args = ap.parse_args(argv)

    rows = []
    for path in instance_files(args.directory):
        inst = load_instance(path)
        for b in args.bounds:
            t0 = time.perf_counter()
            r = check_nullstellensatz_instance(inst, degree_bound=b, max_tuple=args.max_tuple)
            rows.append({
                "instance": r.name, "theorem": r.theorem, "bound": r.options["degree_bound"],
                "geometric": r.geometric, "algebraic": r.algebraic,
                "radical_equality": "" if r.radical_equality is None else r.radical_equality,
                "steps": r.closure_certificate.count("step "), "consistent": r.consistent,
                "seconds": round(time.perf_counter() - t0, 3),
            })
    cols = list(rows[0]) if rows else []
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            w.writerows(rows)
    return 0 if all(r["consistent"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
