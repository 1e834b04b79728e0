"""Build and verify the K_{r+2} certificates in KG(2k+r, k) over a (k, r) grid.

    python3 scripts/kneser_grid.py --k-max 7 --r-max 6
    python3 scripts/kneser_grid.py --k-max 9 --r-max 12 --json grid.json
"""

import argparse
import json
import math
import time

from oddsub.certify import Certificate, verify_subdivision
from oddsub.graphs import materialize
from oddsub.subdivision_kneser import build_theorem2


def run_one(k, r, materialize_limit):
    t0 = time.perf_counter()
    cert = build_theorem2(k, r)
    rep = verify_subdivision(cert)
    elapsed = time.perf_counter() - t0
    row = {
        "k": k, "r": r, "pattern": cert.pattern, "regime": cert.meta["regime"],
        "verdict": rep.verdict, "lengths": sorted(set(cert.lengths().values())),
        "repairs": len(cert.meta["repairs"]), "seconds": round(elapsed, 4),
        "host_vertices": math.comb(2 * k + r, k), "materialized": None,
    }
    if row["host_vertices"] <= materialize_limit:
        g = materialize(cert.host, cap=materialize_limit)
        row["materialized"] = verify_subdivision(Certificate(g, cert.terminals, cert.paths)).verdict
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=7)
    ap.add_argument("--r-min", type=int, default=3)
    ap.add_argument("--r-max", type=int, default=6)
    ap.add_argument("--materialize-limit", type=int, default=5_000,
                    help="re-verify on the explicit graph when it has at most this many vertices")
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()

    rows = []
    print(f"{'k':>3} {'r':>3} {'pattern':>8} {'regime':>6} {'lengths':>12} {'repairs':>7} {'verdict':>7} "
          f"{'explicit':>8} {'sec':>8}")
    for k in range(args.k_min, args.k_max + 1):
        for r in range(args.r_min, args.r_max + 1):
            row = run_one(k, r, args.materialize_limit)
            rows.append(row)
            print(f"{k:>3} {r:>3} {row['pattern']:>8} {row['regime']:>6} {str(row['lengths']):>12} "
                  f"{row['repairs']:>7} {row['verdict']:>7} {str(row['materialized'] or '-'):>8} "
                  f"{row['seconds']:>8.4f}")
    bad = [r for r in rows if r["verdict"] != "pass" or r["materialized"] == "fail"]
    print(f"{len(rows)} instances, {len(bad)} failures")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
