"""Certificates for K_{ceil((k+r)/8)} in KG(2k+r, k) with 2r | k-1, checked on the lazy oracle.

    python3 scripts/sparse_kneser.py --pairs 13,6 25,6 25,12 49,6 97,6
"""

import argparse
import time

from oddsub.certify import verify_subdivision
from oddsub.graphs import gaps, isles
from oddsub.subdivision_kneser import Theorem8Params, build_theorem8, theorem8_sets


def pair(text):
    k, r = text.split(",")
    return int(k), int(r)


def structure_ok(p, indices):
    for a, i in enumerate(indices):
        for j in indices[a + 1:]:
            marks = {p.k + i - 1, p.k + j}
            bs, cs = theorem8_sets(p, i, j)
            for s, b in enumerate(bs, 1):
                if (isles(b) if s % 2 else gaps(b)) != marks:
                    return False
            for s, c in enumerate(cs, 1):
                if set(sorted(gaps(c) if s % 2 else isles(c))[-2:]) != marks:
                    return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=pair, nargs="+", default=[(13, 6), (25, 6), (25, 12), (49, 6)])
    args = ap.parse_args()
    for k, r in args.pairs:
        p = Theorem8Params(k, r)
        t0 = time.perf_counter()
        cert = build_theorem8(p)
        rep = verify_subdivision(cert)
        sec = time.perf_counter() - t0
        idx = cert.meta["indices"]
        lengths = sorted(set(cert.lengths().values()))
        print(f"k={k:<3} r={r:<3} n={p.n:<4} pattern={cert.pattern:<5} indices={idx} "
              f"lengths={lengths} isles/gaps={'ok' if structure_ok(p, idx) else 'BROKEN'} "
              f"verdict={rep.verdict} ({sec:.3f}s)")
        print(f"    cases: {sorted(set(cert.meta['c_cases'].values()))}")


if __name__ == "__main__":
    main()
