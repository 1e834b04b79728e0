"""Survey zig(G) against chi(G) on random graphs and run the odd immersion where they agree.

    python3 scripts/zig_survey.py --samples 200 --max-n 9 --seed 1
"""

import argparse
import random
from collections import Counter

from oddsub.certify import verify_immersion
from oddsub.graphs import Graph
from oddsub.zigzag import build_theorem3, zig_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-build", action="store_true", help="skip the immersion construction")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    gap = Counter()
    modes = Counter()
    built = failed = 0
    examples = []
    for _ in range(args.samples):
        n = rng.randint(args.min_n, args.max_n)
        p = rng.uniform(0.2, 0.9)
        g = Graph(range(n), [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])
        rep = zig_report(g)
        gap[(rep.chi, rep.chi - rep.zig)] += 1
        if rep.zig < rep.chi and len(examples) < 3:
            examples.append((n, g.edges(), rep.zig, rep.chi))
        if rep.zig == rep.chi and rep.chi >= 2 and not args.no_build:
            cert = build_theorem3(g)
            built += 1
            if not verify_immersion(cert).passed:
                failed += 1
            modes.update(info["mode"] for info in cert.meta["pairs"].values())

    print("chi  chi-zig  count")
    for (chi, d), cnt in sorted(gap.items()):
        print(f"{chi:>3}  {d:>7}  {cnt:>5}")
    if not args.no_build:
        print(f"immersions built: {built}, failed verification: {failed}")
        print(f"path modes: {dict(modes)}")
    for n, edges, z, chi in examples:
        print(f"zig {z} < chi {chi} on {n} vertices: {edges}")


if __name__ == "__main__":
    main()
