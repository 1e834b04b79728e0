"""Repeatedly lift a totally odd clique through generalized Mycielskians.

    python3 scripts/mycielski_tower.py --base c5 --ms 2 2 3 --subdivision
"""

import argparse
import time

from oddsub.certify import IMMERSION, SUBDIVISION, Certificate, verify
from oddsub.graphs import complete_graph, cycle_graph
from oddsub.mycielski_lift import lift_immersion, lift_subdivision


def base_certificate(name, kind):
    if name == "c5":
        g = cycle_graph(5)
        v = g.vertices
        paths = {(0, 1): [v[0], v[1]], (1, 2): [v[1], v[2]], (0, 2): [v[0], v[4], v[3], v[2]]}
        return Certificate(g, [v[0], v[1], v[2]], paths, kind)
    t = int(name.lstrip("k"))
    g = complete_graph(t)
    v = g.vertices
    return Certificate(g, list(v), {(a, b): [v[a], v[b]] for a in range(t) for b in range(a + 1, t)}, kind)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--base", default="k3", help="c5, or kN for the complete graph K_N")
    ap.add_argument("--ms", type=int, nargs="+", default=[2, 2, 2])
    ap.add_argument("--subdivision", action="store_true")
    args = ap.parse_args()

    kind = SUBDIVISION if args.subdivision else IMMERSION
    lift = lift_subdivision if args.subdivision else lift_immersion
    cert = base_certificate(args.base, kind)
    print(f"base: {cert.pattern} {kind} in a {cert.host.num_vertices()}-vertex graph")
    for m in args.ms:
        t0 = time.perf_counter()
        cert = lift(cert, m)
        rep = verify(cert)
        sec = time.perf_counter() - t0
        lengths = sorted(set(cert.lengths().values()))
        print(f"m={m}: {cert.pattern} in {cert.host.num_vertices()} vertices, case {cert.meta['case']}, "
              f"lengths {lengths}, {rep.verdict} ({sec:.3f}s)")


if __name__ == "__main__":
    main()
