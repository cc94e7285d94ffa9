#!/usr/bin/env python3
"""Batch experiment: FPT solvers vs brute-force oracles on random instances.

Generates seeded G(n, p) graphs, keeps the instances whose unbreakability
promise holds, runs both routes and reports agreement plus search statistics.

    python scripts/compare_solvers.py --count 200 --max-n 10 --seed 7
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time

from maxminsep.graph import gnp_graph
from maxminsep.oct_fpt import solve_unbreakable_oct
from maxminsep.oracle import breakability_witness, maxmin_oct_bruteforce, maxmin_stsep_bruteforce
from maxminsep.stsep_fpt import solve_unbreakable_stsep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--problem", choices=["stsep", "oct", "both"], default="both")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    stats = {"stsep": [0, 0, 0], "oct": [0, 0, 0]}  # instances, yes, mismatches
    t0 = time.time()
    for i in range(args.count):
        n = rng.randint(4, args.max_n)
        p = rng.choice([0.3, 0.5, 0.7, 0.9])
        g = gnp_graph(n, p, seed=rng.randint(0, 2**31))
        if args.problem in ("stsep", "both"):
            for q, k in itertools.product((1, 2, 3), (2, 3)):
                if breakability_witness(g, q, k).breakable:
                    continue
                pairs = [
                    (s, t)
                    for s, t in itertools.combinations(range(n), 2)
                    if not g.has_edge(s, t)
                ]
                for s, t in pairs[:4]:
                    fpt = solve_unbreakable_stsep(g, s, t, k, q)
                    oracle = maxmin_stsep_bruteforce(g, s, t, k)
                    stats["stsep"][0] += 1
                    stats["stsep"][1] += fpt.verdict == "yes"
                    stats["stsep"][2] += (fpt.verdict == "yes") != (oracle is not None)
        if args.problem in ("oct", "both"):
            for k in (1, 2, 3):
                if breakability_witness(g, 1, 2 * k).breakable:
                    continue
                fpt = solve_unbreakable_oct(g, k, 1, force_fpt_path=True)
                oracle = maxmin_oct_bruteforce(g, k)
                stats["oct"][0] += 1
                stats["oct"][1] += fpt.verdict == "yes"
                stats["oct"][2] += (fpt.verdict == "yes") != (oracle is not None)
    elapsed = time.time() - t0
    for name, (total, yes, bad) in stats.items():
        if total:
            print(f"{name}: {total} instances, {yes} yes, {bad} mismatches")
    print(f"done in {elapsed:.1f}s")
    return 1 if any(s[2] for s in stats.values()) else 0


if __name__ == "__main__":
    sys.exit(main())
