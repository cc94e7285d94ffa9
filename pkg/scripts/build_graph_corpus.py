#!/usr/bin/env python3
"""Pre-build the exhaustive small-graph corpus the test suite sweeps over.

Writes one file per vertex count under tests/_corpus_cache/ and checks the
class counts against the known sequences.

    python scripts/build_graph_corpus.py --max-n 8
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from maxminsep import corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument(
        "--out-dir", default=str(Path(__file__).resolve().parent.parent / "tests" / "_corpus_cache")
    )
    args = ap.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(1, args.max_n + 1):
        t0 = time.time()
        graphs = corpus.all_graphs(n)
        expected = corpus.GRAPH_COUNTS.get(n)
        if expected is not None and len(graphs) != expected:
            print(f"n={n}: got {len(graphs)} classes, expected {expected}", file=sys.stderr)
            return 1
        path = out_dir / f"graphs_n{n}.txt"
        path.write_text(corpus.dumps(graphs))
        print(f"n={n}: {len(graphs)} graphs -> {path} ({time.time() - t0:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
