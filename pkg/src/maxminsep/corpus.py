"""Exhaustive enumeration of small graphs up to isomorphism.

The test suites sweep every graph on up to 8 vertices, so the enumeration has
to be exact: graphs on n vertices are built by attaching a new vertex to every
graph on n - 1 vertices in all 2^(n-1) ways and deduplicating by a canonical
form.  The canonical form is the lexicographically smallest row-by-row
adjacency encoding over vertex orders, computed by a branch-and-prune search
(candidates are pre-filtered by an invariant signature, and a homogeneous
remainder is placed without branching, which keeps cliques and their friends
cheap).

Known counts (graphs / connected graphs on n vertices):
    n:          1  2  3   4   5    6     7      8
    all:        1  2  4  11  34  156  1044  12346
    connected:  1  1  2   6  21  112   853  11117
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .graph import Graph, bits, is_connected_mask, mask_of

GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
CONNECTED_GRAPH_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def canonical_key(n: int, adj_masks: tuple[int, ...]) -> tuple[int, ...]:
    """Per-slot adjacency rows of the minimizing vertex order.

    Slot j's row holds the adjacency bits of the j-th placed vertex toward
    slots 0..j-1 (slot-0 bit highest).  The key is the lexicographically
    smallest row sequence over all placement orders, restricted at every slot
    to candidates of minimal invariant signature among the row-minimal ones
    (an isomorphism-invariant restriction, so the result stays canonical).
    """
    if n <= 1:
        return ()
    degrees = [adj_masks[v].bit_count() for v in range(n)]
    signature = [
        (degrees[v], tuple(sorted(degrees[u] for u in bits(adj_masks[v]))))
        for v in range(n)
    ]
    best: list[int] | None = None

    def row_bits(v: int, order: list[int]) -> int:
        row = 0
        for u in order:
            row = (row << 1) | ((adj_masks[v] >> u) & 1)
        return row

    def compare_to_best(prefix: list[int]) -> int:
        assert best is not None
        for a, b in zip(prefix, best):
            if a != b:
                return -1 if a < b else 1
        return 0

    def homogeneous(rest: list[int], order: list[int]) -> bool:
        if len({row_bits(v, order) for v in rest}) != 1:
            return False
        inner = [adj_masks[v] & mask_of(rest) for v in rest]
        return all(x == 0 for x in inner) or all(
            x.bit_count() == len(rest) - 1 for x in inner
        )

    def dfs(order: list[int], rest: list[int], prefix: list[int]) -> None:
        nonlocal best
        tied = False
        if best is not None:
            cmp = compare_to_best(prefix)
            if cmp > 0:
                return
            tied = cmp == 0
        if not rest:
            if best is None or not tied:
                best = prefix
            return
        if homogeneous(rest, order):
            ordered = order[:]
            full = prefix[:]
            for v in sorted(rest):
                full.append(row_bits(v, ordered))
                ordered.append(v)
            if best is None or compare_to_best(full) < 0:
                best = full
            return
        slot_rows = {v: row_bits(v, order) for v in rest}
        row_min = min(slot_rows.values())
        if tied and row_min > best[len(order) - 1]:
            return
        cands = [v for v in rest if slot_rows[v] == row_min]
        sig_min = min(signature[v] for v in cands)
        for v in cands:
            if signature[v] == sig_min:
                dfs(order + [v], [u for u in rest if u != v], prefix + [row_min])

    start_sig = min(signature)
    for v in range(n):
        if signature[v] == start_sig:
            dfs([v], [u for u in range(n) if u != v], [])
    assert best is not None
    return tuple(best)


def graph_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    return g.n, canonical_key(g.n, g.adj_masks)


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of graphs on exactly n vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return (Graph(0, ()),)
    if n == 1:
        return (Graph(1, (frozenset(),)),)
    out: list[Graph] = []
    seen: set[tuple[int, ...]] = set()
    for parent in all_graphs(n - 1):
        parent_edges = parent.edges()
        for nbr_mask in range(1 << (n - 1)):
            edges = parent_edges + [(u, n - 1) for u in bits(nbr_mask)]
            child = Graph.from_edges(n, edges)
            key = canonical_key(n, child.adj_masks)
            if key not in seen:
                seen.add(key)
                out.append(child)
    return tuple(out)


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if is_connected_mask(g, g.full_mask))


def graphs_up_to(n: int, connected: bool = False) -> list[Graph]:
    source = connected_graphs if connected else all_graphs
    return [g for size in range(1, n + 1) for g in source(size)]


# ---------------------------------------------------------------------------
# Compact on-disk cache (one graph per line: "<n>:<upper-triangle-bits-hex>").


def dumps(graphs: Iterable[Graph]) -> str:
    lines = []
    for g in graphs:
        bits_value = 0
        pos = 0
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.has_edge(u, v):
                    bits_value |= 1 << pos
                pos += 1
        lines.append(f"{g.n}:{bits_value:x}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> list[Graph]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        n_str, bits_hex = line.split(":")
        n, bits_value = int(n_str), int(bits_hex, 16)
        edges = []
        pos = 0
        for u in range(n):
            for v in range(u + 1, n):
                if (bits_value >> pos) & 1:
                    edges.append((u, v))
                pos += 1
        out.append(Graph.from_edges(n, edges))
    return out
