"""Immutable simple undirected graphs and the elementary procedures on them.

Vertices are dense integers ``0..n-1``.  The text format (see
:func:`parse_graph`) is 1-indexed.  Every operation is a pure function on an
immutable :class:`Graph`, so shared graphs are safe to use concurrently.

Internally most routines work on integer bitmasks (bit ``v`` set <=> vertex
``v`` present), which is what makes the desk-scale brute-force oracles and the
branching solvers fast enough in pure Python.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph construction or an out-of-contract vertex set."""


class ParseError(ValueError):
    """Malformed graph text; the message names the offending line."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if not (0 <= v < self.n):
                    raise GraphError(f"neighbor id {v} out of range for vertex {u}")
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if u not in self.adj[v]:
                    raise GraphError(f"edge {u}-{v} is not symmetric")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range (n={n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(n, tuple(frozenset(s) for s in nbrs))

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(nbrs) for nbrs in self.adj)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex id {v} out of range (n={self.n})")

    def check_subset(self, vs: Iterable[int]) -> frozenset[int]:
        out = frozenset(vs)
        for v in out:
            self.check_vertex(v)
        return out


# ---------------------------------------------------------------------------
# Text format: header "p <n> <m>", then m lines "e <u> <v>" (1-indexed),
# comment lines start with "c".


def parse_graph(text: str) -> Graph:
    n = -1
    m = -1
    edges: list[tuple[int, int]] = []
    edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise ParseError(f"line {lineno}: duplicate header: {line!r}")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed header: {line!r}")
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header: {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: malformed header: {line!r}")
        elif parts[0] == "e":
            if n < 0:
                raise ParseError(f"line {lineno}: edge before header: {line!r}")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed edge line: {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge line: {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex id out of range: {line!r}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop: {line!r}")
            edges.append((u - 1, v - 1))
            edge_lines += 1
        else:
            raise ParseError(f"line {lineno}: unknown line type: {line!r}")
    if n < 0:
        raise ParseError("missing header line 'p <n> <m>'")
    if edge_lines != m:
        raise ParseError(f"header declares {m} edges but found {edge_lines} edge lines")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"c {c}")
    es = g.edges()
    lines.append(f"p {g.n} {len(es)}")
    for u, v in es:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Mask-level primitives.


def reach_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start & allowed`` inside ``allowed``."""
    adj = g.adj_masks
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def component_masks(g: Graph, mask: int) -> list[int]:
    """Connected components of the induced subgraph on ``mask``, as masks."""
    comps = []
    rest = mask
    while rest:
        comp = reach_mask(g, rest & -rest, mask)
        comps.append(comp)
        rest &= ~comp
    return comps


def neighborhood_mask(g: Graph, mask: int) -> int:
    out = 0
    f = mask
    adj = g.adj_masks
    while f:
        low = f & -f
        out |= adj[low.bit_length() - 1]
        f ^= low
    return out & ~mask


def is_connected_mask(g: Graph, mask: int) -> bool:
    if mask == 0:
        return True
    return reach_mask(g, mask & -mask, mask) == mask


def two_color_masks(g: Graph, mask: int) -> tuple[int, int] | None:
    """Layered two-coloring of the induced subgraph on ``mask``.

    Returns ``(color0, color1)`` masks, or ``None`` when some component
    contains an odd cycle.
    """
    adj = g.adj_masks
    col0 = col1 = 0
    rest = mask
    while rest:
        level = rest & -rest
        seen = 0
        parity = 0
        while level:
            f = level
            nxt = 0
            while f:
                low = f & -f
                v = low.bit_length() - 1
                if adj[v] & level:
                    return None
                nxt |= adj[v]
                f ^= low
            if parity == 0:
                col0 |= level
            else:
                col1 |= level
            seen |= level
            level = nxt & mask & ~seen
            parity ^= 1
        rest &= ~seen
    return col0, col1


def is_bipartite_mask(g: Graph, mask: int) -> bool:
    return two_color_masks(g, mask) is not None


# ---------------------------------------------------------------------------
# Set-level operations.


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Open neighborhood: vertices outside ``s`` adjacent to some vertex of ``s``."""
    return set_of(neighborhood_mask(g, mask_of(g.check_subset(s))))


def connected_components(g: Graph, restrict: Iterable[int]) -> list[frozenset[int]]:
    """Partition ``restrict`` into maximal connected parts, sorted by minimum id."""
    mask = mask_of(g.check_subset(restrict))
    return [set_of(c) for c in component_masks(g, mask)]


@dataclass(frozen=True)
class TwoColoring:
    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class OddClosedWalk:
    """Closed walk of odd length; vertices[0] == vertices[-1]."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: Graph, restrict: Iterable[int] | None = None) -> None:
        vs = self.vertices
        if len(vs) < 4 or vs[0] != vs[-1]:
            raise GraphError("not a closed walk")
        if self.length % 2 == 0:
            raise GraphError("walk has even length")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise GraphError(f"walk step {a}-{b} is not an edge")
        if restrict is not None:
            inside = frozenset(restrict)
            if not set(vs) <= inside:
                raise GraphError("walk leaves the restricted vertex set")


def bipartition_or_odd_cycle(
    g: Graph, restrict: Iterable[int]
) -> TwoColoring | OddClosedWalk:
    """Two-color ``G[restrict]`` or exhibit an odd closed walk inside it."""
    mask = mask_of(g.check_subset(restrict))
    colored = two_color_masks(g, mask)
    if colored is not None:
        return TwoColoring(set_of(colored[0]), set_of(colored[1]))
    return _find_odd_closed_walk(g, mask)


def _find_odd_closed_walk(g: Graph, mask: int) -> OddClosedWalk:
    adj = g.adj_masks
    for root in bits(mask):
        dist = {root: 0}
        parent = {root: root}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in bits(adj[u] & mask):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
        for u in sorted(dist):
            for v in bits(adj[u] & mask):
                if v in dist and dist[v] == dist[u] and u < v:
                    pu = _path_to_root(parent, u)
                    pv = _path_to_root(parent, v)
                    walk = tuple(reversed(pu)) + tuple(pv)
                    return OddClosedWalk(walk)
    raise AssertionError("no odd closed walk in a non-bipartite restriction")


def _path_to_root(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] != path[-1]:
        path.append(parent[path[-1]])
    return path


@dataclass(frozen=True)
class CycleRecord:
    """A chordless odd cycle, stored in cyclic vertex order."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        k = len(vs)
        if k < 3 or k % 2 == 0:
            raise GraphError(f"cycle length {k} is not odd and >= 3")
        if len(set(vs)) != k:
            raise GraphError("cycle repeats a vertex")
        for i in range(k):
            if not g.has_edge(vs[i], vs[(i + 1) % k]):
                raise GraphError(f"cycle step {vs[i]}-{vs[(i + 1) % k]} is not an edge")
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                if g.has_edge(vs[i], vs[j]):
                    raise GraphError(f"chord {vs[i]}-{vs[j]}")

    @staticmethod
    def canonical(vertices: Iterable[int]) -> CycleRecord:
        """Rotate/reflect cyclic order: start at the minimum id, then toward
        its smaller neighbor."""
        vs = list(vertices)
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if len(vs) > 2 and vs[-1] < vs[1]:
            vs = [vs[0]] + vs[:0:-1]
        return CycleRecord(tuple(vs))


def shortest_odd_cycle(g: Graph, restrict: Iterable[int]) -> CycleRecord | None:
    """Minimum-length odd cycle of ``G[restrict]``, or ``None``.

    A shortest odd cycle is always chordless: a chord would split it into a
    strictly shorter odd cycle plus an even one.  Ties between equal-length
    cycles found by the search are broken by smallest sorted vertex tuple.
    """
    mask = mask_of(g.check_subset(restrict))
    return shortest_odd_cycle_mask(g, mask)


def shortest_odd_cycle_mask(g: Graph, mask: int) -> CycleRecord | None:
    adj = g.adj_masks
    best_len: int | None = None
    candidates: list[tuple[int, int, int]] = []  # (source, a, b)
    for src in bits(mask):
        dist = {src: 0}
        parent = {src: src}
        frontier = [src]
        while frontier:
            if best_len is not None and 2 * dist[frontier[0]] + 1 > best_len:
                break
            nxt = []
            for u in frontier:
                for v in bits(adj[u] & mask):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
        for u in dist:
            for v in bits(adj[u] & mask):
                if u < v and v in dist and dist[u] == dist[v]:
                    length = 2 * dist[u] + 1
                    if best_len is None or length < best_len:
                        best_len = length
                        candidates = [(src, u, v, parent)]
                    elif length == best_len:
                        candidates.append((src, u, v, parent))
    if best_len is None:
        return None
    best: CycleRecord | None = None
    for src, u, v, parent in candidates:
        pu = _path_to_root(parent, u)
        pv = _path_to_root(parent, v)
        walk = tuple(reversed(pu)) + tuple(pv)
        cycle = _extract_odd_cycle(list(walk))
        rec = CycleRecord.canonical(cycle)
        if best is None or tuple(sorted(rec.vertices)) < tuple(sorted(best.vertices)):
            best = rec
    return best


def _extract_odd_cycle(walk: list[int]) -> list[int]:
    """Extract a simple odd cycle from a closed odd walk (first == last).

    Splitting a closed odd walk at a repeated vertex yields two closed walks
    whose lengths sum to the original; exactly one of them is odd.
    """
    while True:
        first_pos: dict[int, int] = {}
        split = None
        for idx, v in enumerate(walk[:-1]):
            if v in first_pos:
                split = (first_pos[v], idx)
                break
            first_pos[v] = idx
        if split is None:
            return walk[:-1]
        i, j = split
        inner = walk[i : j + 1]
        outer = walk[: i + 1] + walk[j + 1 :]
        walk = inner if (j - i) % 2 == 1 else outer


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Materialize ``G[keep]`` with dense ids; returns (subgraph, old id per new id)."""
    old = tuple(sorted(g.check_subset(keep)))
    index = {v: i for i, v in enumerate(old)}
    edges = [
        (index[u], index[v])
        for u in old
        for v in g.adj[u]
        if u < v and v in index
    ]
    return Graph.from_edges(len(old), edges), old


# ---------------------------------------------------------------------------
# Deterministic instance generators (also exposed by the CLI).


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def clique_with_pendant_cycle(clique_n: int, cycle_len: int) -> Graph:
    """Clique on ``clique_n`` vertices sharing vertex 0 with a chordless odd
    cycle of length ``cycle_len`` whose other vertices are new."""
    if clique_n < 1:
        raise GraphError("clique needs at least 1 vertex")
    if cycle_len < 3 or cycle_len % 2 == 0:
        raise GraphError("pendant cycle length must be odd and >= 3")
    edges = [(i, j) for i in range(clique_n) for j in range(i + 1, clique_n)]
    ring = [0] + list(range(clique_n, clique_n + cycle_len - 1))
    for i in range(cycle_len):
        edges.append((ring[i], ring[(i + 1) % cycle_len]))
    return Graph.from_edges(clique_n + cycle_len - 1, edges)
