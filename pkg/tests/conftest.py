"""Shared fixtures: exhaustive graph corpora (disk cached) and seeded
random-instance factories."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from maxminsep import corpus
from maxminsep.graph import Graph, gnp_graph, is_bipartite_mask

CACHE_DIR = Path(__file__).parent / "_corpus_cache"


def _load_level(n: int) -> tuple[Graph, ...]:
    """all_graphs(n) with a disk cache validated by the known counts."""
    CACHE_DIR.mkdir(exist_ok=True)
    path = CACHE_DIR / f"graphs_n{n}.txt"
    if path.exists():
        graphs = corpus.loads(path.read_text())
        if len(graphs) == corpus.GRAPH_COUNTS[n]:
            return tuple(graphs)
    graphs = corpus.all_graphs(n)
    path.write_text(corpus.dumps(graphs))
    return graphs


def _up_to(n: int, connected: bool = False) -> list[Graph]:
    out = []
    for size in range(1, n + 1):
        level = _load_level(size)
        if connected:
            from maxminsep.graph import is_connected_mask

            level = [g for g in level if is_connected_mask(g, g.full_mask)]
        out.extend(level)
    return out


@pytest.fixture(scope="session")
def graphs_up_to_7() -> list[Graph]:
    return _up_to(7)


@pytest.fixture(scope="session")
def connected_up_to_7() -> list[Graph]:
    return _up_to(7, connected=True)


@pytest.fixture(scope="session")
def graphs_up_to_8() -> list[Graph]:
    return _up_to(8)


@pytest.fixture(scope="session")
def connected_bipartite_up_to_8() -> list[Graph]:
    return [
        g
        for g in _up_to(8, connected=True)
        if is_bipartite_mask(g, g.full_mask)
    ]


def random_graph_corpus(count: int, max_n: int, seed: int, dense: bool = False) -> list[Graph]:
    """Seeded G(n, p) mix; ``dense`` biases toward unbreakable candidates."""
    probs = (0.55, 0.7, 0.85, 0.95) if dense else (0.2, 0.35, 0.5, 0.65, 0.8)
    out = []
    for i in range(count):
        rng = random.Random(seed * 1_000_003 + i)
        n = rng.randint(4, max_n)
        p = probs[i % len(probs)]
        out.append(gnp_graph(n, p, seed=rng.randint(0, 2**31)))
    return out


@pytest.fixture(scope="session")
def random_graphs_500() -> list[Graph]:
    return random_graph_corpus(500, 10, seed=20240601)


@pytest.fixture(scope="session")
def random_graphs_300_dense() -> list[Graph]:
    return random_graph_corpus(300, 10, seed=20240602, dense=True)


# ---------------------------------------------------------------------------
# Independent (set-based, mask-free) reference predicates used to cross-check
# the production checkers.


def naive_connected(g: Graph, removed: set[int], s: int, t: int) -> bool:
    if s in removed or t in removed:
        return False
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return t in seen


def naive_is_minimal_st_separator(g: Graph, s: int, t: int, z: set[int]) -> bool:
    if naive_connected(g, z, s, t):
        return False
    return all(naive_connected(g, z - {v}, s, t) for v in z)


def naive_is_bipartite(g: Graph, removed: set[int]) -> bool:
    color: dict[int, int] = {}
    for start in range(g.n):
        if start in removed or start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in removed:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def naive_is_minimal_oct(g: Graph, z: set[int]) -> bool:
    if not naive_is_bipartite(g, z):
        return False
    return all(not naive_is_bipartite(g, z - {v}) for v in z)


def random_separator_certificate(rng: random.Random):
    """(graph, certificate, request, order, s, t) with the certificate valid."""
    from maxminsep.certificates import (
        ExtensionRequest,
        SeparatorCertificate,
        check_separator_certificate,
    )

    while True:
        g = gnp_graph(
            rng.randint(4, 12), rng.choice([0.3, 0.45, 0.6]), rng.randint(0, 2**30)
        )
        pairs = [
            (s, t)
            for s in range(g.n)
            for t in range(s + 1, g.n)
            if not g.has_edge(s, t)
        ]
        if not pairs:
            continue
        s, t = rng.choice(pairs)
        s_side, t_side = {s}, {t}
        for _ in range(rng.randint(0, 3)):
            frontier = [
                v
                for v in sorted(set().union(*(g.adj[u] for u in s_side)))
                if v not in s_side and v != t and t not in g.adj[v]
            ]
            if not frontier:
                break
            s_side.add(rng.choice(frontier))
        for _ in range(rng.randint(0, 3)):
            frontier = [
                v
                for v in sorted(set().union(*(g.adj[u] for u in t_side)))
                if v not in t_side
                and v not in s_side
                and not any(w in s_side for w in g.adj[v])
            ]
            if not frontier:
                break
            t_side.add(rng.choice(frontier))
        cert = SeparatorCertificate(frozenset(s_side), frozenset(t_side))
        common = sorted(
            v
            for v in range(g.n)
            if v not in s_side
            and v not in t_side
            and any(w in s_side for w in g.adj[v])
            and any(w in t_side for w in g.adj[v])
        )
        forced = frozenset(v for v in common if rng.random() < 0.5)
        req = ExtensionRequest(forced)
        if not check_separator_certificate(g, cert, req):
            continue
        order = [v for v in range(g.n) if v not in s_side and v not in t_side]
        rng.shuffle(order)
        return g, cert, req, order, s, t


def random_oct_certificate(rng: random.Random):
    """(graph, certificate, request, order) with the certificate valid."""
    from maxminsep.certificates import (
        ExtensionRequest,
        OctCertificate,
        check_oct_certificate,
    )
    from maxminsep.graph import is_bipartite_mask, mask_of

    g = gnp_graph(
        rng.randint(4, 12), rng.choice([0.3, 0.45, 0.6]), rng.randint(0, 2**30)
    )
    base: set[int] = set()
    order_in = list(range(g.n))
    rng.shuffle(order_in)
    for v in order_in:
        if rng.random() < 0.6 and is_bipartite_mask(g, mask_of(base | {v})):
            base.add(v)
    closers = [
        v
        for v in range(g.n)
        if v not in base and not is_bipartite_mask(g, mask_of(base | {v}))
    ]
    forced = frozenset(v for v in closers if rng.random() < 0.5)
    cert = OctCertificate(frozenset(base))
    req = ExtensionRequest(forced)
    assert check_oct_certificate(g, cert, req)
    order = [v for v in range(g.n) if v not in base]
    rng.shuffle(order)
    return g, cert, req, order


def min_odd_cycle_len_bruteforce(g: Graph) -> int | None:
    """Minimum length over all simple odd cycles, by canonical-path DFS."""
    best: int | None = None

    def extend(path: list[int], on_path: set[int]) -> None:
        nonlocal best
        if best is not None and len(path) >= best:
            return
        last = path[-1]
        for u in sorted(g.adj[last]):
            if u == path[0] and len(path) >= 3:
                if len(path) % 2 == 1 and path[1] < last:
                    if best is None or len(path) < best:
                        best = len(path)
                continue
            if u in on_path or u < path[0]:
                continue
            on_path.add(u)
            extend(path + [u], on_path)
            on_path.remove(u)

    for v in range(g.n):
        if best == 3:
            break
        extend([v], {v})
    return best
