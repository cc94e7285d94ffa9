"""Brute-force ground truth at desk scale.

Everything here is exhaustive by design and refuses graphs with more than
``DEFAULT_MAX_N`` vertices unless told otherwise.  Subset enumeration runs in
increasing-size order; long enumerations can be partitioned across worker
processes, and results are canonically sorted so they never depend on the
worker count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from multiprocessing import Pool
from .certificates import KIND_OCT, KIND_ST_SEPARATOR, Witness
from .graph import (
    CycleRecord,
    Graph,
    bits,
    component_masks,
    is_bipartite_mask,
    mask_of,
    reach_mask,
    set_of,
)

DEFAULT_MAX_N = 22


class OracleSizeError(ValueError):
    """Instance exceeds the desk-scale guard for exhaustive search."""


def _guard(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        raise OracleSizeError(
            f"oracle refuses n={g.n} > {max_n}; raise max_n only if you accept "
            "exponential running time"
        )


@dataclass(frozen=True)
class Separation:
    """Cover (X, Y) of V with no edges between the strict sides."""

    x_side: frozenset[int]
    y_side: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.x_side & self.y_side)

    def validate(self, g: Graph) -> None:
        if self.x_side | self.y_side != frozenset(g.vertices()):
            raise ValueError("separation sides must cover every vertex")
        xonly = self.x_side - self.y_side
        yonly = self.y_side - self.x_side
        ymask = mask_of(yonly)
        for u in xonly:
            if g.adj_masks[u] & ymask:
                raise ValueError(f"edge between strict sides at vertex {u}")


@dataclass(frozen=True)
class BreakabilityVerdict:
    breakable: bool
    witness: Separation | None = None


# ---------------------------------------------------------------------------
# Minimal st-separator enumeration.


def _minimal_stsep_chunk(
    g: Graph, s: int, t: int, subsets: list[tuple[int, ...]]
) -> list[tuple[int, ...]]:
    full = g.full_mask
    smask, tmask = 1 << s, 1 << t
    out = []
    for zs in subsets:
        zmask = mask_of(zs)
        if reach_mask(g, smask, full & ~zmask) & tmask:
            continue
        if all(
            reach_mask(g, smask, full & ~(zmask & ~(1 << v))) & tmask for v in zs
        ):
            out.append(zs)
    return out


def enumerate_minimal_st_separators(
    g: Graph,
    s: int,
    t: int,
    size_cap: int | None = None,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> list[frozenset[int]]:
    """All minimal st-separators, optionally capped by size, canonically sorted."""
    _guard(g, max_n)
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise ValueError("s and t must be distinct")
    if g.has_edge(s, t):
        return []
    candidates = [v for v in g.vertices() if v not in (s, t)]
    top = len(candidates) if size_cap is None else min(size_cap, len(candidates))
    found: list[tuple[int, ...]] = []
    for r in range(top + 1):
        combos = list(itertools.combinations(candidates, r))
        found.extend(_run_chunked(_minimal_stsep_chunk, (g, s, t), combos, jobs))
    return [frozenset(zs) for zs in sorted(found, key=lambda zs: (len(zs), zs))]


def _run_chunked(fn, ctx: tuple, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 4 * jobs:
        return fn(*ctx, items)
    chunks = [items[i::jobs] for i in range(jobs)]
    with Pool(jobs) as pool:
        parts = pool.starmap(fn, [(*ctx, chunk) for chunk in chunks])
    return [x for part in parts for x in part]


def maxmin_stsep_bruteforce(
    g: Graph,
    s: int,
    t: int,
    k: int,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> Witness | None:
    """Largest minimal st-separator if it reaches size ``k``, else ``None``."""
    if k < 1:
        raise ValueError("k must be positive")
    seps = enumerate_minimal_st_separators(g, s, t, max_n=max_n, jobs=jobs)
    if not seps:
        return None
    best_size = max(len(z) for z in seps)
    if best_size < k:
        return None
    best = min(
        (z for z in seps if len(z) == best_size), key=lambda z: tuple(sorted(z))
    )
    return Witness(
        kind=KIND_ST_SEPARATOR,
        solution=best,
        trace=(
            f"bruteforce: {len(seps)} minimal st-separators enumerated",
            f"selected max-size Z={sorted(best)}",
        ),
        s=s,
        t=t,
        k=k,
    )


# ---------------------------------------------------------------------------
# Minimal oct enumeration.


def _minimal_oct_chunk(g: Graph, subsets: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    full = g.full_mask
    out = []
    for zs in subsets:
        zmask = mask_of(zs)
        rest = full & ~zmask
        if not is_bipartite_mask(g, rest):
            continue
        if all(not is_bipartite_mask(g, rest | (1 << v)) for v in zs):
            out.append(zs)
    return out


def enumerate_minimal_octs(
    g: Graph,
    size_cap: int | None = None,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> list[frozenset[int]]:
    _guard(g, max_n)
    top = g.n if size_cap is None else min(size_cap, g.n)
    found: list[tuple[int, ...]] = []
    for r in range(top + 1):
        combos = list(itertools.combinations(range(g.n), r))
        found.extend(_run_chunked(_minimal_oct_chunk, (g,), combos, jobs))
    return [frozenset(zs) for zs in sorted(found, key=lambda zs: (len(zs), zs))]


def maxmin_oct_bruteforce(
    g: Graph, k: int, max_n: int = DEFAULT_MAX_N, jobs: int = 1
) -> Witness | None:
    """Largest minimal oct if it reaches size ``k``, else ``None``."""
    if k < 1:
        raise ValueError("k must be positive")
    octs = enumerate_minimal_octs(g, max_n=max_n, jobs=jobs)
    best_size = max(len(z) for z in octs)
    if best_size < k:
        return None
    best = min(
        (z for z in octs if len(z) == best_size), key=lambda z: tuple(sorted(z))
    )
    return Witness(
        kind=KIND_OCT,
        solution=best,
        trace=(
            f"bruteforce: {len(octs)} minimal octs enumerated",
            f"selected max-size Z={sorted(best)}",
        ),
        k=k,
    )


# ---------------------------------------------------------------------------
# (q, k)-breakability.


def breakability_witness(
    g: Graph, q: int, k: int, max_n: int = DEFAULT_MAX_N
) -> BreakabilityVerdict:
    """Search every candidate order-<=k separator for a witnessing separation.

    After removing a candidate ``Z``, the components of ``G - Z`` must split
    into two groups of total size >= q each; the grouping is decided by a
    subset-sum reachability pass over component sizes.
    """
    _guard(g, max_n)
    if q < 1:
        raise ValueError("q must be positive")
    if k < 0:
        raise ValueError("k must be non-negative")
    for r in range(min(k, g.n) + 1):
        for zs in itertools.combinations(range(g.n), r):
            zmask = mask_of(zs)
            comps = component_masks(g, g.full_mask & ~zmask)
            sizes = [c.bit_count() for c in comps]
            total = sum(sizes)
            if total < 2 * q:
                continue
            group = _subset_sum_group(sizes, q, total - q)
            if group is None:
                continue
            x_strict = 0
            for i in group:
                x_strict |= comps[i]
            x_side = frozenset(zs) | set_of(x_strict)
            y_side = frozenset(g.vertices()) - set_of(x_strict)
            sep = Separation(x_side, y_side)
            sep.validate(g)
            return BreakabilityVerdict(True, sep)
    return BreakabilityVerdict(False, None)


def _subset_sum_group(sizes: list[int], lo: int, hi: int) -> list[int] | None:
    """Indices whose sizes sum into [lo, hi], or None; bitset subset-sum DP."""
    if lo > hi:
        return None
    reach = 1  # bit s set <=> sum s achievable
    steps = []
    for c in sizes:
        steps.append(reach)
        reach |= reach << c
    window = ((1 << (hi - lo + 1)) - 1) << lo
    if not reach & window:
        return None
    target = (reach & window).bit_length() - 1
    chosen = []
    for i in range(len(sizes) - 1, -1, -1):
        before = steps[i]
        if not (before >> target) & 1:
            chosen.append(i)
            target -= sizes[i]
    assert target == 0
    return chosen


# ---------------------------------------------------------------------------
# Induced-path and induced-odd-cycle queries (NP-hard in general; exhaustive
# search with chordality pruning, desk scale only).


def exists_induced_st_path_through(
    g: Graph, s: int, t: int, v: int, max_n: int = DEFAULT_MAX_N
) -> tuple[bool, tuple[int, ...] | None]:
    """Chordless s-t path containing ``v``, if one exists."""
    _guard(g, max_n)
    for w in (s, t, v):
        g.check_vertex(w)
    if len({s, t, v}) != 3:
        raise ValueError("s, t, v must be pairwise distinct")
    adj = g.adj_masks
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], pmask: int, blocked: int) -> bool:
        last = path[-1]
        if last == t:
            if (pmask >> v) & 1:
                found.append(tuple(path))
                return True
            return False
        for u in bits(adj[last] & ~pmask & ~blocked):
            # u may touch only the path head; interior adjacency makes a chord
            if extend(path + [u], pmask | (1 << u), blocked | (adj[last] & ~(1 << u))):
                return True
        return False

    ok = extend([s], 1 << s, 0)
    return (True, found[0]) if ok else (False, None)


def exists_induced_odd_cycle_through(
    g: Graph, v: int, max_n: int = DEFAULT_MAX_N
) -> tuple[bool, CycleRecord | None]:
    """Chordless odd cycle containing ``v``, if one exists."""
    _guard(g, max_n)
    g.check_vertex(v)
    adj = g.adj_masks
    comp = reach_mask(g, 1 << v, g.full_mask)
    if is_bipartite_mask(g, comp):
        return False, None
    found: list[CycleRecord] = []

    def extend(path: list[int], pmask: int, blocked: int) -> bool:
        last = path[-1]
        if len(path) >= 3 and adj[last] & (1 << v):
            # last must close here: keeping it interior would chord back to v
            if len(path) % 2 == 1 and path[1] < last:
                found.append(CycleRecord.canonical(path))
                return True
            return False
        for u in bits(adj[last] & ~pmask & ~blocked):
            if extend(path + [u], pmask | (1 << u), blocked | (adj[last] & ~(1 << u))):
                return True
        return False

    for first in sorted(bits(adj[v] & comp)):
        if extend([v, first], (1 << v) | (1 << first), 0):
            cyc = found[0]
            cyc.validate(g)
            return True, cyc
    return False, None


def exists_induced_odd_path(
    g: Graph, a: int, b: int, max_n: int = DEFAULT_MAX_N
) -> tuple[bool, tuple[int, ...] | None]:
    """Chordless a-b path of odd edge count, if one exists (exhaustive)."""
    _guard(g, max_n)
    g.check_vertex(a)
    g.check_vertex(b)
    if a == b:
        raise ValueError("a and b must be distinct")
    adj = g.adj_masks
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], pmask: int, blocked: int) -> bool:
        last = path[-1]
        if last == b:
            if len(path) % 2 == 0:  # odd edge count
                found.append(tuple(path))
                return True
            return False
        for u in bits(adj[last] & ~pmask & ~blocked):
            if extend(path + [u], pmask | (1 << u), blocked | (adj[last] & ~(1 << u))):
                return True
        return False

    ok = extend([a], 1 << a, 0)
    return (True, found[0]) if ok else (False, None)
