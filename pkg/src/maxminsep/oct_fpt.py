"""MaxMin OCT pipeline for (q, 2k)-unbreakable graphs.

Three engines combine into the solver:

* :func:`classify_vertex` decides, for one vertex ``x``, whether some
  chordless odd cycle passes through it, and if it cannot tell cheaply it
  produces either a long chordless odd cycle or a large family of short ones
  (both of which certify a yes instance on their own).
* :func:`grow_from_long_cycle` turns a chordless odd cycle of length at least
  ``2q + 2`` into a verified minimal oct of size at least ``k`` by growing two
  path halves and two forced sets until the boundary is exhausted.
* :func:`oct_from_small_cycles` turns a large-enough family of short
  chordless odd cycles into a witness via a sunflower with a bipartite core.

Vertices on no chordless odd cycle are irrelevant and get deleted, after
which the solve restarts from scratch on the reduced graph; once the graph is
small enough the brute-force oracle finishes the job.
"""

from __future__ import annotations

import itertools
import sys
from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

from .certificates import (
    ExtensionRequest,
    KIND_OCT,
    OctCertificate,
    Witness,
    extend_oct_certificate,
    is_minimal_oct,
)
from .graph import (
    CycleRecord,
    Graph,
    induced_subgraph,
    is_bipartite_mask,
    is_connected_mask,
    mask_of,
    neighborhood_mask,
    set_of,
    shortest_odd_cycle_mask,
)
from .oracle import breakability_witness, maxmin_oct_bruteforce

VERDICT_YES = "yes"
VERDICT_NO = "no"
VERDICT_PROMISE_VIOLATION = "promise_violation"

OUTCOME_CYCLE_THROUGH_X = "cycle-through-x"
OUTCOME_LONG_CYCLE = "long-cycle"
OUTCOME_LARGE_FAMILY = "large-family"
OUTCOME_NO_CYCLE = "no-cycle-through-x"


# ---------------------------------------------------------------------------
# Sunflowers.


@dataclass(frozen=True)
class SunflowerDecomposition:
    core: frozenset[int]
    petals: tuple[frozenset[int], ...]

    def sets(self) -> list[frozenset[int]]:
        return [self.core | p for p in self.petals]

    def validate(self) -> None:
        for i, p in enumerate(self.petals):
            if p & self.core:
                raise ValueError("petal overlaps the core")
            for other in self.petals[i + 1 :]:
                if p & other:
                    raise ValueError("petals are not pairwise disjoint")
        if len(self.petals) >= 2 and any(not p for p in self.petals):
            raise ValueError("empty petal in a sunflower with >= 2 sets")


def find_sunflower(
    family: Sequence[Iterable[int]], k: int
) -> SunflowerDecomposition | None:
    """Sunflower with >= k petals among distinct equal-size sets.

    Guaranteed to succeed when ``|family| > d! (k-1)^d`` (d = set size);
    below that bound it is best effort and may return None.
    """
    if k < 1:
        raise ValueError("k must be positive")
    sets = [frozenset(s) for s in family]
    if not sets:
        return None
    if len(set(sets)) != len(sets):
        raise ValueError("family members must be distinct")
    d = len(sets[0])
    if any(len(s) != d for s in sets):
        raise ValueError("family members must share one cardinality")
    found = _sunflower_rec(sets, k)
    if found is None:
        return None
    decomp = SunflowerDecomposition(found[0], tuple(found[1]))
    decomp.validate()
    return decomp


def _sunflower_rec(
    sets: list[frozenset[int]], k: int
) -> tuple[frozenset[int], list[frozenset[int]]] | None:
    disjoint: list[frozenset[int]] = []
    used: set[int] = set()
    for s in sorted(sets, key=lambda s: tuple(sorted(s))):
        if not s & used:
            disjoint.append(s)
            used |= s
    if len(disjoint) >= k:
        return frozenset(), disjoint
    counts = Counter(e for s in sets for e in s)
    if not counts:
        return None
    y, cnt = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    if cnt <= 1:
        return None  # pairwise disjoint and still short of k petals
    sub = [s - {y} for s in sets if y in s]
    rec = _sunflower_rec(sub, k)
    if rec is None:
        return None
    core, petals = rec
    return core | {y}, petals


# ---------------------------------------------------------------------------
# The combination lemma: classify one vertex.


@dataclass
class ClassifyStats:
    nodes: int = 0
    memo_hits: int = 0
    max_guesses_per_node: int = 0
    max_iterations_per_branch: int = 0


@dataclass(frozen=True)
class VertexClassification:
    outcome: str
    cycle: CycleRecord | None = None
    family: tuple[CycleRecord, ...] | None = None
    stats: ClassifyStats = field(default_factory=ClassifyStats, compare=False)

    def validate(self, g: Graph, x: int, d: int, k: int) -> None:
        if self.outcome == OUTCOME_CYCLE_THROUGH_X:
            self.cycle.validate(g)
            if x not in self.cycle.vertex_set:
                raise ValueError("cycle does not contain x")
        elif self.outcome == OUTCOME_LONG_CYCLE:
            self.cycle.validate(g)
            if len(self.cycle) < d:
                raise ValueError("long cycle is shorter than d")
        elif self.outcome == OUTCOME_LARGE_FAMILY:
            if len(self.family) < d * factorial(d) * (k - 1) ** d:
                raise ValueError("family below the required bound")
            seen = set()
            for rec in self.family:
                rec.validate(g)
                if len(rec) > d - 1:
                    raise ValueError("family cycle longer than d - 1")
                if rec.vertex_set in seen:
                    raise ValueError("family cycles are not distinct")
                seen.add(rec.vertex_set)
        elif self.outcome != OUTCOME_NO_CYCLE:
            raise ValueError(f"unknown outcome {self.outcome}")


def classify_vertex(
    g: Graph,
    x: int,
    d: int,
    k: int,
    eager_long_cycle: bool = False,
    debug: bool = False,
) -> VertexClassification:
    """Search for a chordless odd cycle through ``x``.

    Repeatedly takes a shortest odd cycle ``F`` of the working graph.  A
    cycle through x settles the call; a short cycle avoiding x joins the
    family and the search guesses which of its vertices a hypothetical cycle
    through x uses, deleting the rest in each guess branch.  A branch whose
    working graph goes odd-cycle-free proves nothing by itself; only when
    every branch does is ``x`` certified to lie on no chordless odd cycle,
    which makes the no-cycle outcome exact.

    Long cycles (length >= d) avoiding x are handled per
    ``eager_long_cycle``: when set, the call returns the long-cycle outcome
    immediately (the original case order; a long cycle is a sufficient yes
    certificate for the solver, which is why the solver enables it); by
    default the search branches past them on single-vertex deletions, so the
    fan-out stays at most max(2^(d-1) - 1, |F|) and the no-cycle outcome
    keeps its exactness.

    Fully explored working sets are memoized, so a working set is never
    re-searched; the family cap can therefore fire later than in a strict
    re-exploring reading, which only ever trades one valid outcome for
    another.
    """
    g.check_vertex(x)
    if d < 3:
        raise ValueError("d must be at least 3")
    if k < 1:
        raise ValueError("k must be positive")
    bound = d * factorial(d) * (k - 1) ** d
    stats = ClassifyStats()
    memo: dict[int, tuple[str, CycleRecord | None]] = {}
    family: list[CycleRecord] = []
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * g.n + 1000))

    NONE = "none"

    def branch(wmask: int, drops: list[int], guesses_base: int) -> tuple[str, object]:
        guesses = guesses_base
        for drop in drops:
            guesses += 1
            stats.max_guesses_per_node = max(stats.max_guesses_per_node, guesses)
            outcome, payload = visit(wmask & ~drop)
            if outcome != NONE:
                return outcome, payload
        return NONE, None

    def visit(wmask: int) -> tuple[str, object]:
        cached = memo.get(wmask)
        if cached is not None:
            stats.memo_hits += 1
            return cached
        stats.nodes += 1
        rec = shortest_odd_cycle_mask(g, wmask)
        if rec is None:
            memo[wmask] = (NONE, None)
            return NONE, None
        if x in rec.vertex_set:
            memo[wmask] = (OUTCOME_CYCLE_THROUGH_X, rec)
            return OUTCOME_CYCLE_THROUGH_X, rec
        cyc_vs = sorted(rec.vertices)
        if len(rec) >= d:
            if eager_long_cycle:
                memo[wmask] = (OUTCOME_LONG_CYCLE, rec)
                return OUTCOME_LONG_CYCLE, rec
            # branch on single deletions: some cycle vertex avoids any
            # hypothetical cycle through x, so exhaustiveness is preserved
            result = branch(wmask, [1 << v for v in cyc_vs], 0)
            if result[0] == NONE:
                memo[wmask] = (NONE, None)
            return result
        family.append(rec)
        stats.max_iterations_per_branch = max(
            stats.max_iterations_per_branch, len(family)
        )
        try:
            if len(family) >= bound:
                return OUTCOME_LARGE_FAMILY, tuple(family)
            drops = [
                mask_of(set(cyc_vs) - set(keep))
                for r in range(len(cyc_vs))
                for keep in itertools.combinations(cyc_vs, r)
            ]
            result = branch(wmask, drops, 0)
            if result[0] == NONE:
                memo[wmask] = (NONE, None)
            return result
        finally:
            family.pop()

    outcome, payload = visit(g.full_mask)
    if outcome == NONE:
        result = VertexClassification(OUTCOME_NO_CYCLE, stats=stats)
    elif outcome == OUTCOME_LARGE_FAMILY:
        result = VertexClassification(OUTCOME_LARGE_FAMILY, family=payload, stats=stats)
    else:
        result = VertexClassification(outcome, cycle=payload, stats=stats)
    if debug:
        result.validate(g, x, d, k)
    return result


# ---------------------------------------------------------------------------
# Long induced odd cycle -> witness.


def grow_from_long_cycle(
    g: Graph, c: CycleRecord, q: int, k: int, debug: bool = False
) -> Witness | None:
    """Witness of size >= k grown from a chordless odd cycle of length >= 2q+2.

    Splits the cycle at two vertices x, y into an even-length half S and an
    odd-length half T (both holding at least q vertices, as balanced as the
    parities allow), then sweeps the boundary of S u T: each swept vertex is
    absorbed into a half when every bipartiteness invariant survives, and
    otherwise joins the forced set(s) whose certificate it closes an odd
    cycle with.  Returns None only when both forced sets stay below k, which
    certifies that the (q, 2k)-unbreakability promise was broken.
    """
    if q < 1 or k < 1:
        raise ValueError("q and k must be positive")
    c.validate(g)
    m = len(c)
    if m < 2 * q + 2:
        raise ValueError(f"cycle length {m} is below 2q+2 = {2 * q + 2}")
    verts = CycleRecord.canonical(c.vertices).vertices

    arc_total = m - 2
    best_a = None
    for a in range(q, arc_total - q + 1):
        if a % 2 == 1 and (
            best_a is None or abs(2 * a - arc_total) < abs(2 * best_a - arc_total)
        ):
            best_a = a
    assert best_a is not None
    x = verts[0]
    s_path = list(verts[1 : 1 + best_a])
    y = verts[1 + best_a]
    t_path = list(verts[2 + best_a :])

    adj = g.adj_masks
    smask, tmask = mask_of(s_path), mask_of(t_path)
    xbit, ybit = 1 << x, 1 << y
    zx: set[int] = {x}
    zy: set[int] = {y}
    marked = smask | tmask | xbit | ybit
    trace = [
        f"grow: cycle {list(verts)} split x={x} S={sorted(s_path)} y={y} "
        f"T={sorted(t_path)}"
    ]
    if debug:
        _check_growth_invariants(g, smask, tmask, zx, zy, x, y, q)

    while True:
        frontier = (neighborhood_mask(g, smask) | neighborhood_mask(g, tmask)) & ~marked
        if not frontier:
            break
        v = (frontier & -frontier).bit_length() - 1
        vbit = 1 << v
        base = smask | tmask
        bx, by = base | xbit, base | ybit
        in_s, in_t = adj[v] & smask, adj[v] & tmask
        if in_s and in_t:
            odd_with_x = not is_bipartite_mask(g, bx | vbit)
            odd_with_y = not is_bipartite_mask(g, by | vbit)
            if not (odd_with_x or odd_with_y):
                raise AssertionError("cross neighbor closes no odd cycle")
            if odd_with_x:
                zy.add(v)
            if odd_with_y:
                zx.add(v)
            targets = ("Zx" if odd_with_y else "") + ("Zy" if odd_with_x else "")
            trace.append(f"grow: cross neighbor {v} -> {targets}")
        elif in_s:
            smask, moved = _sweep_side(g, v, smask, bx, by, zx, zy)
            trace.append(f"grow: {v} -> {'S' if moved else 'forced'}")
        else:
            tmask, moved = _sweep_side(g, v, tmask, bx, by, zx, zy)
            trace.append(f"grow: {v} -> {'T' if moved else 'forced'}")
        marked |= vbit
        if debug:
            _check_growth_invariants(g, smask, tmask, zx, zy, x, y, q)

    if len(zx) >= k:
        base_set = set_of(smask | tmask) | {y}
        forced = frozenset(zx)
        trace.append(f"grow: |Zx|={len(zx)} >= k, extending around y-base")
    elif len(zy) >= k:
        base_set = set_of(smask | tmask) | {x}
        forced = frozenset(zy)
        trace.append(f"grow: |Zy|={len(zy)} >= k, extending around x-base")
    else:
        return None
    witness = extend_oct_certificate(
        g, OctCertificate(frozenset(base_set)), ExtensionRequest(forced)
    )
    return Witness(
        kind=KIND_OCT,
        solution=witness.solution,
        trace=tuple(trace) + witness.trace,
        k=k,
    )


def _sweep_side(
    g: Graph, v: int, side: int, bx: int, by: int, zx: set[int], zy: set[int]
) -> tuple[int, bool]:
    """Absorb ``v`` into ``side`` when safe, else route it to the forced sets."""
    vbit = 1 << v
    ok_side = is_bipartite_mask(g, side | vbit)
    ok_x = is_bipartite_mask(g, bx | vbit)
    ok_y = is_bipartite_mask(g, by | vbit)
    if ok_side and ok_x and ok_y:
        return side | vbit, True
    if not ok_y:
        zx.add(v)
    if not ok_x:
        zy.add(v)
    return side, False


def _check_growth_invariants(
    g: Graph,
    smask: int,
    tmask: int,
    zx: set[int],
    zy: set[int],
    x: int,
    y: int,
    q: int,
) -> None:
    zmask = mask_of(zx | zy)
    if smask & tmask or (smask | tmask) & zmask:
        raise AssertionError("S, T, Zx u Zy are not pairwise disjoint")
    for side in (smask, tmask):
        if side.bit_count() < q:
            raise AssertionError("side fell below q vertices")
        if not is_connected_mask(g, side) or not is_bipartite_mask(g, side):
            raise AssertionError("side is not a connected bipartite subgraph")
    bx, by = smask | tmask | (1 << x), smask | tmask | (1 << y)
    if not is_bipartite_mask(g, by) or not is_bipartite_mask(g, bx):
        raise AssertionError("certificate base lost bipartiteness")
    for v in zx:
        if is_bipartite_mask(g, by | (1 << v)):
            raise AssertionError("Zx member closes no odd cycle with the y-base")
    for v in zy:
        if is_bipartite_mask(g, bx | (1 << v)):
            raise AssertionError("Zy member closes no odd cycle with the x-base")
    adj = g.adj_masks
    for w in (x, y):
        if not adj[w] & smask or not adj[w] & tmask:
            raise AssertionError("x and y must keep neighbors in both halves")


# ---------------------------------------------------------------------------
# Large family of short cycles -> witness.


def oct_from_small_cycles(
    g: Graph, family: Sequence[CycleRecord], d: int, k: int
) -> Witness | None:
    """Witness from a family of distinct chordless odd cycles of length <= d.

    Buckets the family by exact length and hunts for a k-petal sunflower in
    each bucket; a bucket beyond d'!(k-1)^d' is guaranteed to contain one.
    The k cycles agree on a bipartite core, and the greedy extension from
    that core must pick at least one vertex per disjoint petal.
    """
    if k < 1:
        raise ValueError("k must be positive")
    seen: set[frozenset[int]] = set()
    buckets: dict[int, list[CycleRecord]] = {}
    for rec in family:
        rec.validate(g)
        if len(rec) > d:
            raise ValueError(f"cycle of length {len(rec)} exceeds d={d}")
        if rec.vertex_set in seen:
            raise ValueError("family members must be distinct")
        seen.add(rec.vertex_set)
        buckets.setdefault(len(rec), []).append(rec)
    flower = None
    length = bucket = None
    for length, bucket in sorted(buckets.items()):
        found = find_sunflower([rec.vertex_set for rec in bucket], k)
        if found is not None and len(found.petals) >= k:
            flower = found
            break
        if len(bucket) > factorial(length) * (k - 1) ** length:
            raise AssertionError("sunflower bound met but no k-petal sunflower found")
    if flower is None:
        return None
    core = flower.core
    if not is_bipartite_mask(g, mask_of(core)):
        raise AssertionError("sunflower core of chordless odd cycles must be bipartite")
    witness = extend_oct_certificate(g, OctCertificate(core), ExtensionRequest())
    if len(witness.solution) < k:
        raise AssertionError("extension from the core missed a disjoint petal")
    trace = (
        f"small-cycles: bucket length {length} size {len(bucket)}, sunflower core "
        f"{sorted(core)} with {len(flower.petals)} petals",
    ) + witness.trace
    return Witness(kind=KIND_OCT, solution=witness.solution, trace=trace, k=k)


# ---------------------------------------------------------------------------
# Top-level solver.


@dataclass
class OctCounters:
    classify_calls: int = 0
    classify_nodes: int = 0
    deletions: int = 0
    growths: int = 0
    family_attempts: int = 0
    bruteforce_calls: int = 0

    def as_dict(self) -> dict:
        return {
            "classify_calls": self.classify_calls,
            "classify_nodes": self.classify_nodes,
            "deletions": self.deletions,
            "growths": self.growths,
            "family_attempts": self.family_attempts,
            "bruteforce_calls": self.bruteforce_calls,
        }


@dataclass
class OctResult:
    verdict: str
    witness: Witness | None
    counters: OctCounters
    notes: tuple[str, ...] = ()


def default_cutoff(q: int, k: int) -> int:
    """Vertex-count threshold below which brute force takes over."""
    return (2 * q + 2) ** 2 * factorial(2 * q + 2) * (k - 1) ** (2 * q + 2)


def solve_unbreakable_oct(
    g: Graph,
    k: int,
    q: int,
    force_fpt_path: bool = False,
    verify_promise: bool = False,
    cutoff_override: int | None = None,
    max_bruteforce_n: int | None = None,
    debug: bool = False,
) -> OctResult:
    """Decide whether a minimal oct of size >= k exists.

    Complete on (q, 2k)-unbreakable inputs; sound everywhere.  Deleting an
    irrelevant vertex restarts the solve on the reduced graph, re-evaluating
    the brute-force cutoff (and the promise when ``verify_promise`` is set)
    each time.  ``force_fpt_path`` skips the early brute-force shortcut so
    the classification pipeline actually runs; the bounded-size endgame still
    falls back to brute force as the algorithm prescribes.
    """
    if k < 1 or q < 1:
        raise ValueError("k and q must be positive")
    counters = OctCounters()
    notes: list[str] = []
    cutoff = default_cutoff(q, k) if cutoff_override is None else cutoff_override
    d = 2 * q + 2
    cur = g
    ids = tuple(range(g.n))
    brute_kwargs = {} if max_bruteforce_n is None else {"max_n": max_bruteforce_n}

    while True:
        if verify_promise:
            verdict = breakability_witness(cur, q, 2 * k)
            if verdict.breakable:
                sep = verdict.witness
                notes.append(
                    f"graph is ({q},{2 * k})-breakable: order {sep.order}, strict "
                    f"sides {len(sep.x_side - sep.y_side)}/{len(sep.y_side - sep.x_side)}"
                )
                return OctResult(VERDICT_PROMISE_VIOLATION, None, counters, tuple(notes))
        if cur.n <= cutoff and not force_fpt_path:
            counters.bruteforce_calls += 1
            w = maxmin_oct_bruteforce(cur, k, **brute_kwargs)
            return _finish(g, w, ids, k, counters, notes + [f"bruteforce at n={cur.n}"])

        deleted: int | None = None
        short_cycles: dict[int, CycleRecord] = {}
        outcome_result: OctResult | None = None
        for x in range(cur.n):
            cls = classify_vertex(cur, x, d, k, eager_long_cycle=True, debug=debug)
            counters.classify_calls += 1
            counters.classify_nodes += cls.stats.nodes
            if cls.outcome == OUTCOME_NO_CYCLE:
                deleted = x
                break
            if cls.outcome == OUTCOME_LONG_CYCLE or (
                cls.outcome == OUTCOME_CYCLE_THROUGH_X and len(cls.cycle) >= d
            ):
                counters.growths += 1
                w = grow_from_long_cycle(cur, cls.cycle, q, k, debug=debug)
                if w is None:
                    notes.append(
                        "long-cycle growth stayed below k on both forced sets, "
                        f"so the graph is ({q},{2 * k})-breakable"
                    )
                    outcome_result = OctResult(
                        VERDICT_PROMISE_VIOLATION, None, counters, tuple(notes)
                    )
                    break
                outcome_result = _finish(
                    g, w, ids, k, counters, notes + [f"long cycle via x={ids[x]}"]
                )
                break
            if cls.outcome == OUTCOME_LARGE_FAMILY:
                counters.family_attempts += 1
                w = oct_from_small_cycles(cur, list(cls.family), d - 1, k)
                if w is None:
                    raise AssertionError("classified family missed the pigeonhole bound")
                outcome_result = _finish(
                    g, w, ids, k, counters, notes + [f"large family via x={ids[x]}"]
                )
                break
            short_cycles[x] = cls.cycle

        if outcome_result is not None:
            return outcome_result
        if deleted is not None:
            counters.deletions += 1
            notes.append(f"deleted irrelevant vertex {ids[deleted]}")
            keep = [v for v in range(cur.n) if v != deleted]
            cur, old = induced_subgraph(cur, keep)
            ids = tuple(ids[o] for o in old)
            continue

        fam: list[CycleRecord] = []
        fam_seen: set[frozenset[int]] = set()
        for x in sorted(short_cycles):
            rec = short_cycles[x]
            if rec.vertex_set not in fam_seen:
                fam_seen.add(rec.vertex_set)
                fam.append(rec)
        counters.family_attempts += 1
        w = oct_from_small_cycles(cur, fam, d - 1, k)
        if w is not None:
            return _finish(g, w, ids, k, counters, notes + ["per-vertex short cycles"])
        if cur.n > cutoff:
            raise AssertionError(
                "every vertex lies on a short cycle and n exceeds the cutoff, "
                "yet the family bound failed"
            )
        counters.bruteforce_calls += 1
        w = maxmin_oct_bruteforce(cur, k, **brute_kwargs)
        return _finish(g, w, ids, k, counters, notes + [f"endgame bruteforce at n={cur.n}"])


def _finish(
    g: Graph,
    w: Witness | None,
    ids: tuple[int, ...],
    k: int,
    counters: OctCounters,
    notes: list[str],
) -> OctResult:
    if w is None:
        return OctResult(VERDICT_NO, None, counters, tuple(notes))
    solution = frozenset(ids[v] for v in w.solution)
    trace = w.trace
    if ids != tuple(range(g.n)):
        trace = trace + (
            f"ids remapped to the original graph: {sorted(solution)}",
        )
    if not is_minimal_oct(g, solution) or len(solution) < k:
        raise AssertionError("solver produced an unverified oct witness")
    mapped = Witness(kind=KIND_OCT, solution=solution, trace=trace, k=k)
    return OctResult(VERDICT_YES, mapped, counters, tuple(notes))
