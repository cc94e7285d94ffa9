"""Branching solver for MaxMin st-Separator on (q, k)-unbreakable graphs.

The algorithm grows connected sets ``S`` (containing s) and ``T`` (containing
t) and maintains the valid-instance invariants: disjoint, connected, no edges
between them.  Five reduction rules are applied exhaustively, in a fixed
priority order, before the branching rule fires:

* stop-measure:   min(|S|, |T|) >= q  -> yes (greedy extension from (S, T))
* stop-common:    |N(S) & N(T)| >= k  -> yes (extension forced on the commons)
* absorb:         a neighbor of S (or T) that cannot reach the far side
                  without crossing the rest of the boundary moves into S (T)
* stop-boundary:  |N(S)| >= k or |N(T)| >= k -> yes (that boundary is itself
                  a minimal separator once absorption is exhausted)
* stop-trapped:   N(S) - N(T) empty (or symmetric) -> no

The branching rule adds one boundary vertex to the smaller side; the measure
q - min(|S|, |T|) bounds the branching depth by 2q and the fan-out by k - 1.
Yes answers always carry a witness that is re-verified before being returned,
so soundness does not depend on the unbreakability promise.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .certificates import (
    ExtensionRequest,
    SeparatorCertificate,
    Witness,
    extend_separator_certificate,
    is_minimal_st_separator,
)
from .graph import Graph, bits, is_connected_mask, mask_of, neighborhood_mask, reach_mask, set_of
from .oracle import breakability_witness

VERDICT_YES = "yes"
VERDICT_NO = "no"
VERDICT_PROMISE_VIOLATION = "promise_violation"

RULE_MEASURE = "stop-measure"
RULE_COMMON = "stop-common"
RULE_ABSORB = "absorb"
RULE_BOUNDARY = "stop-boundary"
RULE_TRAPPED = "stop-trapped"


@dataclass(frozen=True)
class BranchState:
    """Valid instance (S, T, k, q); the graph travels alongside."""

    s_side: frozenset[int]
    t_side: frozenset[int]
    k: int
    q: int

    @property
    def measure(self) -> int:
        return self.q - min(len(self.s_side), len(self.t_side))

    def validate(self, g: Graph, s: int, t: int) -> None:
        if s not in self.s_side or t not in self.t_side:
            raise ValueError("s must stay in s_side and t in t_side")
        if self.s_side & self.t_side:
            raise ValueError("sides overlap")
        smask, tmask = mask_of(self.s_side), mask_of(self.t_side)
        if not is_connected_mask(g, smask) or not is_connected_mask(g, tmask):
            raise ValueError("sides must induce connected subgraphs")
        for u in self.s_side:
            if g.adj_masks[u] & tmask:
                raise ValueError("edge between s_side and t_side")


@dataclass
class SearchCounters:
    nodes: int = 0
    branch_applications: int = 0
    branch_children: int = 0
    branch_leaves: int = 0  # leaves below at least one branching decision
    max_branch_depth: int = 0
    reductions: dict[str, int] = field(default_factory=dict)

    def fired(self, rule: str) -> None:
        self.reductions[rule] = self.reductions.get(rule, 0) + 1

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "branch_applications": self.branch_applications,
            "branch_children": self.branch_children,
            "branch_nodes": self.branch_leaves,
            "branch_depth": self.max_branch_depth,
            "reductions": dict(sorted(self.reductions.items())),
        }


@dataclass
class StsepResult:
    verdict: str
    witness: Witness | None
    counters: SearchCounters
    notes: tuple[str, ...] = ()


def apply_reductions(
    g: Graph,
    s: int,
    t: int,
    state: BranchState,
    counters: SearchCounters | None = None,
    trace: list[str] | None = None,
    debug: bool = False,
) -> tuple[str, Witness | BranchState | None]:
    """Apply the reduction rules exhaustively in priority order.

    Returns ``("yes", witness)``, ``("no", None)`` or ``("continue", state)``.
    A yes produced by the measure rule on a promise-violating input can come
    out undersized; that child is reported as a no (the instance is then
    provably (q, k)-breakable, so no guarantee is broken).
    """
    counters = counters if counters is not None else SearchCounters()
    trace = trace if trace is not None else []
    if debug:
        state.validate(g, s, t)
    k, q = state.k, state.q
    full = g.full_mask
    while True:
        smask, tmask = mask_of(state.s_side), mask_of(state.t_side)
        ns, nt = neighborhood_mask(g, smask), neighborhood_mask(g, tmask)

        if state.measure <= 0:
            counters.fired(RULE_MEASURE)
            witness = extend_separator_certificate(
                g,
                SeparatorCertificate(state.s_side, state.t_side),
                ExtensionRequest(),
                s=s,
                t=t,
            )
            if len(witness.solution) >= k:
                trace.append(f"{RULE_MEASURE}: |Z|={len(witness.solution)}")
                return VERDICT_YES, replace(witness, k=k, trace=witness.trace + tuple(trace))
            trace.append(
                f"{RULE_MEASURE}: extension size {len(witness.solution)} < k={k}; "
                "instance is (q,k)-breakable; reporting no"
            )
            return VERDICT_NO, None

        common = ns & nt
        if common.bit_count() >= k:
            counters.fired(RULE_COMMON)
            witness = extend_separator_certificate(
                g,
                SeparatorCertificate(state.s_side, state.t_side),
                ExtensionRequest(set_of(common)),
                s=s,
                t=t,
            )
            trace.append(f"{RULE_COMMON}: forced {sorted(set_of(common))}")
            return VERDICT_YES, replace(witness, k=k, trace=witness.trace + tuple(trace))

        absorbed = False
        for boundary, side_mask, far_mask, label in (
            (ns, smask, tmask, "S"),
            (nt, tmask, smask, "T"),
        ):
            for v in bits(boundary):
                allowed = full & ~(boundary & ~(1 << v)) & ~side_mask
                if not reach_mask(g, 1 << v, allowed) & far_mask:
                    counters.fired(RULE_ABSORB)
                    trace.append(f"{RULE_ABSORB}: {v} -> {label}")
                    if label == "S":
                        state = replace(state, s_side=state.s_side | {v})
                    else:
                        state = replace(state, t_side=state.t_side | {v})
                    if debug:
                        state.validate(g, s, t)
                    absorbed = True
                    break
            if absorbed:
                break
        if absorbed:
            continue

        for boundary, near_set, label in ((ns, state.s_side, "N(S)"), (nt, state.t_side, "N(T)")):
            if boundary.bit_count() >= k:
                counters.fired(RULE_BOUNDARY)
                z = set_of(boundary)
                if not is_minimal_st_separator(g, s, t, z):
                    raise AssertionError(
                        f"{label} failed minimality after absorption was exhausted"
                    )
                trace.append(f"{RULE_BOUNDARY}: {label}={sorted(z)}")
                witness = Witness(
                    kind="minimal-st-separator",
                    solution=z,
                    trace=(
                        f"boundary rule: {label} of side {sorted(near_set)} "
                        f"is a minimal separator",
                        *trace,
                    ),
                    s=s,
                    t=t,
                    k=k,
                )
                return VERDICT_YES, witness

        if not ns & ~nt or not nt & ~ns:
            counters.fired(RULE_TRAPPED)
            trace.append(f"{RULE_TRAPPED}: boundary difference empty")
            return VERDICT_NO, None

        return "continue", state


def branch(
    g: Graph,
    s: int,
    t: int,
    state: BranchState,
    counters: SearchCounters,
    trace: list[str],
    depth: int = 0,
    debug: bool = False,
) -> Witness | None:
    counters.nodes += 1
    counters.max_branch_depth = max(counters.max_branch_depth, depth)
    verdict, payload = apply_reductions(g, s, t, state, counters, trace, debug)
    if verdict != "continue":
        if depth >= 1:
            counters.branch_leaves += 1
        return payload if verdict == VERDICT_YES else None
    state = payload  # type: ignore[assignment]

    smask, tmask = mask_of(state.s_side), mask_of(state.t_side)
    ns, nt = neighborhood_mask(g, smask), neighborhood_mask(g, tmask)
    if len(state.s_side) <= len(state.t_side):
        cands, grow_s = sorted(bits(ns & ~nt)), True
    else:
        cands, grow_s = sorted(bits(nt & ~ns)), False
    counters.branch_applications += 1
    counters.branch_children += len(cands)
    for x in cands:
        if grow_s:
            child = replace(state, s_side=state.s_side | {x})
        else:
            child = replace(state, t_side=state.t_side | {x})
        child_trace = list(trace)
        child_trace.append(f"branch: {x} -> {'S' if grow_s else 'T'}")
        witness = branch(g, s, t, child, counters, child_trace, depth + 1, debug)
        if witness is not None:
            return witness
    return None


def solve_unbreakable_stsep(
    g: Graph,
    s: int,
    t: int,
    k: int,
    q: int,
    verify_promise: bool = False,
    debug: bool = False,
) -> StsepResult:
    """Decide whether a minimal st-separator of size >= k exists.

    Complete on (q, k)-unbreakable inputs; sound everywhere (every yes is a
    verified witness).  With ``verify_promise`` the breakability oracle runs
    first (desk scale only) and a breakable input short-circuits to
    ``promise_violation``.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise ValueError("s and t must be distinct")
    if k < 1 or q < 1:
        raise ValueError("k and q must be positive")
    counters = SearchCounters()
    if verify_promise:
        verdict = breakability_witness(g, q, k)
        if verdict.breakable:
            sep = verdict.witness
            note = (
                f"graph is ({q},{k})-breakable: order {sep.order}, strict sides "
                f"{len(sep.x_side - sep.y_side)}/{len(sep.y_side - sep.x_side)}"
            )
            return StsepResult(VERDICT_PROMISE_VIOLATION, None, counters, (note,))
    if g.has_edge(s, t):
        return StsepResult(
            VERDICT_NO, None, counters, ("s and t are adjacent: no st-separator exists",)
        )
    state = BranchState(frozenset({s}), frozenset({t}), k, q)
    witness = branch(g, s, t, state, counters, [], 0, debug)
    if witness is None:
        return StsepResult(VERDICT_NO, None, counters)
    if not is_minimal_st_separator(g, s, t, witness.solution) or len(witness.solution) < k:
        raise AssertionError("solver produced an unverified witness")
    return StsepResult(VERDICT_YES, witness, counters)
