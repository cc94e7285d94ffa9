"""Instance transformers between the two problems.

``stsep_to_oct`` turns a bipartite separator instance into an oct instance by
planting one extra s-t path whose parity differs from every surviving s-t
path; ``odd_path_to_odd_cycle_gadget`` adds an apex that turns chordless odd
a-b paths into chordless odd cycles through the apex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, TwoColoring, bipartition_or_odd_cycle, reach_mask

CASE_SAME_SIDE = "same-side"
CASE_OPPOSITE_SIDE = "opposite-side"
CASE_APEX = "apex"


@dataclass(frozen=True)
class ReductionResult:
    output_graph: Graph
    k_out: int
    added_vertices: frozenset[int]
    case_tag: str


def stsep_to_oct(g: Graph, s: int, t: int, k: int) -> ReductionResult:
    """MaxMin st-separator on a bipartite graph -> MaxMin oct (k unchanged).

    Same-side endpoints get a path s-u-v-t (two new vertices); opposite-side
    endpoints get s-u'-t (one new vertex).  When s and t sit in different
    components, either orientation of t's component is consistent with a
    bipartition; t is oriented opposite s, so the single-vertex case applies.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise ValueError("s and t must be distinct")
    if k < 2:
        raise ValueError("the reduction assumes k > 1")
    coloring = bipartition_or_odd_cycle(g, g.vertices())
    if not isinstance(coloring, TwoColoring):
        raise ValueError("input graph is not bipartite")
    same_component = bool(reach_mask(g, 1 << s, g.full_mask) & (1 << t))
    same_side = same_component and ((s in coloring.left) == (t in coloring.left))
    edges = g.edges()
    if same_side:
        u, v = g.n, g.n + 1
        out = Graph.from_edges(g.n + 2, edges + [(s, u), (u, v), (v, t)])
        return ReductionResult(out, k, frozenset({u, v}), CASE_SAME_SIDE)
    u = g.n
    out = Graph.from_edges(g.n + 1, edges + [(s, u), (u, t)])
    return ReductionResult(out, k, frozenset({u}), CASE_OPPOSITE_SIDE)


def odd_path_to_odd_cycle_gadget(g: Graph, a: int, b: int) -> ReductionResult:
    """Apex vertex adjacent to exactly a and b.

    The output has a chordless odd cycle through the apex iff the input has a
    chordless a-b path of odd length.  ``k_out`` is not meaningful here and
    is reported as 0.
    """
    g.check_vertex(a)
    g.check_vertex(b)
    if a == b:
        raise ValueError("a and b must be distinct")
    x = g.n
    out = Graph.from_edges(g.n + 1, g.edges() + [(a, x), (b, x)])
    return ReductionResult(out, 0, frozenset({x}), CASE_APEX)
