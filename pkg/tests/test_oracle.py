import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxminsep.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    gnp_graph,
    path_graph,
)
from maxminsep.certificates import is_minimal_st_separator
from maxminsep.oracle import (
    OracleSizeError,
    breakability_witness,
    enumerate_minimal_octs,
    enumerate_minimal_st_separators,
    exists_induced_odd_cycle_through,
    exists_induced_odd_path,
    exists_induced_st_path_through,
    maxmin_oct_bruteforce,
    maxmin_stsep_bruteforce,
)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


class TestEnumerateSeparators:
    def test_p3(self):
        assert enumerate_minimal_st_separators(path_graph(3), 0, 2) == [frozenset({1})]

    def test_c4_opposite(self):
        assert enumerate_minimal_st_separators(cycle_graph(4), 0, 2) == [
            frozenset({1, 3})
        ]

    def test_c6_antipodal_four_pairs(self):
        seps = enumerate_minimal_st_separators(cycle_graph(6), 0, 3)
        assert sorted(sorted(z) for z in seps) == [[1, 4], [1, 5], [2, 4], [2, 5]]

    def test_adjacent_endpoints_empty(self):
        assert enumerate_minimal_st_separators(complete_graph(3), 0, 1) == []

    def test_all_members_pass_checker(self):
        g = gnp_graph(8, 0.4, seed=5)
        for s, t in itertools.combinations(range(8), 2):
            if g.has_edge(s, t):
                continue
            for z in enumerate_minimal_st_separators(g, s, t):
                assert is_minimal_st_separator(g, s, t, z)

    def test_size_cap(self):
        seps = enumerate_minimal_st_separators(cycle_graph(6), 0, 3, size_cap=1)
        assert seps == []

    def test_size_guard(self):
        with pytest.raises(OracleSizeError):
            enumerate_minimal_st_separators(complete_graph(23), 0, 1)

    def test_worker_count_independence(self):
        g = gnp_graph(9, 0.5, seed=17)
        assert enumerate_minimal_st_separators(g, 0, 1, jobs=1) == (
            enumerate_minimal_st_separators(g, 0, 1, jobs=2)
        )

    def test_complete_against_naive_predicate(self, graphs_up_to_7):
        # nothing passing the independent predicate may be omitted
        from conftest import naive_is_minimal_st_separator

        for g in graphs_up_to_7:
            if not 2 <= g.n <= 5:
                continue
            for s, t in itertools.combinations(range(g.n), 2):
                if g.has_edge(s, t):
                    continue
                got = set(enumerate_minimal_st_separators(g, s, t))
                rest = [v for v in range(g.n) if v not in (s, t)]
                expect = {
                    frozenset(z)
                    for r in range(len(rest) + 1)
                    for z in itertools.combinations(rest, r)
                    if naive_is_minimal_st_separator(g, s, t, set(z))
                }
                assert got == expect, (g.edges(), s, t)


class TestMaxMinBruteforce:
    def test_k5_common_neighbors(self):
        g = complete_graph(5)
        edges = [(u, v) for u, v in g.edges() if (u, v) != (0, 1)]
        g = Graph.from_edges(5, edges)
        w = maxmin_stsep_bruteforce(g, 0, 1, 3)
        assert w.solution == frozenset({2, 3, 4})

    def test_c6_k3_no(self):
        assert maxmin_stsep_bruteforce(cycle_graph(6), 0, 3, 3) is None

    def test_p3_k2_no(self):
        assert maxmin_stsep_bruteforce(path_graph(3), 0, 2, 2) is None

    def test_oct_c5(self):
        w = maxmin_oct_bruteforce(cycle_graph(5), 1)
        assert len(w.solution) == 1

    def test_oct_bipartite_no(self):
        assert maxmin_oct_bruteforce(complete_bipartite_graph(3, 2), 1) is None

    def test_oct_k4(self):
        w = maxmin_oct_bruteforce(complete_graph(4), 2)
        assert len(w.solution) == 2

    def test_oct_worker_count_independence(self):
        g = gnp_graph(8, 0.5, seed=23)
        assert enumerate_minimal_octs(g, jobs=1) == enumerate_minimal_octs(g, jobs=2)


class TestBreakability:
    def test_k6_unbreakable(self):
        for q in (1, 2, 3):
            for k in (0, 2, 4):
                assert not breakability_witness(complete_graph(6), q, k).breakable

    def test_p9_middle(self):
        v = breakability_witness(path_graph(9), 4, 1)
        assert v.breakable
        assert v.witness.order <= 1
        assert len(v.witness.x_side - v.witness.y_side) >= 4
        assert len(v.witness.y_side - v.witness.x_side) >= 4
        v.witness.validate(path_graph(9))

    def test_petersen_3_2_unbreakable(self):
        assert not breakability_witness(petersen(), 3, 2).breakable

    def test_c6_cases(self):
        assert breakability_witness(cycle_graph(6), 2, 2).breakable
        assert not breakability_witness(cycle_graph(6), 3, 2).breakable

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=0, max_value=10**6),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=0, max_value=3),
    )
    def test_monotonicity(self, seed, q, k):
        g = gnp_graph(7, 0.45, seed=seed)
        if breakability_witness(g, q, k).breakable:
            for q2 in range(1, q + 1):
                for k2 in range(k, 4):
                    assert breakability_witness(g, q2, k2).breakable

    def test_matches_direct_separation_enumeration(self, graphs_up_to_7):
        # independent oracle: place each vertex in X only / Y only / X and Y
        def breakable_direct(g, q, k):
            for assignment in range(3**g.n):
                x = y = 0
                a = assignment
                for v in range(g.n):
                    a, side = divmod(a, 3)
                    if side == 0:
                        x |= 1 << v
                    elif side == 1:
                        y |= 1 << v
                    else:
                        x |= 1 << v
                        y |= 1 << v
                if (x & y).bit_count() > k:
                    continue
                if (x & ~y).bit_count() < q or (y & ~x).bit_count() < q:
                    continue
                if any(g.adj_masks[v] & (y & ~x) for v in range(g.n) if (x & ~y) >> v & 1):
                    continue
                return True
            return False

        for g in graphs_up_to_7:
            if not 2 <= g.n <= 5:
                continue
            for q in (1, 2):
                for k in (0, 1, 2):
                    verdict = breakability_witness(g, q, k)
                    assert verdict.breakable == breakable_direct(g, q, k), (
                        g.edges(),
                        q,
                        k,
                    )
                    if verdict.breakable:
                        verdict.witness.validate(g)
                        sep = verdict.witness
                        assert sep.order <= k
                        assert len(sep.x_side - sep.y_side) >= q
                        assert len(sep.y_side - sep.x_side) >= q


class TestInducedQueries:
    def test_c4_path_through(self):
        ok, path = exists_induced_st_path_through(cycle_graph(4), 0, 2, 1)
        assert ok and path == (0, 1, 2)

    def test_triangle_no_path_through(self):
        ok, _ = exists_induced_st_path_through(complete_graph(3), 0, 1, 2)
        assert not ok

    def test_c6_antipodal_through_any(self):
        for v in (1, 2, 4, 5):
            ok, path = exists_induced_st_path_through(cycle_graph(6), 0, 3, v)
            assert ok and v in path

    def test_k4_cycle_through_each(self):
        for v in range(4):
            ok, cyc = exists_induced_odd_cycle_through(complete_graph(4), v)
            assert ok and v in cyc.vertex_set and len(cyc) == 3

    def test_bipartite_no_cycle(self):
        for v in range(6):
            ok, _ = exists_induced_odd_cycle_through(complete_bipartite_graph(3, 3), v)
            assert not ok

    def test_c5_pendant(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)])
        ok, _ = exists_induced_odd_cycle_through(g, 5)
        assert not ok
        for v in range(5):
            ok, cyc = exists_induced_odd_cycle_through(g, v)
            assert ok and v in cyc.vertex_set

    def test_odd_path_parities(self):
        assert exists_induced_odd_path(path_graph(2), 0, 1)[0]  # length 1
        assert not exists_induced_odd_path(path_graph(3), 0, 2)[0]  # length 2
        assert exists_induced_odd_path(path_graph(4), 0, 3)[0]  # length 3

    def test_cycle_membership_matches_minimal_octs(self, graphs_up_to_7):
        # v sits on some chordless odd cycle iff some minimal oct contains v
        for g in graphs_up_to_7:
            if g.n > 6:
                continue
            members: set[int] = set()
            for z in enumerate_minimal_octs(g):
                members |= z
            for v in range(g.n):
                assert exists_induced_odd_cycle_through(g, v)[0] == (v in members), (
                    g.edges(),
                    v,
                )
