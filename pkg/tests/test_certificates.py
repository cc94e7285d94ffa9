import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    naive_is_minimal_oct,
    naive_is_minimal_st_separator,
    random_oct_certificate,
    random_separator_certificate,
)
from maxminsep.certificates import (
    CertificateError,
    ExtensionRequest,
    OctCertificate,
    SeparatorCertificate,
    Witness,
    check_oct_certificate,
    check_separator_certificate,
    extend_oct_certificate,
    extend_separator_certificate,
    is_minimal_oct,
    is_minimal_set_separator,
    is_minimal_st_separator,
    verify_witness,
)
from maxminsep.graph import Graph, complete_graph, cycle_graph, path_graph


class TestMinimalStSeparator:
    def test_p3_middle(self):
        assert is_minimal_st_separator(path_graph(3), 0, 2, {1})

    def test_c4_both_intermediates(self):
        assert is_minimal_st_separator(cycle_graph(4), 0, 2, {1, 3})

    def test_p5_superset_not_minimal(self):
        # {1} already separates on the path 0-1-2-3-4, so {1,2} is not minimal
        g = path_graph(5)
        assert is_minimal_st_separator(g, 0, 4, {1})
        assert not is_minimal_st_separator(g, 0, 4, {1, 2})

    def test_contract_violations(self):
        g = path_graph(3)
        with pytest.raises(CertificateError):
            is_minimal_st_separator(g, 1, 1, set())
        with pytest.raises(CertificateError):
            is_minimal_st_separator(g, 0, 2, {0})

    def test_disconnected_pair_empty_separator(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert is_minimal_st_separator(g, 0, 2, set())

    def test_set_variant_matches_lemma(self):
        # after absorption N(S) is a minimal separator between the sets
        g = cycle_graph(6)
        assert is_minimal_set_separator(g, {0, 1}, {3, 4}, {2, 5})


class TestMinimalOct:
    def test_c5_singleton(self):
        for v in range(5):
            assert is_minimal_oct(cycle_graph(5), {v})

    def test_c5_pair_not_minimal(self):
        assert not is_minimal_oct(cycle_graph(5), {0, 2})

    def test_k4_every_pair(self):
        # exhaustive over 2-subsets
        for pair in itertools.combinations(range(4), 2):
            assert is_minimal_oct(complete_graph(4), set(pair))

    def test_bipartite_only_empty(self):
        g = cycle_graph(6)
        assert is_minimal_oct(g, set())
        assert not is_minimal_oct(g, {0})


class TestCheckerEquivalence:
    """Definition-level recomputation by an independently coded path."""

    def test_stsep_checker_all_graphs_n5(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            if not 2 <= g.n <= 5:
                continue
            for s, t in itertools.combinations(range(g.n), 2):
                rest = [v for v in range(g.n) if v not in (s, t)]
                for r in range(len(rest) + 1):
                    for z in itertools.combinations(rest, r):
                        assert is_minimal_st_separator(
                            g, s, t, set(z)
                        ) == naive_is_minimal_st_separator(g, s, t, set(z))

    def test_oct_checker_all_graphs_n5(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            if g.n > 5:
                continue
            for r in range(g.n + 1):
                for z in itertools.combinations(range(g.n), r):
                    assert is_minimal_oct(g, set(z)) == naive_is_minimal_oct(
                        g, set(z)
                    )


class TestSeparatorCertificate:
    def test_c4_valid(self):
        g = cycle_graph(4)
        res = check_separator_certificate(
            g, SeparatorCertificate(frozenset({0}), frozenset({2})), ExtensionRequest(frozenset({1}))
        )
        assert res

    def test_p5_disconnected_forced(self):
        g = path_graph(5)
        res = check_separator_certificate(
            g, SeparatorCertificate(frozenset({0}), frozenset({4})), ExtensionRequest(frozenset({2}))
        )
        assert not res and res.reason == "forced-vertex-not-connecting:2"

    def test_p5_wide_sides(self):
        g = path_graph(5)
        res = check_separator_certificate(
            g,
            SeparatorCertificate(frozenset({0, 1}), frozenset({3, 4})),
            ExtensionRequest(frozenset({2})),
        )
        assert res

    def test_adjacent_sides_invalid(self):
        g = complete_graph(5)
        res = check_separator_certificate(
            g, SeparatorCertificate(frozenset({0}), frozenset({1})), ExtensionRequest()
        )
        assert not res and res.reason == "edge-between-sides"

    def test_extend_c4(self):
        g = cycle_graph(4)
        w = extend_separator_certificate(
            g,
            SeparatorCertificate(frozenset({0}), frozenset({2})),
            ExtensionRequest(frozenset({1})),
            order=[1, 3],
        )
        assert w.solution == frozenset({1, 3})
        assert verify_witness(g, w)

    def test_extend_p5(self):
        g = path_graph(5)
        w = extend_separator_certificate(
            g,
            SeparatorCertificate(frozenset({0, 1}), frozenset({3, 4})),
            ExtensionRequest(frozenset({2})),
        )
        assert w.solution == frozenset({2})

    def test_extend_invalid_certificate_raises(self):
        g = complete_graph(5)
        with pytest.raises(CertificateError):
            extend_separator_certificate(
                g, SeparatorCertificate(frozenset({0}), frozenset({1})), ExtensionRequest()
            )

    def test_extend_parks_unattached_vertices(self):
        # on the path 0-1-2-3-4 with order [2, 1, 3], vertex 2 touches
        # neither side when processed and must wait unattached until 1
        # drags it into the s-side; 3 then joins both sides and separates
        g = path_graph(5)
        w = extend_separator_certificate(
            g,
            SeparatorCertificate(frozenset({0}), frozenset({4})),
            ExtensionRequest(),
            order=[2, 1, 3],
        )
        assert w.solution == frozenset({3})
        assert is_minimal_st_separator(g, 0, 4, w.solution)


class TestOctCertificate:
    def test_c5_four_path_base(self):
        g = cycle_graph(5)
        res = check_oct_certificate(
            g, OctCertificate(frozenset({0, 1, 2, 3})), ExtensionRequest(frozenset({4}))
        )
        assert res

    def test_k4_edge_base(self):
        g = complete_graph(4)
        res = check_oct_certificate(
            g, OctCertificate(frozenset({0, 1})), ExtensionRequest(frozenset({2, 3}))
        )
        assert res

    def test_bipartite_whole_base(self):
        g = cycle_graph(6)
        assert check_oct_certificate(g, OctCertificate(frozenset(range(6))), ExtensionRequest())

    def test_nonbipartite_base_reason(self):
        g = cycle_graph(5)
        res = check_oct_certificate(g, OctCertificate(frozenset(range(5))), ExtensionRequest())
        assert not res and res.reason == "base-not-bipartite"

    def test_extend_c5(self):
        g = cycle_graph(5)
        w = extend_oct_certificate(
            g, OctCertificate(frozenset({0, 1, 2, 3})), ExtensionRequest(frozenset({4}))
        )
        assert w.solution == frozenset({4})

    def test_extend_k4_from_edge(self):
        g = complete_graph(4)
        w = extend_oct_certificate(
            g, OctCertificate(frozenset({0, 1})), ExtensionRequest(), order=[2, 3]
        )
        assert w.solution == frozenset({2, 3})
        assert is_minimal_oct(g, w.solution)

    def test_extend_bipartite_empty(self):
        g = cycle_graph(6)
        w = extend_oct_certificate(g, OctCertificate(frozenset()), ExtensionRequest())
        assert w.solution == frozenset()


class TestExtensionSoundness:
    def test_separator_random(self):
        rng = random.Random(7)
        for _ in range(120):
            g, cert, req, order, s, t = random_separator_certificate(rng)
            w = extend_separator_certificate(g, cert, req, order=order, s=s, t=t)
            assert req.forced <= w.solution
            assert is_minimal_st_separator(g, s, t, w.solution)

    def test_oct_random(self):
        rng = random.Random(8)
        for _ in range(120):
            g, cert, req, order = random_oct_certificate(rng)
            w = extend_oct_certificate(g, cert, req, order=order)
            assert req.forced <= w.solution
            assert is_minimal_oct(g, w.solution)

    @settings(max_examples=40, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_order_robustness(self, hyp_rng):
        # every ordering must yield a valid witness (sets may differ)
        g = cycle_graph(6)
        cert = SeparatorCertificate(frozenset({0}), frozenset({3}))
        order = [1, 2, 4, 5]
        hyp_rng.shuffle(order)
        w = extend_separator_certificate(g, cert, ExtensionRequest(), order=order, s=0, t=3)
        assert is_minimal_st_separator(g, 0, 3, w.solution)


class TestWitnessJson:
    def test_roundtrip_one_indexed(self):
        w = Witness(
            kind="minimal-st-separator",
            solution=frozenset({1, 4}),
            trace=("x",),
            s=0,
            t=3,
            k=2,
        )
        data = w.to_json_dict("abc123")
        assert data["solution"] == [2, 5] and data["s"] == 1 and data["t"] == 4
        back, sha = Witness.from_json_dict(data)
        assert back.solution == w.solution and back.s == 0 and sha == "abc123"

    def test_verify_requires_size(self):
        g = cycle_graph(6)
        w = Witness(kind="minimal-st-separator", solution=frozenset({1, 5}), s=0, t=3, k=3)
        assert not verify_witness(g, w)
        assert verify_witness(g, Witness("minimal-st-separator", frozenset({1, 5}), s=0, t=3, k=2))
