import itertools
import json

import pytest
from hypothesis import given, strategies as st

from sigchoose.core import (
    Balance,
    build_signed_graph,
    circuit_balance,
    dumps,
    equivalent_to_all_positive,
    from_document,
    loads,
    mrs_color_set,
    switch,
    to_document,
    to_dot,
    verify_coloring,
)
from sigchoose.errors import (
    DuplicateEdge,
    Loop,
    NonPositiveK,
    NotACircuit,
    PartialColoring,
    UnknownVertex,
)
from sigchoose.planar import iter_circuits
from strategies import graphs_with_lists, signed_graphs


def circuit(n, negative=()):
    return build_signed_graph(range(n), [(i, (i + 1) % n, -1 if i in negative else 1) for i in range(n)])


class TestBuild:
    def test_single_vertex(self):
        g = build_signed_graph(["v1"], [])
        assert (g.n, g.m) == (1, 0)

    def test_negative_edge(self):
        g = build_signed_graph(["a", "b"], [("a", "b", -1)])
        assert g.sign("a", "b") == g.sign("b", "a") == -1
        assert list(g.negative_edges()) == [("a", "b")]

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge, match="a"):
            build_signed_graph(["a", "b"], [("a", "b", 1), ("a", "b", -1)])

    def test_reversed_duplicate(self):
        with pytest.raises(DuplicateEdge):
            build_signed_graph(["a", "b"], [("a", "b", 1), ("b", "a", 1)])

    def test_loop(self):
        with pytest.raises(Loop, match="a"):
            build_signed_graph(["a"], [("a", "a", 1)])

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex, match="c"):
            build_signed_graph(["a", "b"], [("a", "c", 1)])


class TestBalance:
    def test_positive_triangle(self):
        assert circuit_balance(circuit(3), [0, 1, 2]) is Balance.BALANCED

    def test_c4_one_negative(self):
        assert circuit_balance(circuit(4, {0}), [0, 1, 2, 3]) is Balance.UNBALANCED

    def test_c5_two_negative(self):
        assert circuit_balance(circuit(5, {0, 2}), [0, 1, 2, 3, 4]) is Balance.BALANCED

    def test_not_a_circuit(self):
        with pytest.raises(NotACircuit):
            circuit_balance(circuit(4), [0, 2, 1, 3])
        with pytest.raises(NotACircuit):
            circuit_balance(circuit(4), [0, 1])


class TestSwitch:
    def test_empty_set_is_identity(self):
        g = circuit(4, {1})
        L = {v: frozenset({1, 2}) for v in g.vertices}
        c = {0: 1, 1: 2, 2: 1, 3: 2}
        assert switch(g, set(), L, c) == (g, L, c)

    def test_k2_example(self):
        g = build_signed_graph(["a", "b"], [("a", "b", 1)])
        g2, L2, _ = switch(g, {"a"}, {"a": {1, 2}, "b": {3}})
        assert g2.sign("a", "b") == -1
        assert L2 == {"a": frozenset({-1, -2}), "b": frozenset({3})}

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            switch(circuit(3), {7})

    @given(graphs_with_lists(), st.data())
    def test_involution(self, gl, data):
        g, L = gl
        X = data.draw(st.sets(st.sampled_from(g.vertices)))
        c = {v: min(L[v]) for v in g.vertices}
        once = switch(g, X, L, c)
        twice = switch(once[0], X, once[1], once[2])
        assert twice == (g, L, c)

    @given(graphs_with_lists(), st.data())
    def test_validity_preserved(self, gl, data):
        g, L = gl
        X = data.draw(st.sets(st.sampled_from(g.vertices)))
        c = {v: data.draw(st.sampled_from(sorted(L[v]))) for v in g.vertices}
        g2, L2, c2 = switch(g, X, L, c)
        assert bool(verify_coloring(g, c, L)) == bool(verify_coloring(g2, c2, L2))

    @given(signed_graphs(max_n=7), st.data())
    def test_balance_preserved(self, g, data):
        X = data.draw(st.sets(st.sampled_from(g.vertices)))
        g2 = switch(g, X)[0]
        for k in range(3, g.n + 1):
            for cyc in iter_circuits(g, k):
                assert circuit_balance(g, cyc) == circuit_balance(g2, cyc)


class TestEquivalence:
    def test_all_positive(self):
        assert equivalent_to_all_positive(circuit(5)).switching == frozenset()

    def test_unbalanced_c4(self):
        cert = equivalent_to_all_positive(circuit(4, {0}))
        assert cert.switching is None
        assert circuit_balance(circuit(4, {0}), cert.witness) is Balance.UNBALANCED

    def test_two_opposite_negatives(self):
        g = circuit(4, {0, 2})
        cert = equivalent_to_all_positive(g)
        assert cert.switching is not None
        assert not switch(g, cert.switching)[0].negative_edges()
        # the exhaustive oracle agrees that some X works
        assert any(not switch(g, X)[0].negative_edges()
                   for r in range(5) for X in itertools.combinations(g.vertices, r))

    def test_unbalanced_c4_exhaustive(self):
        g = circuit(4, {0})
        assert all(switch(g, X)[0].negative_edges()
                   for r in range(5) for X in itertools.combinations(g.vertices, r))

    @given(signed_graphs(max_n=8))
    def test_iff_every_circuit_balanced(self, g):
        cert = equivalent_to_all_positive(g)
        balanced = all(circuit_balance(g, c) is Balance.BALANCED
                       for k in range(3, g.n + 1) for c in iter_circuits(g, k))
        assert cert.equivalent == balanced
        if cert.equivalent:
            assert not switch(g, cert.switching)[0].negative_edges()
        else:
            assert circuit_balance(g, cert.witness) is Balance.UNBALANCED


class TestVerify:
    g_pos = build_signed_graph(["u", "v"], [("u", "v", 1)])
    g_neg = build_signed_graph(["u", "v"], [("u", "v", -1)])

    def test_positive_equal(self):
        assert [x.kind for x in verify_coloring(self.g_pos, {"u": 1, "v": 1})] == ["edge"]

    def test_negative_opposite(self):
        assert [x.kind for x in verify_coloring(self.g_neg, {"u": 1, "v": -1})] == ["edge"]

    def test_negative_equal_is_fine(self):
        assert verify_coloring(self.g_neg, {"u": 1, "v": 1}) == ()

    def test_zero_on_negative_edge(self):
        assert verify_coloring(self.g_neg, {"u": 0, "v": 0})

    def test_list_violation(self):
        bad = verify_coloring(self.g_pos, {"u": 1, "v": 2}, {"u": {2}, "v": {2, 3}})
        assert [(x.kind, x.where) for x in bad] == [("list", ("u", 1))]

    def test_partial(self):
        with pytest.raises(PartialColoring):
            verify_coloring(self.g_pos, {"u": 1})

    @given(signed_graphs(max_n=6), st.data())
    def test_matches_definition(self, g, data):
        c = {v: data.draw(st.integers(-2, 2)) for v in g.vertices}
        expect = {(u, v) for u, v, s in g.signed_edges() if (c[u] == c[v] if s == 1 else c[u] == -c[v])}
        got = {x.where for x in verify_coloring(g, c) if x.kind == "edge"}
        assert got == expect


class TestColorSets:
    def test_examples(self):
        assert mrs_color_set(1) == {0}
        assert mrs_color_set(2) == {-1, 1}
        assert mrs_color_set(5) == {-2, -1, 0, 1, 2}

    def test_nonpositive(self):
        with pytest.raises(NonPositiveK):
            mrs_color_set(0)

    @pytest.mark.parametrize("k", range(1, 101))
    def test_shape(self, k):
        s = mrs_color_set(k)
        assert len(s) == k
        assert {-x for x in s} == s
        assert (0 in s) == (k % 2 == 1)


class TestSerialization:
    def test_format(self):
        doc = json.loads(dumps(build_signed_graph(["a", "b"], [("a", "b", -1)]), {"a": [1, 2], "b": [3]}))
        assert doc == {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "sign": -1}],
                       "lists": {"a": [1, 2], "b": [3]}}

    @given(graphs_with_lists())
    def test_round_trip(self, gl):
        g, L = gl
        rot = {v: g.neighbors(v) for v in g.vertices}
        text = dumps(g, L, rot)
        g2, L2, rot2 = loads(text)
        assert g2 == g and L2 == L and rot2 == {v: tuple(r) for v, r in rot.items()}
        assert dumps(g2, L2, rot2) == text

    def test_int_ids_survive_json_keys(self):
        g = circuit(3)
        doc = json.loads(json.dumps(to_document(g, {v: [v] for v in g.vertices}, {v: g.neighbors(v) for v in g.vertices})))
        g2, L2, rot2 = from_document(doc)
        assert g2.vertices == (0, 1, 2) and L2[1] == {1} and set(rot2[0]) == {1, 2}

    def test_dot(self):
        text = to_dot(build_signed_graph(["a", "b", "c"], [("a", "b", -1), ("b", "c", 1)]))
        assert '"a" -- "b" [style=dashed' in text
        assert '"b" -- "c";' in text
