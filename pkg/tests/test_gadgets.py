import itertools

import pytest

from sigchoose import gadgets
from sigchoose.core import Balance, circuit_balance
from sigchoose.errors import BadPosition, VerificationFailed
from sigchoose.gadgets import (
    H_INNER,
    build_circuit,
    build_G3,
    build_H,
    build_T,
    build_theorem4_instance,
    build_theorem10_instance,
    verify_theorem4,
    verify_theorem10,
)
from sigchoose.planar import girth, has_circuit_of_length, validate_embedding
from sigchoose.solver import count_colorings, iter_colorings, naive_colorings, solve

PM1 = {1, -1}


def faces_as_sets(emb):
    return {frozenset(f) for f in emb.faces() if len(f) == 3}


@pytest.mark.parametrize("builder", [build_G3, build_H, build_T, build_theorem4_instance,
                                     build_theorem10_instance, lambda: build_circuit(7, {2})])
def test_embeddings_valid(builder):
    inst = builder()
    assert validate_embedding(inst.embedding).planar
    assert inst.embedding.graph is inst.graph
    assert set(inst.roles) == set(inst.graph.vertices)


class TestG3:
    def test_counts(self):
        g3 = build_G3()
        roles = list(g3.roles.values())
        assert (roles.count("initial"), roles.count("solid"), roles.count("hollow")) == (4, 4, 12)
        assert g3.graph.n == 20 and g3.graph.m == 6 + 12 + 36
        assert len(g3.special_faces) == len(set(map(frozenset, g3.special_faces))) == 24

    def test_special_faces_are_faces_with_one_of_each_role(self):
        g3 = build_G3()
        faces = faces_as_sets(g3.embedding)
        for s, h, a in g3.special_faces:
            assert frozenset((s, h, a)) in faces
            assert (g3.roles[s], g3.roles[h], g3.roles[a]) == ("solid", "hollow", "initial")

    def test_colorings_biject_with_k4(self):
        g3 = build_G3()
        cols = list(iter_colorings(g3.graph, g3.lists))
        assert len(cols) == count_colorings(g3.graph, g3.lists) == 24
        assert len({tuple(c[f"i{k}"] for k in range(4)) for c in cols}) == 24
        for c in cols:
            hits = [f for f in g3.special_faces if tuple(c[v] for v in f) == (1, 2, 3)]
            assert len(hits) == 1


class TestH:
    def test_shape(self):
        h = build_H()
        assert h.graph.n == 11 and h.graph.m == 26
        assert [set(e) for e in h.graph.negative_edges()] == [{"P", "Q"}]
        assert set(h.embedding.outer_face()) == {"x", "y", "z"}

    def test_lists(self):
        h = build_H()
        assert h.lists["A"] == {1, 2, 6, 7} and h.lists["D"] == {1, 2, 4, 5}
        assert h.lists["M"] == {2, 5, 6, -6} and h.lists["Q"] == {1, 3, 6, -6}

    def test_boundary_123_blocks(self):
        h = build_H()
        L = dict(h.lists, x={1}, y={2}, z={3})
        assert count_colorings(h.graph, L) == 0
        assert next(naive_colorings(h.graph, L), None) is None

    @pytest.mark.parametrize("d, targets, left", [(4, "ABC", {6, 7}), (5, "MNPQ", {6, -6})])
    def test_residual_lists(self, d, targets, left):
        h = build_H()
        fixed = {"x": 1, "y": 2, "z": 3, "D": d}
        g = h.graph
        for v in targets:
            res = {c for c in h.lists[v] if all(fixed[u] * g.sign(u, v) != c for u in g.neighbors(v) if u in fixed)}
            assert res == left
        assert not solve(g, dict(h.lists, x={1}, y={2}, z={3}, D={d})).sat

    def test_other_boundaries_extend(self):
        h = build_H()
        for cx, cy, cz in itertools.permutations((1, 2, 3, 4), 3):
            L = dict(h.lists, x={cx}, y={cy}, z={cz})
            assert solve(h.graph, L).sat == ((cx, cy, cz) != (1, 2, 3))

    def test_mnqp_unbalanced(self):
        assert circuit_balance(build_H().graph, ["M", "N", "Q", "P"]) is Balance.UNBALANCED


class TestTheorem4Instance:
    def test_counts(self):
        inst = build_theorem4_instance()
        assert inst.graph.n == 212
        neg = inst.graph.negative_edges()
        assert len(neg) == 24
        assert all({inst.roles[u], inst.roles[v]} == {"P", "Q"} for u, v in neg)

    def test_deleting_interiors_recovers_g3(self):
        inst = build_theorem4_instance()
        g3 = build_G3()
        keep = [v for v in inst.graph.vertices if inst.roles[v] not in H_INNER]
        sub = inst.graph.subgraph(keep)
        assert sorted(sub.vertices) == sorted(g3.graph.vertices)
        assert {frozenset(e) for e in sub.edges} == {frozenset(e) for e in g3.graph.edges}
        assert all(inst.roles[v] == g3.roles[v] for v in keep)

    def test_lists(self):
        inst = build_theorem4_instance()
        for v in inst.graph.vertices:
            role = inst.roles[v]
            assert inst.lists[v] == (gadgets.H_LISTS[role] if role in H_INNER else {1, 2, 3, 4})


class TestT:
    def test_cube(self):
        t = build_T()
        assert (t.graph.n, t.graph.m) == (8, 12)
        assert girth(t.graph, 6) == 4
        assert has_circuit_of_length(t.graph, 3) is None
        assert sorted(map(len, t.embedding.faces())) == [4] * 6

    def test_theorem10_instance(self):
        inst = build_theorem10_instance()
        g = inst.graph
        assert g.n == 56 and len(g.negative_edges()) == 9 and girth(g, 6) == 4
        assert all({inst.roles[u], inst.roles[v]} == {"M", "N"} for u, v in g.negative_edges())
        assert inst.lists["A'"] == {0, 1, 2} and inst.lists["C'"] == {3, 4, 5}
        for i, j in itertools.product(range(3), range(3)):
            t = 3 * i + j
            assert inst.lists[f"B{t}"] == inst.lists[f"D{t}"] == {i, j + 3, 6}
            assert inst.lists[f"M{t}"] == {i, 7, -7} and inst.lists[f"P{t}"] == {j + 3, 7, -7}
            assert inst.lists[f"N{t}"] == inst.lists[f"Q{t}"] == {6, 7, -7}


class TestCircuits:
    def test_unbalanced_c4(self):
        inst = build_circuit(4, {0}, PM1)
        assert not solve(inst.graph, inst.lists).sat

    def test_balanced_triangle(self):
        inst = build_circuit(3, set(), PM1)
        assert not solve(inst.graph, inst.lists).sat

    def test_positive_c4(self):
        inst = build_circuit(4, set(), PM1)
        assert solve(inst.graph, inst.lists).sat

    def test_per_vertex_lists(self):
        inst = build_circuit(3, (), {"v0": {1}, "v1": {2}, "v2": {3}})
        assert inst.lists["v2"] == {3}

    @pytest.mark.parametrize("n, neg", [(2, ()), (4, {4}), (4, {-1}), (5, {"a"})])
    def test_bad_position(self, n, neg):
        with pytest.raises(BadPosition):
            build_circuit(n, neg)


class TestVerify:
    def test_theorem4(self):
        r = verify_theorem4(h_trials=500, full_trials=3)
        assert r["status"] == "pass"
        assert [s["stage"] for s in r["stages"]] == ["a", "b", "whole", "c"]

    def test_theorem10(self):
        r = verify_theorem10(trials=200)
        assert r["status"] == "pass"
        whole = next(s for s in r["stages"] if s["stage"] == "whole")
        assert whole["counts"]["sat"] is False

    def test_broken_h_is_caught(self, monkeypatch):
        # an extra color for D lets the boundary (1, 2, 3) extend
        lists = dict(gadgets.H_LISTS, D=frozenset({1, 2, 4, 5, 8}))
        monkeypatch.setattr(gadgets, "H_LISTS", lists)
        gadgets._h_unsigned.cache_clear()
        with pytest.raises(VerificationFailed):
            verify_theorem4(h_trials=50, full_trials=1)
        r = verify_theorem4(h_trials=50, full_trials=1, strict=False)
        assert r["status"] == "fail"
        gadgets._h_unsigned.cache_clear()
