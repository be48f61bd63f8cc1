import itertools

import networkx as nx
import pytest
from hypothesis import given

from sigchoose.core import build_signed_graph
from sigchoose.errors import InvalidRotation, NotTwoConnected
from sigchoose.gadgets import build_G3
from sigchoose.generators import make_rng, random_avoiding, random_planar
from sigchoose.planar import (
    NotPlanarCertificate,
    RotationEmbedding,
    degeneracy_order,
    embed,
    girth,
    has_circuit_of_length,
    is_near_triangulation,
    is_two_connected,
    make_embedding,
    trace_faces,
    triangulate_interior,
    validate_embedding,
)
from strategies import signed_graphs


def from_nx(h):
    return build_signed_graph(list(h.nodes), list(h.edges))


CUBE = from_nx(nx.hypercube_graph(3))
K4 = from_nx(nx.complete_graph(4))
K5 = from_nx(nx.complete_graph(5))
DODECA = from_nx(nx.dodecahedral_graph())


def brute_has_circuit(g, k):
    """Every k-subset, every cyclic order: the slow oracle."""
    for sub in itertools.combinations(g.vertices, k):
        first, rest = sub[0], sub[1:]
        for perm in itertools.permutations(rest):
            cyc = (first,) + perm
            if all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                return True
    return False


class TestFaces:
    def test_k4(self):
        faces = trace_faces(embed(K4))
        assert sorted(map(len, faces)) == [3, 3, 3, 3]

    def test_cube(self):
        faces = trace_faces(embed(CUBE))
        assert sorted(map(len, faces)) == [4] * 6

    def test_single_edge(self):
        g = build_signed_graph("ab", [("a", "b", 1)])
        assert [len(f) for f in trace_faces(embed(g))] == [2]

    def test_bad_rotation(self):
        g = build_signed_graph("abc", [("a", "b", 1), ("b", "c", 1)])
        with pytest.raises(InvalidRotation):
            trace_faces(RotationEmbedding(g, {"a": ("b",), "b": ("a",), "c": ("b",)}))

    @given(signed_graphs(max_n=9))
    def test_darts_partitioned(self, g):
        emb = embed(g)
        if isinstance(emb, NotPlanarCertificate):
            return
        faces = trace_faces(emb)
        assert sum(map(len, faces)) == 2 * g.m
        darts = [(f[i], f[(i + 1) % len(f)]) for f in faces for i in range(len(f))]
        assert len(darts) == len(set(darts))


class TestValidate:
    def test_k4(self):
        assert validate_embedding(embed(K4)).planar

    def test_k5_canonical_rotation(self):
        rot = {v: K5.neighbors(v) for v in K5.vertices}
        assert not validate_embedding(make_embedding(K5, rot)).planar

    def test_forest(self):
        g = build_signed_graph(range(5), [(0, 1, 1), (2, 3, 1), (3, 4, -1)])
        assert validate_embedding(embed(g)).planar

    @given(signed_graphs(max_n=9))
    def test_embed_agrees_with_networkx(self, g):
        h = nx.Graph(list(g.edges))
        h.add_nodes_from(g.vertices)
        emb = embed(g)
        assert isinstance(emb, RotationEmbedding) == nx.check_planarity(h)[0]
        if isinstance(emb, RotationEmbedding):
            assert validate_embedding(emb).planar


class TestEmbed:
    def test_cube(self):
        assert validate_embedding(embed(CUBE)).planar

    def test_k5(self):
        cert = embed(K5)
        assert isinstance(cert, NotPlanarCertificate) and cert.edges

    def test_deterministic(self):
        g = random_planar(30, make_rng(3))
        assert embed(g) == embed(g)


class TestCircuits:
    def test_cube(self):
        assert has_circuit_of_length(CUBE, 3) is None
        c = has_circuit_of_length(CUBE, 4)
        assert c is not None and len(c) == 4

    def test_dodecahedron(self):
        assert has_circuit_of_length(DODECA, 3) is None
        assert has_circuit_of_length(DODECA, 4) is None
        assert girth(DODECA) == 5

    def test_k_too_small(self):
        with pytest.raises(ValueError):
            has_circuit_of_length(CUBE, 2)

    @given(signed_graphs(max_n=7))
    def test_matches_brute_force(self, g):
        for k in range(3, g.n + 1):
            c = has_circuit_of_length(g, k)
            assert (c is not None) == brute_has_circuit(g, k)
            if c is not None:
                assert len(set(c)) == k and all(g.has_edge(c[i], c[(i + 1) % k]) for i in range(k))


class TestDegeneracy:
    def test_tree(self):
        g = from_nx(nx.balanced_tree(2, 3))
        assert degeneracy_order(g)[0] == 1

    def test_k4(self):
        assert degeneracy_order(K4)[0] == 3

    def test_g3(self):
        assert degeneracy_order(build_G3().graph)[0] == 3

    @given(signed_graphs(max_n=9))
    def test_matches_core_number(self, g):
        h = nx.Graph(list(g.edges))
        h.add_nodes_from(g.vertices)
        d, order = degeneracy_order(g)
        assert sorted(order) == sorted(g.vertices)
        assert d == (max(nx.core_number(h).values()) if g.n else 0)

    @pytest.mark.parametrize("lengths", [(3,), (5,), (6,)])
    def test_avoiding_classes_are_3_degenerate(self, lengths):
        rng = make_rng(sum(lengths))
        for _ in range(40):
            g = random_avoiding(rng.randint(4, 25), rng, lengths)
            assert degeneracy_order(g)[0] <= 3


class TestTriangulate:
    def test_c5_fan(self):
        g = build_signed_graph(range(5), [(i, (i + 1) % 5, 1) for i in range(5)])
        emb = triangulate_interior(embed(g))
        assert len(emb.bounded_faces()) == 3
        assert all(len(f) == 3 for f in emb.bounded_faces())

    def test_idempotent(self):
        emb = embed(K4)
        assert triangulate_interior(emb) is emb

    def test_cube(self):
        emb = triangulate_interior(embed(CUBE))
        assert emb.graph.m == 12 + 5
        assert is_near_triangulation(emb) and validate_embedding(emb).planar

    def test_needs_two_connected(self):
        g = build_signed_graph(range(3), [(0, 1, 1), (1, 2, 1)])
        with pytest.raises(NotTwoConnected):
            triangulate_interior(embed(g))

    def test_random(self):
        rng = make_rng(11)
        done = 0
        while done < 60:
            g = random_planar(rng.randint(3, 30), rng)
            if not is_two_connected(g):
                continue
            done += 1
            emb = embed(g)
            tri = triangulate_interior(emb)
            assert validate_embedding(tri).planar and is_near_triangulation(tri)
            assert tri.outer_face() == emb.outer_face()
            for u, v, s in g.signed_edges():
                assert tri.graph.sign(u, v) == s
            assert all(tri.graph.sign(u, v) == 1 for u, v in tri.graph.edges if not g.has_edge(u, v))
