"""Signed list coloring of planar graphs from 5-lists.

``extend_two_precolored`` colors a near-triangulation whose outer circuit
carries two adjacent precolored vertices, lists of size at least 3 on the
rest of the circuit and at least 5 inside.  It recurses on vertex subsets of
one fixed embedding:

* three vertices: color the last one;
* a chord of the outer circuit: color the side holding ``v1 v2`` first, then
  the other side with the chord ends as the new precolored pair;
* otherwise delete ``vp`` (the outer neighbor of ``v1`` other than ``v2``),
  reserve two colors for it and strike their products from its inner
  neighbors, recurse, and give ``vp`` a reserved color.

``color_planar_5lists`` reduces any planar signed graph to that setting.
"""

from __future__ import annotations

import networkx as nx

from .core import verify_coloring
from .errors import InternalInvariantBroken, NotPlanar, PreconditionViolated
from .planar import (
    BaseFaces,
    NotPlanarCertificate,
    articulation_points,
    components,
    embed,
    make_embedding,
    triangulate_interior,
)


def _smallest(options, what):
    if not options:
        raise InternalInvariantBroken(f"no color left for {what!r}")
    return min(options)


def _oriented_circuit(view, v1, v2):
    walk = list(view.outer_walk())
    if len(walk) != len(set(walk)):
        raise InternalInvariantBroken(f"outer walk {walk!r} is not a circuit")
    i = walk.index(v1)
    walk = walk[i:] + walk[:i]
    if walk[1] != v2:
        walk = [walk[0]] + walk[1:][::-1]
    if walk[1] != v2:
        raise InternalInvariantBroken(f"{v1!r}{v2!r} is not an outer edge")
    return walk


def _find_chord(view, circuit):
    pos = {v: i for i, v in enumerate(circuit)}
    m = len(circuit)
    for i, x in enumerate(circuit):
        best = None
        for y in view.adj[x]:
            j = pos.get(y)
            if j is None or j <= i or j - i == 1 or (i == 0 and j == m - 1):
                continue
            if best is None or j < best:
                best = j
        if best is not None:
            return x, circuit[best]
    return None


def _extend(view, lists, v1, v2, coloring, depth):
    g = view.g
    alpha, beta = coloring[v1], coloring[v2]
    if len(view.vertices) == 3:
        (v3,) = [v for v in view.vertices if v not in (v1, v2)]
        banned = {alpha * g.sign(v1, v3), beta * g.sign(v2, v3)}
        coloring[v3] = _smallest(lists[v3] - banned, v3)
        return
    circuit = _oriented_circuit(view, v1, v2)
    chord = _find_chord(view, circuit)
    if chord is not None:
        x, y = chord
        sides = view.split_by([chord], {x, y})
        if len(sides) != 2:
            raise InternalInvariantBroken(f"chord {chord!r} yields {len(sides)} sides")
        first = next(s for s in sides if v1 in s and v2 in s)
        second = next(s for s in sides if s is not first)
        _extend(view.sub(first), lists, v1, v2, coloring, depth + 1)
        _extend(view.sub(second), lists, x, y, coloring, depth + 1)
        return
    vp = circuit[-1]
    prev = circuit[-2]
    s1 = g.sign(v1, vp)
    reserve = sorted(lists[vp] - {alpha * s1})[:2]
    if len(reserve) < 2:
        raise InternalInvariantBroken(f"fewer than two reserve colors at {vp!r}")
    on_circuit = set(circuit)
    child = dict(lists)
    for x in view.adj[vp]:
        if x in on_circuit:
            continue
        s = g.sign(vp, x)
        child[x] = lists[x] - {reserve[0] * s, reserve[1] * s}
    _extend(view.sub(view.vertices - {vp}), child, v1, v2, coloring, depth + 1)
    banned = {coloring[prev] * g.sign(prev, vp)}
    coloring[vp] = _smallest(set(reserve) - banned, vp)


def _check_preconditions(emb, lists, v1, v2):
    g = emb.graph
    bad = [f for f in emb.bounded_faces() if len(f) != 3]
    if bad:
        raise PreconditionViolated("near-triangulation", f"bounded face {bad[0]!r}")
    outer = emb.outer_face()
    if outer is None or len(outer) != len(set(outer)) or len(outer) < 3:
        raise PreconditionViolated("outer-circuit", f"outer walk {outer!r}")
    if not g.has_edge(v1, v2) or v1 not in outer or v2 not in outer:
        raise PreconditionViolated("outer-edge", f"{v1!r}{v2!r} not on the outer circuit")
    i, j = outer.index(v1), outer.index(v2)
    if (j - i) % len(outer) not in (1, len(outer) - 1):
        raise PreconditionViolated("outer-edge", f"{v1!r}{v2!r} is a chord")
    if len(lists[v1]) != 1 or len(lists[v2]) != 1:
        raise PreconditionViolated("precolored-lists", "v1 and v2 need singleton lists")
    (alpha,), (beta,) = lists[v1], lists[v2]
    if alpha == beta * g.sign(v1, v2):
        raise PreconditionViolated("precolored-compatible", f"{alpha} = {beta} * sign")
    on = set(outer)
    for v in g.vertices:
        if v in (v1, v2):
            continue
        need = 3 if v in on else 5
        if len(lists[v]) < need:
            where = "outer" if v in on else "inner"
            raise PreconditionViolated(f"{where}-list-size", f"|L({v!r})| = {len(lists[v])} < {need}")


def extend_two_precolored(emb, lists, v1, v2):
    """Color a near-triangulation with ``v1 v2`` precolored on its outer circuit."""
    lists = {v: frozenset(lists[v]) for v in emb.graph.vertices}
    _check_preconditions(emb, lists, v1, v2)
    base = BaseFaces(emb)
    coloring = {v1: next(iter(lists[v1])), v2: next(iter(lists[v2]))}
    _extend(base.view(emb.graph.vertices), lists, v1, v2, coloring, 0)
    bad = verify_coloring(emb.graph, coloring, lists)
    if bad:
        raise InternalInvariantBroken(f"produced an invalid coloring: {bad[0]}")
    return coloring


# -- arbitrary planar graphs ---------------------------------------------------


def _nx(g):
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


def _connect(g):
    comps = components(g.adjacency(), g.vertices)
    if len(comps) == 1:
        return g
    hub = comps[0][0]
    return g.with_edges([(hub, c[0], 1) for c in comps[1:]])


def _make_two_connected(g):
    """Add positive edges between rotation-consecutive neighbors of cut vertices."""
    while True:
        emb = embed(g)
        cuts = articulation_points(g.adjacency(), g.vertices)
        if not cuts:
            return g, emb
        v = min(cuts, key=g.order)
        block_of = {}
        for k, block in enumerate(nx.biconnected_components(_nx(g))):
            for w in block:
                if w != v:
                    block_of.setdefault(w, set()).add(k)
        rot = emb.rotation[v]
        d = len(rot)
        for i in range(d):
            a, b = rot[i], rot[(i + 1) % d]
            shared = block_of[a] & block_of[b]
            if not shared and not g.has_edge(a, b):
                g = g.with_edges([(a, b, 1)])
                break
        else:
            raise InternalInvariantBroken(f"no augmenting edge at cut vertex {v!r}")


def color_planar_5lists(g, lists):
    """An L-coloring of a planar signed graph whose lists all have size >= 5."""
    lists = {v: frozenset(lists[v]) for v in g.vertices}
    for v in g.vertices:
        if len(lists[v]) < 5:
            raise PreconditionViolated("list-size", f"|L({v!r})| = {len(lists[v])} < 5")
    first = embed(g)
    if isinstance(first, NotPlanarCertificate):
        raise NotPlanar(f"Kuratowski subgraph with {len(first.edges)} edges")
    if g.n <= 2:
        c = {}
        for v in g.vertices:
            banned = {c[u] * g.sign(u, v) for u in g.neighbors(v) if u in c}
            c[v] = min(lists[v] - banned)
        return c
    h, emb = _make_two_connected(_connect(g))
    emb = triangulate_interior(emb)
    h = emb.graph
    outer = list(emb.outer_face())
    i = min(range(len(outer)), key=lambda t: h.order(outer[t]))
    v1, v2 = outer[i], outer[(i + 1) % len(outer)]
    alpha = min(lists[v1])
    beta = min(lists[v2] - {alpha * h.sign(v1, v2)})
    on = set(outer)
    work = {}
    for v in h.vertices:
        if v == v1:
            work[v] = frozenset([alpha])
        elif v == v2:
            work[v] = frozenset([beta])
        elif v in on:
            work[v] = frozenset(sorted(lists[v])[:3])
        else:
            work[v] = lists[v]
    c = extend_two_precolored(emb, work, v1, v2)
    out = {v: c[v] for v in g.vertices}
    bad = verify_coloring(g, out, lists)
    if bad:
        raise InternalInvariantBroken(f"produced an invalid coloring: {bad[0]}")
    return out


def near_triangulation(g, rotation, outer=None):
    """Convenience: build the embedding and check it is a near-triangulation."""
    emb = make_embedding(g, rotation, outer)
    if any(len(f) != 3 for f in emb.bounded_faces()):
        raise PreconditionViolated("near-triangulation")
    return emb

