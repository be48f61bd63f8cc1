"""Random instance generators.

Distributions:

* ``random_triangulation(n)``: start from a triangle, insert each new vertex
  into a uniformly chosen face, then perform ``3n`` random edge flips.
* ``random_planar(n)``: a random triangulation, each edge kept with
  probability ``keep`` (itself uniform in [0.3, 1] unless given).
* ``random_near_triangulation(n)``: a random triangulation on ``n + 1``
  vertices minus one uniformly chosen vertex, whose link becomes the outer
  circuit.
* ``random_avoiding(n, lengths)``: the edges of a random triangulation in
  random order, each kept unless it closes a circuit whose length lies in
  ``lengths``.  Girth >= 5 is ``lengths = (3, 4)``.

Every generator takes a :class:`random.Random`; vertex ids are ``0..n-1``.
"""

from __future__ import annotations

import random

from .core import build_signed_graph
from .planar import embed, make_embedding


def random_triangulation_edges(n, rng):
    if n < 3:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    faces = [frozenset((0, 1, 2)), frozenset((0, 1, 2))]
    edges = {frozenset((0, 1)), frozenset((1, 2)), frozenset((0, 2))}
    for v in range(3, n):
        k = rng.randrange(len(faces))
        a, b, c = sorted(faces[k])
        faces[k] = frozenset((a, b, v))
        faces.append(frozenset((b, c, v)))
        faces.append(frozenset((a, c, v)))
        edges |= {frozenset((a, v)), frozenset((b, v)), frozenset((c, v))}
    if n >= 4:
        for _ in range(3 * n):
            e = rng.choice(sorted(edges, key=sorted))
            two = [i for i, f in enumerate(faces) if e <= f]
            if len(two) != 2:
                continue
            x = next(iter(faces[two[0]] - e))
            y = next(iter(faces[two[1]] - e))
            if x == y or frozenset((x, y)) in edges:
                continue
            u, w = sorted(e)
            edges.discard(e)
            edges.add(frozenset((x, y)))
            faces[two[0]] = frozenset((x, y, u))
            faces[two[1]] = frozenset((x, y, w))
    return sorted(tuple(sorted(e)) for e in edges)


def random_signs(edges, rng, p_negative=0.5):
    return [(u, v, -1 if rng.random() < p_negative else 1) for u, v in edges]


def random_planar(n, rng, keep=None, p_negative=0.5):
    keep = rng.uniform(0.3, 1.0) if keep is None else keep
    edges = [e for e in random_triangulation_edges(n, rng) if rng.random() < keep]
    return build_signed_graph(range(n), random_signs(edges, rng, p_negative))


def random_near_triangulation(n, rng, p_negative=0.5):
    """A signed near-triangulation on ``n >= 3`` vertices with its embedding."""
    if n < 3:
        raise ValueError("a near-triangulation needs at least 3 vertices")
    edges = random_triangulation_edges(n + 1, rng)
    gone = rng.randrange(n + 1)
    keep = [v for v in range(n + 1) if v != gone]
    full = embed(build_signed_graph(range(n + 1), [(u, v, 1) for u, v in edges]))
    # a -> b, where b follows ``gone`` around a, lies on the face left by ``gone``
    a = full.rotation[gone][0]
    succ = {w: full.rotation[a][(i + 1) % len(full.rotation[a])] for i, w in enumerate(full.rotation[a])}
    b = succ[gone]
    relabel = {v: i for i, v in enumerate(keep)}
    signed = random_signs([(relabel[u], relabel[v]) for u, v in edges if gone not in (u, v)], rng, p_negative)
    g = build_signed_graph(range(n), signed)
    rot = {relabel[v]: tuple(relabel[w] for w in full.rotation[v] if w != gone) for v in keep}
    return g, make_embedding(g, rot, (relabel[a], relabel[b]))


def _has_path_of_length(adj, u, v, length):
    """Is there a simple u-v path with exactly ``length`` edges?"""
    path = {u}

    def rec(x, left):
        if left == 1:
            return v in adj[x]
        for w in adj[x]:
            if w != v and w not in path:
                path.add(w)
                if rec(w, left - 1):
                    return True
                path.discard(w)
        return False

    return rec(u, length)


def random_avoiding(n, rng, lengths, p_negative=0.5, keep=1.0):
    """Random planar graph with no circuit whose length lies in ``lengths``.

    The edges of a random triangulation are scanned in random order; an edge
    is kept (with probability ``keep``) unless it closes a forbidden circuit.
    """
    edges = random_triangulation_edges(n, rng)
    rng.shuffle(edges)
    adj = {v: set() for v in range(n)}
    kept = []
    for u, v in edges:
        if rng.random() >= keep:
            continue
        if any(_has_path_of_length(adj, u, v, k - 1) for k in lengths):
            continue
        adj[u].add(v)
        adj[v].add(u)
        kept.append((u, v))
    kept.sort()
    return build_signed_graph(range(n), random_signs(kept, rng, p_negative))


def random_girth5(n, rng, p_negative=0.5):
    return random_avoiding(n, rng, (3, 4), p_negative)


def random_lists(g, k, universe, rng):
    universe = sorted(universe)
    return {v: frozenset(rng.sample(universe, k)) for v in g.vertices}


def make_rng(seed):
    return random.Random(seed)
