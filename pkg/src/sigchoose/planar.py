"""Plane embeddings as rotation systems.

Face tracing convention: the dart following ``(u, v)`` is ``(v, w)`` where
``w`` is the successor of ``u`` in the cyclic rotation at ``v``.

``embed`` delegates planarity testing to networkx's left-right planarity
test (deterministic for a fixed vertex/edge insertion order) and converts
its clockwise neighbor orders into a rotation system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .core import SignedGraph, build_signed_graph
from .errors import InvalidRotation, NotTwoConnected, WouldCreateParallelEdge


@dataclass(frozen=True)
class RotationEmbedding:
    graph: SignedGraph
    rotation: dict
    outer: tuple | None = None  # a dart on the outer face

    def faces(self):
        return trace_faces(self)

    def outer_face(self):
        """Vertex walk of the outer face (the face containing ``outer``)."""
        if self.outer is None:
            return None
        dart_face = _dart_faces(self.rotation)[1]
        return dart_face[self.outer]

    def bounded_faces(self):
        out = self.outer_face()
        faces = trace_faces(self)
        if out is None:
            return faces
        key = _face_key(out)
        return [f for f in faces if _face_key(f) != key]


@dataclass(frozen=True)
class NotPlanarCertificate:
    """Kuratowski subgraph edges returned when no plane embedding exists."""

    edges: tuple = field(default=())


@dataclass(frozen=True)
class EmbeddingCheck:
    planar: bool
    euler_defect: dict  # component index -> V - E + F - 2


def _face_key(walk):
    # rotation-invariant identity of a face walk: its set of darts
    return frozenset(zip(walk, walk[1:] + walk[:1]))


def _check_rotation(g, rotation):
    for v in g.vertices:
        rot = rotation.get(v)
        if rot is None:
            raise InvalidRotation(f"no rotation at {v!r}")
        if len(rot) != g.degree(v) or set(rot) != set(g.neighbors(v)):
            raise InvalidRotation(f"rotation at {v!r} is not a permutation of its neighbors")


def _succ_tables(rotation):
    succ = {}
    for v, rot in rotation.items():
        d = len(rot)
        succ[v] = {rot[i]: rot[(i + 1) % d] for i in range(d)}
    return succ


def _dart_faces(rotation):
    """Trace all faces; returns (list of walks, dart -> walk)."""
    succ = _succ_tables(rotation)
    seen = set()
    faces = []
    dart_face = {}
    for u in rotation:
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            darts = []
            while (a, b) not in seen:
                seen.add((a, b))
                darts.append((a, b))
                walk.append(a)
                a, b = b, succ[b][a]
            w = tuple(walk)
            faces.append(w)
            for d in darts:
                dart_face[d] = w
    return faces, dart_face


def trace_faces(emb):
    """Face walks of the embedding; each dart lies in exactly one walk.

    Isolated vertices contribute no walk.
    """
    _check_rotation(emb.graph, emb.rotation)
    return _dart_faces(emb.rotation)[0]


def components(adj, vertices=None):
    vertices = list(adj) if vertices is None else list(vertices)
    allowed = set(vertices)
    seen = set()
    out = []
    for s in vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(comp)
    return out


def validate_embedding(emb):
    g = emb.graph
    _check_rotation(g, emb.rotation)
    faces = _dart_faces(emb.rotation)[0]
    comp_of = {}
    comps = components(g.adjacency())
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    nv = [len(c) for c in comps]
    ne = [0] * len(comps)
    nf = [0] * len(comps)
    for u, _ in g.edges:
        ne[comp_of[u]] += 1
    for f in faces:
        nf[comp_of[f[0]]] += 1
    defect = {}
    for i in range(len(comps)):
        faces_i = nf[i] if ne[i] else 1
        d = nv[i] - ne[i] + faces_i - 2
        if d:
            defect[i] = d
    return EmbeddingCheck(not defect, defect)


def default_outer(g, rotation):
    """Longest face; ties broken by the earliest dart in vertex order."""
    faces = _dart_faces(rotation)[0]
    if not faces:
        return None
    best = max(faces, key=lambda f: (len(f), -min(g.order(v) for v in f)))
    return (best[0], best[1 % len(best)]) if len(best) > 1 else None


def make_embedding(g, rotation, outer=None):
    rotation = {v: tuple(rotation[v]) for v in g.vertices}
    _check_rotation(g, rotation)
    if outer is None:
        outer = default_outer(g, rotation)
    return RotationEmbedding(g, rotation, outer)


def embed(g):
    """A plane rotation system for ``g`` or a :class:`NotPlanarCertificate`."""
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    ok, cert = nx.check_planarity(G, counterexample=True)
    if not ok:
        return NotPlanarCertificate(tuple(cert.edges()))
    rotation = {v: tuple(cert.neighbors_cw_order(v)) for v in g.vertices}
    return make_embedding(g, rotation)


def is_planar(g):
    return isinstance(embed(g), RotationEmbedding)


# -- cycles ------------------------------------------------------------


def iter_circuits(g, k, adj=None):
    """Yield every k-circuit exactly once as a vertex tuple.

    The tuple starts at its lowest-order vertex and its second vertex precedes
    its last one in vertex order.
    """
    adj = g.adjacency() if adj is None else adj
    order = g.order
    for s in g.vertices:
        os_ = order(s)
        path = [s]
        on = {s}

        def rec():
            u = path[-1]
            if len(path) == k:
                if s in adj[u] and order(path[1]) < order(path[-1]):
                    yield tuple(path)
                return
            for w in adj[u]:
                if w in on or order(w) <= os_:
                    continue
                path.append(w)
                on.add(w)
                yield from rec()
                on.discard(w)
                path.pop()

        yield from rec()


def has_circuit_of_length(g, k):
    """A k-circuit of ``g`` as a tuple, or ``None``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    return next(iter_circuits(g, k), None)


def girth(g, limit=None):
    limit = g.n if limit is None else limit
    for k in range(3, limit + 1):
        if has_circuit_of_length(g, k) is not None:
            return k
    return None


def degeneracy_order(g):
    """Repeatedly remove a minimum-degree vertex (lowest order on ties).

    Returns ``(d, order)`` where ``d`` is the largest degree seen at removal.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    order = []
    d = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], g.order(x)))
        d = max(d, deg[v])
        order.append(v)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return d, order


# -- connectivity --------------------------------------------------------


def articulation_points(adj, vertices=None):
    """Cut vertices of the graph induced on ``vertices`` (iterative Tarjan)."""
    vertices = list(adj) if vertices is None else list(vertices)
    allowed = set(vertices)
    disc, low = {}, {}
    cut = set()
    t = 0
    for root in vertices:
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [(root, None, iter([w for w in adj[root] if w in allowed]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, u, iter([x for x in adj[w] if x in allowed])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[u])
                if parent == root:
                    children += 1
                elif low[u] >= disc[parent]:
                    cut.add(parent)
        if children > 1:
            cut.add(root)
    return cut


def is_two_connected(g):
    if g.n < 3:
        return False
    return len(components(g.adjacency())) == 1 and not articulation_points(g.adjacency())


# -- triangulation ---------------------------------------------------------


def _insert_after(rot, v, after, new):
    seq = list(rot[v])
    seq.insert(seq.index(after) + 1, new)
    rot[v] = tuple(seq)


def _add_diagonal(rot, walk, i, j, adjset):
    """Add chord walk[i]-walk[j] inside the face ``walk``; return the two new faces."""
    m = len(walk)
    a, b = walk[i], walk[j]
    if b in adjset[a]:
        raise WouldCreateParallelEdge(f"{a!r}-{b!r} already present")
    _insert_after(rot, a, walk[(i - 1) % m], b)
    _insert_after(rot, b, walk[(j - 1) % m], a)
    adjset[a].add(b)
    adjset[b].add(a)
    f1 = [walk[(j + t) % m] for t in range((i - j) % m + 1)]  # b .. a
    f2 = [walk[(i + t) % m] for t in range((j - i) % m + 1)]  # a .. b
    return tuple(f1), tuple(f2)


def triangulate_interior(emb):
    """Split every bounded face into triangles with new positive edges.

    Each face is fanned from its lowest-order vertex; when a fan chord would
    duplicate an edge the next vertex along the face is tried, and if no
    vertex admits a full fan a single non-edge diagonal splits the face first.
    """
    g = emb.graph
    if not is_two_connected(g):
        raise NotTwoConnected("triangulate_interior needs a 2-connected embedding")
    rot = {v: tuple(r) for v, r in emb.rotation.items()}
    adjset = {v: set(g.neighbors(v)) for v in g.vertices}
    outer_key = _face_key(emb.outer_face()) if emb.outer is not None else None
    work = [f for f in _dart_faces(rot)[0] if len(f) > 3 and _face_key(f) != outer_key]
    added = []
    while work:
        walk = work.pop(0)
        m = len(walk)
        if m <= 3:
            continue
        start = min(range(m), key=lambda t: g.order(walk[t]))
        done = False
        for off in range(m):
            i = (start + off) % m
            a = walk[i]
            targets = [walk[(i + t) % m] for t in range(2, m - 1)]
            if any(x in adjset[a] for x in targets):
                continue
            cur = walk
            ci = i
            for _ in targets:
                mm = len(cur)
                f1, f2 = _add_diagonal(rot, cur, ci, (ci + 2) % mm, adjset)
                added.append((cur[ci], cur[(ci + 2) % mm]))
                # f1 runs b..a and holds the remaining polygon
                cur = f1
                ci = len(f1) - 1
            done = True
            break
        if done:
            continue
        pair = None
        for i in range(m):
            for j in range(i + 2, m):
                if (j + 1) % m == i:
                    continue
                if walk[j] not in adjset[walk[i]]:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            raise WouldCreateParallelEdge(f"face {walk!r} admits no diagonal")
        f1, f2 = _add_diagonal(rot, walk, pair[0], pair[1], adjset)
        added.append((walk[pair[0]], walk[pair[1]]))
        work.extend([f1, f2])
    if not added:
        return emb
    g2 = build_signed_graph(g.vertices, g.signed_edges() + [(a, b, 1) for a, b in added])
    return RotationEmbedding(g2, rot, emb.outer)


def is_near_triangulation(emb):
    return all(len(f) == 3 for f in emb.bounded_faces())


# -- region views ---------------------------------------------------------------


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[a] = b


class BaseFaces:
    """Face bookkeeping for a fixed base embedding, shared by region views."""

    def __init__(self, emb):
        self.emb = emb
        self.graph = emb.graph
        self.rotation = emb.rotation
        faces, dart_face = _dart_faces(emb.rotation)
        self.faces = faces
        index = {_face_key(f): i for i, f in enumerate(faces)}
        self.face_of = {d: index[_face_key(w)] for d, w in dart_face.items()}
        self.outer_index = self.face_of[emb.outer] if emb.outer is not None else None
        # every other component sits in the outer face: its longest face joins the outer region
        g = emb.graph
        self.outer_indices = set() if self.outer_index is None else {self.outer_index}
        comp_of = {}
        for k, comp in enumerate(components(g.adjacency(), g.vertices)):
            for v in comp:
                comp_of[v] = k
        covered = {comp_of[faces[i][0]] for i in self.outer_indices}
        best = {}
        for i, f in enumerate(faces):
            k = comp_of[f[0]]
            if k in covered:
                continue
            key = (len(f), -min(g.order(v) for v in f))
            if k not in best or key > best[k][0]:
                best[k] = (key, i)
        self.outer_indices |= {i for _, i in best.values()}
        if self.outer_index is None and self.outer_indices:
            self.outer_index = min(self.outer_indices)

    def view(self, vertices, ref=None):
        return RegionView(self, frozenset(vertices), self.outer_index if ref is None else ref)


class RegionView:
    """Induced sub-embedding on a vertex subset of a base embedding.

    ``ref`` is a base face lying in the region treated as unbounded, so the
    outer face of the view is the face containing that region.
    """

    def __init__(self, base, vertices, ref):
        self.base = base
        self.vertices = vertices
        self.ref = ref
        g = base.graph
        self.g = g
        self.order = g.order
        self.adj = {v: tuple(w for w in g.neighbors(v) if w in vertices) for v in vertices}
        self.rot = {v: tuple(w for w in base.rotation[v] if w in vertices) for v in vertices}
        self._faces = None

    def sorted(self, vs):
        return sorted(vs, key=self.order)

    def sub(self, vertices):
        return RegionView(self.base, frozenset(vertices), self.ref)

    def with_ref(self, ref):
        return RegionView(self.base, self.vertices, ref)

    def components(self):
        return [self.sorted(c) for c in components(self.adj, self.sorted(self.vertices))]

    def cut_vertices(self):
        return articulation_points(self.adj, self.sorted(self.vertices))

    def sign(self, u, v):
        return self.g.sign(u, v)

    def _region_class(self, comp):
        comp = set(comp)
        uf = _UF(len(self.base.faces))
        fo = self.base.face_of
        if self.ref in self.base.outer_indices:
            for i in self.base.outer_indices:
                uf.union(i, self.ref)
        for u, v in self.g.edges:
            if u in comp and v in comp:
                continue
            uf.union(fo[(u, v)], fo[(v, u)])
        return uf, uf.find(self.ref)

    def faces(self):
        """(face walks, dart -> face index) of the view."""
        if self._faces is None:
            walks, dart_face = _dart_faces(self.rot)
            index = {_face_key(w): i for i, w in enumerate(walks)}
            self._faces = (walks, {d: index[_face_key(w)] for d, w in dart_face.items()})
        return self._faces

    def outer_walk(self, comp=None):
        """Outer face walk of the component ``comp`` (default: the whole view)."""
        comp = self.vertices if comp is None else frozenset(comp)
        if len(comp) == 1:
            return tuple(comp)
        uf, root = self._region_class(comp)
        fo = self.base.face_of
        rot = {v: tuple(w for w in self.rot[v] if w in comp) for v in comp}
        succ = _succ_tables(rot)
        for u in self.sorted(comp):
            for v in rot[u]:
                if uf.find(fo[(u, v)]) == root:
                    walk = []
                    a, b = u, v
                    while True:
                        walk.append(a)
                        a, b = b, succ[b][a]
                        if (a, b) == (u, v):
                            break
                    return tuple(walk)
        raise InvalidRotation("outer region not found")

    def outer_face_index(self):
        walks, dart_face = self.faces()
        w = self.outer_walk()
        if len(w) < 2:
            return None
        return dart_face[(w[0], w[1])]

    def split_by(self, separator_edges, separator_vertices):
        """Sides of a 2-connected view cut by a path between outer vertices.

        Bounded faces are glued across every edge not in ``separator_edges``;
        each resulting class gives one side.  Returns a list of vertex sets,
        each including the separator vertices.
        """
        walks, dart_face = self.faces()
        outer = self.outer_face_index()
        sep = {frozenset(e) for e in separator_edges}
        uf = _UF(len(walks))
        for u in self.vertices:
            for v in self.adj[u]:
                if frozenset((u, v)) in sep:
                    continue
                a, b = dart_face[(u, v)], dart_face[(v, u)]
                if a != outer and b != outer:
                    uf.union(a, b)
        sides = {}
        for v in self.vertices:
            if v in separator_vertices:
                continue
            cls = None
            for w in self.adj[v]:
                f = dart_face[(v, w)]
                if f != outer:
                    cls = uf.find(f)
                    break
            if cls is None:
                cls = ("outer", v)
            sides.setdefault(cls, set()).add(v)
        return [frozenset(s | set(separator_vertices)) for s in sides.values()]

    def inside_of(self, cycle):
        """Vertices strictly inside ``cycle`` with respect to the outer face."""
        walks, dart_face = self.faces()
        outer = self.outer_face_index()
        cyc = list(cycle)
        sep = {frozenset(e) for e in zip(cyc, cyc[1:] + cyc[:1])}
        uf = _UF(len(walks))
        for u in self.vertices:
            for v in self.adj[u]:
                if frozenset((u, v)) not in sep:
                    uf.union(dart_face[(u, v)], dart_face[(v, u)])
        out_cls = uf.find(outer)
        on = set(cyc)
        inside = set()
        for v in self.vertices:
            if v in on or not self.adj[v]:
                continue
            if uf.find(dart_face[(v, self.adj[v][0])]) != out_cls:
                inside.add(v)
        return inside
