"""Signed graphs, list assignments, switching and coloring checks.

A signed graph is a simple graph whose edges carry a sign in {+1, -1}.  A
coloring ``c`` is proper when ``c(u) != sign(uv) * c(v)`` for every edge.

Vertex ids are opaque hashables (the JSON format uses strings).  Whenever an
algorithm needs a tie-break it uses the declaration order of the vertices,
exposed through :meth:`SignedGraph.order`.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .errors import (
    DuplicateEdge,
    EmptyList,
    Loop,
    NonPositiveK,
    NotACircuit,
    PartialColoring,
    UnknownVertex,
)

Vertex = Hashable
ListAssignment = Mapping[Vertex, frozenset]
Coloring = Mapping[Vertex, int]


class SignedGraph:
    """Immutable simple graph with a signature.

    ``edges`` keeps the insertion order of the edge list; each edge is stored
    as ``(u, v)`` with ``u`` declared before ``v``.
    """

    __slots__ = ("vertices", "edges", "_order", "_adj", "_sign")

    def __init__(self, vertices, edges, signs):
        # trusted constructor; use build_signed_graph for validation
        self.vertices = tuple(vertices)
        self._order = {v: i for i, v in enumerate(self.vertices)}
        adj = {v: [] for v in self.vertices}
        self._sign = {}
        norm = []
        for (u, v), s in zip(edges, signs):
            if self._order[u] > self._order[v]:
                u, v = v, u
            norm.append((u, v))
            adj[u].append(v)
            adj[v].append(u)
            self._sign[(u, v)] = s
            self._sign[(v, u)] = s
        self.edges = tuple(norm)
        order = self._order
        self._adj = {v: tuple(sorted(ns, key=order.__getitem__)) for v, ns in adj.items()}

    # -- basic queries -------------------------------------------------
    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return len(self.edges)

    def order(self, v):
        return self._order[v]

    def __contains__(self, v):
        return v in self._order

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return (u, v) in self._sign

    def sign(self, u, v):
        try:
            return self._sign[(u, v)]
        except KeyError:
            raise UnknownVertex(f"no edge {u!r}-{v!r}") from None

    def signed_edges(self):
        return [(u, v, self._sign[(u, v)]) for u, v in self.edges]

    def negative_edges(self):
        return [(u, v) for u, v in self.edges if self._sign[(u, v)] < 0]

    def adjacency(self):
        return self._adj

    # -- derived graphs ------------------------------------------------
    def subgraph(self, keep):
        keep = set(keep)
        vs = [v for v in self.vertices if v in keep]
        es = [(u, v) for u, v in self.edges if u in keep and v in keep]
        return SignedGraph(vs, es, [self._sign[e] for e in es])

    def with_edges(self, extra):
        """Return a copy with additional ``(u, v, sign)`` edges (validated)."""
        return build_signed_graph(self.vertices, self.signed_edges() + list(extra))

    def with_signs(self, signs):
        es = list(self.edges)
        return SignedGraph(self.vertices, es, [signs.get(e, signs.get(e[::-1], self._sign[e])) for e in es])

    def unsigned(self):
        return SignedGraph(self.vertices, self.edges, [1] * self.m)

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.vertices == other.vertices and set(self._sign.items()) == set(other._sign.items())

    def __hash__(self):
        return hash((self.vertices, frozenset(self._sign.items())))

    def __repr__(self):
        return f"SignedGraph(n={self.n}, m={self.m}, negative={len(self.negative_edges())})"


def build_signed_graph(vertex_ids, signed_edge_list):
    """Validate and build a :class:`SignedGraph`.

    ``signed_edge_list`` holds ``(u, v, sign)`` triples; a missing sign means +1.
    """
    vertices = list(vertex_ids)
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateEdge(f"vertex {v!r} declared twice")
        seen.add(v)
    edges, signs, keys = [], [], set()
    for item in signed_edge_list:
        if len(item) == 2:
            u, v, s = item[0], item[1], 1
        else:
            u, v, s = item
        for w in (u, v):
            if w not in seen:
                raise UnknownVertex(f"edge {u!r}-{v!r} uses undeclared vertex {w!r}")
        if u == v:
            raise Loop(f"loop at {u!r}")
        if s not in (1, -1):
            raise ValueError(f"sign of {u!r}-{v!r} must be +1 or -1, got {s!r}")
        key = frozenset((u, v))
        if key in keys:
            raise DuplicateEdge(f"duplicate edge {u!r}-{v!r}")
        keys.add(key)
        edges.append((u, v))
        signs.append(int(s))
    return SignedGraph(vertices, edges, signs)


def make_lists(g, lists):
    """Normalise a list assignment to ``{v: frozenset}``; every list nonempty."""
    out = {}
    for v in g.vertices:
        if v not in lists:
            raise EmptyList(f"vertex {v!r} has no list")
        lst = frozenset(int(a) for a in lists[v])
        if not lst:
            raise EmptyList(f"vertex {v!r} has an empty list")
        out[v] = lst
    return out


# -- balance and switching -------------------------------------------


class Balance(enum.Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"


def _check_circuit(g, cycle):
    cycle = list(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACircuit(f"{cycle!r} is not a sequence of >= 3 distinct vertices")
    for v in cycle:
        if v not in g:
            raise UnknownVertex(f"unknown vertex {v!r}")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if not g.has_edge(a, b):
            raise NotACircuit(f"{a!r}-{b!r} is not an edge")
    return cycle


def circuit_sign(g, cycle):
    cycle = _check_circuit(g, cycle)
    s = 1
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        s *= g.sign(a, b)
    return s


def circuit_balance(g, cycle):
    """Balanced iff the circuit has an even number of negative edges."""
    return Balance.BALANCED if circuit_sign(g, cycle) == 1 else Balance.UNBALANCED


def switch(g, X, lists=None, coloring=None):
    """Switch at the vertex set ``X``.

    Flips the sign of every edge with exactly one end in ``X`` and negates the
    lists and colors of the vertices of ``X``.  Returns ``(g', lists', coloring')``
    where absent inputs stay ``None``.
    """
    X = frozenset(X)
    for v in X:
        if v not in g:
            raise UnknownVertex(f"unknown vertex {v!r}")
    signs = [-s if ((u in X) != (v in X)) else s for u, v, s in g.signed_edges()]
    g2 = SignedGraph(g.vertices, g.edges, signs)
    L2 = None
    if lists is not None:
        L2 = {v: (frozenset(-a for a in lst) if v in X else frozenset(lst)) for v, lst in lists.items()}
    c2 = None
    if coloring is not None:
        c2 = {v: (-a if v in X else a) for v, a in coloring.items()}
    return g2, L2, c2


@dataclass(frozen=True)
class SwitchingCertificate:
    """Outcome of :func:`equivalent_to_all_positive`.

    Exactly one of ``switching`` (a set X making all edges positive) and
    ``witness`` (an unbalanced circuit) is set.
    """

    switching: frozenset | None
    witness: tuple | None

    @property
    def equivalent(self):
        return self.switching is not None


def equivalent_to_all_positive(g):
    side = {}
    parent = {}
    for root in g.vertices:
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                want = side[u] ^ (g.sign(u, w) < 0)
                if w not in side:
                    side[w] = want
                    parent[w] = u
                    queue.append(w)
                elif side[w] != want:
                    return SwitchingCertificate(None, _odd_cycle(g, parent, u, w))
    return SwitchingCertificate(frozenset(v for v in g.vertices if side[v]), None)


def _odd_cycle(g, parent, u, w):
    # tree paths from u and w to their lowest common ancestor, closed by uw
    def path(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pu, pw = path(u), path(w)
    on_pw = {x: i for i, x in enumerate(pw)}
    for i, x in enumerate(pu):
        if x in on_pw:
            j = on_pw[x]
            return tuple(pu[: i + 1] + pw[:j][::-1])
    raise AssertionError("BFS tree paths must meet")


# -- coloring verification -------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge" or "list"
    where: tuple

    def __str__(self):
        return f"{self.kind} {self.where}"


def verify_coloring(g, coloring, lists=None):
    """Return the tuple of violations; an empty tuple means the coloring is valid."""
    missing = [v for v in g.vertices if v not in coloring]
    if missing:
        raise PartialColoring(f"uncolored vertices: {missing[:5]!r}")
    bad = []
    if lists is not None:
        for v in g.vertices:
            if coloring[v] not in lists[v]:
                bad.append(Violation("list", (v, coloring[v])))
    for u, v, s in g.signed_edges():
        if coloring[u] == s * coloring[v]:
            bad.append(Violation("edge", (u, v)))
    return tuple(bad)


def is_valid_coloring(g, coloring, lists=None):
    return not verify_coloring(g, coloring, lists)


def mrs_color_set(k):
    """The symmetric color set of size ``k`` used for signed k-colorings."""
    if k < 1:
        raise NonPositiveK(f"k must be positive, got {k}")
    h = k // 2
    out = set(range(1, h + 1)) | set(range(-h, 0))
    if k % 2:
        out.add(0)
    return frozenset(out)


# -- serialization ---------------------------------------------------


def to_document(g, lists=None, rotation=None, coloring=None):
    doc = {
        "vertices": list(g.vertices),
        "edges": [{"u": u, "v": v, "sign": s} for u, v, s in g.signed_edges()],
    }
    if lists is not None:
        doc["lists"] = {v: sorted(lists[v]) for v in g.vertices}
    if rotation is not None:
        doc["rotation"] = {v: _canonical_cycle(g, rotation[v]) for v in g.vertices}
    if coloring is not None:
        doc["coloring"] = {v: coloring[v] for v in g.vertices}
    return doc


def _canonical_cycle(g, seq):
    seq = list(seq)
    if not seq:
        return seq
    i = min(range(len(seq)), key=lambda j: g.order(seq[j]))
    return seq[i:] + seq[:i]


def dumps(g, lists=None, rotation=None, coloring=None):
    return json.dumps(to_document(g, lists, rotation, coloring))


def from_document(doc):
    """Parse the JSON graph format; returns ``(graph, lists or None, rotation or None)``."""
    g = build_signed_graph(doc["vertices"], [(e["u"], e["v"], e.get("sign", 1)) for e in doc["edges"]])
    lists = None
    if doc.get("lists") is not None:
        raw = doc["lists"]
        by_str = {str(k): val for k, val in raw.items()}
        lists = make_lists(g, {v: raw[v] if v in raw else by_str[str(v)] for v in g.vertices if v in raw or str(v) in by_str})
    rotation = None
    if doc.get("rotation") is not None:
        raw = doc["rotation"]
        by_str = {str(k): val for k, val in raw.items()}
        rotation = {v: tuple(raw[v] if v in raw else by_str[str(v)]) for v in g.vertices}
    return g, lists, rotation


def loads(text):
    return from_document(json.loads(text))


def to_dot(g, name="G"):
    """Graphviz rendering: negative edges dashed and labelled with a minus sign."""
    lines = [f"graph {json.dumps(str(name))} {{"]
    for v in g.vertices:
        lines.append(f"  {json.dumps(str(v))};")
    for u, v, s in g.signed_edges():
        a, b = json.dumps(str(u)), json.dumps(str(v))
        if s < 0:
            lines.append(f'  {a} -- {b} [style=dashed, label="−"];')
        else:
            lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
