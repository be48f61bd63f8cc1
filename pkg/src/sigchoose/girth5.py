"""Signed list coloring of plane graphs of girth at least 5 from 3-lists.

``extend_path_girth5`` extends a coloring of a short precolored path (or
circuit) on the outer boundary.  An instance is a vertex subset ``S`` of one
fixed embedding, the colors of its precolored vertices and the current lists
of the others.  Lists never contain the product colors of vertices still in
``S``; once a colored vertex is deleted its product colors are struck from
its neighbors.  Every instance must satisfy:

* at most 6 precolored vertices, inducing a path or circuit, on the outer
  boundary and properly colored;
* lists of size >= 2 on the outer boundary and >= 3 inside;
* no edge between two vertices with lists of size <= 2 (precolored counts as
  size 1) other than edges between precolored vertices.

The recursion applies, in order: component split, seeding an empty
precolored set, splitting at the precolored set, cut vertices, the
precolored set covering the boundary, short boundaries, circuits of length
5 or 6 with a nonempty interior, chords and short paths through the
interior, and finally the step that colors ``v_{q+1}..v_{q+3}``.
Each step colors vertices, deletes some colored vertices, and splits the
rest into parts that are audited before the recursion continues.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter

from .core import verify_coloring
from .errors import GirthTooSmall, InternalInvariantBroken, NotPlanar, PreconditionViolated
from .planar import BaseFaces, NotPlanarCertificate, embed, has_circuit_of_length, iter_circuits

log = logging.getLogger(__name__)


class _Ctx:
    def __init__(self, emb):
        self.base = BaseFaces(emb)
        self.g = emb.graph
        self.order = self.g.order
        self.steps = Counter()


# -- instance helpers ----------------------------------------------------------


def _outer_set(view):
    out = set()
    for comp in view.components():
        out.update(view.outer_walk(comp))
    return out


def _products(g, v, colored, nbrs):
    return {colored[u] * g.sign(u, v) for u in nbrs if u in colored}


def _shape(g, adj, vs):
    """'path', 'circuit' or None for the graph induced on ``vs``."""
    vs = set(vs)
    if len(vs) <= 1:
        return "path"
    deg = {v: sum(1 for w in adj[v] if w in vs) for v in vs}
    if any(d == 0 or d > 2 for d in deg.values()):
        return None
    # connectivity
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != vs:
        return None
    ones = sum(1 for d in deg.values() if d == 1)
    if ones == 2:
        return "path"
    if ones == 0 and len(vs) >= 3:
        return "circuit"
    return None


def _audit(ctx, S, col, L, view=None):
    """Name of the first violated hypothesis, or ``None``."""
    g = ctx.g
    view = view or ctx.base.view(S)
    adj = view.adj
    if len(col) > 6:
        return "precolored-size"
    if col and _shape(g, adj, col) is None:
        return "precolored-shape"
    for u in col:
        for w in adj[u]:
            if w in col and col[u] == g.sign(u, w) * col[w]:
                return "precolored-proper"
    outer = _outer_set(view)
    if any(v not in outer for v in col):
        return "precolored-outer"
    for v in S:
        if v in col:
            continue
        need = 2 if v in outer else 3
        if len(L[v]) < need:
            return "list-size"
    for v in S:
        small_v = v in col or len(L[v]) <= 2
        if not small_v:
            continue
        for w in adj[v]:
            if v in col and w in col:
                continue
            if w in col or len(L[w]) <= 2:
                return "small-lists-adjacent"
    return None


def _delete(g, L, colored, gone, S):
    """Strike the product colors of deleted vertices ``gone`` from their neighbors in ``S``."""
    L2 = dict(L)
    for x in gone:
        cx = colored[x]
        for w in g.neighbors(x):
            if w in S and w not in colored:
                L2[w] = L2[w] - {cx * g.sign(x, w)}
    return L2


def _closures(ctx, adj, attach, pool, limit=6):
    """Supersets of ``attach`` drawn from ``pool`` that induce a path or circuit."""
    g = ctx.g
    attach = set(attach)
    if len(attach) > limit:
        return
    if _shape(g, adj, attach) is not None:
        yield frozenset(attach)
    near = set()
    for a in attach:
        for w in adj[a]:
            if w in pool and w not in attach:
                near.add(w)
                for x in adj[w]:
                    if x in pool and x not in attach:
                        near.add(x)
    near = sorted(near, key=ctx.order)
    for extra in range(1, min(limit - len(attach), len(near)) + 1):
        for Z in itertools.combinations(near, extra):
            cand = attach | set(Z)
            if _shape(g, adj, cand) is not None:
                yield frozenset(cand)


def _keep_choices(ctx, attach, hint):
    """Attachment subsets to keep precolored: the hinted one first, then by size."""
    attach = ctx_sorted(ctx, attach)
    first = frozenset(a for a in attach if a in hint)
    yield first
    if len(attach) > 10:
        return
    for r in range(len(attach), -1, -1):
        for B in itertools.combinations(attach, r):
            B = frozenset(B)
            if B != first:
                yield B


def ctx_sorted(ctx, vs):
    return sorted(vs, key=ctx.order)


def _build_parts(ctx, S, colored, L, keep, settle_pairs=False):
    """Settle forced vertices, then split ``S`` at its colored vertices.

    ``colored`` holds every colored vertex of ``S``; those outside ``keep`` are
    treated as deleted.  Returns a list of ``(part, precolored, lists)`` or
    ``None`` when some component admits no valid part.
    """
    g = ctx.g
    colored = dict(colored)
    keep = set(keep)
    adj = {v: tuple(w for w in g.neighbors(v) if w in S) for v in S}
    # forced colorings: 2-lists next to kept vertices, vertices next to two colored ones
    changed = True
    while changed:
        changed = False
        for v in ctx_sorted(ctx, S):
            if v in colored:
                continue
            gone_nbrs = [u for u in adj[v] if u in colored and u not in keep]
            kept_nbrs = [u for u in adj[v] if u in keep]
            cur = L[v] - _products(g, v, colored, gone_nbrs)
            force = len(cur) <= 1 or (len(cur) <= 2 and kept_nbrs)
            if settle_pairs and len(gone_nbrs) + len(kept_nbrs) >= 2:
                force = True
            if not force:
                continue
            free = cur - _products(g, v, colored, kept_nbrs)
            if not free:
                return None
            colored[v] = min(free)
            keep.add(v)
            ctx.steps["settle"] += 1
            changed = True
    uncolored = [v for v in S if v not in colored]
    seen = set()
    parts = []
    for s in ctx_sorted(ctx, uncolored):
        if s in seen:
            continue
        K = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colored and w not in K:
                    K.add(w)
                    stack.append(w)
        seen |= K
        attach = {u for v in K for u in adj[v] if u in colored}
        part = _part_for(ctx, K, attach, colored, L, keep, adj)
        if part is None:
            return None
        parts.append(part)
    return parts, colored


def _part_for(ctx, K, attach, colored, L, keep, adj):
    g = ctx.g
    pool = set(colored)
    tried = 0
    for B in _keep_choices(ctx, attach, keep):
        gone = attach - B
        for P in _closures(ctx, adj, B, pool) if B else [frozenset()]:
            tried += 1
            if tried > 400:
                return None
            part = frozenset(K | P)
            Lp = {}
            for v in K:
                Lp[v] = L[v] - _products(g, v, colored, [u for u in adj[v] if u in gone])
            col = {v: colored[v] for v in P}
            if _audit(ctx, part, col, Lp) is None:
                return part, col, Lp
    return None


# -- the recursion ---------------------------------------------------------------


def _ext(ctx, S, col, L, depth=0):
    """Coloring of every vertex of ``S`` extending ``col``."""
    g = ctx.g
    view = ctx.base.view(S)
    bad = _audit(ctx, S, col, L, view)
    if bad is not None:
        raise InternalInvariantBroken(f"hypothesis {bad} fails on a sub-instance of size {len(S)}")
    free = [v for v in S if v not in col]
    if not free:
        return dict(col)
    comps = view.components()
    if len(comps) > 1:
        ctx.steps["components"] += 1
        out = {}
        for comp in comps:
            sub = frozenset(comp)
            out.update(_ext(ctx, sub, {v: col[v] for v in comp if v in col}, L, depth + 1))
        return out
    if not col:
        ctx.steps["seed"] += 1
        outer = view.outer_walk()
        v = min(set(outer), key=lambda x: (len(L[x]), ctx.order(x)))
        return _ext(ctx, S, {v: min(L[v])}, L, depth + 1)

    # split at the precolored set
    res = _build_parts(ctx, S, col, L, set(col))
    if res is not None:
        parts, _ = res
        if len(parts) > 1 or any(len(p) < len(S) for p, _, _ in parts):
            ctx.steps["precolored-split"] += 1
            return _solve_parts(ctx, parts, col, depth)

    cuts = view.cut_vertices() - set(col)
    if cuts:
        return _cut_vertex(ctx, view, S, col, L, min(cuts, key=ctx.order), depth)

    D = list(view.outer_walk())
    if len(D) != len(set(D)):
        raise InternalInvariantBroken("outer boundary of a 2-connected part is not a circuit")
    if set(col) == set(D):
        ctx.steps["boundary-precolored"] += 1
        x = min(D, key=ctx.order)
        S2 = S - {x}
        L2 = _delete(g, L, col, [x], S2)
        col2 = {v: c for v, c in col.items() if v != x}
        return _via_parts(ctx, S2, col2, L2, set(col2), {x: col[x]}, depth, "boundary-precolored")

    orientations = _orientations(D, col)
    if not orientations:
        raise InternalInvariantBroken("precolored vertices are not consecutive on the boundary")
    k, q = len(D), len(col)
    if k < q + 3:
        out = _short_boundary(ctx, view, S, col, L, orientations[0][q:], depth)
        if out is not None:
            return out

    out = _short_circuit(ctx, view, S, col, L, D, depth)
    if out is not None:
        return out
    out = _separators(ctx, view, S, col, L, D, orientations, depth)
    if out is not None:
        return out
    for V in orientations:
        out = _final_stage(ctx, view, S, col, L, V, depth)
        if out is not None:
            return out
    raise InternalInvariantBroken(f"no reduction applies to a part with {len(S)} vertices")


def _short_boundary(ctx, view, S, col, L, rest, depth):
    """Color the (at most two) boundary vertices outside the precolored path and delete them."""
    g = ctx.g
    for combo in itertools.product(*(sorted(L[v]) for v in rest)):
        colored = dict(col)
        ok = True
        for v, c in zip(rest, combo):
            if c in _products(g, v, colored, view.adj[v]):
                ok = False
                break
            colored[v] = c
        if not ok:
            continue
        S2 = S - set(rest)
        L2 = _delete(g, L, colored, rest, S2)
        res = _build_parts(ctx, S2, col, L2, set(col))
        if res is None:
            continue
        ctx.steps["short-boundary"] += 1
        parts, colored2 = res
        out = _solve_parts(ctx, parts, colored2, depth)
        out.update({v: colored[v] for v in rest})
        return out
    return None


def _solve_parts(ctx, parts, colored, depth):
    out = dict(colored)
    for part, pcol, Lp in parts:
        out.update(_ext(ctx, part, pcol, Lp, depth + 1))
    return out


def _via_parts(ctx, S, col, L, keep, gone_colors, depth, label, settle_pairs=False):
    res = _build_parts(ctx, S, col, L, keep, settle_pairs)
    if res is None:
        raise InternalInvariantBroken(f"step {label} leaves an invalid part")
    parts, colored = res
    out = _solve_parts(ctx, parts, colored, depth)
    out.update(gone_colors)
    return out


def _cut_vertex(ctx, view, S, col, L, u, depth):
    ctx.steps["cut-vertex"] += 1
    rest = [c for c in ctx.base.view(S - {u}).components()]
    K0 = next(set(c) for c in rest if any(v in col for v in c))
    first = _ext(ctx, frozenset(K0 | {u}), col, L, depth + 1)
    S2 = frozenset(S - K0)
    res = _build_parts(ctx, S2, {u: first[u]}, L, {u})
    if res is None:
        raise InternalInvariantBroken(f"cut vertex {u!r} leaves an invalid part")
    parts, colored = res
    out = dict(first)
    out.update(_solve_parts(ctx, parts, colored, depth))
    return out


def _orientations(D, col):
    """Rotations of the boundary listing the precolored vertices first, in both directions."""
    k = len(D)
    q = len(col)
    out = []
    for seq in (D, D[::-1]):
        for i in range(k):
            V = seq[i:] + seq[:i]
            if all(v in col for v in V[:q]) and (q == k or V[-1] not in col):
                out.append(V)
                break
    if q == 1 and len(out) == 2 and out[0] == out[1]:
        out = out[:1]
    return out


def _short_circuit(ctx, view, S, col, L, D, depth):
    """A circuit of length 5 or 6 other than the boundary with vertices inside it."""
    sub = ctx.g.subgraph(S)
    dset = set(D)
    for length in (5, 6):
        for C in iter_circuits(sub, length):
            if set(C) == dset:
                continue
            inside = view.inside_of(C)
            if not inside:
                continue
            ctx.steps["short-circuit"] += 1
            outside = frozenset(S - inside)
            first = _ext(ctx, outside, col, L, depth + 1)
            ccol = {v: first[v] for v in C}
            out = dict(first)
            out.update(_ext(ctx, frozenset(inside | set(C)), ccol, L, depth + 1))
            return out
    return None


def _separator_paths(ctx, view, S, col, L, D, orientations):
    """Candidate separating paths: chords, then 2-paths, then 3-paths through the interior."""
    dset = set(D)
    pos = {v: i for i, v in enumerate(D)}
    k = len(D)
    adj = view.adj
    order = ctx.order

    def boundary_edge(x, y):
        return abs(pos[x] - pos[y]) in (1, k - 1)

    chords = []
    for x in ctx_sorted(ctx, dset):
        for y in adj[x]:
            if y in dset and order(x) < order(y) and not boundary_edge(x, y):
                chords.append((x, y))
    two = []
    for u in ctx_sorted(ctx, S - dset):
        ds = [x for x in adj[u] if x in dset]
        for x, y in itertools.combinations(ds, 2):
            two.append((x, u, y))
    three = []
    ends = set()
    for V in orientations:
        ends |= {V[0], V[len(col) - 1]}
    for u in ctx_sorted(ctx, S - dset):
        for w in adj[u]:
            if w in dset or order(w) < order(u):
                continue
            for x in adj[u]:
                if x not in dset:
                    continue
                for y in adj[w]:
                    if y not in dset or y == x:
                        continue
                    for a, b, c, d in ((x, u, w, y), (y, w, u, x)):
                        la = 1 if a in col else len(L[a])
                        if la == 2 or (la == 3 and d in ends):
                            three.append((a, b, c, d))
    return [("chord", chords), ("two-path", two), ("three-path", three)]


def _separators(ctx, view, S, col, L, D, orientations, depth):
    g = ctx.g
    ncol = lambda side: sum(1 for v in side if v in col)  # noqa: E731
    for label, paths in _separator_paths(ctx, view, S, col, L, D, orientations):
        cands = []
        for Q in paths:
            edges = list(zip(Q, Q[1:]))
            sides = view.split_by(edges, set(Q))
            if len(sides) != 2:
                continue
            a, b = sides
            for G1, G2 in ((a, b), (b, a)):
                if ncol(G2 - set(Q)) <= ncol(G1 - set(Q)) and ncol(G1) > 0:
                    cands.append((len(G2), [ctx.order(v) for v in Q], Q, G1, G2))
        cands.sort(key=lambda t: (t[0], t[1]))
        for _, _, Q, G1, G2 in cands:
            c1 = {v: col[v] for v in G1 if v in col}
            L1 = L
            if _audit(ctx, G1, c1, L1) is not None:
                continue
            first = _ext(ctx, G1, c1, L1, depth + 1)
            colored = {v: col[v] for v in G2 if v in col}
            conflict = False
            for v in Q:
                colored[v] = first[v]
            for v in G2:
                if v in colored:
                    for w in view.adj[v]:
                        if w in colored and w in G2 and colored[v] == g.sign(v, w) * colored[w]:
                            conflict = True
            if conflict:
                continue
            res = _build_parts(ctx, G2, colored, L, set(colored))
            if res is None:
                continue
            ctx.steps[label] += 1
            parts, colored2 = res
            out = dict(first)
            out.update(_solve_parts(ctx, parts, colored2, depth))
            return out
    return None


def _final_stage(ctx, view, S, col, L, V, depth):
    """Color v_{q+1}..v_{q+3} (or delete v_q) and split; ``None`` if this orientation fails."""
    g = ctx.g
    adj = view.adj
    k, q = len(V), len(col)
    v = lambda i: V[(i - 1) % k]  # noqa: E731  1-based boundary index
    size = lambda x: 1 if x in col else len(L[x])  # noqa: E731
    colored = dict(col)
    gone = []

    def paint(x, extra=frozenset()):
        free = L[x] - _products(g, x, colored, adj[x]) - extra
        if not free:
            return False
        colored[x] = min(free)
        return True

    if size(v(q + 2)) >= 3:
        ctx.steps["final-delete-last"] += 1
        gone = [v(q)]
    else:
        if q == 6:
            u = _common_inner(view, S, V, v(4), v(7))
        else:
            u = None
        if size(v(q + 4)) >= 3:
            ctx.steps["final-two"] += 1
            if not (paint(v(q + 2)) and paint(v(q + 1))):
                return None
            gone = [v(q + 1), v(q + 2)]
        else:
            ctx.steps["final-three"] += 1
            y = v(q + 4)
            s = g.sign(v(q + 3), y)
            ylist = {col[y]} if y in col else L[y]
            if not paint(v(q + 3), frozenset(a * s for a in ylist)):
                return None
            if not (paint(v(q + 2)) and paint(v(q + 1))):
                return None
            gone = [v(q + 1), v(q + 2), v(q + 3)]
        if u is not None:
            ctx.steps["final-u"] += 1
            if not paint(u):
                return None
            gone += [v(5), v(6)]
        if size(v(q + 4)) <= 2:
            if q == 6 and q + 3 == k:
                u2 = _common_inner(view, S, V, v(3), v(k))
                if u2 is not None:
                    ctx.steps["final-u-prime"] += 1
                    if u is not None:
                        log.info("both exceptional vertices present (%r, %r)", u, u2)
                    if not paint(u2):
                        return None
                    gone += [v(1), v(2)]
            wz = _inner_path(view, S, V, v(q + 1), v(q + 3))
            if wz is not None:
                ctx.steps["final-wz"] += 1
                w, z = wz
                if not (paint(w) and paint(z)):
                    return None
                gone += [w, z]
    S2 = frozenset(S - set(gone))
    L2 = _delete(g, L, colored, gone, S2)
    keep = {x for x in colored if x in S2}
    res = _build_parts(ctx, S2, {x: colored[x] for x in keep}, L2, keep, settle_pairs=True)
    if res is None:
        return None
    parts, colored2 = res
    out = _solve_parts(ctx, parts, colored2, depth)
    for x in gone:
        out[x] = colored[x]
    return out


def _common_inner(view, S, V, a, b):
    dset = set(V)
    common = [x for x in view.adj[a] if x not in dset and b in view.adj[x]]
    return min(common, key=view.order) if common else None


def _inner_path(view, S, V, a, b):
    dset = set(V)
    for w in sorted(view.adj[a], key=view.order):
        if w in dset:
            continue
        for z in sorted(view.adj[w], key=view.order):
            if z not in dset and z != a and b in view.adj[z]:
                return w, z
    return None


# -- public entry points ---------------------------------------------------------


def _check_girth(g):
    for k in (3, 4):
        c = has_circuit_of_length(g, k)
        if c is not None:
            raise GirthTooSmall(f"{k}-circuit {c!r}", c)


def extend_path_girth5(emb, lists, path, coloring, stats=None):
    """Extend ``coloring`` of the precolored ``path`` to an L-coloring of the whole graph."""
    g = emb.graph
    _check_girth(g)
    path = list(path)
    col = {v: coloring[v] for v in path}
    for v in path:
        if v not in g:
            raise PreconditionViolated("precolored-vertex", repr(v))
    L = {v: frozenset(lists[v]) for v in g.vertices if v not in col}
    ctx = _Ctx(emb)
    S = frozenset(g.vertices)
    bad = _audit(ctx, S, col, L)
    if bad is not None:
        raise PreconditionViolated(bad)
    for v in path:
        if v in lists and col[v] not in lists[v]:
            raise PreconditionViolated("precolored-list", f"{v!r} colored outside its list")
    out = _ext(ctx, S, col, L)
    full_lists = dict(L)
    full_lists.update({v: frozenset([c]) for v, c in col.items()})
    bad = verify_coloring(g, out, full_lists)
    if bad:
        raise InternalInvariantBroken(f"produced an invalid coloring: {bad[0]}")
    if stats is not None:
        stats.update(ctx.steps)
    return out


def color_girth5_3lists(g, lists, stats=None):
    """An L-coloring of a planar signed graph without 3- and 4-circuits, lists of size >= 3."""
    emb = embed(g)
    if isinstance(emb, NotPlanarCertificate):
        raise NotPlanar(f"Kuratowski subgraph with {len(emb.edges)} edges")
    _check_girth(g)
    for v in g.vertices:
        if len(lists[v]) < 3:
            raise PreconditionViolated("list-size", f"|L({v!r})| = {len(lists[v])} < 3")
    if g.n == 0:
        return {}
    outer = emb.outer_face()
    v = min(outer, key=g.order) if outer else g.vertices[0]
    c = {v: min(lists[v])}
    return extend_path_girth5(emb, lists, [v], c, stats)
