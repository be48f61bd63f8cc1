"""Exact signed list-coloring search, coloring counts and degeneracy greedy.

The search is a depth-first backtracking over a CSR encoding of the instance
(see :mod:`sigchoose.kernels`).  Vertex selection is minimum remaining values
with the lowest vertex order on ties; colors are tried in ascending order, so
every Sat witness is reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import kernels
from .core import verify_coloring
from .errors import BudgetExceeded, EmptyList
from .planar import degeneracy_order


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    coloring: dict | None
    nodes: int

    def __bool__(self):
        return self.sat


@dataclass(frozen=True)
class Sat:
    coloring: dict


@dataclass(frozen=True)
class Stuck:
    vertex: object
    partial: dict


@dataclass(frozen=True)
class ChoosableOverUniverse:
    k: int
    universe: tuple
    assignments: int


@dataclass(frozen=True)
class Counterexample:
    lists: dict


def _encode(g, lists):
    """CSR arrays for the kernels; vertices are indexed in declaration order."""
    index = {v: i for i, v in enumerate(g.vertices)}
    adj_off, adj_nbr, adj_sign = [0], [], []
    list_off, list_val = [0], []
    for v in g.vertices:
        if v not in lists:
            raise EmptyList(f"no list for vertex {v!r}")
        lv = sorted(lists[v])
        if not lv:
            raise EmptyList(f"empty list at vertex {v!r}")
        for w in g.neighbors(v):
            adj_nbr.append(index[w])
            adj_sign.append(g.sign(v, w))
        adj_off.append(len(adj_nbr))
        list_val.extend(lv)
        list_off.append(len(list_val))
    return adj_off, adj_nbr, adj_sign, list_off, list_val


def _run(g, lists, count, budget):
    enc = _encode(g, lists)
    limit = -1 if budget is None else int(budget)
    status, first, nodes, total = kernels.search(g.n, *enc, count, limit)
    coloring = None if first is None else dict(zip(g.vertices, first))
    return status, coloring, nodes, total


def solve(g, lists, budget=None):
    """Decide L-colorability exactly; returns a :class:`SolveResult`.

    With a node ``budget`` the search may stop early and raise
    :class:`BudgetExceeded`; without one it always runs to completion.
    """
    status, coloring, nodes, _ = _run(g, lists, False, budget)
    if status == kernels.BUDGET:
        raise BudgetExceeded(f"search stopped after {nodes} nodes")
    if coloring is not None:
        assert not verify_coloring(g, coloring, lists)
    return SolveResult(status == kernels.SAT, coloring, nodes)


def count_colorings(g, lists, budget=None):
    status, _, nodes, total = _run(g, lists, True, budget)
    if status == kernels.BUDGET:
        raise BudgetExceeded(f"counting stopped after {nodes} nodes")
    return total


def iter_colorings(g, lists):
    """Yield every L-coloring by plain backtracking in vertex order."""
    vs = list(g.vertices)
    for v in vs:
        if not lists.get(v):
            raise EmptyList(f"empty list at vertex {v!r}")
    c = {}

    def rec(i):
        if i == len(vs):
            yield dict(c)
            return
        v = vs[i]
        banned = {c[u] * g.sign(u, v) for u in g.neighbors(v) if u in c}
        for x in sorted(lists[v]):
            if x not in banned:
                c[v] = x
                yield from rec(i + 1)
                del c[v]

    yield from rec(0)


def naive_colorings(g, lists):
    """Enumerate the full cross product of lists; test oracle only."""
    vs = g.vertices
    edges = g.signed_edges()
    for combo in itertools.product(*(sorted(lists[v]) for v in vs)):
        c = dict(zip(vs, combo))
        if all(c[u] != s * c[v] for u, v, s in edges):
            yield c


def greedy_by_degeneracy(g, lists, order=None):
    """Color in reverse removal order, avoiding ``c(u) * sign(uv)`` of colored neighbors.

    Returns :class:`Sat` or :class:`Stuck` naming the first vertex left with no color.
    """
    if order is None:
        order = degeneracy_order(g)[1]
    c = {}
    for v in reversed(order):
        banned = {c[u] * g.sign(u, v) for u in g.neighbors(v) if u in c}
        free = sorted(x for x in lists[v] if x not in banned)
        if not free:
            return Stuck(v, c)
        c[v] = free[0]
    return Sat(c)


def default_universe(g, k):
    m = g.n * k
    return tuple([0] + [s * i for i in range(1, m + 1) for s in (1, -1)])


def choosable_exhaustive(g, k, universe=None, budget=200_000):
    """Try every k-list assignment drawn from ``universe``.

    Returns :class:`ChoosableOverUniverse` (a statement about this universe
    only) or the first failing :class:`Counterexample`.  Raises
    :class:`BudgetExceeded` when the number of assignments exceeds ``budget``.
    """
    universe = tuple(sorted(default_universe(g, k) if universe is None else universe))
    per_vertex = math.comb(len(universe), k)
    total = per_vertex ** g.n
    if total > budget:
        raise BudgetExceeded(f"{total} list assignments exceed budget {budget}")
    choices = list(itertools.combinations(universe, k))
    tried = 0
    for combo in itertools.product(choices, repeat=g.n):
        lists = {v: frozenset(t) for v, t in zip(g.vertices, combo)}
        tried += 1
        if not solve(g, lists).sat:
            return Counterexample(lists)
    return ChoosableOverUniverse(k, universe, tried)
