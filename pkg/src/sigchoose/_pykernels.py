"""Pure-Python kernels; the compiled module ``_ckernels`` mirrors this API.

Graphs arrive in CSR form: the neighbors of vertex ``i`` are
``adj_nbr[adj_off[i]:adj_off[i+1]]`` with edge signs in ``adj_sign``; the list
of ``i`` is ``list_val[list_off[i]:list_off[i+1]]`` sorted ascending.
"""

from __future__ import annotations

import itertools

SAT, UNSAT, BUDGET = 1, 0, -1


def search(n, adj_off, adj_nbr, adj_sign, list_off, list_val, count, node_limit):
    """Exhaustive DFS with MRV selection and forward checking.

    Returns ``(status, coloring, nodes, solutions)``.  In count mode the search
    visits every solution and ``coloring`` is the first one found.
    """
    nbrs = [list(zip(adj_nbr[adj_off[i]:adj_off[i + 1]], adj_sign[adj_off[i]:adj_off[i + 1]])) for i in range(n)]
    vals = [list(list_val[list_off[i]:list_off[i + 1]]) for i in range(n)]
    pos = [{c: k for k, c in enumerate(vals[i])} for i in range(n)]
    rem = [[0] * len(vals[i]) for i in range(n)]
    size = [len(vals[i]) for i in range(n)]
    color = [None] * n
    state = {"nodes": 0, "count": 0, "first": None, "stop": False}

    def pick():
        best, bs = -1, 1 << 30
        for i in range(n):
            if color[i] is None and size[i] < bs:
                best, bs = i, size[i]
                if bs <= 1:
                    break
        return best

    def rec(depth):
        if depth == n:
            state["count"] += 1
            if state["first"] is None:
                state["first"] = list(color)
            if not count:
                state["stop"] = True
            return
        u = pick()
        if size[u] == 0:
            return
        for k, c in enumerate(vals[u]):
            if rem[u][k]:
                continue
            if node_limit >= 0 and state["nodes"] >= node_limit:
                state["stop"] = True
                state["budget"] = True
                return
            state["nodes"] += 1
            color[u] = c
            touched = []
            wiped = False
            for w, s in nbrs[u]:
                if color[w] is not None:
                    continue
                j = pos[w].get(c * s)
                if j is None:
                    continue
                if rem[w][j] == 0:
                    size[w] -= 1
                    if size[w] == 0:
                        wiped = True
                rem[w][j] += 1
                touched.append((w, j))
            if not wiped:
                rec(depth + 1)
            for w, j in touched:
                rem[w][j] -= 1
                if rem[w][j] == 0:
                    size[w] += 1
            color[u] = None
            if state["stop"]:
                return

    if n:
        rec(0)
    else:
        state["count"] = 1
        state["first"] = []
    if state.get("budget") and state["first"] is None:
        return BUDGET, None, state["nodes"], state["count"]
    if state.get("budget") and count:
        return BUDGET, state["first"], state["nodes"], state["count"]
    status = SAT if state["first"] is not None else UNSAT
    return status, state["first"], state["nodes"], state["count"]


def claim2_sweep_bitmask(universe, pairs, triples, signs):
    """Count uncolorable list assignments on the chorded 6-circuit.

    Vertices u0..u5 form a circuit with chord u0u2; u0u2, u1u2, u2u3 are
    positive and ``signs = (s01, s34, s45, s50)`` fixes the rest.  u2 takes a
    list from ``triples``, every other vertex one from ``pairs``.

    The circuit is cut at u0 and u3: the half through u1, u2 and the half
    through u4, u5 each yield the set of compatible colorings of (u3, u0) as a
    bitmask, and an assignment is colorable iff the two masks intersect.
    Returns ``(number_of_failures, first_failure or None)`` with the failure
    given as list indices ``(i2, i0, i1, i3, i4, i5)``.
    """
    import numpy as np

    s01, s34, s45, s50 = signs
    U = list(universe)
    m = len(U)
    idx = {c: k for k, c in enumerate(U)}
    if m * m > 64:
        raise ValueError("universe too large for 64-bit masks")
    P = [tuple(p) for p in pairs]
    T = [tuple(t) for t in triples]
    np_ = len(P)

    # u4-u5 half: for every (L4, L5) the mask of (c3, c0) pairs it can absorb
    tmask = np.zeros(np_ * np_, dtype=np.uint64)
    for a, L4 in enumerate(P):
        for b, L5 in enumerate(P):
            mask = 0
            for c3 in U:
                for c0 in U:
                    ok = False
                    for c4 in L4:
                        if c4 == s34 * c3:
                            continue
                        for c5 in L5:
                            if c5 != s45 * c4 and c0 != s50 * c5:
                                ok = True
                                break
                        if ok:
                            break
                    if ok:
                        mask |= 1 << (idx[c3] * m + idx[c0])
            tmask[a * np_ + b] = mask
    tmask_unique, tinv = np.unique(tmask, return_inverse=True)

    # u1-u2 half: amask[c2][L0, L1] = bitmask of admissible c0, bmask[c2][L3] of c3
    amask = np.zeros((m, np_, np_), dtype=np.int64)
    bmask = np.zeros((m, np_), dtype=np.int64)
    for k2, c2 in enumerate(U):
        for i0, L0 in enumerate(P):
            for i1, L1 in enumerate(P):
                bits = 0
                for c0 in L0:
                    if c0 != c2 and any(c1 != c2 and c1 != s01 * c0 for c1 in L1):
                        bits |= 1 << idx[c0]
                amask[k2, i0, i1] = bits
        for i3, L3 in enumerate(P):
            bmask[k2, i3] = sum(1 << idx[c3] for c3 in L3 if c3 != c2)
    # outer[b, a] places the c0-mask a in every c3 row selected by b
    full = 1 << m
    outer = np.zeros((full, full), dtype=np.uint64)
    for b in range(full):
        for a in range(full):
            v = 0
            for r in range(m):
                if b >> r & 1:
                    v |= a << (r * m)
            outer[b, a] = v

    failures = 0
    first = None
    for i2, L2 in enumerate(T):
        smask = np.zeros((np_, np_, np_), dtype=np.uint64)
        for c2 in L2:
            k2 = idx[c2]
            smask |= outer[bmask[k2][None, None, :], amask[k2][:, :, None]]
        flat = smask.reshape(-1)
        hit = (flat[:, None] & tmask_unique[None, :]) == 0
        fails = hit[:, tinv]  # rows: (L0, L1, L3); columns: (L4, L5)
        k = int(fails.sum())
        if k and first is None:
            r, c = np.argwhere(fails)[0]
            i0, rest = divmod(int(r), np_ * np_)
            i1, i3 = divmod(rest, np_)
            i4, i5 = divmod(int(c), np_)
            first = (i2, i0, i1, i3, i4, i5)
        failures += k
    return failures, first


def _colorable6(L0, L1, L2, L3, L4, L5, s01, s34, s45, s50):
    for c2 in L2:
        for c0 in L0:
            if c0 == c2:
                continue
            if not any(c1 != c2 and c1 != s01 * c0 for c1 in L1):
                continue
            for c3 in L3:
                if c3 == c2:
                    continue
                for c4 in L4:
                    if c4 == s34 * c3:
                        continue
                    for c5 in L5:
                        if c5 != s45 * c4 and c0 != s50 * c5:
                            return True
    return False


def claim2_sweep(universe, pairs, triples, signs):
    """Brute force over every assignment; same contract as :func:`claim2_sweep_bitmask`."""
    s01, s34, s45, s50 = signs
    P = [tuple(p) for p in pairs]
    T = [tuple(t) for t in triples]
    failures = 0
    first = None
    r = range(len(P))
    for i2, L2 in enumerate(T):
        for i0, i1, i3, i4, i5 in itertools.product(r, r, r, r, r):
            if not _colorable6(P[i0], P[i1], L2, P[i3], P[i4], P[i5], s01, s34, s45, s50):
                if first is None:
                    first = (i2, i0, i1, i3, i4, i5)
                failures += 1
    return failures, first
