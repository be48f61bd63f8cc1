# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

DEF SAT = 1
DEF UNSAT = 0
DEF BUDGET = -1


cdef struct Ctx:
    int n
    long *adj_off
    long *adj_nbr
    long *adj_sign
    long *list_off
    long *list_val
    int *rem
    int *size
    long *color
    char *colored
    long *trail_w
    long *trail_j
    long trail_top
    long nodes
    long node_limit
    int count_mode
    int stop
    int budget_hit
    unsigned long long count
    int have_first
    long *first


cdef inline long find_val(Ctx *c, long w, long val) nogil:
    cdef long j
    for j in range(c.list_off[w], c.list_off[w + 1]):
        if c.list_val[j] == val:
            return j
    return -1


cdef int pick(Ctx *c) nogil:
    cdef int i, best = -1
    cdef int bs = 1 << 30
    for i in range(c.n):
        if not c.colored[i] and c.size[i] < bs:
            best = i
            bs = c.size[i]
            if bs <= 1:
                break
    return best


cdef void rec(Ctx *c, int depth) nogil:
    cdef int u, i
    cdef long k, val, e, w, j, mark
    cdef int wiped
    if depth == c.n:
        c.count += 1
        if not c.have_first:
            c.have_first = 1
            for i in range(c.n):
                c.first[i] = c.color[i]
        if not c.count_mode:
            c.stop = 1
        return
    u = pick(c)
    if c.size[u] == 0:
        return
    for k in range(c.list_off[u], c.list_off[u + 1]):
        if c.rem[k]:
            continue
        if c.node_limit >= 0 and c.nodes >= c.node_limit:
            c.stop = 1
            c.budget_hit = 1
            return
        c.nodes += 1
        val = c.list_val[k]
        c.color[u] = val
        c.colored[u] = 1
        mark = c.trail_top
        wiped = 0
        for e in range(c.adj_off[u], c.adj_off[u + 1]):
            w = c.adj_nbr[e]
            if c.colored[w]:
                continue
            j = find_val(c, w, val * c.adj_sign[e])
            if j < 0:
                continue
            if c.rem[j] == 0:
                c.size[w] -= 1
                if c.size[w] == 0:
                    wiped = 1
            c.rem[j] += 1
            c.trail_w[c.trail_top] = w
            c.trail_j[c.trail_top] = j
            c.trail_top += 1
        if not wiped:
            rec(c, depth + 1)
        while c.trail_top > mark:
            c.trail_top -= 1
            j = c.trail_j[c.trail_top]
            w = c.trail_w[c.trail_top]
            c.rem[j] -= 1
            if c.rem[j] == 0:
                c.size[w] += 1
        c.colored[u] = 0
        if c.stop:
            return


cdef long *to_c(seq) except NULL:
    cdef long i, m = len(seq)
    cdef long *out = <long *> malloc((m + 1) * sizeof(long))
    if out == NULL:
        raise MemoryError()
    for i in range(m):
        out[i] = seq[i]
    return out


def search(n, adj_off, adj_nbr, adj_sign, list_off, list_val, count, node_limit):
    cdef Ctx c
    cdef long i, total_adj = len(adj_nbr), total_list = len(list_val)
    memset(&c, 0, sizeof(Ctx))
    c.n = n
    c.count_mode = 1 if count else 0
    c.node_limit = node_limit
    c.adj_off = to_c(adj_off)
    c.adj_nbr = to_c(adj_nbr)
    c.adj_sign = to_c(adj_sign)
    c.list_off = to_c(list_off)
    c.list_val = to_c(list_val)
    c.rem = <int *> malloc((total_list + 1) * sizeof(int))
    c.size = <int *> malloc((n + 1) * sizeof(int))
    c.color = <long *> malloc((n + 1) * sizeof(long))
    c.first = <long *> malloc((n + 1) * sizeof(long))
    c.colored = <char *> malloc(n + 1)
    c.trail_w = <long *> malloc((total_adj + 1) * sizeof(long))
    c.trail_j = <long *> malloc((total_adj + 1) * sizeof(long))
    try:
        memset(c.rem, 0, (total_list + 1) * sizeof(int))
        memset(c.colored, 0, n + 1)
        for i in range(n):
            c.size[i] = c.list_off[i + 1] - c.list_off[i]
        if n == 0:
            c.count = 1
            c.have_first = 1
        else:
            with nogil:
                rec(&c, 0)
        first = [c.first[i] for i in range(n)] if c.have_first else None
        if c.budget_hit and not c.have_first:
            return BUDGET, None, c.nodes, c.count
        if c.budget_hit and c.count_mode:
            return BUDGET, first, c.nodes, c.count
        return (SAT if c.have_first else UNSAT), first, c.nodes, c.count
    finally:
        free(c.adj_off); free(c.adj_nbr); free(c.adj_sign)
        free(c.list_off); free(c.list_val); free(c.rem); free(c.size)
        free(c.color); free(c.first); free(c.colored)
        free(c.trail_w); free(c.trail_j)


cdef inline int colorable6(long *L0, long *L1, long *L2, long *L3, long *L4, long *L5,
                           long s01, long s34, long s45, long s50) nogil:
    # u0..u5 circuit with chord u0u2; u0u2, u1u2, u2u3 positive
    cdef int a, b, c, d, e, f
    cdef long c0, c1, c2, c3, c4, c5
    for a in range(3):
        c2 = L2[a]
        for b in range(2):
            c0 = L0[b]
            if c0 == c2:
                continue
            for c in range(2):
                c1 = L1[c]
                if c1 == c2 or c1 == s01 * c0:
                    continue
                for d in range(2):
                    c3 = L3[d]
                    if c3 == c2:
                        continue
                    for e in range(2):
                        c4 = L4[e]
                        if c4 == s34 * c3:
                            continue
                        for f in range(2):
                            c5 = L5[f]
                            if c5 != s45 * c4 and c0 != s50 * c5:
                                return 1
                break  # c1 does not constrain u3..u5
    return 0


def claim2_sweep(universe, pairs, triples, signs):
    """Brute-force twin of ``_pykernels.claim2_sweep``: every assignment is searched."""
    cdef long np_ = len(pairs), nt = len(triples)
    cdef long *P = <long *> malloc((2 * np_ + 1) * sizeof(long))
    cdef long *T = <long *> malloc((3 * nt + 1) * sizeof(long))
    cdef long s01 = signs[0], s34 = signs[1], s45 = signs[2], s50 = signs[3]
    cdef long i2, i0, i1, i3, i4, i5
    cdef unsigned long long failures = 0
    cdef long f2 = -1, f0 = -1, f1 = -1, f3 = -1, f4 = -1, f5 = -1
    cdef long k
    try:
        for k in range(np_):
            P[2 * k] = pairs[k][0]
            P[2 * k + 1] = pairs[k][1]
        for k in range(nt):
            T[3 * k] = triples[k][0]
            T[3 * k + 1] = triples[k][1]
            T[3 * k + 2] = triples[k][2]
        with nogil:
            for i2 in range(nt):
                for i0 in range(np_):
                    for i1 in range(np_):
                        for i3 in range(np_):
                            for i4 in range(np_):
                                for i5 in range(np_):
                                    if not colorable6(P + 2 * i0, P + 2 * i1, T + 3 * i2, P + 2 * i3,
                                                      P + 2 * i4, P + 2 * i5, s01, s34, s45, s50):
                                        if failures == 0:
                                            f2 = i2; f0 = i0; f1 = i1; f3 = i3; f4 = i4; f5 = i5
                                        failures += 1
        first = None if failures == 0 else (f2, f0, f1, f3, f4, f5)
        return failures, first
    finally:
        free(P)
        free(T)
