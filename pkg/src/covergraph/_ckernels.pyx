# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; same contracts as ``_pykernels`` for graphs with at most 64 vertices.

State is kept in per-depth layers (depth d reads layer d, writes layer d+1),
so backtracking is free.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

BACKEND = "cython"
MAX_VERTICES = 64


cdef extern from *:
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


cdef inline uint64_t bit(int v) nogil:
    return (<uint64_t>1) << v


ctypedef struct Search:
    int n
    int E
    int nprefix
    int* ea
    int* eb
    int* prefix
    int* dirs
    uint64_t* adj
    uint64_t* anc
    uint64_t* desc
    uint64_t* out
    uint64_t* dep
    long long nodes
    # d_min
    int best
    int* best_dirs
    # imbalance
    int* cyc_start
    int* cyc_pos
    int* cyc_trav
    int* close_start
    int* close_list
    long long best_num
    long long best_den


cdef int _setup(Search* s, int n, list edges, tuple prefix, bint need_flow) except -1:
    cdef int E = len(edges)
    cdef int d, v, a, b
    if n > 64:
        raise ValueError("compiled kernels handle at most 64 vertices")
    s.n = n
    s.E = E
    s.nprefix = len(prefix)
    s.nodes = 0
    s.ea = <int*>calloc(E + 1, sizeof(int))
    s.eb = <int*>calloc(E + 1, sizeof(int))
    s.dirs = <int*>calloc(E + 1, sizeof(int))
    s.best_dirs = <int*>calloc(E + 1, sizeof(int))
    s.prefix = <int*>calloc(len(prefix) + 1, sizeof(int))
    s.adj = <uint64_t*>calloc(n + 1, sizeof(uint64_t))
    s.anc = <uint64_t*>calloc((E + 1) * n + 1, sizeof(uint64_t))
    s.desc = <uint64_t*>calloc((E + 1) * n + 1, sizeof(uint64_t))
    if need_flow:
        s.out = <uint64_t*>calloc((E + 1) * n + 1, sizeof(uint64_t))
        s.dep = <uint64_t*>calloc((E + 1) * n + 1, sizeof(uint64_t))
    else:
        s.out = NULL
        s.dep = NULL
    s.cyc_start = NULL
    s.cyc_pos = NULL
    s.cyc_trav = NULL
    s.close_start = NULL
    s.close_list = NULL
    if (s.ea == NULL or s.eb == NULL or s.dirs == NULL or s.best_dirs == NULL or s.prefix == NULL
            or s.adj == NULL or s.anc == NULL or s.desc == NULL or (need_flow and (s.out == NULL or s.dep == NULL))):
        _teardown(s)
        raise MemoryError()
    for d in range(E):
        a, b = edges[d]
        s.ea[d] = a
        s.eb[d] = b
        s.adj[a] |= bit(b)
        s.adj[b] |= bit(a)
    for d in range(s.nprefix):
        s.prefix[d] = prefix[d]
    for v in range(n):
        s.anc[v] = bit(v)
        s.desc[v] = bit(v)
    return 0


cdef void _teardown(Search* s):
    free(s.ea); free(s.eb); free(s.dirs); free(s.best_dirs); free(s.prefix)
    free(s.adj); free(s.anc); free(s.desc); free(s.out); free(s.dep)
    free(s.cyc_start); free(s.cyc_pos); free(s.cyc_trav); free(s.close_start); free(s.close_list)


cdef inline int _noptions(Search* s, int d, int* opts) nogil:
    if d < s.nprefix:
        opts[0] = s.prefix[d]
        return 1
    if d == 0:
        opts[0] = 0
        return 1
    opts[0] = 0
    opts[1] = 1
    return 2


# -- cover search ------------------------------------------------------------

cdef bint _cover_add(Search* s, int d, int a, int b) nogil:
    cdef int n = s.n
    cdef uint64_t* anc = s.anc + d * n
    cdef uint64_t* desc = s.desc + d * n
    cdef uint64_t* nanc = anc + n
    cdef uint64_t* ndesc = desc + n
    cdef uint64_t A, B, x, hit
    cdef int v
    if (desc[b] >> a) & 1 or (desc[a] >> b) & 1:
        return 0
    A = anc[a]
    B = desc[b]
    x = A
    while x:
        v = ctz64(x)
        x &= x - 1
        hit = s.adj[v] & B
        if v == a:
            hit &= ~bit(b)
        if hit:
            return 0
    memcpy(nanc, anc, n * sizeof(uint64_t))
    memcpy(ndesc, desc, n * sizeof(uint64_t))
    x = A
    while x:
        v = ctz64(x)
        x &= x - 1
        ndesc[v] |= B
    x = B
    while x:
        v = ctz64(x)
        x &= x - 1
        nanc[v] |= A
    return 1


cdef bint _cover_rec(Search* s, int d) nogil:
    cdef int opts[2]
    cdef int k, nopt, a, b
    s.nodes += 1
    if d == s.E:
        return 1
    nopt = _noptions(s, d, opts)
    for k in range(nopt):
        if opts[k] == 0:
            a = s.ea[d]; b = s.eb[d]
        else:
            a = s.eb[d]; b = s.ea[d]
        if not _cover_add(s, d, a, b):
            continue
        s.dirs[d] = opts[k]
        if _cover_rec(s, d + 1):
            return 1
    return 0


def cover_search(int n, edges, prefix=()):
    cdef Search s
    cdef bint found
    edges = list(edges)
    _setup(&s, n, edges, tuple(prefix), 0)
    try:
        with nogil:
            found = _cover_rec(&s, 0)
        dirs = [s.dirs[d] for d in range(s.E)] if found else None
        return bool(found), dirs, s.nodes
    finally:
        _teardown(&s)


# -- d_min branch and bound ------------------------------------------------------

cdef int _dmin_add(Search* s, int d, int a, int b) nogil:
    # returns newly dependent arc count, or -1 when a -> b closes a cycle
    cdef int n = s.n
    cdef uint64_t* anc = s.anc + d * n
    cdef uint64_t* desc = s.desc + d * n
    cdef uint64_t* out = s.out + d * n
    cdef uint64_t* dep = s.dep + d * n
    cdef uint64_t* nanc = anc + n
    cdef uint64_t* ndesc = desc + n
    cdef uint64_t* nout = out + n
    cdef uint64_t* ndep = dep + n
    cdef uint64_t A, B, x, hit
    cdef int v, added = 0
    if (desc[b] >> a) & 1:
        return -1
    memcpy(nanc, anc, n * sizeof(uint64_t))
    memcpy(ndesc, desc, n * sizeof(uint64_t))
    memcpy(nout, out, n * sizeof(uint64_t))
    memcpy(ndep, dep, n * sizeof(uint64_t))
    if (desc[a] >> b) & 1:
        ndep[a] |= bit(b)
        added += 1
    A = anc[a]
    B = desc[b]
    x = A
    while x:
        v = ctz64(x)
        x &= x - 1
        hit = out[v] & B & ~ndep[v]
        if hit:
            ndep[v] |= hit
            added += popcount64(hit)
    nout[a] |= bit(b)
    x = A
    while x:
        v = ctz64(x)
        x &= x - 1
        ndesc[v] |= B
    x = B
    while x:
        v = ctz64(x)
        x &= x - 1
        nanc[v] |= A
    return added


cdef bint _dmin_rec(Search* s, int d, int count) nogil:
    cdef int opts[2]
    cdef int k, nopt, a, b, j, x, y, forced, added
    cdef uint64_t* desc = s.desc + d * s.n
    s.nodes += 1
    if d == s.E:
        if count < s.best:
            s.best = count
            for j in range(s.E):
                s.best_dirs[j] = s.dirs[j]
        return s.best == 0
    forced = 0
    for j in range(d, s.E):
        x = s.ea[j]; y = s.eb[j]
        if (desc[x] >> y) & 1 or (desc[y] >> x) & 1:
            forced += 1
    if count + forced >= s.best:
        return 0
    nopt = _noptions(s, d, opts)
    for k in range(nopt):
        if opts[k] == 0:
            a = s.ea[d]; b = s.eb[d]
        else:
            a = s.eb[d]; b = s.ea[d]
        added = _dmin_add(s, d, a, b)
        if added < 0:
            continue
        s.dirs[d] = opts[k]
        if _dmin_rec(s, d + 1, count + added):
            return 1
    return 0


def dmin_search(int n, edges, prefix=()):
    cdef Search s
    edges = list(edges)
    _setup(&s, n, edges, tuple(prefix), 1)
    s.best = s.E + 1
    s.best_dirs[0] = -1
    try:
        with nogil:
            _dmin_rec(&s, 0, 0)
        if s.best > s.E:
            return None, None, s.nodes
        return s.best, [s.best_dirs[d] for d in range(s.E)], s.nodes
    finally:
        _teardown(&s)


# -- minimum imbalance -----------------------------------------------------------

cdef bint _imb_rec(Search* s, int d, long long num, long long den) nogil:
    cdef int opts[2]
    cdef int k, nopt, ci, c, p, length, fwd, low, j
    cdef long long cn, cd
    cdef bint ok
    s.nodes += 1
    if d == s.E:
        if num * s.best_den < s.best_num * den:
            s.best_num = num
            s.best_den = den
            for j in range(s.E):
                s.best_dirs[j] = s.dirs[j]
        return s.best_num == 2 * s.best_den
    nopt = _noptions(s, d, opts)
    for k in range(nopt):
        s.dirs[d] = opts[k]
        cn = num
        cd = den
        ok = 1
        for ci in range(s.close_start[d], s.close_start[d + 1]):
            c = s.close_list[ci]
            length = s.cyc_start[c + 1] - s.cyc_start[c]
            fwd = 0
            for p in range(s.cyc_start[c], s.cyc_start[c + 1]):
                if s.dirs[s.cyc_pos[p]] == s.cyc_trav[p]:
                    fwd += 1
            low = fwd if fwd < length - fwd else length - fwd
            if low == 0:
                ok = 0
                break
            if length * cd > cn * low:
                cn = length
                cd = low
        if not ok or cn * s.best_den >= s.best_num * cd:
            continue
        if _imb_rec(s, d + 1, cn, cd):
            return 1
    return 0


def min_imbalance(int n, edges, cycles, prefix=()):
    cdef Search s
    cdef int E, total, c, p, d, ci
    edges = list(edges)
    cycles = list(cycles)
    _setup(&s, n, edges, tuple(prefix), 0)
    E = s.E
    try:
        total = sum(len(c[0]) for c in cycles)
        s.cyc_start = <int*>calloc(len(cycles) + 1, sizeof(int))
        s.cyc_pos = <int*>calloc(total + 1, sizeof(int))
        s.cyc_trav = <int*>calloc(total + 1, sizeof(int))
        s.close_start = <int*>calloc(E + 2, sizeof(int))
        s.close_list = <int*>calloc(len(cycles) + 1, sizeof(int))
        if s.cyc_start == NULL or s.cyc_pos == NULL or s.cyc_trav == NULL or s.close_start == NULL or s.close_list == NULL:
            raise MemoryError()
        p = 0
        closing = [[] for _ in range(E)]
        for c in range(len(cycles)):
            positions, trav = cycles[c]
            s.cyc_start[c] = p
            for j in range(len(positions)):
                s.cyc_pos[p] = positions[j]
                s.cyc_trav[p] = trav[j]
                p += 1
            closing[max(positions)].append(c)
        s.cyc_start[len(cycles)] = p
        ci = 0
        for d in range(E):
            s.close_start[d] = ci
            for c in closing[d]:
                s.close_list[ci] = c
                ci += 1
        s.close_start[E] = ci
        s.best_num = 1
        s.best_den = 0
        with nogil:
            _imb_rec(&s, 0, 2, 1)
        if s.best_den == 0:
            return None, None, None, s.nodes
        return s.best_num, s.best_den, [s.best_dirs[d] for d in range(E)], s.nodes
    finally:
        _teardown(&s)
