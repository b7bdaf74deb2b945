"""Pure-Python search kernels over integer bitsets.

Conventions shared with the compiled core (``_ckernels``):

* ``edges`` is a list of ``(a, b)`` vertex-index pairs in search order;
  direction 0 orients ``a -> b``, direction 1 orients ``b -> a``.
* ``prefix`` forces the directions of the first ``len(prefix)`` edges. An
  empty prefix fixes edge 0 to direction 0 (global reversal symmetry).
* ``nodes`` counts every search node visited, root included.
* Directions are tried 0 before 1, so the first witness found is the
  lexicographically least one in search order.
"""

from __future__ import annotations

import sys

BACKEND = "python"


def _options(d, prefix):
    if d < len(prefix):
        return (prefix[d],)
    if d == 0:
        return (0,)
    return (0, 1)


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _ensure_depth(E):
    if sys.getrecursionlimit() < E + 200:
        sys.setrecursionlimit(E + 200)


def cover_search(n, edges, prefix=()):
    """Find an acyclic orientation with no dependent arc.

    Returns ``(found, dirs, nodes)``. Adding ``a -> b`` is rejected when it
    closes a cycle, when ``a`` already reaches ``b``, or when any other edge
    joins ``{a} | anc(a)`` to ``{b} | desc(b)``: such an edge is either
    dependent now or can only be oriented into a dependent arc or a cycle.
    """
    E = len(edges)
    _ensure_depth(E)
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    anc = [1 << v for v in range(n)]
    desc = [1 << v for v in range(n)]
    dirs = [0] * E
    nodes = 0

    def add(a, b):
        if (desc[b] >> a) & 1 or (desc[a] >> b) & 1:
            return None
        A = anc[a]
        B = desc[b]
        for v in _bits(A):
            hit = adj[v] & B
            if v == a:
                hit &= ~(1 << b)
            if hit:
                return None
        saved = (list(anc), list(desc))
        for v in _bits(A):
            desc[v] |= B
        for v in _bits(B):
            anc[v] |= A
        return saved

    def rec(d):
        nonlocal nodes
        nodes += 1
        if d == E:
            return True
        a, b = edges[d]
        for k in _options(d, prefix):
            saved = add(a, b) if k == 0 else add(b, a)
            if saved is None:
                continue
            dirs[d] = k
            if rec(d + 1):
                return True
            anc[:], desc[:] = saved
        return False

    found = rec(0)
    return found, (list(dirs) if found else None), nodes


def dmin_search(n, edges, prefix=()):
    """Branch-and-bound minimum number of dependent arcs.

    Returns ``(value, dirs, nodes)``; ``value`` is None only when the prefix
    admits no acyclic completion. Lower bound: dependent arcs so far plus
    unassigned edges whose endpoints are already comparable (each of those
    must become dependent, the other direction closes a cycle).
    """
    E = len(edges)
    _ensure_depth(E)
    anc = [1 << v for v in range(n)]
    desc = [1 << v for v in range(n)]
    out = [0] * n
    dep = [0] * n
    dirs = [0] * E
    best = [E + 1, None]
    nodes = 0

    def add(a, b):
        if (desc[b] >> a) & 1:
            return None
        saved = (list(anc), list(desc), list(out), list(dep))
        added = 0
        if (desc[a] >> b) & 1:
            dep[a] |= 1 << b
            added += 1
        A = anc[a]
        B = desc[b]
        for v in _bits(A):
            hit = out[v] & B & ~dep[v]
            if hit:
                dep[v] |= hit
                added += bin(hit).count("1")
        out[a] |= 1 << b
        for v in _bits(A):
            desc[v] |= B
        for v in _bits(B):
            anc[v] |= A
        return saved, added

    def restore(saved):
        anc[:], desc[:], out[:], dep[:] = saved

    def rec(d, count):
        nonlocal nodes
        nodes += 1
        if d == E:
            if count < best[0]:
                best[0] = count
                best[1] = list(dirs)
            return best[0] == 0
        forced = 0
        for x, y in edges[d:]:
            if (desc[x] >> y) & 1 or (desc[y] >> x) & 1:
                forced += 1
        if count + forced >= best[0]:
            return False
        a, b = edges[d]
        for k in _options(d, prefix):
            res = add(a, b) if k == 0 else add(b, a)
            if res is None:
                continue
            saved, added = res
            dirs[d] = k
            if rec(d + 1, count + added):
                return True
            restore(saved)
        return False

    rec(0, 0)
    value = best[0] if best[1] is not None else None
    return value, best[1], nodes


def min_imbalance(n, edges, cycles, prefix=()):
    """Minimum imbalance over acyclic orientations, with a minimizing orientation.

    ``cycles`` lists every simple cycle as ``(positions, trav)``: edge
    positions in search order and, per edge, the direction (0/1) that runs
    along the cycle's positive traversal. A cycle is scored once its last
    edge is assigned; all-forward or all-backward means a directed cycle.
    Returns ``(num, den, dirs, nodes)``; ``dirs`` is None when the prefix
    admits no acyclic completion.
    """
    E = len(edges)
    _ensure_depth(E)
    closing = [[] for _ in range(E)]
    for c in cycles:
        closing[max(c[0])].append(c)
    dirs = [0] * E
    best = [1, 0, None]  # num, den, dirs; 1/0 acts as +infinity
    nodes = 0

    def rec(d, num, den):
        nonlocal nodes
        nodes += 1
        if d == E:
            if num * best[1] < best[0] * den:
                best[0], best[1], best[2] = num, den, list(dirs)
            return best[0] == 2 * best[1]
        for k in _options(d, prefix):
            dirs[d] = k
            cn, cd = num, den
            ok = True
            for positions, trav in closing[d]:
                length = len(positions)
                fwd = sum(1 for p, t in zip(positions, trav) if dirs[p] == t)
                low = min(fwd, length - fwd)
                if low == 0:
                    ok = False
                    break
                if length * cd > cn * low:
                    cn, cd = length, low
            if not ok or cn * best[1] >= best[0] * cd:
                continue
            if rec(d + 1, cn, cd):
                return True
        return False

    rec(0, 2, 1)
    if best[2] is None:
        return None, None, None, nodes
    return best[0], best[1], best[2], nodes
