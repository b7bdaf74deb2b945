"""Acyclic orientations, dependent arcs, exact cover-graph decisions and imbalance."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from . import kernels
from .errors import CapacityError, CyclicOrientationError, MalformedInputError, NotHasseDiagramError
from .graph import Graph

DEFAULT_EDGE_BOUND = 28
DEFAULT_CYCLE_BUDGET = 100_000


@dataclass(frozen=True)
class AcyclicOrientation:
    """Directions for every edge of ``graph``.

    ``arcs[k]`` is the ``(tail, head)`` index pair for ``graph.index_edges[k]``.
    """

    graph: Graph
    arcs: tuple

    def __post_init__(self):
        if len(self.arcs) != self.graph.size:
            raise MalformedInputError("orientation must assign every edge exactly once")
        for (i, j), (t, h) in zip(self.graph.index_edges, self.arcs):
            if {t, h} != {i, j}:
                raise MalformedInputError(f"arc {t}->{h} does not orient edge {i}{j}")
        if _topological_order(self.graph.order, self.arcs) is None:
            raise CyclicOrientationError("orientation contains a directed cycle")

    @classmethod
    def from_dirs(cls, G: Graph, dirs) -> "AcyclicOrientation":
        """``dirs[k] == 0`` orients ``index_edges[k]`` from lower to higher index."""
        return cls(G, tuple((i, j) if d == 0 else (j, i) for (i, j), d in zip(G.index_edges, dirs)))

    @classmethod
    def from_label_arcs(cls, G: Graph, arcs) -> "AcyclicOrientation":
        heads = {}
        for t, h in arcs:
            heads[frozenset((G.index(t), G.index(h)))] = (G.index(t), G.index(h))
        try:
            return cls(G, tuple(heads[frozenset(e)] for e in G.index_edges))
        except KeyError:
            raise MalformedInputError("arc list does not cover every edge") from None

    @property
    def dirs(self) -> tuple:
        return tuple(0 if t < h else 1 for t, h in self.arcs)

    def label_arcs(self) -> list:
        vs = self.graph.vertices
        return [(vs[t], vs[h]) for t, h in self.arcs]

    def successor_masks(self) -> list[int]:
        out = [0] * self.graph.order
        for t, h in self.arcs:
            out[t] |= 1 << h
        return out


def _topological_order(n, arcs):
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for t, h in arcs:
        succ[t].append(h)
        indeg[h] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == n else None


def _reach(succ, start, skip_arc=None) -> int:
    seen = 1 << start
    stack = [start]
    while stack:
        x = stack.pop()
        nxt = succ[x]
        if skip_arc is not None and x == skip_arc[0]:
            nxt &= ~(1 << skip_arc[1])
        nxt &= ~seen
        seen |= nxt
        while nxt:
            low = nxt & -nxt
            stack.append(low.bit_length() - 1)
            nxt ^= low
    return seen


def dependent_arcs(D: AcyclicOrientation) -> set:
    """Arcs (x, y) with another directed x-to-y path; reversing exactly these creates a cycle."""
    succ = D.successor_masks()
    vs = D.graph.vertices
    return {(vs[t], vs[h]) for t, h in D.arcs if (_reach(succ, t, (t, h)) >> h) & 1}


def search_order(G: Graph) -> list[int]:
    """Edge positions in search order.

    Greedy: prefer edges touching already-chosen vertices (so cycles close
    early), then larger minimum endpoint degree, then index order.
    """
    deg = G.degrees()
    remaining = sorted(range(G.size), key=lambda k: (-min(deg[v] for v in G.index_edges[k]), k))
    touched = set()
    order = []
    while remaining:
        best = max(range(len(remaining)), key=lambda r: (sum(v in touched for v in G.index_edges[remaining[r]]), -r))
        k = remaining.pop(best)
        order.append(k)
        touched.update(G.index_edges[k])
    return order


class CoverVerdict(NamedTuple):
    is_cover: bool
    orientation: AcyclicOrientation | None
    nodes: int
    bound_edges: int

    def __bool__(self):
        return self.is_cover


class DminResult(NamedTuple):
    value: int
    orientation: AcyclicOrientation
    nodes: int


def _check_bound(G, bound_edges, what):
    if G.size > bound_edges:
        raise CapacityError(
            f"{what}: {G.size} edges exceeds the exact-search bound {bound_edges}; "
            "raise the bound explicitly or use a certificate chain (covergraph.certify)",
            size=G.size,
            bound=bound_edges,
        )


def _search_edges(G):
    order = search_order(G)
    return order, [G.index_edges[k] for k in order]


def _unpermute(G, order, dirs):
    out = [0] * G.size
    for d, k in enumerate(order):
        out[k] = dirs[d]
    return AcyclicOrientation.from_dirs(G, out)


def _prefixes(E, workers):
    depth = min(E, max(1, math.ceil(math.log2(max(workers, 1)))) + 3)
    for tail in itertools.product((0, 1), repeat=depth - 1):
        yield (0,) + tail


def _run_split(fn, G, edges, workers, *extra):
    prefixes = list(_prefixes(len(edges), workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, G.order, edges, *extra, prefix) for prefix in prefixes]
        return [f.result() for f in futures]


def is_cover_exact(G: Graph, bound_edges: int = DEFAULT_EDGE_BOUND, workers: int = 1) -> CoverVerdict:
    """Decide whether ``G`` is a cover graph by exhaustive pruned search.

    COVER comes with a zero-dependent-arc orientation (the lexicographically
    least in search order); NOT_COVER means the whole search space was pruned.
    """
    _check_bound(G, bound_edges, "is_cover_exact")
    if G.size == 0:
        return CoverVerdict(True, AcyclicOrientation(G, ()), 1, bound_edges)
    order, edges = _search_edges(G)
    if workers > 1 and G.size > 8:
        results = _run_split(kernels.cover_search, G, edges, workers)
        nodes = sum(r[2] for r in results)
        for found, dirs, _ in results:
            if found:
                return CoverVerdict(True, _unpermute(G, order, dirs), nodes, bound_edges)
        return CoverVerdict(False, None, nodes, bound_edges)
    found, dirs, nodes = kernels.cover_search(G.order, edges)
    orientation = _unpermute(G, order, dirs) if found else None
    return CoverVerdict(found, orientation, nodes, bound_edges)


def d_min(G: Graph, bound_edges: int = DEFAULT_EDGE_BOUND, workers: int = 1) -> DminResult:
    """Minimum number of dependent arcs over all acyclic orientations, with an optimal orientation."""
    _check_bound(G, bound_edges, "d_min")
    if G.size == 0:
        return DminResult(0, AcyclicOrientation(G, ()), 1)
    order, edges = _search_edges(G)
    if workers > 1 and G.size > 8:
        results = _run_split(kernels.dmin_search, G, edges, workers)
        nodes = sum(r[2] for r in results)
        feasible = [r for r in results if r[0] is not None]
        value, dirs, _ = min(feasible, key=lambda r: r[0])
        return DminResult(value, _unpermute(G, order, dirs), nodes)
    value, dirs, nodes = kernels.dmin_search(G.order, edges)
    return DminResult(value, _unpermute(G, order, dirs), nodes)


@dataclass(frozen=True)
class PosetCertificate:
    """A finite poset given by its cover relations (Hasse diagram arcs)."""

    elements: tuple
    covers: tuple

    def check(self, G: Graph | None = None) -> str | None:
        """First failed invariant, or None."""
        index = {v: i for i, v in enumerate(self.elements)}
        if len(index) != len(self.elements):
            return "duplicate elements"
        succ = [0] * len(self.elements)
        arcs = []
        for a, b in self.covers:
            if a not in index or b not in index:
                return f"cover relation {a}<{b} uses an unknown element"
            succ[index[a]] |= 1 << index[b]
            arcs.append((index[a], index[b]))
        if len(set(arcs)) != len(arcs):
            return "repeated cover relation"
        if _topological_order(len(self.elements), arcs) is None:
            return "cover relations contain a directed cycle"
        for t, h in arcs:
            if (_reach(succ, t, (t, h)) >> h) & 1:
                return f"{self.elements[t]}<{self.elements[h]} is implied transitively"
        if G is not None:
            if tuple(G.vertices) != tuple(self.elements):
                return "elements differ from the graph's vertices"
            if {frozenset(c) for c in self.covers} != {frozenset(e) for e in G.edges}:
                return "underlying graph of the cover relations differs from the graph"
        return None


def hasse_from_orientation(D: AcyclicOrientation) -> PosetCertificate:
    deps = dependent_arcs(D)
    if deps:
        a, b = min(deps, key=lambda arc: (D.graph.index(arc[0]), D.graph.index(arc[1])))
        raise NotHasseDiagramError(f"arc {a}->{b} is dependent; {len(deps)} dependent arc(s) in total")
    cert = PosetCertificate(D.graph.vertices, tuple(D.label_arcs()))
    problem = cert.check(D.graph)
    if problem is not None:
        raise NotHasseDiagramError(problem)
    return cert


def poset_to_obj(P: PosetCertificate) -> dict:
    from .io import label_to_json

    return {"elements": [label_to_json(v) for v in P.elements], "covers": [[label_to_json(a), label_to_json(b)] for a, b in P.covers]}


def poset_from_obj(obj) -> PosetCertificate:
    from .io import label_from_json

    return PosetCertificate(tuple(label_from_json(v) for v in obj["elements"]), tuple((label_from_json(a), label_from_json(b)) for a, b in obj["covers"]))


def simple_cycles(G: Graph, budget: int = DEFAULT_CYCLE_BUDGET) -> list[tuple]:
    """Every simple cycle once, as an index tuple starting at its least vertex.

    Of the two traversals, the one whose second vertex is smaller than its
    last is kept.
    """
    adj = [sorted(s) for s in G.adj]
    cycles = []

    for s in range(G.order):
        path = [s]
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            for w in stack[-1]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                    if len(cycles) > budget:
                        raise CapacityError(f"more than {budget} simple cycles", size=len(cycles), bound=budget)
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    stack.append(iter(adj[w]))
                    break
            else:
                stack.pop()
                on_path.discard(path.pop())
    return cycles


def _cycle_ratio(cycle, succ) -> Fraction:
    length = len(cycle)
    fwd = sum(1 for k in range(length) if (succ[cycle[k]] >> cycle[(k + 1) % length]) & 1)
    low = min(fwd, length - fwd)
    if low == 0:
        raise CyclicOrientationError("directed cycle")
    return Fraction(length, low)


def imbalance(D: AcyclicOrientation, cycle_budget: int = DEFAULT_CYCLE_BUDGET, cycles=None) -> Fraction:
    """Max over simple cycles and both traversals of |C| / (number of arcs along the traversal); 2 for forests."""
    if cycles is None:
        cycles = simple_cycles(D.graph, cycle_budget)
    if not cycles:
        return Fraction(2)
    succ = D.successor_masks()
    return max(_cycle_ratio(c, succ) for c in cycles)


def cycle_traversals(G: Graph, cycles, order) -> list:
    """Encode cycles for the kernels as (search positions, traversal direction per edge)."""
    where = {}
    for pos, k in enumerate(order):
        i, j = G.index_edges[k]
        where[(i, j)] = (pos, 0)
        where[(j, i)] = (pos, 1)
    encoded = []
    for c in cycles:
        positions = []
        trav = []
        for k in range(len(c)):
            pos, d = where[(c[k], c[(k + 1) % len(c)])]
            positions.append(pos)
            trav.append(d)
        encoded.append((positions, trav))
    return encoded


def enumerate_acyclic_orientations(G: Graph, bound_edges: int = DEFAULT_EDGE_BOUND) -> Iterator[AcyclicOrientation]:
    """Each acyclic orientation exactly once, in lexicographic order of ``dirs``."""
    _check_bound(G, bound_edges, "enumerate_acyclic_orientations")
    n, E = G.order, G.size
    desc = [1 << v for v in range(n)]
    anc = [1 << v for v in range(n)]
    dirs = [0] * E

    def rec(d):
        if d == E:
            yield AcyclicOrientation.from_dirs(G, dirs)
            return
        i, j = G.index_edges[d]
        for k, (a, b) in enumerate(((i, j), (j, i))):
            if (desc[b] >> a) & 1:
                continue
            saved = (list(anc), list(desc))
            A, B = anc[a], desc[b]
            for v in range(n):
                if (A >> v) & 1:
                    desc[v] |= B
                if (B >> v) & 1:
                    anc[v] |= A
            dirs[d] = k
            yield from rec(d + 1)
            anc[:], desc[:] = saved

    yield from rec(0)
