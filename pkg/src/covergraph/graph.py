"""Immutable simple graphs with structured vertex labels, plus basic invariants."""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .errors import CapacityError, InvalidParameterError

INFINITY = math.inf

DEFAULT_VERTEX_BOUND = 64


@dataclass(frozen=True)
class Plain:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class Myc:
    """Mycielskian coordinate <level, pos>."""

    level: int
    pos: int

    def __str__(self):
        return f"⟨{self.level},{self.pos}⟩"


@dataclass(frozen=True)
class Root:
    def __str__(self):
        return "u"


ROOT = Root()


@dataclass(frozen=True)
class Pair:
    left: "Label"
    right: "Label"

    def __str__(self):
        return f"({self.left},{self.right})"


Label = Union[Plain, Myc, Root, Pair]


class Graph:
    """A finite simple undirected graph.

    Vertex order is fixed at construction and drives every search and the
    canonical serialization. Edges are stored as index pairs ``(i, j)`` with
    ``i < j`` sorted lexicographically.
    """

    __slots__ = ("vertices", "index_edges", "name", "_index", "_adj", "_masks", "_digest")

    def __init__(self, vertices: Iterable[Label], edges: Iterable[tuple[Label, Label]] = (), name: str | None = None):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise InvalidParameterError("duplicate vertex labels")
        pairs = set()
        for a, b in edges:
            try:
                i, j = self._index[a], self._index[b]
            except KeyError as exc:
                raise InvalidParameterError(f"edge endpoint {exc.args[0]} is not a vertex") from None
            if i == j:
                raise InvalidParameterError(f"loop at {a}")
            pairs.add((i, j) if i < j else (j, i))
        self.index_edges = tuple(sorted(pairs))
        adj = [set() for _ in self.vertices]
        for i, j in self.index_edges:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(s) for s in adj)
        self._masks = None
        self._digest = None
        self.name = name

    @classmethod
    def from_index_edges(cls, vertices, index_edges, name=None):
        vertices = tuple(vertices)
        return cls(vertices, ((vertices[i], vertices[j]) for i, j in index_edges), name=name)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.index_edges)

    @property
    def edges(self) -> tuple[tuple[Label, Label], ...]:
        vs = self.vertices
        return tuple((vs[i], vs[j]) for i, j in self.index_edges)

    @property
    def adj(self) -> tuple[frozenset, ...]:
        """Neighbor index sets, aligned with ``vertices``."""
        return self._adj

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbor sets as integer bitmasks."""
        if self._masks is None:
            self._masks = tuple(sum(1 << j for j in s) for s in self._adj)
        return self._masks

    def index(self, label: Label) -> int:
        return self._index[label]

    def __contains__(self, label) -> bool:
        return label in self._index

    def __len__(self):
        return len(self.vertices)

    def has_edge(self, a: Label, b: Label) -> bool:
        i = self._index.get(a)
        j = self._index.get(b)
        if i is None or j is None:
            return False
        return j in self._adj[i]

    def neighbors(self, label: Label) -> tuple[Label, ...]:
        return tuple(self.vertices[j] for j in sorted(self._adj[self._index[label]]))

    def degree(self, label: Label) -> int:
        return len(self._adj[self._index[label]])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    def with_name(self, name: str) -> "Graph":
        g = Graph.from_index_edges(self.vertices, self.index_edges, name=name)
        return g

    def spanning_subgraph(self, index_edges, name=None) -> "Graph":
        """Same vertex set, a subset of the edges."""
        return Graph.from_index_edges(self.vertices, index_edges, name=name)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form; identifies the graph in certificates."""
        if self._digest is None:
            from .io import to_json

            self._digest = hashlib.sha256(to_json(self).encode()).hexdigest()
        return self._digest

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.index_edges == other.index_edges

    def __hash__(self):
        return hash((self.vertices, self.index_edges))

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<Graph{name} |V|={self.order} |E|={self.size}>"


# -- builders ---------------------------------------------------------------


def build_cycle(n: int) -> Graph:
    """C_n on labels <0,0> ... <0,n-1>, consecutive labels adjacent mod n."""
    if n < 3:
        raise InvalidParameterError(f"a cycle needs at least 3 vertices, got {n}")
    vs = [Myc(0, j) for j in range(n)]
    return Graph(vs, [(vs[j], vs[(j + 1) % n]) for j in range(n)], name=f"C_{n}")


def complete(n: int) -> Graph:
    _check_count(n, 0)
    vs = [Plain(i) for i in range(n)]
    return Graph(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)], name=f"K_{n}")


def edgeless(n: int) -> Graph:
    _check_count(n, 0)
    return Graph([Plain(i) for i in range(n)], name=f"E_{n}")


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    _check_count(n, 1)
    vs = [Plain(i) for i in range(n)]
    return Graph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)], name=f"P_{n}")


def star(leaves: int) -> Graph:
    _check_count(leaves, 0)
    vs = [Plain(i) for i in range(leaves + 1)]
    return Graph(vs, [(vs[0], vs[i]) for i in range(1, leaves + 1)], name=f"S_{leaves}")


def petersen() -> Graph:
    vs = [Plain(i) for i in range(10)]
    edges = []
    for i in range(5):
        edges.append((vs[i], vs[(i + 1) % 5]))
        edges.append((vs[i], vs[5 + i]))
        edges.append((vs[5 + i], vs[5 + (i + 2) % 5]))
    return Graph(vs, edges, name="Petersen")


def from_edge_list(n: int, index_edges, name=None) -> Graph:
    """Plain-labelled graph on ``0..n-1`` from integer pairs."""
    return Graph.from_index_edges([Plain(i) for i in range(n)], index_edges, name=name)


_STANDARD = {
    "cycle": build_cycle,
    "complete": complete,
    "edgeless": edgeless,
    "path": path,
    "star": star,
    "petersen": petersen,
}


def build_standard(kind: str, *params) -> Graph:
    try:
        builder = _STANDARD[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown graph kind {kind!r}; expected one of {sorted(_STANDARD)}") from None
    return builder(*params)


def _check_count(n, minimum):
    if not isinstance(n, int) or n < minimum:
        raise InvalidParameterError(f"vertex count must be an integer >= {minimum}, got {n!r}")


# -- invariants ---------------------------------------------------------------


def girth(G: Graph) -> int | float:
    """Length of a shortest cycle, or ``INFINITY`` for forests.

    One BFS per root; a non-tree edge (x, y) closes a walk of length
    dist[x] + dist[y] + 1, and the minimum over all roots is exact.
    """
    best = INFINITY
    adj = G.adj
    for r in range(G.order):
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


class BipartiteCheck(NamedTuple):
    """Either a proper 2-coloring or a shortest odd cycle, never both."""

    coloring: dict | None
    odd_cycle: tuple | None

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None

    def __bool__(self):
        return self.bipartite


def is_bipartite(G: Graph) -> BipartiteCheck:
    adj = G.adj
    color = {}
    for s in range(G.order):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
    if all(color[i] != color[j] for i, j in G.index_edges):
        return BipartiteCheck({G.vertices[i]: c for i, c in sorted(color.items())}, None)
    cycle = _shortest_odd_cycle(G)
    return BipartiteCheck(None, tuple(G.vertices[i] for i in cycle))


def _shortest_odd_cycle(G: Graph) -> list[int]:
    # A same-layer edge (x, y) in the BFS from r closes an odd walk of length
    # 2*dist + 1. The globally shortest such walk is a simple cycle.
    adj = G.adj
    best = None
    for r in range(G.order):
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        found = None
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 >= best[0]:
                break
            for y in sorted(adj[x]):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif dist[y] == dist[x] and found is None:
                    found = (2 * dist[x] + 1, x, y)
            if found is not None:
                break
        if found is not None and (best is None or found[0] < best[0]):
            best = (found[0], r, found[1], found[2], parent)
    if best is None:
        raise AssertionError("non-bipartite graph without odd cycle")
    length, r, x, y, parent = best
    left = [x]
    while left[-1] != r:
        left.append(parent[left[-1]])
    right = [y]
    while right[-1] != r:
        right.append(parent[right[-1]])
    # r ... x then y ... back toward r (excluding r twice)
    cycle = list(reversed(left)) + right[:-1]
    if len(cycle) != length or len(set(cycle)) != length:
        raise AssertionError("shortest odd closed walk is not a simple cycle")
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    if cycle[1] > cycle[-1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return cycle


def is_proper_coloring(G: Graph, coloring: dict) -> bool:
    if any(v not in coloring for v in G.vertices):
        return False
    return all(coloring[a] != coloring[b] for a, b in G.edges)


class ChromaticResult(NamedTuple):
    value: int
    coloring: dict


def chromatic_number(G: Graph, max_vertices: int = DEFAULT_VERTEX_BOUND) -> ChromaticResult:
    """Exact chromatic number with an optimal coloring.

    DSATUR branch-and-bound seeded with a greedy clique (lower bound) and a
    DSATUR greedy coloring (upper bound).
    """
    n = G.order
    if n > max_vertices:
        raise CapacityError(f"chromatic_number: {n} vertices exceeds bound {max_vertices}", size=n, bound=max_vertices)
    if n == 0:
        return ChromaticResult(0, {})
    adj = G.adj
    clique = _greedy_clique(adj)
    upper = _dsatur_greedy(adj)
    best = [max(upper) + 1, upper]
    lower = len(clique)
    if best[0] > lower:
        colors = [-1] * n
        for c, v in enumerate(clique):
            colors[v] = c
        _dsatur_bnb(adj, colors, len(clique), lower, best)
    k, cols = best
    return ChromaticResult(k, {G.vertices[i]: cols[i] for i in range(n)})


def _greedy_clique(adj) -> list[int]:
    best = []
    for start in range(len(adj)):
        clique = [start]
        cand = set(adj[start])
        while cand:
            v = max(cand, key=lambda x: (len(adj[x] & cand), -x))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_greedy(adj) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    sat = [set() for _ in range(n)]
    for _ in range(n):
        v = max((x for x in range(n) if colors[x] < 0), key=lambda x: (len(sat[x]), len(adj[x]), -x))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in adj[v]:
            sat[w].add(c)
    return colors


def _dsatur_bnb(adj, colors, used, lower, best):
    n = len(adj)
    uncolored = [x for x in range(n) if colors[x] < 0]
    if not uncolored:
        if used < best[0]:
            best[0] = used
            best[1] = list(colors)
        return best[0] <= lower
    v = max(uncolored, key=lambda x: (len({colors[w] for w in adj[x] if colors[w] >= 0}), len(adj[x]), -x))
    forbidden = {colors[w] for w in adj[v] if colors[w] >= 0}
    c = -1
    while c + 1 <= used and c + 2 < best[0]:
        c += 1
        if c in forbidden:
            continue
        colors[v] = c
        if _dsatur_bnb(adj, colors, max(used, c + 1), lower, best):
            colors[v] = -1
            return True
        colors[v] = -1
    return False


def connected_components(G: Graph) -> list[list[int]]:
    seen = set()
    comps = []
    for s in range(G.order):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in G.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.order > 0 and len(connected_components(G)) == 1


def find_triangle(G: Graph) -> tuple | None:
    adj = G.adj
    for i, j in G.index_edges:
        common = adj[i] & adj[j]
        if common:
            k = min(common)
            return tuple(G.vertices[x] for x in sorted((i, j, k)))
    return None
