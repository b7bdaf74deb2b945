"""Generalized Mycielskian, direct product, and the subgraph embeddings between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidParameterError, MalformedInputError, ValidationError
from .graph import ROOT, Graph, Myc, Pair, Plain


def _base_positions(G: Graph) -> None:
    for v in G.vertices:
        if isinstance(v, Plain):
            continue
        if isinstance(v, Myc) and v.level == 0:
            continue
        raise InvalidParameterError(f"Mycielskian base must have Plain or level-0 labels, found {v}")


def mycielskian(G: Graph, m: int) -> Graph:
    """M_m(G): levels 0..m over G plus a root adjacent to every level-m vertex.

    Base vertex at position j becomes <0,j>; for each base edge jk and each
    level i >= 1 both <i-1,j><i,k> and <i-1,k><i,j> are added.
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidParameterError(f"Mycielskian level count must be >= 1, got {m!r}")
    _base_positions(G)
    n = G.order
    vertices = [Myc(i, j) for i in range(m + 1) for j in range(n)] + [ROOT]
    edges = [(Myc(0, j), Myc(0, k)) for j, k in G.index_edges]
    for i in range(1, m + 1):
        for j, k in G.index_edges:
            edges.append((Myc(i - 1, j), Myc(i, k)))
            edges.append((Myc(i - 1, k), Myc(i, j)))
    edges.extend((Myc(m, j), ROOT) for j in range(n))
    base = G.name or "G"
    return Graph(vertices, edges, name=f"M_{m}({base})")


def mycielskian_params(G: Graph) -> tuple[int, int]:
    """Recover (levels m, base order n) from a graph built by :func:`mycielskian`."""
    levels = [v.level for v in G.vertices if isinstance(v, Myc)]
    if ROOT not in G or not levels:
        raise InvalidParameterError("not a Mycielskian-labelled graph")
    m = max(levels)
    n = (G.order - 1) // (m + 1)
    return m, n


def direct_product(G: Graph, H: Graph) -> Graph:
    """G x H on Pair(g, h) labels, row-major in (G order, H order)."""
    vertices = [Pair(g, h) for g in G.vertices for h in H.vertices]
    edges = []
    for a, b in G.edges:
        for c, d in H.edges:
            edges.append((Pair(a, c), Pair(b, d)))
            edges.append((Pair(a, d), Pair(b, c)))
    return Graph(vertices, edges, name=f"{G.name or 'G'} x {H.name or 'H'}")


@dataclass(frozen=True)
class Embedding:
    """Injective edge-preserving vertex map; ``induced`` says whether non-edges are preserved too."""

    source: Graph
    target: Graph
    mapping: dict = field(hash=False)
    induced: bool = False

    def check(self) -> str | None:
        """Return a description of the first violation, or None when valid."""
        return check_embedding(self.source, self.target, self.mapping, self.induced)


def check_embedding(source: Graph, target: Graph, mapping: dict, induced: bool | None) -> str | None:
    """First violation of injectivity, edge preservation or the induced flag (None skips the flag)."""
    for v in source.vertices:
        if v not in mapping:
            return f"vertex {v} is unmapped"
        if mapping[v] not in target:
            return f"image {mapping[v]} of {v} is not a target vertex"
    if len(set(mapping[v] for v in source.vertices)) != source.order:
        return "map is not injective"
    for a, b in source.edges:
        if not target.has_edge(mapping[a], mapping[b]):
            return f"edge {a}{b} maps to non-edge {mapping[a]}{mapping[b]}"
    if induced is not None and induced != _is_induced(source, target, mapping):
        return f"induced flag {induced} is wrong"
    return None


def _is_induced(source, target, mapping) -> bool:
    # count target edges inside the image; subgraph + equal count means induced
    image = {mapping[v] for v in source.vertices}
    inside = 0
    for a in image:
        inside += sum(1 for b in target.neighbors(a) if b in image)
    return inside // 2 == source.size


def make_embedding(source: Graph, target: Graph, mapping: dict) -> Embedding:
    """Validate ``mapping`` as a subgraph embedding and compute its induced flag."""
    mapping = {v: mapping[v] for v in source.vertices if v in mapping}
    if len(mapping) != source.order:
        raise MalformedInputError("embedding map is not total on the source")
    problem = check_embedding(source, target, mapping, None)
    if problem is not None:
        raise ValidationError(f"invalid embedding: {problem}")
    return Embedding(source, target, mapping, _is_induced(source, target, mapping))


def identity_embedding(G: Graph) -> Embedding:
    return Embedding(G, G, {v: v for v in G.vertices}, True)


def diagonal_embedding(G: Graph, product: Graph | None = None) -> Embedding:
    """v -> (v, v) into G x G; the image is induced."""
    target = product if product is not None else direct_product(G, G)
    emb = make_embedding(G, target, {v: Pair(v, v) for v in G.vertices})
    if not emb.induced:
        raise ValidationError("diagonal image is not induced")
    return emb


def cycle_embedding(G: Graph, cycle: tuple) -> Embedding:
    """Embed C_n (labels <0,j>) onto a cycle of G given as a vertex sequence."""
    from .graph import build_cycle

    C = build_cycle(len(cycle))
    return make_embedding(C, G, {Myc(0, j): cycle[j] for j in range(len(cycle))})


def mycielskian_monotone_embedding(sub: Embedding, m: int, target: Graph | None = None) -> Embedding:
    """Lift a subgraph embedding H -> G to M_m(H) -> M_m(G) coordinate-wise."""
    problem = sub.check()
    if problem is not None:
        raise ValidationError(f"invalid subgraph witness: {problem}")
    H, G = sub.source, sub.target
    source = mycielskian(H, m)
    target = target if target is not None else mycielskian(G, m)
    pos = [G.index(sub.mapping[v]) for v in H.vertices]
    mapping = {ROOT: ROOT}
    for i in range(m + 1):
        for j in range(H.order):
            mapping[Myc(i, j)] = Myc(i, pos[j])
    return make_embedding(source, target, mapping)


def product_embedding(e1: Embedding, e2: Embedding, target: Graph | None = None) -> Embedding:
    """H1 x H2 -> G1 x G2 from embeddings H1 -> G1 and H2 -> G2."""
    for e in (e1, e2):
        problem = e.check()
        if problem is not None:
            raise ValidationError(f"invalid factor embedding: {problem}")
    source = direct_product(e1.source, e2.source)
    target = target if target is not None else direct_product(e1.target, e2.target)
    mapping = {Pair(a, b): Pair(e1.mapping[a], e2.mapping[b]) for a in e1.source.vertices for b in e2.source.vertices}
    return make_embedding(source, target, mapping)


def compose_embeddings(inner: Embedding, outer: Embedding) -> Embedding:
    if inner.target != outer.source:
        raise MalformedInputError("embedding composition: target of inner is not source of outer")
    return make_embedding(inner.source, outer.target, {v: outer.mapping[inner.mapping[v]] for v in inner.source.vertices})


def swap_pairs(P: Graph) -> Graph:
    """Relabel (a, b) -> (b, a); maps G x H onto H x G's edge set."""
    return Graph([Pair(v.right, v.left) for v in P.vertices], [(Pair(a.right, a.left), Pair(b.right, b.left)) for a, b in P.edges])


def level_vertices_independent(M: Graph) -> bool:
    """True when the root's neighborhood (level m) spans no edge."""
    top = M.neighbors(ROOT)
    return not any(M.has_edge(a, b) for a, b in combinations(top, 2))
