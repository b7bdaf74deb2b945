"""Graph homomorphisms: verification, backtracking search, and the explicit Mycielskian maps."""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import direct_product, mycielskian
from .errors import CapacityError, InvalidParameterError, MalformedInputError, ValidationError
from .graph import DEFAULT_VERTEX_BOUND, ROOT, Graph, Myc, Pair, build_cycle


@dataclass(frozen=True)
class Homomorphism:
    source: Graph
    target: Graph
    mapping: dict = field(hash=False)

    def __call__(self, v):
        return self.mapping[v]

    def verify(self):
        return verify_hom(self)


def verify_hom(f: Homomorphism) -> tuple[bool, tuple | None]:
    """``(True, None)`` if every source edge maps to a target edge, else ``(False, first bad edge)``.

    Edges are checked in the source's canonical edge order.
    """
    src, tgt, mp = f.source, f.target, f.mapping
    for v in src.vertices:
        if v not in mp:
            raise MalformedInputError(f"homomorphism map is partial: {v} is unmapped")
        if mp[v] not in tgt:
            raise MalformedInputError(f"image {mp[v]} of {v} is not a target vertex")
    for a, b in src.edges:
        if not tgt.has_edge(mp[a], mp[b]):
            return False, (a, b)
    return True, None


def make_hom(source: Graph, target: Graph, mapping: dict) -> Homomorphism:
    """Build and verify; raises ValidationError naming the first violated edge."""
    f = Homomorphism(source, target, dict(mapping))
    ok, bad = verify_hom(f)
    if not ok:
        a, b = bad
        raise ValidationError(f"edge {a}{b} maps to non-edge {mapping[a]}{mapping[b]}")
    return f


def identity_hom(G: Graph) -> Homomorphism:
    return Homomorphism(G, G, {v: v for v in G.vertices})


def find_hom(G: Graph, H: Graph, max_vertices: int = DEFAULT_VERTEX_BOUND) -> Homomorphism | None:
    """Backtracking search for G -> H.

    Source vertices go in descending degree order (ties by vertex order),
    target candidates in label order. A candidate must be adjacent to the
    images of all assigned neighbors, and every unassigned neighbor must keep
    a nonempty candidate set afterwards.
    """
    if G.order > max_vertices:
        raise CapacityError(f"find_hom: source has {G.order} vertices, bound is {max_vertices}", size=G.order, bound=max_vertices)
    if G.order == 0:
        return Homomorphism(G, H, {})
    if H.order == 0:
        return None
    gadj = G.adj
    hmask = H.masks
    full = (1 << H.order) - 1
    order = sorted(range(G.order), key=lambda v: (-len(gadj[v]), v))
    image = [-1] * G.order

    def domain(v):
        dom = full
        for w in gadj[v]:
            if image[w] >= 0:
                dom &= hmask[image[w]]
        return dom

    def search(pos):
        if pos == len(order):
            return True
        v = order[pos]
        dom = domain(v)
        while dom:
            low = dom & -dom
            c = low.bit_length() - 1
            dom ^= low
            image[v] = c
            if all(image[w] >= 0 or domain(w) for w in gadj[v]) and search(pos + 1):
                return True
            image[v] = -1
        return False

    if not search(0):
        return None
    return make_hom(G, H, {G.vertices[v]: H.vertices[image[v]] for v in range(G.order)})


def compose_hom(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """g o f."""
    if f.target != g.source:
        raise MalformedInputError("cannot compose: target of the first map is not the source of the second")
    return make_hom(f.source, g.target, {v: g.mapping[f.mapping[v]] for v in f.source.vertices})


def product_hom(f1: Homomorphism, f2: Homomorphism, source: Graph | None = None, target: Graph | None = None) -> Homomorphism:
    """H1 x H2 -> G1 x G2 acting coordinate-wise."""
    for f in (f1, f2):
        ok, bad = verify_hom(f)
        if not ok:
            raise ValidationError(f"factor map violates edge {bad}")
    source = source if source is not None else direct_product(f1.source, f2.source)
    target = target if target is not None else direct_product(f1.target, f2.target)
    mapping = {Pair(a, b): Pair(f1.mapping[a], f2.mapping[b]) for a in f1.source.vertices for b in f2.source.vertices}
    return make_hom(source, target, mapping)


def projection(P: Graph, G: Graph, H: Graph, side: str = "left") -> Homomorphism:
    """G x H -> G (``side="left"``) or -> H (``side="right"``)."""
    if side == "left":
        return make_hom(P, G, {v: v.left for v in P.vertices})
    if side == "right":
        return make_hom(P, H, {v: v.right for v in P.vertices})
    raise InvalidParameterError(f"side must be 'left' or 'right', got {side!r}")


def odd_cycle_mycielskian(m: int, q: int) -> Graph:
    """M_m(C_{2q+1})."""
    return mycielskian(build_cycle(2 * q + 1), m)


def sigma_map(p: int, m: int, q: int) -> Homomorphism:
    """Level collapse M_p(C_{2q+1}) -> M_m(C_{2q+1}).

    Levels 0..p-m go to level 0, level i > p-m goes to level i-p+m, root to root.
    """
    if not (p >= m >= 1 and q >= 1):
        raise InvalidParameterError(f"sigma needs p >= m >= 1 and q >= 1, got p={p}, m={m}, q={q}")
    n = 2 * q + 1
    mapping = {ROOT: ROOT}
    for i in range(p + 1):
        level = 0 if i <= p - m else i - p + m
        for j in range(n):
            mapping[Myc(i, j)] = Myc(level, j)
    return make_hom(odd_cycle_mycielskian(p, q), odd_cycle_mycielskian(m, q), mapping)


def tau_position(j: int, s: int) -> int:
    if j <= 2 * s:
        return j
    return 2 * s if j % 2 == 0 else 2 * s - 1


def tau_map(m: int, q: int, s: int) -> Homomorphism:
    """Cycle fold M_m(C_{2q+1}) -> M_m(C_{2s+1}) keeping levels.

    Positions above 2s fold onto 2s (even) or 2s-1 (odd).
    """
    if not (q >= s >= 1 and m >= 1):
        raise InvalidParameterError(f"tau needs q >= s >= 1 and m >= 1, got m={m}, q={q}, s={s}")
    mapping = {ROOT: ROOT}
    for i in range(m + 1):
        for j in range(2 * q + 1):
            mapping[Myc(i, j)] = Myc(i, tau_position(j, s))
    return make_hom(odd_cycle_mycielskian(m, q), odd_cycle_mycielskian(m, s), mapping)


def lemma11_hom(p: int, q: int, m: int, s: int) -> Homomorphism:
    """M_p(C_{2q+1}) -> M_m(C_{2s+1}) as tau o sigma, for p >= m >= 1 and q >= s >= 1."""
    if not (p >= m >= 1 and q >= s >= 1):
        raise InvalidParameterError(f"need p >= m >= 1 and q >= s >= 1, got p={p}, q={q}, m={m}, s={s}")
    return compose_hom(sigma_map(p, m, q), tau_map(m, q, s))
