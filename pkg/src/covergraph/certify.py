"""Machine-checkable cover / non-cover certificates and the chains that build them.

A certificate concludes COVER or NOT_COVER for one graph through exactly one
step from a closed set of eight rules. Steps that reason through another
graph (homomorphisms, subgraph embeddings) carry one sub-certificate for it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .circular import (
    ChiCBounds,
    CircularColoring,
    chi_c_bounds_certificate,
    coloring_as_circular,
)
from .constructions import (
    check_embedding,
    cycle_embedding,
    diagonal_embedding,
    direct_product,
    mycielskian,
    mycielskian_monotone_embedding,
    product_embedding,
)
from .errors import CoverGraphError, FormatError, InvalidParameterError
from .graph import (
    INFINITY,
    ROOT,
    Graph,
    Myc,
    Pair,
    build_cycle,
    chromatic_number,
    girth,
    is_bipartite,
    is_proper_coloring,
)
from .hom import Homomorphism, lemma11_hom, product_hom, projection, verify_hom
from .io import graph_from_obj, graph_to_obj, label_from_json, label_to_json
from .orientations import DEFAULT_EDGE_BOUND, AcyclicOrientation, dependent_arcs, is_cover_exact


class Verdict(Enum):
    COVER = "COVER"
    NOT_COVER = "NOT_COVER"


# -- step kinds -----------------------------------------------------------------


@dataclass(frozen=True)
class ExactWitness:
    """An acyclic orientation with no dependent arc, as (tail, head) labels."""

    arcs: tuple


@dataclass(frozen=True)
class ExactExhaustion:
    """Attestation that the pruned search found no zero-dependent orientation.

    Re-run on validation when requested; ``override`` records a bound above
    the default.
    """

    bound_edges: int
    edges: int
    override: bool = False


@dataclass(frozen=True)
class ChiGirthRule:
    """A proper coloring with fewer colors than the girth."""

    coloring: dict = field(hash=False)
    girth: int | float = INFINITY


@dataclass(frozen=True)
class ChicGirthRule:
    """A circular coloring with k/d below the girth."""

    coloring: CircularColoring
    girth: int | float = INFINITY


@dataclass(frozen=True)
class HomIntoCover:
    """Map from this graph into the (COVER) graph of the sub-certificate."""

    mapping: dict = field(hash=False)


@dataclass(frozen=True)
class SupergraphOfNonCover:
    """Embedding of the (NOT_COVER) sub-certificate graph into this graph."""

    mapping: dict = field(hash=False)
    induced: bool = False


@dataclass(frozen=True)
class HomOntoTarget:
    """Map from the (NOT_COVER) sub-certificate graph into this graph."""

    mapping: dict = field(hash=False)


@dataclass(frozen=True)
class TrianglePresent:
    vertices: tuple


COVER_RULES = (ExactWitness, ChiGirthRule, ChicGirthRule, HomIntoCover)
NOT_COVER_RULES = (ExactExhaustion, SupergraphOfNonCover, HomOntoTarget, TrianglePresent)
_WITH_SUB = (HomIntoCover, SupergraphOfNonCover, HomOntoTarget)


@dataclass(frozen=True)
class Certificate:
    graph: Graph
    verdict: Verdict
    step: object
    subs: tuple = ()

    @property
    def kind(self) -> str:
        return type(self.step).__name__

    def walk(self, path="root"):
        """Yield ``(path, certificate)`` depth-first."""
        yield path, self
        for k, sub in enumerate(self.subs):
            yield from sub.walk(f"{path}.subs[{k}]")

    def exhaustive_components(self) -> list[tuple[str, int]]:
        """(graph name, edge count) of every ExactExhaustion step in the chain."""
        return [(c.graph.name, c.graph.size) for _, c in self.walk() if isinstance(c.step, ExactExhaustion)]


class ValidationReport(NamedTuple):
    ok: bool
    locus: str | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


# -- validation -------------------------------------------------------------------


def validate(cert: Certificate, G: Graph | None = None, rerun_exhaustion: bool = True) -> ValidationReport:
    """Re-check every step of ``cert`` (against ``G`` when given).

    ExactExhaustion steps are re-run when ``rerun_exhaustion`` is set;
    otherwise their attestation is accepted after the size checks.
    """
    if G is not None and (cert.graph != G):
        return ValidationReport(False, "root", "certificate concerns a different graph")
    failure = _check(cert, "root", rerun_exhaustion)
    if failure is None:
        return ValidationReport(True)
    return ValidationReport(False, *failure)


def _check(cert: Certificate, path: str, rerun: bool):
    step = cert.step
    G = cert.graph
    rules = COVER_RULES if cert.verdict is Verdict.COVER else NOT_COVER_RULES
    if not isinstance(step, rules):
        return path, f"rule {type(step).__name__} cannot conclude {cert.verdict.value}"
    expected_subs = 1 if isinstance(step, _WITH_SUB) else 0
    if len(cert.subs) != expected_subs:
        return path, f"{type(step).__name__} needs {expected_subs} sub-certificate(s), has {len(cert.subs)}"
    here = f"{path}.step"
    try:
        problem = _check_step(step, G, cert.subs, rerun)
    except CoverGraphError as exc:
        problem = str(exc)
    if problem is not None:
        return here, problem
    for k, sub in enumerate(cert.subs):
        failure = _check(sub, f"{path}.subs[{k}]", rerun)
        if failure is not None:
            return failure
    return None


def _check_step(step, G: Graph, subs, rerun: bool) -> str | None:
    if isinstance(step, ExactWitness):
        D = AcyclicOrientation.from_label_arcs(G, step.arcs)
        deps = dependent_arcs(D)
        if deps:
            return f"orientation has {len(deps)} dependent arc(s)"
        return None
    if isinstance(step, ExactExhaustion):
        if step.edges != G.size:
            return f"attested edge count {step.edges} but graph has {G.size} edges"
        if G.size > step.bound_edges:
            return f"graph exceeds the attested bound {step.bound_edges}"
        if step.override != (step.bound_edges > DEFAULT_EDGE_BOUND):
            return "override flag does not match the recorded bound"
        if rerun and is_cover_exact(G, bound_edges=step.bound_edges).is_cover:
            return "re-run found a zero-dependent orientation"
        return None
    if isinstance(step, ChiGirthRule):
        if not is_proper_coloring(G, step.coloring):
            return "coloring is not proper"
        g = girth(G)
        if g != step.girth:
            return f"stated girth {step.girth} but girth is {g}"
        used = len(set(step.coloring[v] for v in G.vertices))
        if not used < g:
            return f"{used} colors is not below girth {g}"
        return None
    if isinstance(step, ChicGirthRule):
        problem = step.coloring.check(G)
        if problem is not None:
            return f"circular coloring invalid: {problem}"
        g = girth(G)
        if g != step.girth:
            return f"stated girth {step.girth} but girth is {g}"
        if not step.coloring.ratio < g:
            return f"k/d = {step.coloring.ratio} is not below girth {g}"
        return None
    if isinstance(step, TrianglePresent):
        a, b, c = step.vertices
        if len({a, b, c}) != 3:
            return "triangle vertices are not distinct"
        for x, y in ((a, b), (b, c), (a, c)):
            if not G.has_edge(x, y):
                return f"{x}{y} is not an edge"
        return None
    sub = subs[0]
    if isinstance(step, HomIntoCover):
        if sub.verdict is not Verdict.COVER:
            return "target sub-certificate must conclude COVER"
        ok, bad = verify_hom(Homomorphism(G, sub.graph, step.mapping))
        return None if ok else f"homomorphism violates edge {bad[0]}{bad[1]}"
    if isinstance(step, SupergraphOfNonCover):
        if sub.verdict is not Verdict.NOT_COVER:
            return "subgraph sub-certificate must conclude NOT_COVER"
        problem = check_embedding(sub.graph, G, step.mapping, step.induced)
        return None if problem is None else f"embedding invalid: {problem}"
    if isinstance(step, HomOntoTarget):
        if sub.verdict is not Verdict.NOT_COVER:
            return "source sub-certificate must conclude NOT_COVER"
        ok, bad = verify_hom(Homomorphism(sub.graph, G, step.mapping))
        return None if ok else f"homomorphism violates edge {bad[0]}{bad[1]}"
    return f"unknown step {step!r}"


# -- generic and theorem-specific builders ----------------------------------------------


def _exact_step(G: Graph, bound_edges: int) -> Certificate:
    verdict = is_cover_exact(G, bound_edges=bound_edges)
    if verdict.is_cover:
        return Certificate(G, Verdict.COVER, ExactWitness(tuple(verdict.orientation.label_arcs())))
    return Certificate(G, Verdict.NOT_COVER, ExactExhaustion(bound_edges, G.size, bound_edges > DEFAULT_EDGE_BOUND))


def certify_exact(G: Graph, bound_edges: int = DEFAULT_EDGE_BOUND) -> Certificate:
    """Cheapest direct certificate: triangle, chi < girth, then exhaustive search."""
    from .graph import find_triangle

    tri = find_triangle(G)
    if tri is not None:
        return Certificate(G, Verdict.NOT_COVER, TrianglePresent(tri))
    g = girth(G)
    if G.order <= 64:
        chi, coloring = chromatic_number(G)
        if chi < g:
            return Certificate(G, Verdict.COVER, ChiGirthRule(coloring, g))
    return _exact_step(G, bound_edges)


def _bipartite_mycielskian_coloring(G: Graph, M: Graph, side: dict) -> dict:
    # <i,j> takes the side of base vertex j; the root takes a third color
    coloring = {Myc(i, j): side[G.vertices[j]] for v in M.vertices if isinstance(v, Myc) for i, j in [(v.level, v.pos)]}
    coloring[ROOT] = 2 if G.size else 1
    return coloring


def certify_theorem7(m: int, n: int, bound_edges: int = DEFAULT_EDGE_BOUND) -> Certificate:
    """M_m(C_n): 3-coloring below girth for even n, exhaustive search for odd n."""
    if n < 3:
        raise InvalidParameterError(f"need n >= 3, got {n}")
    C = build_cycle(n)
    M = mycielskian(C, m)
    if n % 2 == 0:
        side = {v: v.pos % 2 for v in C.vertices}
        return Certificate(M, Verdict.COVER, ChiGirthRule(_bipartite_mycielskian_coloring(C, M, side), girth(M)))
    verdict = is_cover_exact(M, bound_edges=bound_edges)
    if verdict.is_cover:
        raise AssertionError(f"{M.name} has a zero-dependent orientation; contradicts the odd-cycle case")
    return Certificate(M, Verdict.NOT_COVER, ExactExhaustion(bound_edges, M.size, bound_edges > DEFAULT_EDGE_BOUND))


def certify_theorem8(G: Graph, m: int, bound_edges: int = DEFAULT_EDGE_BOUND, M: Graph | None = None) -> Certificate:
    """M_m(G): COVER by a 3-coloring when G is bipartite, else via a shortest odd cycle of G."""
    M = M if M is not None else mycielskian(G, m)
    check = is_bipartite(G)
    if check.bipartite:
        return Certificate(M, Verdict.COVER, ChiGirthRule(_bipartite_mycielskian_coloring(G, M, check.coloring), girth(M)))
    cycle = check.odd_cycle
    lifted = mycielskian_monotone_embedding(cycle_embedding(G, cycle), m, target=M)
    sub = certify_theorem7(m, len(cycle), bound_edges)
    return Certificate(M, Verdict.NOT_COVER, SupergraphOfNonCover(lifted.mapping, lifted.induced), (sub,))


def certify_theorem12(m: int, s: int, n: int, t: int, bound_edges: int = DEFAULT_EDGE_BOUND) -> Certificate:
    """M_m(C_{2s+1}) x M_n(C_{2t+1}) is NOT_COVER.

    Chain: exhaustive base for B = M_p(C_{2q+1}) (p, q the maxima), the
    diagonal B -> B x B, then the coordinate-wise Mycielskian fold
    B x B -> target.
    """
    if min(m, s, n, t) < 1:
        raise InvalidParameterError("m, s, n, t must be positive")
    p, q = max(m, n), max(s, t)
    base = certify_theorem7(p, 2 * q + 1, bound_edges)
    B = base.graph
    BB = direct_product(B, B)
    diag = diagonal_embedding(B, BB)
    square = Certificate(BB, Verdict.NOT_COVER, SupergraphOfNonCover(diag.mapping, diag.induced), (base,))
    fold = product_hom(lemma11_hom(p, q, m, s), lemma11_hom(p, q, n, t), source=BB)
    return Certificate(fold.target, Verdict.NOT_COVER, HomOntoTarget(fold.mapping), (square,))


def certify_theorem13(G: Graph, H: Graph, m: int, n: int, bound_edges: int = DEFAULT_EDGE_BOUND) -> Certificate:
    """M_m(G) x M_n(H): COVER iff G or H is bipartite."""
    MG, MH = mycielskian(G, m), mycielskian(H, n)
    P = direct_product(MG, MH)
    bg, bh = is_bipartite(G), is_bipartite(H)
    if bg.bipartite or bh.bipartite:
        side, base, level = ("left", G, m) if bg.bipartite else ("right", H, n)
        factor = MG if side == "left" else MH
        proj = projection(P, MG, MH, side)
        sub = certify_theorem8(base, level, bound_edges, M=factor)
        return Certificate(P, Verdict.COVER, HomIntoCover(proj.mapping), (sub,))
    lg = mycielskian_monotone_embedding(cycle_embedding(G, bg.odd_cycle), m, target=MG)
    lh = mycielskian_monotone_embedding(cycle_embedding(H, bh.odd_cycle), n, target=MH)
    emb = product_embedding(lg, lh, target=P)
    s, t = (len(bg.odd_cycle) - 1) // 2, (len(bh.odd_cycle) - 1) // 2
    sub = certify_theorem12(m, s, n, t, bound_edges)
    return Certificate(P, Verdict.NOT_COVER, SupergraphOfNonCover(emb.mapping, emb.induced), (sub,))


class Corollary15Result(NamedTuple):
    value: Fraction
    product_bounds: ChiCBounds
    factor_bounds: tuple
    certificate: Certificate
    factor_certificates: tuple

    @property
    def holds(self) -> bool:
        factors = [b.exact for b in self.factor_bounds]
        return None not in factors and self.value == min(factors)


def _four_coloring(F: Graph) -> CircularColoring:
    chi, coloring = chromatic_number(F)
    return coloring_as_circular(coloring)


def certify_corollary15(m: int, s: int, n: int, t: int, bound_edges: int = DEFAULT_EDGE_BOUND, rerun_exhaustion: bool = True) -> Corollary15Result:
    """chi_c(M_m(C_{2s+1}) x M_n(C_{2t+1})) = min of the factors' chi_c (all equal 4), s, t > 1."""
    if s <= 1 or t <= 1:
        raise InvalidParameterError(f"s and t must exceed 1, got s={s}, t={t}")
    cert = certify_theorem12(m, s, n, t, bound_edges)
    P = cert.graph
    A = mycielskian(build_cycle(2 * s + 1), m)
    B = mycielskian(build_cycle(2 * t + 1), n)
    proj = projection(P, A, B, "left")
    product_bounds = chi_c_bounds_certificate(P, cert, (proj, _four_coloring(A)), rerun_exhaustion)
    factor_bounds = []
    factor_certs = []
    for level, size in ((m, 2 * s + 1), (n, 2 * t + 1)):
        fc = certify_theorem7(level, size, bound_edges)
        factor_certs.append(fc)
        factor_bounds.append(chi_c_bounds_certificate(fc.graph, fc, _four_coloring(fc.graph), rerun_exhaustion))
    if product_bounds.exact is None:
        raise AssertionError(f"product bounds did not meet: [{product_bounds.lower}, {product_bounds.upper}]")
    return Corollary15Result(product_bounds.exact, product_bounds, tuple(factor_bounds), cert, tuple(factor_certs))


class Theorem6Report(NamedTuple):
    case: int | None
    certificate: Certificate | None
    detail: str


def check_theorem6(G: Graph, H: Graph) -> Theorem6Report:
    """Case 1: both girths 3 gives a triangle in G x H. Case 2: g(G) > 3 >= chi(H) (or swapped)."""
    from .graph import find_triangle

    P = direct_product(G, H)
    gG, gH = girth(G), girth(H)
    if gG == 3 and gH == 3:
        ta, tb = find_triangle(G), find_triangle(H)
        tri = tuple(Pair(a, b) for a, b in zip(ta, tb))
        return Theorem6Report(1, Certificate(P, Verdict.NOT_COVER, TrianglePresent(tri)), "both factors have girth 3")
    for big_girth, other, side in ((gG, H, "right"), (gH, G, "left")):
        if big_girth > 3 and other.order <= 64:
            chi, coloring = chromatic_number(other)
            if chi <= 3:
                pulled = {v: coloring[v.right if side == "right" else v.left] for v in P.vertices}
                detail = f"one factor has girth {big_girth} > 3 >= chi = {chi} of the other"
                return Theorem6Report(2, Certificate(P, Verdict.COVER, ChiGirthRule(pulled, girth(P))), detail)
    return Theorem6Report(None, None, "hypotheses of neither case hold")


# -- JSON --------------------------------------------------------------------------


def _map_to_json(mapping: dict, order) -> list:
    return [[label_to_json(v), label_to_json(mapping[v])] for v in order if v in mapping]


def _map_from_json(pairs, where) -> dict:
    if not isinstance(pairs, list):
        raise FormatError("map must be a list of [source, target] pairs", position=where)
    out = {}
    for k, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError("map entry must be a [source, target] pair", position=f"{where}[{k}]")
        out[label_from_json(pair[0], f"{where}[{k}][0]")] = label_from_json(pair[1], f"{where}[{k}][1]")
    return out


def _coloring_to_json(coloring: dict, order) -> list:
    return [[label_to_json(v), coloring[v]] for v in order if v in coloring]


def _coloring_from_json(pairs, where) -> dict:
    if not isinstance(pairs, list):
        raise FormatError("coloring must be a list of [vertex, color] pairs", position=where)
    out = {}
    for k, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[1], int) or isinstance(pair[1], bool):
            raise FormatError("coloring entry must be a [vertex, integer color] pair", position=f"{where}[{k}]")
        out[label_from_json(pair[0], f"{where}[{k}][0]")] = pair[1]
    return out


def _girth_json(g):
    return "inf" if g == INFINITY else g


def _girth_from(g):
    return INFINITY if g == "inf" else g


def _step_to_json(cert: Certificate) -> dict:
    step = cert.step
    kind = type(step).__name__
    order = cert.graph.vertices
    if isinstance(step, ExactWitness):
        body = {"arcs": [[label_to_json(a), label_to_json(b)] for a, b in step.arcs]}
    elif isinstance(step, ExactExhaustion):
        body = {"bound_edges": step.bound_edges, "edges": step.edges, "override": step.override}
    elif isinstance(step, ChiGirthRule):
        body = {"coloring": _coloring_to_json(step.coloring, order), "girth": _girth_json(step.girth)}
    elif isinstance(step, ChicGirthRule):
        c = step.coloring
        body = {"k": c.k, "d": c.d, "coloring": _coloring_to_json(c.assignment, order), "girth": _girth_json(step.girth)}
    elif isinstance(step, HomIntoCover):
        body = {"map": _map_to_json(step.mapping, order)}
    elif isinstance(step, SupergraphOfNonCover):
        body = {"map": _map_to_json(step.mapping, cert.subs[0].graph.vertices), "induced": step.induced}
    elif isinstance(step, HomOntoTarget):
        body = {"map": _map_to_json(step.mapping, cert.subs[0].graph.vertices)}
    elif isinstance(step, TrianglePresent):
        body = {"vertices": [label_to_json(v) for v in step.vertices]}
    else:
        raise TypeError(f"unknown step {step!r}")
    return {"kind": kind, **body}


def _node_to_obj(cert: Certificate, graphs: dict) -> dict:
    digest = cert.graph.digest()
    graphs.setdefault(digest, graph_to_obj(cert.graph))
    return {
        "conclusion": {"graph": digest, "name": cert.graph.name, "verdict": cert.verdict.value},
        "step": _step_to_json(cert),
        "subs": [_node_to_obj(s, graphs) for s in cert.subs],
    }


def certificate_to_obj(cert: Certificate) -> dict:
    graphs = {}
    root = _node_to_obj(cert, graphs)
    root["graphs"] = graphs
    return root


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_obj(cert), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _step_from_json(obj, where):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError("step must be an object with a 'kind'", position=where)
    kind = obj["kind"]
    try:
        if kind == "ExactWitness":
            return ExactWitness(tuple((label_from_json(a), label_from_json(b)) for a, b in obj["arcs"]))
        if kind == "ExactExhaustion":
            return ExactExhaustion(int(obj["bound_edges"]), int(obj["edges"]), bool(obj.get("override", False)))
        if kind == "ChiGirthRule":
            return ChiGirthRule(_coloring_from_json(obj["coloring"], where + ".coloring"), _girth_from(obj["girth"]))
        if kind == "ChicGirthRule":
            coloring = CircularColoring(int(obj["k"]), int(obj["d"]), _coloring_from_json(obj["coloring"], where + ".coloring"))
            return ChicGirthRule(coloring, _girth_from(obj["girth"]))
        if kind == "HomIntoCover":
            return HomIntoCover(_map_from_json(obj["map"], where + ".map"))
        if kind == "SupergraphOfNonCover":
            return SupergraphOfNonCover(_map_from_json(obj["map"], where + ".map"), bool(obj.get("induced", False)))
        if kind == "HomOntoTarget":
            return HomOntoTarget(_map_from_json(obj["map"], where + ".map"))
        if kind == "TrianglePresent":
            return TrianglePresent(tuple(label_from_json(v) for v in obj["vertices"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed {kind} step: {exc!r}", position=where) from None
    raise FormatError(f"unknown step kind {kind!r}", position=where)


def _node_from_obj(obj, graphs, cache, where) -> Certificate:
    try:
        conclusion = obj["conclusion"]
        digest = conclusion["graph"]
        verdict = Verdict(conclusion["verdict"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("malformed conclusion", position=where) from None
    if digest not in graphs:
        raise FormatError(f"dangling graph reference {digest[:12]}...", position=where + ".conclusion")
    if digest not in cache:
        cache[digest] = graph_from_obj(graphs[digest], name=conclusion.get("name"))
    subs = obj.get("subs", [])
    if not isinstance(subs, list):
        raise FormatError("'subs' must be a list", position=where)
    return Certificate(
        cache[digest],
        verdict,
        _step_from_json(obj.get("step"), where + ".step"),
        tuple(_node_from_obj(s, graphs, cache, f"{where}.subs[{k}]") for k, s in enumerate(subs)),
    )


def certificate_from_obj(obj) -> Certificate:
    if not isinstance(obj, dict) or not isinstance(obj.get("graphs"), dict):
        raise FormatError("certificate must be an object with a 'graphs' table", position="$")
    return _node_from_obj(obj, obj["graphs"], {}, "$")


def certificate_from_json(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", position=exc.pos) from None
    return certificate_from_obj(obj)
