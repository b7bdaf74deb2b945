"""Circular chromatic number: (k, d)-coloring search and the minimum-imbalance formula.

All values are exact ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import kernels
from .errors import CapacityError, InvalidParameterError, ValidationError
from .graph import DEFAULT_VERTEX_BOUND, Graph, chromatic_number, girth
from .orientations import (
    DEFAULT_CYCLE_BUDGET,
    AcyclicOrientation,
    _unpermute,
    cycle_traversals,
    search_order,
    simple_cycles,
)

IMBALANCE_EDGE_BOUND = 16


@dataclass(frozen=True)
class CircularColoring:
    """Colors in 0..k-1; adjacent colors must satisfy d <= |c(u) - c(v)| <= k - d."""

    k: int
    d: int
    assignment: dict = field(hash=False)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.k, self.d)

    def check(self, G: Graph) -> str | None:
        if self.d < 1 or self.k < 1:
            return f"invalid parameters k={self.k}, d={self.d}"
        if G.size and self.k < 2 * self.d:
            return f"k={self.k} < 2d={2 * self.d}"
        for v in G.vertices:
            c = self.assignment.get(v)
            if c is None:
                return f"vertex {v} is uncolored"
            if not 0 <= c < self.k:
                return f"color {c} of {v} is outside 0..{self.k - 1}"
        for a, b in G.edges:
            diff = abs(self.assignment[a] - self.assignment[b])
            if not self.d <= diff <= self.k - self.d:
                return f"edge {a}{b}: colors {self.assignment[a]}, {self.assignment[b]} are closer than {self.d} on the {self.k}-circle"
        return None


def has_kd_coloring(G: Graph, k: int, d: int, max_vertices: int = DEFAULT_VERTEX_BOUND) -> CircularColoring | None:
    """A (k, d)-coloring of G, or None after exhaustive search.

    Most-constrained-vertex backtracking over bitmask domains; the first
    vertex is fixed to color 0 since rotating all colors preserves validity.
    """
    if not (d >= 1 and k >= 2 * d):
        raise InvalidParameterError(f"need k >= 2d >= 2, got k={k}, d={d}")
    n = G.order
    if n > max_vertices:
        raise CapacityError(f"has_kd_coloring: {n} vertices exceeds bound {max_vertices}", size=n, bound=max_vertices)
    if n == 0:
        return CircularColoring(k, d, {})
    full = (1 << k) - 1
    # compat[c]: colors allowed next to c
    compat = [sum(1 << x for x in range(k) if d <= abs(x - c) <= k - d) for c in range(k)]
    adj = G.adj
    color = [-1] * n
    domain = [full] * n

    def pick():
        best, best_key = -1, None
        for v in range(n):
            if color[v] < 0:
                key = (bin(domain[v]).count("1"), -len(adj[v]), v)
                if best_key is None or key < best_key:
                    best, best_key = v, key
        return best

    def rec(first):
        v = pick()
        if v < 0:
            return True
        dom = 1 if first else domain[v]
        while dom:
            low = dom & -dom
            c = low.bit_length() - 1
            dom ^= low
            saved = []
            ok = True
            for w in adj[v]:
                if color[w] < 0:
                    nd = domain[w] & compat[c]
                    saved.append((w, domain[w]))
                    domain[w] = nd
                    if not nd:
                        ok = False
                        break
            color[v] = c
            if ok and rec(False):
                return True
            color[v] = -1
            for w, old in saved:
                domain[w] = old
        return False

    if not rec(True):
        return None
    coloring = CircularColoring(k, d, {G.vertices[v]: color[v] for v in range(n)})
    problem = coloring.check(G)
    if problem is not None:
        raise AssertionError(f"search produced an invalid coloring: {problem}")
    return coloring


class ChiCResult(NamedTuple):
    value: Fraction
    coloring: CircularColoring
    refuted: tuple  # (k, d) pairs below value shown infeasible, ascending k/d


def candidate_fractions(chi: int, n: int) -> list[tuple[int, int]]:
    """Reduced (k, d) with chi-1 < k/d <= chi, k >= 2d and k <= n, ascending by k/d."""
    out = {(chi, 1)}
    for k in range(1, n + 1):
        for d in range(1, k + 1):
            if gcd(k, d) == 1 and k >= 2 * d and (chi - 1) * d < k <= chi * d:
                out.add((k, d))
    return sorted(out, key=lambda kd: Fraction(kd[0], kd[1]))


def chi_c_exact(G: Graph, max_vertices: int = DEFAULT_VERTEX_BOUND) -> ChiCResult:
    """Exact circular chromatic number by scanning (k, d) upward inside (chi-1, chi].

    Completeness relies on chi_c being attained by some k/d with k <= |V|.
    """
    if G.order > max_vertices:
        raise CapacityError(f"chi_c_exact: {G.order} vertices exceeds bound {max_vertices}", size=G.order, bound=max_vertices)
    if G.order == 0:
        return ChiCResult(Fraction(0), CircularColoring(1, 1, {}), ())
    if G.size == 0:
        return ChiCResult(Fraction(1), CircularColoring(1, 1, {v: 0 for v in G.vertices}), ())
    chi, _ = chromatic_number(G, max_vertices)
    refuted = []
    for k, d in candidate_fractions(chi, G.order):
        coloring = has_kd_coloring(G, k, d, max_vertices)
        if coloring is not None:
            return ChiCResult(Fraction(k, d), coloring, tuple(refuted))
        refuted.append((k, d))
    raise AssertionError("no (chi, 1)-coloring found for a chi-colorable graph")


class ImbalanceResult(NamedTuple):
    value: Fraction
    orientation: AcyclicOrientation
    nodes: int


def chi_c_via_imbalance(G: Graph, max_edges: int = IMBALANCE_EDGE_BOUND, cycle_budget: int = DEFAULT_CYCLE_BUDGET) -> ImbalanceResult:
    """Minimum imbalance over all acyclic orientations (2 for forests by convention)."""
    if G.size > max_edges:
        raise CapacityError(f"chi_c_via_imbalance: {G.size} edges exceeds bound {max_edges}", size=G.size, bound=max_edges)
    if G.size == 0:
        return ImbalanceResult(Fraction(2), AcyclicOrientation(G, ()), 1)
    cycles = simple_cycles(G, cycle_budget)
    order = search_order(G)
    edges = [G.index_edges[k] for k in order]
    num, den, dirs, nodes = kernels.min_imbalance(G.order, edges, cycle_traversals(G, cycles, order))
    return ImbalanceResult(Fraction(num, den), _unpermute(G, order, dirs), nodes)


def pull_back_coloring(coloring: CircularColoring, hom) -> CircularColoring:
    """Compose a circular coloring of hom.target with hom, giving one of hom.source."""
    return CircularColoring(coloring.k, coloring.d, {v: coloring.assignment[hom.mapping[v]] for v in hom.source.vertices})


class ChiCBounds(NamedTuple):
    lower: Fraction
    upper: Fraction
    lower_reason: str
    upper_coloring: CircularColoring

    @property
    def exact(self) -> Fraction | None:
        return self.lower if self.lower == self.upper else None


def chi_c_bounds_certificate(G: Graph, lower_evidence=None, upper_evidence=None, rerun_exhaustion: bool = True) -> ChiCBounds:
    """Verified bracket on chi_c(G) from certificates, without a (k, d) scan.

    ``lower_evidence``: a NOT_COVER :class:`~covergraph.certify.Certificate`
    for G, giving chi_c >= girth(G). With None the trivial bound (2 when G
    has an edge) is used.

    ``upper_evidence``: a :class:`CircularColoring` of G, or a pair
    ``(hom, coloring)`` where ``hom`` maps G into a graph that ``coloring``
    colors.
    """
    from .certify import Verdict, validate

    if G.size == 0:
        raise InvalidParameterError("bounds certificate needs a graph with at least one edge")
    if lower_evidence is None:
        lower, reason = Fraction(2), "graph has an edge"
    else:
        if lower_evidence.verdict is not Verdict.NOT_COVER:
            raise ValidationError("lower-bound evidence must conclude NOT_COVER")
        report = validate(lower_evidence, G, rerun_exhaustion=rerun_exhaustion)
        if not report.ok:
            raise ValidationError(f"lower-bound certificate invalid at {report.locus}: {report.reason}")
        g = girth(G)
        lower, reason = Fraction(g), f"not a cover graph and girth {g}"
    if upper_evidence is None:
        raise InvalidParameterError("upper-bound evidence is required")
    if isinstance(upper_evidence, CircularColoring):
        coloring = upper_evidence
    else:
        hom, target_coloring = upper_evidence
        ok, bad = hom.verify()
        if not ok or hom.source != G:
            raise ValidationError(f"upper-bound homomorphism does not verify from G (violation {bad})")
        problem = target_coloring.check(hom.target)
        if problem is not None:
            raise ValidationError(f"target coloring invalid: {problem}")
        coloring = pull_back_coloring(target_coloring, hom)
    problem = coloring.check(G)
    if problem is not None:
        raise ValidationError(f"upper-bound coloring invalid: {problem}")
    upper = coloring.ratio
    if lower > upper:
        raise ValidationError(f"inconsistent evidence: lower {lower} exceeds upper {upper}")
    return ChiCBounds(lower, upper, reason, coloring)


def coloring_as_circular(coloring: dict) -> CircularColoring:
    """A proper k-coloring is a (k, 1)-coloring."""
    k = max(coloring.values(), default=0) + 1
    return CircularColoring(max(k, 2), 1, dict(coloring))
