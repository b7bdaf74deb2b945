"""``covergraph`` command line.

Exit codes: 0 success, 1 a computed verdict contradicts a theorem,
2 capacity bound hit, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__, kernels
from .certify import (
    Verdict,
    certificate_from_json,
    certificate_to_json,
    certify_corollary15,
    certify_exact,
    certify_theorem7,
    certify_theorem8,
    certify_theorem12,
    certify_theorem13,
    validate,
)
from .circular import chi_c_bounds_certificate, chi_c_exact, chi_c_via_imbalance, coloring_as_circular
from .constructions import direct_product, mycielskian
from .errors import CapacityError, CoverGraphError, FormatError
from .graph import DEFAULT_VERTEX_BOUND, Graph, build_standard, chromatic_number, from_edge_list, girth
from .hom import Homomorphism, find_hom, lemma11_hom, sigma_map, tau_map, verify_hom
from .io import from_json, graph_to_obj, label_from_json, label_to_json, load_graph, to_dot
from .orientations import (
    DEFAULT_CYCLE_BUDGET,
    DEFAULT_EDGE_BOUND,
    AcyclicOrientation,
    d_min,
    dependent_arcs,
    hasse_from_orientation,
    imbalance,
    is_cover_exact,
    poset_from_obj,
    poset_to_obj,
)

EXIT_OK, EXIT_CONTRADICTION, EXIT_CAPACITY, EXIT_INPUT = 0, 1, 2, 3


class Contradiction(CoverGraphError):
    """A verified verdict disagrees with a proved statement."""


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    bound_edges: int = DEFAULT_EDGE_BOUND
    vertex_bound: int = DEFAULT_VERTEX_BOUND
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    workers: int = 1
    fmt: str = "text"
    seed: int = 0
    rerun_exhaustion: bool = True

    def __post_init__(self):
        for name in ("bound_edges", "vertex_bound", "cycle_budget", "workers"):
            if getattr(self, name) < 1:
                raise argparse.ArgumentTypeError(f"{name} must be positive")
        if self.fmt not in ("text", "json", "dot"):
            raise argparse.ArgumentTypeError(f"unknown format {self.fmt!r}")

    def echo(self) -> dict:
        # worker count is excluded so parallel and serial runs print the same bytes
        out = asdict(self)
        del out["workers"]
        return out


# -- graph arguments ---------------------------------------------------------------

_SHORT = {"C": "cycle", "K": "complete", "P": "path", "E": "edgeless", "S": "star"}


def parse_graph(spec: str) -> Graph:
    """A file (.json, .g6), a builtin like ``C5``/``K4``/``petersen``, or ``kind:args``."""
    p = Path(spec)
    if p.is_file():
        return load_graph(p)
    m = re.fullmatch(r"([CKPES])_?(\d+)", spec)
    if m:
        return build_standard(_SHORT[m.group(1)], int(m.group(2)))
    m = re.fullmatch(r"M(\d+)\((.+)\)", spec)
    if m:
        return mycielskian(parse_graph(m.group(2)), int(m.group(1)))
    kind, _, args = spec.partition(":")
    if kind in ("cycle", "complete", "path", "edgeless", "star", "petersen"):
        params = [int(a) for a in args.split(",") if a]
        return build_standard(kind, *params)
    raise FormatError(f"no such file and not a builtin graph: {spec!r}", position=spec)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}", position=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc.msg}", position=exc.pos) from None


def _fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _graph_summary(G: Graph) -> dict:
    g = girth(G)
    return {"name": G.name, "vertices": G.order, "edges": G.size, "girth": "inf" if g == float("inf") else g, "digest": G.digest()}


# -- command implementations -----------------------------------------------------------
# each returns (result dict for JSON, text lines, exit code)


def cmd_construct(cfg: RunConfig, args):
    if args.what == "myc":
        G = mycielskian(parse_graph(args.base), args.m)
    else:
        G = direct_product(parse_graph(args.a), parse_graph(args.b))
    if args.output:
        Path(args.output).write_text(to_dot(G) if cfg.fmt == "dot" else json.dumps(graph_to_obj(G), sort_keys=True) + "\n")
    if cfg.fmt == "dot":
        return None, [to_dot(G).rstrip("\n")], EXIT_OK
    info = _graph_summary(G)
    result = {"graph": info, "json": graph_to_obj(G)}
    return result, [f"{G.name}: {G.order} vertices, {G.size} edges, girth {info['girth']}"], EXIT_OK


def _map_json(mapping, order):
    return [[label_to_json(v), label_to_json(mapping[v])] for v in order]


def cmd_hom(cfg: RunConfig, args):
    if args.what == "find":
        G, H = parse_graph(args.a), parse_graph(args.b)
        f = find_hom(G, H, cfg.vertex_bound)
        if f is None:
            return {"exists": False}, [f"no homomorphism {G.name} -> {H.name}"], EXIT_OK
        if args.output:
            Path(args.output).write_text(json.dumps(_map_json(f.mapping, G.vertices)) + "\n")
        lines = [f"homomorphism {G.name} -> {H.name}:"] + [f"  {v} -> {f.mapping[v]}" for v in G.vertices]
        return {"exists": True, "map": _map_json(f.mapping, G.vertices)}, lines, EXIT_OK
    if args.what == "verify":
        G, H = parse_graph(args.a), parse_graph(args.b)
        pairs = _load_json(args.map)
        if not isinstance(pairs, list):
            raise FormatError("map JSON must be a list of [source, target] pairs", position="$")
        mapping = {}
        for k, pair in enumerate(pairs):
            if not isinstance(pair, list) or len(pair) != 2:
                raise FormatError("map entry must be a pair", position=f"$[{k}]")
            mapping[label_from_json(pair[0], f"$[{k}][0]")] = label_from_json(pair[1], f"$[{k}][1]")
        ok, bad = verify_hom(Homomorphism(G, H, mapping))
        if ok:
            return {"valid": True}, ["valid homomorphism"], EXIT_OK
        edge = f"{bad[0]}{bad[1]}"
        return {"valid": False, "violating_edge": [label_to_json(bad[0]), label_to_json(bad[1])]}, [f"invalid: edge {edge} is not preserved"], EXIT_INPUT
    p, q, m, s = args.p, args.q, args.m, args.s
    checks = {"sigma": sigma_map(p, m, q), "tau": tau_map(m, q, s), "tau_sigma": lemma11_hom(p, q, m, s)}
    result = {name: verify_hom(f)[0] for name, f in checks.items()}
    lines = [f"{name}: {f.source.name} -> {f.target.name} {'verified' if result[name] else 'FAILED'}" for name, f in checks.items()]
    code = EXIT_OK if all(result.values()) else EXIT_CONTRADICTION
    return result, lines, code


def cmd_cover(cfg: RunConfig, args):
    G = parse_graph(args.graph)
    if args.what == "decide":
        v = is_cover_exact(G, cfg.bound_edges, cfg.workers)
        verdict = "COVER" if v.is_cover else "NOT_COVER"
        result = {"graph": _graph_summary(G), "verdict": verdict}
        lines = [f"{G.name}: {verdict}"]
        if v.is_cover:
            result["orientation"] = [[label_to_json(a), label_to_json(b)] for a, b in v.orientation.label_arcs()]
            lines.append("witness orientation: " + " ".join(f"{a}->{b}" for a, b in v.orientation.label_arcs()))
        return result, lines, EXIT_OK
    if args.what == "dmin":
        r = d_min(G, cfg.bound_edges, cfg.workers)
        arcs = r.orientation.label_arcs()
        deps = dependent_arcs(r.orientation)
        result = {
            "graph": _graph_summary(G),
            "d_min": r.value,
            "orientation": [[label_to_json(a), label_to_json(b)] for a, b in arcs],
        }
        return result, [f"{G.name}: d_min = {r.value}", f"{len(deps)} dependent arc(s) in the optimal orientation"], EXIT_OK
    v = is_cover_exact(G, cfg.bound_edges, cfg.workers)
    if not v.is_cover:
        return {"graph": _graph_summary(G), "verdict": "NOT_COVER"}, [f"{G.name} is not a cover graph; no poset"], EXIT_OK
    P = hasse_from_orientation(v.orientation)
    obj = poset_to_obj(P)
    if args.output:
        Path(args.output).write_text(json.dumps(obj, sort_keys=True) + "\n")
    return {"poset": obj}, [f"poset on {len(P.elements)} elements with {len(P.covers)} cover relations"], EXIT_OK


def cmd_chic(cfg: RunConfig, args):
    G = parse_graph(args.graph)
    if args.method == "kd":
        r = chi_c_exact(G, cfg.vertex_bound)
        c = r.coloring
        result = {"chi_c": _fraction(r.value), "k": c.k, "d": c.d, "coloring": [[label_to_json(v), c.assignment[v]] for v in G.vertices], "refuted": [list(kd) for kd in r.refuted]}
        lines = [f"chi_c({G.name}) = {_fraction(r.value)}", f"witness ({c.k},{c.d})-coloring; refuted {len(r.refuted)} smaller ratio(s)"]
    elif args.method == "imbalance":
        r = chi_c_via_imbalance(G, cfg.bound_edges, cfg.cycle_budget)
        arcs = r.orientation.label_arcs()
        result = {"chi_c": _fraction(r.value), "orientation": [[label_to_json(a), label_to_json(b)] for a, b in arcs]}
        lines = [f"min imbalance({G.name}) = {_fraction(r.value)}"]
    else:
        cert = certify_exact(G, cfg.bound_edges)
        lower = cert if cert.verdict is Verdict.NOT_COVER else None
        _, coloring = chromatic_number(G, cfg.vertex_bound)
        b = chi_c_bounds_certificate(G, lower, coloring_as_circular(coloring), cfg.rerun_exhaustion)
        exact = b.exact
        result = {"lower": _fraction(b.lower), "upper": _fraction(b.upper), "lower_reason": b.lower_reason, "exact": None if exact is None else _fraction(exact)}
        lines = [f"{_fraction(b.lower)} <= chi_c({G.name}) <= {_fraction(b.upper)}  ({b.lower_reason})"]
    if args.output:
        Path(args.output).write_text(json.dumps(result, sort_keys=True) + "\n")
    return result, lines, EXIT_OK


def _write_cert(cert, path):
    if path:
        Path(path).write_text(certificate_to_json(cert))


def _cert_report(cert, cfg, expected: Verdict | None = None):
    report = validate(cert, rerun_exhaustion=cfg.rerun_exhaustion)
    result = {
        "graph": _graph_summary(cert.graph),
        "verdict": cert.verdict.value,
        "rule": cert.kind,
        "valid": report.ok,
        "exhaustive_components": [[n, e] for n, e in cert.exhaustive_components()],
    }
    lines = [f"{cert.graph.name}: {cert.verdict.value} via {cert.kind} ({'validated' if report.ok else 'INVALID at ' + report.locus})"]
    for name, edges in cert.exhaustive_components():
        lines.append(f"  exhaustive component: {name} ({edges} edges)")
    if not report.ok:
        raise Contradiction(f"freshly built certificate failed validation at {report.locus}: {report.reason}")
    if expected is not None and cert.verdict is not expected:
        raise Contradiction(f"{cert.graph.name}: computed {cert.verdict.value}, theorem says {expected.value}")
    return result, lines


def cmd_certify(cfg: RunConfig, args):
    what = args.what
    if what == "validate":
        cert = certificate_from_json(Path(args.cert).read_text() if Path(args.cert).is_file() else _missing(args.cert))
        G = parse_graph(args.graph) if args.graph else None
        report = validate(cert, G, rerun_exhaustion=cfg.rerun_exhaustion)
        result = {"valid": report.ok, "locus": report.locus, "reason": report.reason, "verdict": cert.verdict.value}
        line = f"valid {cert.verdict.value} certificate for {cert.graph.name}" if report.ok else f"INVALID at {report.locus}: {report.reason}"
        return result, [line], EXIT_OK if report.ok else EXIT_INPUT
    if what == "thm7":
        cert = certify_theorem7(args.m, args.n, cfg.bound_edges)
        expected = Verdict.COVER if args.n % 2 == 0 else Verdict.NOT_COVER
    elif what == "thm8":
        G = parse_graph(args.graph)
        cert = certify_theorem8(G, args.m, cfg.bound_edges)
        expected = Verdict.COVER if is_bip(G) else Verdict.NOT_COVER
    elif what == "thm12":
        cert = certify_theorem12(args.m, args.s, args.n, args.t, cfg.bound_edges)
        expected = Verdict.NOT_COVER
    elif what == "thm13":
        G, H = parse_graph(args.a), parse_graph(args.b)
        cert = certify_theorem13(G, H, args.m, args.n, cfg.bound_edges)
        expected = Verdict.COVER if is_bip(G) or is_bip(H) else Verdict.NOT_COVER
    else:
        r = certify_corollary15(args.m, args.s, args.n, args.t, cfg.bound_edges, cfg.rerun_exhaustion)
        factors = [_fraction(b.exact) for b in r.factor_bounds]
        result = {"chi_c": _fraction(r.value), "factors": factors, "holds": r.holds, "product": _graph_summary(r.certificate.graph)}
        _write_cert(r.certificate, args.output)
        line = f"chi_c({r.certificate.graph.name}) = {_fraction(r.value)} = min({', '.join(factors)})"
        if not r.holds:
            raise Contradiction(line.replace(" = min", " != min"))
        return result, [line], EXIT_OK
    result, lines = _cert_report(cert, cfg, expected)
    _write_cert(cert, args.output)
    if args.output:
        lines.append(f"certificate written to {args.output}")
    return result, lines, EXIT_OK


def _missing(path):
    raise FormatError(f"no such certificate file {path}", position=path)


def is_bip(G):
    from .graph import is_bipartite

    return is_bipartite(G).bipartite


# -- table ---------------------------------------------------------------------------


def run_table_theorem7(max_m: int, max_n: int, bound_edges: int = DEFAULT_EDGE_BOUND, cert_dir: str | Path | None = None,
                       workers: int = 1, rerun_exhaustion: bool = True, min_n: int = 3) -> dict:
    """Verdict grid for M_m(C_n), m in 1..max_m, n in min_n..max_n.

    Each cell is certified and validated; capacity failures are SKIPPED.
    ``contradictions`` lists cells whose verdict breaks the parity law.
    """
    cells = [(m, n) for m in range(1, max_m + 1) for n in range(min_n, max_n + 1)]
    if cert_dir is not None:
        Path(cert_dir).mkdir(parents=True, exist_ok=True)

    def one(cell):
        m, n = cell
        try:
            cert = certify_theorem7(m, n, bound_edges)
        except CapacityError as exc:
            return {"m": m, "n": n, "verdict": "SKIPPED", "reason": str(exc)}
        report = validate(cert, rerun_exhaustion=rerun_exhaustion)
        entry = {"m": m, "n": n, "verdict": cert.verdict.value if report.ok else "INVALID", "rule": cert.kind, "edges": cert.graph.size}
        if cert_dir is not None:
            path = Path(cert_dir) / f"thm7_m{m}_n{n}.json"
            path.write_text(certificate_to_json(cert))
            entry["certificate"] = path.name
        return entry

    with ThreadPoolExecutor(max_workers=workers) as pool:
        entries = list(pool.map(one, cells))
    contradictions = []
    for e in entries:
        expected = "COVER" if e["n"] % 2 == 0 else "NOT_COVER"
        if e["verdict"] not in ("SKIPPED", expected):
            contradictions.append([e["m"], e["n"]])
    return {"bound_edges": bound_edges, "cells": entries, "contradictions": contradictions}


def cmd_table(cfg: RunConfig, args):
    table = run_table_theorem7(args.max_m, args.max_n, cfg.bound_edges, args.cert_dir, cfg.workers, cfg.rerun_exhaustion, args.min_n)
    ns = list(range(args.min_n, args.max_n + 1))
    width = max(len("NOT_COVER"), 7)
    lines = ["m\\n  " + "".join(f"{n:>{width + 1}}" for n in ns)]
    for m in range(1, args.max_m + 1):
        row = [e["verdict"] for e in table["cells"] if e["m"] == m]
        lines.append(f"{m:<5}" + "".join(f"{v:>{width + 1}}" for v in row))
    code = EXIT_CONTRADICTION if table["contradictions"] else EXIT_OK
    if table["contradictions"]:
        lines.append(f"CONTRADICTION in cells {table['contradictions']}")
    return table, lines, code


# -- property suite ----------------------------------------------------------------------


def random_graph(rng: random.Random, n: int) -> Graph:
    p = rng.uniform(0.2, 0.8)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edge_list(n, edges, name=f"R{n}")


def _random_acyclic(rng: random.Random, G: Graph) -> AcyclicOrientation:
    rank = list(range(G.order))
    rng.shuffle(rank)
    return AcyclicOrientation(G, tuple((a, b) if rank[a] < rank[b] else (b, a) for a, b in G.index_edges))


PROPERTIES = ("a_chi_below_girth", "b_chic_below_girth", "c_hom_into_cover", "d_subgraph_of_cover", "e_dependent_imbalance", "f_chic_bracket")


def run_property_suite(seed: int, sizes, samples: int = 500, girth_fn=girth, bound_edges: int = DEFAULT_EDGE_BOUND) -> dict:
    """Seeded cross-checks of the cover-graph implications on random small graphs.

    ``girth_fn`` is a fault-injection hook: pass a wrong girth to see the
    implications break.
    """
    sizes = list(sizes)
    report = {"seed": seed, "sizes": sizes, "samples": 0, "properties": {}}
    if not sizes:
        return report
    rng = random.Random(seed)
    stats = {p: {"checked": 0, "violations": 0, "counterexample": None} for p in PROPERTIES}

    def record(prop, ok, G, detail):
        s = stats[prop]
        s["checked"] += 1
        if not ok:
            s["violations"] += 1
            if s["counterexample"] is None:
                s["counterexample"] = {"graph": graph_to_obj(G), "detail": detail}

    cover_cache = {}

    def is_cover(H):
        key = (H.order, H.index_edges)
        if key not in cover_cache:
            cover_cache[key] = is_cover_exact(H, bound_edges).is_cover
        return cover_cache[key]

    for _ in range(samples):
        n = rng.choice(sizes)
        G = random_graph(rng, n)
        g = girth_fn(G)
        cover = is_cover(G)
        chi, _ = chromatic_number(G)
        if chi < g:
            record("a_chi_below_girth", cover, G, f"chi={chi} < girth={g} but not a cover graph")
        chic = chi_c_exact(G).value
        if chic < g:
            record("b_chic_below_girth", cover, G, f"chi_c={chic} < girth={g} but not a cover graph")
        H = random_graph(rng, rng.choice(sizes))
        f = find_hom(G, H)
        if f is not None and is_cover(H):
            record("c_hom_into_cover", cover, G, f"maps into cover graph {graph_to_obj(H)} but is not a cover graph")
        if cover and G.size:
            keep = [e for e in G.index_edges if rng.random() < 0.6]
            sub = from_edge_list(n, keep)
            record("d_subgraph_of_cover", is_cover(sub), sub, "subgraph of a cover graph is not a cover graph")
        if G.size:
            D = _random_acyclic(rng, G)
            if dependent_arcs(D):
                imb = imbalance(D)
                record("e_dependent_imbalance", imb >= g, G, f"orientation with dependent arcs has imbalance {imb} < girth {g}")
        if G.size:
            record("f_chic_bracket", chi - 1 < chic <= chi, G, f"chi={chi}, chi_c={chic}")
    for s in stats.values():
        if s["counterexample"] is not None:
            s["counterexample"]["detail"] = str(s["counterexample"]["detail"])
    report["samples"] = samples
    report["properties"] = stats
    return report


def cmd_props(cfg: RunConfig, args):
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()] if args.sizes else []
    girth_fn = (lambda G: girth(G) + 1) if args.inject_fault == "girth" else girth
    report = run_property_suite(cfg.seed, sizes, args.samples, girth_fn, cfg.bound_edges)
    lines = []
    failed = False
    for name, s in report["properties"].items():
        status = "PASS" if s["violations"] == 0 else "FAIL"
        failed |= s["violations"] > 0
        lines.append(f"{status} {name}: {s['checked']} checked, {s['violations']} violation(s)")
    if not report["properties"]:
        lines.append("no sizes given; nothing checked")
    return report, lines, EXIT_CONTRADICTION if failed else EXIT_OK


# -- export ------------------------------------------------------------------------------


def poset_to_dot(P) -> str:
    lines = ["digraph poset {"]
    for e in P.elements:
        lines.append(f'  "{e}";')
    for a, b in P.covers:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(artifact, fmt: str) -> str:
    """Canonical bytes for a graph, poset or certificate."""
    from .certify import Certificate
    from .orientations import PosetCertificate

    if isinstance(artifact, Graph):
        if fmt == "dot":
            return to_dot(artifact)
        if fmt == "json":
            return json.dumps(graph_to_obj(artifact), sort_keys=True) + "\n"
    elif isinstance(artifact, PosetCertificate):
        if fmt == "dot":
            return poset_to_dot(artifact)
        if fmt == "json":
            return json.dumps(poset_to_obj(artifact), sort_keys=True) + "\n"
    elif isinstance(artifact, Certificate):
        if fmt == "json":
            return certificate_to_json(artifact)
    else:
        raise TypeError(f"cannot export {type(artifact).__name__}")
    raise FormatError(f"format {fmt!r} is not available for {type(artifact).__name__}", position=fmt)


def _load_artifact(spec: str):
    p = Path(spec)
    if p.is_file() and p.suffix == ".json":
        obj = _load_json(spec)
        if isinstance(obj, dict) and "conclusion" in obj:
            from .certify import certificate_from_obj

            return certificate_from_obj(obj)
        if isinstance(obj, dict) and "covers" in obj:
            return poset_from_obj(obj)
        return from_json(p.read_text(), name=p.stem)
    return parse_graph(spec)


def cmd_export(cfg: RunConfig, args):
    art = _load_artifact(args.artifact)
    if args.poset:
        if not isinstance(art, Graph):
            raise FormatError("--poset needs a graph", position=args.artifact)
        v = is_cover_exact(art, cfg.bound_edges, cfg.workers)
        if not v.is_cover:
            raise FormatError(f"{art.name} is not a cover graph; no poset to export", position=args.artifact)
        art = hasse_from_orientation(v.orientation)
    fmt = "json" if cfg.fmt == "text" else cfg.fmt
    data = export(art, fmt)
    if args.output:
        Path(args.output).write_text(data)
        return None, [f"wrote {args.output}"], EXIT_OK
    return None, [data.rstrip("\n")], EXIT_OK


# -- parser ------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--bound-edges", type=int, default=argparse.SUPPRESS, help=f"exact-search edge bound (default {DEFAULT_EDGE_BOUND})")
    g.add_argument("--vertex-bound", type=int, default=argparse.SUPPRESS, help=f"exact coloring / hom vertex bound (default {DEFAULT_VERTEX_BOUND})")
    g.add_argument("--cycle-budget", type=int, default=argparse.SUPPRESS, help=f"simple-cycle enumeration budget (default {DEFAULT_CYCLE_BUDGET})")
    g.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="parallel workers (default 1)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites (default 0)")
    g.add_argument("--format", dest="fmt", choices=("text", "json", "dot"), default=argparse.SUPPRESS, help="output format (default text)")
    g.add_argument("--rerun-exhaustion", action=argparse.BooleanOptionalAction, default=argparse.SUPPRESS,
                   help="re-run exhaustive searches when validating (default on)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="covergraph", description="Cover graphs, Mycielskians, direct products and certificates.", parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, help_):
        return parent.add_parser(name, help=help_, parents=[common])

    c = sub.add_parser("construct", help="build Mycielskians and direct products").add_subparsers(dest="what", required=True)
    p = add(c, "myc", "generalized Mycielskian M_m(base)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--base", required=True, help="graph file or builtin (C5, K4, P4, E3, petersen, ...)")
    p.add_argument("-o", "--output")
    p = add(c, "product", "direct product A x B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")

    h = sub.add_parser("hom", help="graph homomorphisms").add_subparsers(dest="what", required=True)
    p = add(h, "find", "search for a homomorphism A -> B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p = add(h, "verify", "check a map file A -> B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("map")
    p = add(h, "lemma11", "verify the level-collapse and cycle-fold maps")
    for name in ("p", "q", "m", "s"):
        p.add_argument(name, type=int)

    v = sub.add_parser("cover", help="exact cover-graph decisions").add_subparsers(dest="what", required=True)
    for name, help_ in (("decide", "COVER / NOT_COVER with witness"), ("dmin", "minimum number of dependent arcs"), ("poset", "a poset whose Hasse diagram is the graph")):
        p = add(v, name, help_)
        p.add_argument("graph")
        if name == "poset":
            p.add_argument("-o", "--output")

    p = add(sub, "chic", "circular chromatic number")
    p.add_argument("graph")
    p.add_argument("--method", choices=("kd", "imbalance", "bounds"), default="kd")
    p.add_argument("-o", "--output", help="write the witness JSON here")

    ce = sub.add_parser("certify", help="build and validate certificates").add_subparsers(dest="what", required=True)
    p = add(ce, "thm7", "M_m(C_n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p = add(ce, "thm8", "M_m(G)")
    p.add_argument("graph")
    p.add_argument("m", type=int)
    p.add_argument("-o", "--output")
    for name, help_ in (("thm12", "M_m(C_2s+1) x M_n(C_2t+1)"), ("cor15", "chi_c of M_m(C_2s+1) x M_n(C_2t+1)")):
        p = add(ce, name, help_)
        for arg in ("m", "s", "n", "t"):
            p.add_argument(arg, type=int)
        p.add_argument("-o", "--output")
    p = add(ce, "thm13", "M_m(A) x M_n(B)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p = add(ce, "validate", "re-check a certificate file")
    p.add_argument("cert")
    p.add_argument("graph", nargs="?", help="optional graph the certificate must concern")

    t = sub.add_parser("table", help="verification tables").add_subparsers(dest="what", required=True)
    p = add(t, "thm7", "verdict grid for M_m(C_n)")
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--cert-dir", help="write one certificate file per cell")

    p = add(sub, "props", "seeded property suite on random small graphs")
    p.add_argument("--sizes", default="4,5,6,7", help="comma-separated vertex counts")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--inject-fault", choices=("girth",), help="deliberately perturb an invariant")

    p = add(sub, "export", "canonical DOT / JSON of a graph, poset or certificate")
    p.add_argument("artifact", help="graph spec or a graph / poset / certificate JSON file")
    p.add_argument("--poset", action="store_true", help="export the poset of a cover graph instead")
    p.add_argument("-o", "--output")
    return parser


COMMANDS = {
    "construct": cmd_construct,
    "hom": cmd_hom,
    "cover": cmd_cover,
    "chic": cmd_chic,
    "certify": cmd_certify,
    "table": cmd_table,
    "props": cmd_props,
    "export": cmd_export,
}


def _config(ns) -> RunConfig:
    inputs = [str(getattr(ns, k)) for k in ("graph", "a", "b", "base", "cert", "artifact") if getattr(ns, k, None) is not None]
    return RunConfig(
        command=" ".join(x for x in (ns.command, getattr(ns, "what", None)) if x),
        inputs=inputs,
        bound_edges=getattr(ns, "bound_edges", DEFAULT_EDGE_BOUND),
        vertex_bound=getattr(ns, "vertex_bound", DEFAULT_VERTEX_BOUND),
        cycle_budget=getattr(ns, "cycle_budget", DEFAULT_CYCLE_BUDGET),
        workers=getattr(ns, "workers", 1),
        fmt=getattr(ns, "fmt", "text"),
        seed=getattr(ns, "seed", 0),
        rerun_exhaustion=getattr(ns, "rerun_exhaustion", True),
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    out = sys.stdout
    try:
        cfg = _config(ns)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    try:
        result, lines, code = COMMANDS[ns.command](cfg, ns)
    except Contradiction as exc:
        print(f"CONTRADICTION: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CoverGraphError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.fmt == "json" and result is not None:
        out.write(json.dumps({"config": cfg.echo(), "result": result}, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
    else:
        if cfg.command in ("props", "table thm7"):
            out.write(f"# seed={cfg.seed} bound_edges={cfg.bound_edges}\n")
        out.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
