"""Graph serialization: canonical JSON (read/write), graph6 (read), DOT (write)."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FormatError
from .graph import ROOT, Graph, Label, Myc, Pair, Plain, Root


def label_to_json(label: Label):
    if isinstance(label, Plain):
        return {"plain": label.index}
    if isinstance(label, Myc):
        return {"myc": [label.level, label.pos]}
    if isinstance(label, Root):
        return "root"
    if isinstance(label, Pair):
        return {"pair": [label_to_json(label.left), label_to_json(label.right)]}
    raise TypeError(f"not a vertex label: {label!r}")


def label_from_json(obj, where="label") -> Label:
    if obj == "root":
        return ROOT
    if isinstance(obj, dict) and len(obj) == 1:
        (key, val), = obj.items()
        if key == "plain" and _is_nat(val):
            return Plain(val)
        if key == "myc" and isinstance(val, list) and len(val) == 2 and all(_is_nat(x) for x in val):
            return Myc(val[0], val[1])
        if key == "pair" and isinstance(val, list) and len(val) == 2:
            return Pair(label_from_json(val[0], f"{where}.pair[0]"), label_from_json(val[1], f"{where}.pair[1]"))
    raise FormatError(f"invalid vertex label {obj!r}", position=where)


def _is_nat(x):
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def graph_to_obj(G: Graph) -> dict:
    return {
        "vertices": [label_to_json(v) for v in G.vertices],
        "edges": [[label_to_json(a), label_to_json(b)] for a, b in G.edges],
    }


def to_json(G: Graph) -> str:
    """Canonical JSON: vertex order as constructed, edges in index order."""
    return json.dumps(graph_to_obj(G), separators=(",", ":"), ensure_ascii=False)


def graph_from_obj(obj, name=None) -> Graph:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise FormatError("graph JSON must be an object with 'vertices' and 'edges'", position="$")
    if not isinstance(obj["vertices"], list) or not isinstance(obj["edges"], list):
        raise FormatError("'vertices' and 'edges' must be arrays", position="$")
    vertices = [label_from_json(v, f"$.vertices[{i}]") for i, v in enumerate(obj["vertices"])]
    known = set()
    for i, v in enumerate(vertices):
        if v in known:
            raise FormatError(f"duplicate vertex label {v}", position=f"$.vertices[{i}]")
        known.add(v)
    edges = []
    seen = set()
    for k, e in enumerate(obj["edges"]):
        where = f"$.edges[{k}]"
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError("edge must be a two-element array", position=where)
        a = label_from_json(e[0], where + "[0]")
        b = label_from_json(e[1], where + "[1]")
        if a not in known or b not in known:
            raise FormatError("edge endpoint is not a listed vertex", position=where)
        if a == b:
            raise FormatError("loops are not allowed", position=where)
        key = frozenset((a, b))
        if key in seen:
            raise FormatError("parallel edge", position=where)
        seen.add(key)
        edges.append((a, b))
    return Graph(vertices, edges, name=obj.get("name", name))


def from_json(text: str, name=None) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", position=exc.pos) from None
    return graph_from_obj(obj, name=name)


def from_graph6(data: str | bytes, name=None) -> Graph:
    """Decode a graph6 string (optional ``>>graph6<<`` header) to a Plain-labelled graph."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    offset = 0
    if data.startswith(b">>graph6<<"):
        offset = 10
    body = data[offset:]
    if not body:
        raise FormatError("empty graph6 string", position=offset)
    for k, ch in enumerate(body):
        if not 63 <= ch <= 126:
            raise FormatError(f"byte {ch!r} outside graph6 range 63..126", position=offset + k)
    vals = [ch - 63 for ch in body]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise FormatError("truncated graph6 size field", position=offset)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise FormatError(f"graph6 body for n={n} needs {need} bytes, got {len(vals) - pos}", position=offset + pos)
    bits = []
    for v in vals[pos:]:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits", position=offset + len(vals) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    vs = [Plain(i) for i in range(n)]
    return Graph.from_index_edges(vs, edges, name=name)


def to_dot(G: Graph, name: str | None = None) -> str:
    title = name or G.name or "G"
    lines = [f"graph {json.dumps(title, ensure_ascii=False)} {{"]
    for v in G.vertices:
        lines.append(f"  {json.dumps(str(v), ensure_ascii=False)};")
    for a, b in G.edges:
        lines.append(f"  {json.dumps(str(a), ensure_ascii=False)} -- {json.dumps(str(b), ensure_ascii=False)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> Graph:
    """Read a graph file; ``.g6`` / ``.graph6`` are graph6, everything else canonical JSON."""
    path = Path(path)
    if path.suffix in (".g6", ".graph6"):
        return from_graph6(path.read_bytes(), name=path.stem)
    return from_json(path.read_text(), name=path.stem)


def save_graph(G: Graph, path: str | Path) -> None:
    Path(path).write_text(to_json(G) + "\n")
