"""Instance file formats.

Text formats, one record per line:

* graph / digraph: header ``p n m`` (modulus, vertex count, edge count), then
  m lines ``u v`` with 1-indexed endpoints.  Line order assigns edge/arc ids
  0..m-1.  For digraphs the line means the arc u -> v.
* boundary: lines ``v beta``, one per vertex.
* weights: lines ``e w`` keyed by edge id.
* lists: lines ``e a b`` keyed by arc id.

Each format has a JSON mirror (detected by a leading ``{``); families are
JSON only.  Parsing is strict -- anything off-grammar raises FormatError --
and serialize(parse(x)) is byte-identical for canonical inputs.
"""

from __future__ import annotations

import json
from typing import Dict, List, Tuple

from .errors import FormatError
from .field import Modulus
from .flows import Boundary, Digraph, EdgeWeighting, ListAssignment
from .graph import Multigraph
from .zpn_linear import BasisFamily, GroupVec


def _lines(text: str) -> List[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def _ints(line: str, count: int, what: str) -> List[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"{what}: expected {count} fields, got {line!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"{what}: non-integer field in {line!r}") from None


def _parse_pairs(text: str, what: str) -> Tuple[int, int, List[Tuple[int, int]]]:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{what}: bad JSON ({exc})") from None
        try:
            p, n = int(data["p"]), int(data["n"])
            key = "arcs" if "arcs" in data else "edges"
            pairs = [(int(u), int(v)) for u, v in data[key]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{what}: malformed JSON payload ({exc})") from None
        return p, n, pairs
    lines = _lines(text)
    if not lines:
        raise FormatError(f"{what}: empty file")
    p, n, m = _ints(lines[0], 3, f"{what} header")
    if len(lines) - 1 != m:
        raise FormatError(f"{what}: header promises {m} lines, found {len(lines) - 1}")
    pairs = [tuple(_ints(ln, 2, what)) for ln in lines[1:]]
    return p, n, pairs


def parse_graph(text: str) -> Tuple[Multigraph, Modulus]:
    p, n, pairs = _parse_pairs(text, "graph")
    try:
        return Multigraph.from_pairs(n, pairs), Modulus(p)
    except ValueError as exc:
        raise FormatError(f"graph: {exc}") from None


def serialize_graph(g: Multigraph, mod: Modulus) -> str:
    out = [f"{mod.value} {g.n} {g.m}"]
    out += [f"{u} {v}" for _, u, v in g.edges]
    return "\n".join(out) + "\n"


def parse_digraph(text: str) -> Tuple[Digraph, Modulus]:
    p, n, pairs = _parse_pairs(text, "digraph")
    try:
        return Digraph.from_pairs(n, pairs), Modulus(p)
    except ValueError as exc:
        raise FormatError(f"digraph: {exc}") from None


def serialize_digraph(d: Digraph, mod: Modulus) -> str:
    out = [f"{mod.value} {d.n} {d.m}"]
    out += [f"{t} {h}" for _, t, h in d.arcs]
    return "\n".join(out) + "\n"


def graph_json(g: Multigraph, mod: Modulus) -> str:
    return json.dumps(
        {"p": mod.value, "n": g.n, "edges": [[u, v] for _, u, v in g.edges]},
        separators=(",", ":"),
    ) + "\n"


def digraph_json(d: Digraph, mod: Modulus) -> str:
    return json.dumps(
        {"p": mod.value, "n": d.n, "arcs": [[t, h] for _, t, h in d.arcs]},
        separators=(",", ":"),
    ) + "\n"


def parse_boundary(text: str, mod: Modulus) -> Boundary:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            vals = {int(v): int(b) for v, b in data["values"].items()}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"boundary: malformed JSON ({exc})") from None
    else:
        vals = {}
        for ln in _lines(text):
            v, b = _ints(ln, 2, "boundary")
            if v in vals:
                raise FormatError(f"boundary: vertex {v} listed twice")
            vals[v] = b
    try:
        return Boundary.of(vals, mod)
    except ValueError as exc:
        raise FormatError(f"boundary: {exc}") from None


def serialize_boundary(b: Boundary) -> str:
    return "\n".join(f"{v} {x}" for v, x in b.values) + "\n"


def boundary_json(b: Boundary) -> str:
    return json.dumps(
        {"p": b.modulus.value, "values": {str(v): x for v, x in b.values}},
        separators=(",", ":"),
    ) + "\n"


def parse_weights(text: str, mod: Modulus) -> EdgeWeighting:
    vals: Dict[int, int] = {}
    for ln in _lines(text):
        e, w = _ints(ln, 2, "weights")
        if e in vals:
            raise FormatError(f"weights: edge {e} listed twice")
        vals[e] = w
    try:
        return EdgeWeighting.of(vals, mod)
    except ValueError as exc:
        raise FormatError(f"weights: {exc}") from None


def serialize_weights(w: EdgeWeighting) -> str:
    return "\n".join(f"{e} {x}" for e, x in w.values) + "\n"


def parse_lists(text: str, mod: Modulus) -> ListAssignment:
    pairs: Dict[int, Tuple[int, int]] = {}
    for ln in _lines(text):
        e, a, b = _ints(ln, 3, "lists")
        if e in pairs:
            raise FormatError(f"lists: arc {e} listed twice")
        pairs[e] = (a, b)
    try:
        return ListAssignment.of(pairs, mod)
    except ValueError as exc:
        raise FormatError(f"lists: {exc}") from None


def serialize_lists(lists: ListAssignment) -> str:
    return "\n".join(f"{e} {a} {b}" for e, (a, b) in lists.pairs) + "\n"


def parse_family(text: str) -> BasisFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"family: bad JSON ({exc})") from None
    try:
        return BasisFamily.from_json_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"family: {exc}") from None


def serialize_family(fam: BasisFamily) -> str:
    return json.dumps(fam.to_json_dict(), separators=(",", ":")) + "\n"


def parse_target(text: str, dim: int, mod: Modulus) -> GroupVec:
    """Dense comma-separated target vector, e.g. ``1,2,0``."""
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != dim:
        raise FormatError(f"target: expected {dim} coordinates, got {len(parts)}")
    try:
        values = [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"target: non-integer coordinate in {text!r}") from None
    return GroupVec.from_dense(mod, values)
