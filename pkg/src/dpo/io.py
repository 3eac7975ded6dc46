"""JSON text formats for graphs, morphisms, rules and squares, plus DOT export.

Graph documents look like::

    {"nodes": [{"id": 0, "label": "a"}, ...],
     "edges": [{"id": 0, "src": 0, "tgt": 1, "label": "x"}, ...]}

Morphism documents carry the two maps with string keys (JSON objects), and
may reference their endpoint graphs by relative path when stored standalone::

    {"fv": {"0": 3}, "fe": {"0": 1}, "source": "K.json", "target": "L.json"}

Rule documents embed their three graphs and two morphisms inline; square
documents list the four corner graphs and four morphisms either inline or by
relative path.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .diagrams import CheckReport, Square
from .errors import FormatError
from .graph import Graph, IsoWitness
from .morphism import Morphism
from .rewriting import DirectDerivation, Rule


def graph_to_json(g: Graph) -> dict:
    return {
        "nodes": [{"id": v, "label": g.nlabel[v]} for v in sorted(g.nodes)],
        "edges": [
            {"id": e, "src": g.src[e], "tgt": g.tgt[e], "label": g.elabel[e]}
            for e in sorted(g.edges)
        ],
    }


def graph_from_json(doc: Any) -> Graph:
    if not isinstance(doc, dict) or "nodes" not in doc:
        raise FormatError("graph document must be an object with a 'nodes' array")
    nodes: dict[int, str] = {}
    for entry in doc.get("nodes", []):
        v = _ident(entry, "id", "node")
        if v in nodes:
            raise FormatError(f"duplicate node id {v}")
        nodes[v] = _label(entry, "node")
    src: dict[int, int] = {}
    tgt: dict[int, int] = {}
    elabel: dict[int, str] = {}
    for entry in doc.get("edges", []):
        e = _ident(entry, "id", "edge")
        if e in elabel:
            raise FormatError(f"duplicate edge id {e}")
        src[e] = _ident(entry, "src", "edge")
        tgt[e] = _ident(entry, "tgt", "edge")
        elabel[e] = _label(entry, "edge")
    return Graph(
        nodes=frozenset(nodes),
        edges=frozenset(elabel),
        src=src,
        tgt=tgt,
        nlabel=nodes,
        elabel=elabel,
    )


def _ident(entry: Any, key: str, kind: str) -> int:
    if not isinstance(entry, dict) or key not in entry:
        raise FormatError(f"{kind} entry missing '{key}'")
    value = entry[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise FormatError(f"{kind} '{key}' must be a non-negative integer, got {value!r}")
    return value


def _label(entry: dict, kind: str) -> str:
    value = entry.get("label")
    if not isinstance(value, str):
        raise FormatError(f"{kind} 'label' must be a string, got {value!r}")
    return value


def morphism_to_json(m: Morphism) -> dict:
    return {
        "fv": {str(v): m.fv[v] for v in sorted(m.source.nodes)},
        "fe": {str(e): m.fe[e] for e in sorted(m.source.edges)},
    }


def morphism_from_json(doc: Any, source: Graph, target: Graph) -> Morphism:
    if not isinstance(doc, dict) or "fv" not in doc or "fe" not in doc:
        raise FormatError("morphism document must be an object with 'fv' and 'fe'")
    return Morphism(source, target, _intmap(doc["fv"], "fv"), _intmap(doc["fe"], "fe"))


def _intmap(obj: Any, name: str) -> dict[int, int]:
    if not isinstance(obj, dict):
        raise FormatError(f"'{name}' must be an object")
    out: dict[int, int] = {}
    for k, v in obj.items():
        try:
            key = int(k)
        except (TypeError, ValueError):
            raise FormatError(f"'{name}' key {k!r} is not an integer") from None
        if not isinstance(v, int) or isinstance(v, bool) or v < 0 or key < 0:
            raise FormatError(f"'{name}' entry {k!r}: {v!r} is not a non-negative integer")
        out[key] = v
    return out


def rule_to_json(rule: Rule) -> dict:
    return {
        "L": graph_to_json(rule.L),
        "K": graph_to_json(rule.K),
        "R": graph_to_json(rule.R),
        "b": morphism_to_json(rule.b),
        "r": morphism_to_json(rule.r),
    }


def rule_from_json(doc: Any) -> Rule:
    if not isinstance(doc, dict):
        raise FormatError("rule document must be an object")
    for key in ("L", "K", "R", "b", "r"):
        if key not in doc:
            raise FormatError(f"rule document missing '{key}'")
    L = graph_from_json(doc["L"])
    K = graph_from_json(doc["K"])
    R = graph_from_json(doc["R"])
    return Rule(
        L=L,
        K=K,
        R=R,
        b=morphism_from_json(doc["b"], K, L),
        r=morphism_from_json(doc["r"], K, R),
    )


def check_report_to_json(report: CheckReport) -> dict:
    return {
        "verdict": report.verdict,
        "failed_clause": report.failed_clause,
        "counterexample": list(report.counterexample) if report.counterexample else None,
    }


def iso_witness_to_json(witness: IsoWitness) -> dict:
    return {
        "node_map": {str(k): v for k, v in sorted(witness.node_map.items())},
        "edge_map": {str(k): v for k, v in sorted(witness.edge_map.items())},
    }


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def save_json(doc: Any, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_graph(path: str | Path) -> Graph:
    return graph_from_json(load_json(path))


def load_rule(path: str | Path) -> Rule:
    return rule_from_json(load_json(path))


def load_morphism(path: str | Path, source: Graph | None = None, target: Graph | None = None) -> Morphism:
    """Load a standalone morphism file; endpoints come from the document's
    'source'/'target' path references unless supplied by the caller."""
    doc = load_json(path)
    base = Path(path).parent
    if source is None:
        source = _referenced_graph(doc, "source", base)
    if target is None:
        target = _referenced_graph(doc, "target", base)
    return morphism_from_json(doc, source, target)


def _referenced_graph(doc: Any, key: str, base: Path) -> Graph:
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"morphism document has no '{key}' reference and none was supplied")
    ref = doc[key]
    if isinstance(ref, str):
        return load_graph(base / ref)
    return graph_from_json(ref)


def load_square(path: str | Path) -> Square:
    """Load a square description: four corner graphs and four morphisms.

    Graph values and morphism values may be inline documents or strings,
    which are read as paths relative to the square file.
    """
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise FormatError("square document must be an object")
    base = Path(path).parent

    def corner(key: str) -> Graph:
        if key not in doc:
            raise FormatError(f"square document missing graph '{key}'")
        value = doc[key]
        if isinstance(value, str):
            return load_graph(base / value)
        return graph_from_json(value)

    graphs = {key: corner(key) for key in ("A", "B", "C", "D")}

    def arrow(key: str, source: Graph, target: Graph) -> Morphism:
        if key not in doc:
            raise FormatError(f"square document missing morphism '{key}'")
        value = doc[key]
        if isinstance(value, str):
            value = load_json(base / value)
        return morphism_from_json(value, source, target)

    return Square(
        ab=arrow("ab", graphs["A"], graphs["B"]),
        ac=arrow("ac", graphs["A"], graphs["C"]),
        bd=arrow("bd", graphs["B"], graphs["D"]),
        cd=arrow("cd", graphs["C"], graphs["D"]),
    )


def square_to_json(sq: Square) -> dict:
    return {
        "A": graph_to_json(sq.A),
        "B": graph_to_json(sq.B),
        "C": graph_to_json(sq.C),
        "D": graph_to_json(sq.D),
        "ab": morphism_to_json(sq.ab),
        "ac": morphism_to_json(sq.ac),
        "bd": morphism_to_json(sq.bd),
        "cd": morphism_to_json(sq.cd),
    }


def derivation_trace_json(dd: DirectDerivation, left: CheckReport, right: CheckReport) -> dict:
    """The trace document written next to a derivation's result graph."""
    return {
        "rule": rule_to_json(dd.rule),
        "G": graph_to_json(dd.G),
        "D": graph_to_json(dd.D),
        "H": graph_to_json(dd.H),
        "morphisms": {
            "match": morphism_to_json(dd.match.m),
            "interface_to_context": morphism_to_json(dd.deletion.d),
            "context_in_input": morphism_to_json(dd.deletion.c),
            "context_in_result": morphism_to_json(dd.gluing.c),
            "comatch": morphism_to_json(dd.comatch),
            "b": morphism_to_json(dd.rule.b),
            "r": morphism_to_json(dd.rule.r),
        },
        "left_square_check": check_report_to_json(left),
        "right_square_check": check_report_to_json(right),
    }


def to_dot(g: Graph, name: str = "G") -> str:
    """Render a graph in DOT syntax for external viewers."""
    lines = [f"digraph {name} {{"]
    for v in sorted(g.nodes):
        lines.append(f'  n{v} [label="{v}:{g.nlabel[v]}"];')
    for e in sorted(g.edges):
        lines.append(f'  n{g.src[e]} -> n{g.tgt[e]} [label="{e}:{g.elabel[e]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
