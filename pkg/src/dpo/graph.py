"""Finite labelled directed multigraphs over integer identifiers.

Nodes and edges are identified by non-negative integers; the two identifier
spaces are independent. Labels are opaque strings compared by equality.
Parallel edges and loops are allowed; two parallel edges with identical
endpoints and labels are distinct whenever their identifiers differ.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import PreconditionError


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness clause, naming the offending item."""

    clause: str
    item: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.item}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validity check; violations are data, not failures."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=True)
class Graph:
    """A finite labelled directed multigraph.

    ``src``/``tgt`` map every edge to its endpoint nodes; ``nlabel`` and
    ``elabel`` assign a label to every node and edge. Instances are treated
    as immutable values and may be shared freely between threads.
    """

    nodes: frozenset[int]
    edges: frozenset[int]
    src: dict[int, int]
    tgt: dict[int, int]
    nlabel: dict[int, str]
    elabel: dict[int, str]

    def __repr__(self) -> str:
        ns = ", ".join(f"{v}:{self.nlabel.get(v)!r}" for v in sorted(self.nodes))
        es = ", ".join(
            f"{e}:{self.src.get(e)}->{self.tgt.get(e)}:{self.elabel.get(e)!r}"
            for e in sorted(self.edges)
        )
        return f"Graph([{ns}], [{es}])"


def graph(
    nodes: Mapping[int, str],
    edges: Mapping[int, tuple[int, int, str]] | None = None,
) -> Graph:
    """Build a graph from ``{node_id: label}`` and ``{edge_id: (src, tgt, label)}``."""
    edges = edges or {}
    return Graph(
        nodes=frozenset(nodes),
        edges=frozenset(edges),
        src={e: s for e, (s, _, _) in edges.items()},
        tgt={e: t for e, (_, t, _) in edges.items()},
        nlabel=dict(nodes),
        elabel={e: l for e, (_, _, l) in edges.items()},
    )


def validate_graph(g: Graph) -> ValidationReport:
    """Check every graph invariant; report each failed clause with its item."""
    bad: list[Violation] = []
    for v in sorted(g.nodes):
        if v < 0:
            bad.append(Violation("node id negative", f"node {v}"))
        if v not in g.nlabel:
            bad.append(Violation("nlabel not total on nodes", f"node {v}"))
    for e in sorted(g.edges):
        if e < 0:
            bad.append(Violation("edge id negative", f"edge {e}"))
        if e not in g.src:
            bad.append(Violation("src not total on edges", f"edge {e}"))
        elif g.src[e] not in g.nodes:
            bad.append(Violation("src out of V", f"edge {e}"))
        if e not in g.tgt:
            bad.append(Violation("tgt not total on edges", f"edge {e}"))
        elif g.tgt[e] not in g.nodes:
            bad.append(Violation("tgt out of V", f"edge {e}"))
        if e not in g.elabel:
            bad.append(Violation("elabel not total on edges", f"edge {e}"))
    for v in sorted(set(g.nlabel) - g.nodes):
        bad.append(Violation("nlabel defined outside nodes", f"node {v}"))
    for e in sorted((set(g.src) | set(g.tgt) | set(g.elabel)) - g.edges):
        bad.append(Violation("edge map defined outside edges", f"edge {e}"))
    return ValidationReport(tuple(bad))


def renumber(g: Graph, node_map: Mapping[int, int], edge_map: Mapping[int, int]) -> Graph:
    """Relabel identifiers through two injective maps; structure is preserved.

    The maps must be total on ``g``'s nodes and edges and injective; the
    result is isomorphic to ``g`` with witness exactly ``(node_map, edge_map)``.
    """
    _require_injection(node_map, g.nodes, "node_map")
    _require_injection(edge_map, g.edges, "edge_map")
    return Graph(
        nodes=frozenset(node_map[v] for v in g.nodes),
        edges=frozenset(edge_map[e] for e in g.edges),
        src={edge_map[e]: node_map[g.src[e]] for e in g.edges},
        tgt={edge_map[e]: node_map[g.tgt[e]] for e in g.edges},
        nlabel={node_map[v]: g.nlabel[v] for v in g.nodes},
        elabel={edge_map[e]: g.elabel[e] for e in g.edges},
    )


def _require_injection(m: Mapping[int, int], domain: frozenset[int], name: str) -> None:
    missing = domain - set(m)
    if missing:
        raise PreconditionError(f"{name} not total: missing {sorted(missing)}")
    images = [m[x] for x in domain]
    if len(set(images)) != len(images):
        raise PreconditionError(f"{name} not injective")


@dataclass(frozen=True)
class IsoWitness:
    """A structure- and label-preserving bijection between two graphs."""

    node_map: dict[int, int]
    edge_map: dict[int, int]


def is_isomorphic(g: Graph, h: Graph) -> Optional[IsoWitness]:
    """Search for an isomorphism ``g -> h``; ``None`` means non-isomorphic.

    Backtracking over nodes with pruning by (label, in-degree, out-degree)
    signatures; candidates are tried in ascending identifier order, so the
    returned witness is deterministic.
    """
    if len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges):
        return None
    sig_g = _node_signatures(g)
    sig_h = _node_signatures(h)
    if Counter(sig_g.values()) != Counter(sig_h.values()):
        return None
    if Counter(g.elabel.values()) != Counter(h.elabel.values()):
        return None

    pair_g = _edge_label_index(g)
    pair_h = _edge_label_index(h)
    order = sorted(g.nodes)
    by_sig: dict[tuple, list[int]] = {}
    for w in sorted(h.nodes):
        by_sig.setdefault(sig_h[w], []).append(w)

    assignment: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        # every ordered pair involving v (including the loop pair) must carry
        # the same edge-label multiset on both sides
        if pair_g.get((v, v)) != pair_h.get((w, w)):
            return False
        for u, x in assignment.items():
            if pair_g.get((v, u)) != pair_h.get((w, x)):
                return False
            if pair_g.get((u, v)) != pair_h.get((x, w)):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_sig.get(sig_g[v], ()):
            if w in used or not consistent(v, w):
                continue
            assignment[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del assignment[v]
            used.discard(w)
        return False

    if not extend(0):
        return None
    edge_map = _edge_bijection(g, h, assignment)
    return IsoWitness(node_map=dict(assignment), edge_map=edge_map)


def _node_signatures(g: Graph) -> dict[int, tuple]:
    outdeg = Counter(g.src.values())
    indeg = Counter(g.tgt.values())
    return {v: (g.nlabel[v], outdeg.get(v, 0), indeg.get(v, 0)) for v in g.nodes}


def _edge_label_index(g: Graph) -> dict[tuple[int, int], Counter]:
    index: dict[tuple[int, int], Counter] = {}
    for e in g.edges:
        index.setdefault((g.src[e], g.tgt[e]), Counter())[g.elabel[e]] += 1
    return index


def _edge_bijection(g: Graph, h: Graph, node_map: Mapping[int, int]) -> dict[int, int]:
    # parallel edges with equal endpoints and labels are interchangeable;
    # pair them off in ascending id order on both sides
    classes_h: dict[tuple[int, int, str], list[int]] = {}
    for e in sorted(h.edges):
        classes_h.setdefault((h.src[e], h.tgt[e], h.elabel[e]), []).append(e)
    edge_map: dict[int, int] = {}
    cursor: dict[tuple[int, int, str], int] = {}
    for e in sorted(g.edges):
        key = (node_map[g.src[e]], node_map[g.tgt[e]], g.elabel[e])
        i = cursor.get(key, 0)
        edge_map[e] = classes_h[key][i]
        cursor[key] = i + 1
    return edge_map
