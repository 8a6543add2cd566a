"""Mutation-class enumeration, finite-type detection and exchange graphs."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import DomainError
from .quiver import (
    PERMUTATIONS,
    Quiver,
    canonical_form,
    canonical_key,
    markov_constant,
    mutate,
    parse_quiver,
    scalar_to_json,
    sink_source_class,
    sort_desc,
    triple_text,
)
from .scalar import angle_fraction, bucket, cyclo, parse_scalar

FINITE = "Finite"
INFINITE_CERTIFIED = "InfiniteCertified"
CAP_EXCEEDED = "CapExceeded"

DEFAULT_MAX_NODES = 10_000
DEFAULT_MAX_WEIGHT = 1e6

# seeds of the spherical finite classes with their acyclic and cyclic classes
# (weights up to order) and Markov constants
SPHERICAL_ROWS = (
    ("acyc(1,1,0)", ["acyc(1,1,0)"], ["cyc(1,1,1)"], "2"),
    ("acyc(1,sqrt(2),0)", ["acyc(1,sqrt(2),0)"], ["cyc(sqrt(2),sqrt(2),1)"], "3"),
    ("acyc(1,2cos(pi/5),0)", ["acyc(1,2cos(pi/5),0)"],
     ["cyc(2cos(pi/5),2cos(pi/5),1)", "cyc(2cos(pi/5),2cos(pi/5),2cos(pi/5))"], "(5+sqrt(5))/2"),
    ("acyc(2cos(pi/5),2cos(2pi/5),0)", ["acyc(2cos(pi/5),2cos(2pi/5),0)", "acyc(1,1,2cos(2pi/5))"],
     ["cyc(2cos(pi/5),2cos(2pi/5),1)", "cyc(1,1,2cos(pi/5))"], "3"),
    ("acyc(1,2cos(2pi/5),0)", ["acyc(1,2cos(2pi/5),0)", "acyc(2cos(2pi/5),2cos(2pi/5),2cos(2pi/5))"],
     ["cyc(2cos(2pi/5),2cos(2pi/5),1)"], "(5-sqrt(5))/2"),
)

FINITE_MARKOV_TEXT = ("4", "2", "3", "(5+sqrt(5))/2", "(5-sqrt(5))/2")


@dataclass
class ExchangeGraph:
    """Nodes are canonical quivers; ``edges`` holds ``(source, vertex, target)`` triples."""

    seed: Quiver
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    finiteness: str = CAP_EXCEEDED
    certificates: list = field(default_factory=list)
    max_nodes: int = DEFAULT_MAX_NODES
    max_weight: float = DEFAULT_MAX_WEIGHT

    def neighbors(self, node: int) -> list:
        return [dst for src, _, dst in self.edges if src == node]

    def degree(self, node: int) -> int:
        return sum(1 for src, _, _ in self.edges if src == node)

    def sink_source_classes(self) -> list:
        seen, out = set(), []
        for Q in self.nodes:
            cls = sink_source_class(Q)
            if cls.key() not in seen:
                seen.add(cls.key())
                out.append(cls)
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed.text(),
            "nodes": [
                {"id": i, "quiver": triple_text(Q), "b": Q.to_json()["b"], "cyclic": Q.is_cyclic(),
                 "class": sink_source_class(Q).text()}
                for i, Q in enumerate(self.nodes)
            ],
            "edges": [list(e) for e in sorted(self.edges)],
            "finiteness": self.finiteness,
            "certificates": list(self.certificates),
            "counts": {"strict_nodes": len(self.nodes),
                       "sink_source_classes": len(self.sink_source_classes())},
        }


class _NodeIndex:
    """Canonical-key lookup; float quivers also probe neighbouring buckets."""

    def __init__(self, exact: bool, eps: float):
        self.exact = exact
        self.eps = eps
        self.table = {}
        self.nodes = []

    def _coarse(self, Q: Quiver):
        w = sorted(float(x) for x in Q.weights())
        return Q.is_cyclic(), tuple(bucket(x, self.eps) for x in w)

    def lookup(self, Q: Quiver):
        if self.exact:
            return self.table.get(canonical_key(Q))
        cyc, base = self._coarse(Q)
        for delta in itertools.product((-1, 0, 1), repeat=3):
            probe = (cyc, tuple(b + d for b, d in zip(base, delta)))
            for node_id in self.table.get(probe, ()):
                if _isomorphic_within(Q, self.nodes[node_id]):
                    return node_id
        return None

    def add(self, Q: Quiver, node_id: int):
        self.nodes.append(Q)
        if self.exact:
            self.table[canonical_key(Q)] = node_id
        else:
            self.table.setdefault(self._coarse(Q), []).append(node_id)


def _isomorphic_within(A: Quiver, B: Quiver) -> bool:
    for flip in (1, -1):
        for perm in PERMUTATIONS:
            if all(
                (A.b[perm[i]][perm[j]] * flip - B.b[i][j]).sign() == 0
                for i, j in ((0, 1), (0, 2), (1, 2))
            ):
                return True
    return False


def is_connected(Q: Quiver) -> bool:
    return sum(1 for x in Q.weights() if x.sign() == 0) <= 1


def _certificate(Q: Quiver):
    """Reason why a connected quiver in the class forces an infinite class, or None."""
    if not is_connected(Q):
        return None
    for x in Q.weights():
        if (x - 2).sign() > 0:
            return {"kind": "weight_exceeds_2", "quiver": triple_text(Q), "weight": scalar_to_json(x)}
    if Q.is_exact():
        for x in Q.weights():
            if angle_fraction(x) is None:
                return {"kind": "angle_not_rational", "quiver": triple_text(Q),
                        "weight": scalar_to_json(x)}
    return None


def _finite_markov_values(Q: Quiver):
    if Q.is_exact():
        return [parse_scalar(t) for t in FINITE_MARKOV_TEXT]
    return [parse_scalar(t, exact=False, eps=Q.eps) for t in FINITE_MARKOV_TEXT]


def _markov_certificate(Q: Quiver):
    if not is_connected(Q):
        return None
    C = markov_constant(Q)
    if any(C == v for v in _finite_markov_values(Q)):
        return None
    return {"kind": "markov_not_finite_type", "C": scalar_to_json(C)}


def explore(Q: Quiver, max_nodes: int = DEFAULT_MAX_NODES,
            max_weight: float = DEFAULT_MAX_WEIGHT) -> ExchangeGraph:
    """Breadth-first enumeration of the mutation class of ``Q`` up to relabeling and reversal."""
    if not isinstance(max_nodes, int) or max_nodes < 1 or not max_weight > 0:
        raise DomainError("cap configuration invalid", code="bad_caps")
    graph = ExchangeGraph(Q, max_nodes=max_nodes, max_weight=max_weight)
    index = _NodeIndex(Q.is_exact(), Q.eps or 1e-9)
    start = canonical_form(Q)
    graph.nodes.append(start)
    index.add(start, 0)
    cert = _certificate(start)
    if cert:
        graph.certificates.append(cert)
        graph.finiteness = INFINITE_CERTIFIED
        return graph
    queue = deque([0])
    while queue:
        node = queue.popleft()
        cur = graph.nodes[node]
        for k in (1, 2, 3):
            nxt = mutate(cur, k)
            target = index.lookup(nxt)
            if target is None:
                if len(graph.nodes) >= max_nodes or max(float(x) for x in nxt.weights()) > max_weight:
                    return _at_cap(graph, nxt)
                target = len(graph.nodes)
                form = canonical_form(nxt)
                graph.nodes.append(form)
                index.add(form, target)
                cert = _certificate(form)
                if cert:
                    graph.edges.append((node, k, target))
                    graph.certificates.append(cert)
                    graph.finiteness = INFINITE_CERTIFIED
                    return graph
                queue.append(target)
            graph.edges.append((node, k, target))
    graph.finiteness = FINITE
    graph.edges.sort()
    return graph


def _at_cap(graph: ExchangeGraph, Q: Quiver) -> ExchangeGraph:
    cert = _markov_certificate(Q)
    if cert:
        graph.certificates.append(cert)
        graph.finiteness = INFINITE_CERTIFIED
    else:
        graph.finiteness = CAP_EXCEEDED
    graph.edges.sort()
    return graph


# --------------------------------------------------------------- finite type


@dataclass
class FiniteResult:
    status: str  # Finite, Infinite or Indeterminate
    family: str | None
    detail: dict
    graph: ExchangeGraph
    tolerance_caveat: bool = False

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "family": self.family,
            "detail": self.detail,
            "tolerance_caveat": self.tolerance_caveat,
            "certificates": self.graph.certificates,
            "strict_nodes": len(self.graph.nodes),
        }


def _quiver(text: str, like: Quiver) -> Quiver:
    return parse_quiver(text, exact=like.is_exact(), eps=like.eps or 1e-9)


def _class_keys(graph: ExchangeGraph) -> set:
    return {c.key() for c in graph.sink_source_classes()}


def _spherical_row(graph: ExchangeGraph):
    seed = graph.seed
    classes = graph.sink_source_classes()
    for i, (_, acyclic, cyclic, _c) in enumerate(SPHERICAL_ROWS, start=1):
        wanted = [sink_source_class(_quiver(t, seed)) for t in acyclic + cyclic]
        if all(any(w == c for c in classes) for w in wanted):
            return i
    return None


def family_of(graph: ExchangeGraph):
    """Family tag and details for a closed graph of a connected class."""
    seed = graph.seed
    if not is_connected(seed):
        return "disconnected", {}
    C = markov_constant(seed)
    if (C - 4).sign() == 0:
        two = _quiver("cyc(2,2,2)", seed)
        if any(sink_source_class(Q) == sink_source_class(two) for Q in graph.nodes):
            return "(2,2,2)", {"family": 1}
        for Q in graph.nodes:
            if not Q.is_cyclic():
                continue
            a, b, c = sort_desc(Q.weights())
            if (a - 2).sign() == 0 and (b - c).sign() == 0:
                t = angle_fraction(b)
                if t is not None and t.numerator == 1:
                    n = t.denominator
                    detail = {"family": 2, "n": n}
                    if seed.is_exact() and n >= 3:
                        rep = canonical_key(euclidean_acyclic_representative(n))
                        detail["acyclic_representative_found"] = any(
                            canonical_key(P) == rep for P in graph.nodes)
                    return "(2cos(pi/n),2cos(pi/n),2)", detail
        return "unrecognised", {}
    row = _spherical_row(graph)
    if row is not None:
        return "spherical", {"family": 3, "row": row, "seed": SPHERICAL_ROWS[row - 1][0]}
    return "unrecognised", {}


def is_mutation_finite(Q: Quiver, max_nodes: int = DEFAULT_MAX_NODES,
                       max_weight: float = DEFAULT_MAX_WEIGHT) -> FiniteResult:
    graph = explore(Q, max_nodes=max_nodes, max_weight=max_weight)
    caveat = not Q.is_exact()
    if graph.finiteness == FINITE:
        family, detail = family_of(graph)
        return FiniteResult(FINITE, family, detail, graph, caveat)
    if graph.finiteness == INFINITE_CERTIFIED:
        return FiniteResult("Infinite", None, {}, graph, caveat)
    return FiniteResult("Indeterminate", None, {}, graph, caveat)


def euclidean_acyclic_representative(n: int) -> Quiver:
    """Acyclic quiver in the class of ``(2cos(pi/n), 2cos(pi/n), 2)`` for ``n >= 3``."""
    c = cyclo(1, n)
    if n % 2:
        s = cyclo(n - 1, 2 * n)
        return Quiver.acyclic(c, s, s)
    return Quiver.acyclic(c, cyclo(n - 2, 2 * n), 0)


# ------------------------------------------------ spherical class table


@dataclass
class Table1Report:
    acyclic: list
    cyclic: list
    markov: object
    strict_nodes: int
    row: int | None

    def to_json(self) -> dict:
        return {
            "acyclic_classes": [c.text() for c in self.acyclic],
            "cyclic_classes": [c.text() for c in self.cyclic],
            "C": scalar_to_json(self.markov),
            "strict_nodes": self.strict_nodes,
            "sink_source_classes": len(self.acyclic) + len(self.cyclic),
            "row": self.row,
        }


def table1(Q: Quiver, max_nodes: int = DEFAULT_MAX_NODES) -> Table1Report:
    """Acyclic and cyclic classes (up to sink/source) and C of a spherical finite class."""
    result = is_mutation_finite(Q, max_nodes=max_nodes)
    if result.status != FINITE or result.family != "spherical":
        raise DomainError("not a spherical finite class", code="not_spherical_finite")
    classes = result.graph.sink_source_classes()
    acyclic = [c for c in classes if not c.oriented]
    cyclic = [c for c in classes if c.oriented]
    return Table1Report(acyclic, cyclic, markov_constant(Q), len(result.graph.nodes),
                        result.detail.get("row"))


def expected_table1_row(index: int, exact: bool = True):
    """Acyclic classes, cyclic classes and C of one row of the spherical finite list."""
    seed, acyclic, cyclic, c = SPHERICAL_ROWS[index - 1]
    acyc = [sink_source_class(parse_quiver(t, exact=exact)) for t in acyclic]
    cyc = [sink_source_class(parse_quiver(t, exact=exact)) for t in cyclic]
    return acyc, cyc, parse_scalar(c, exact=exact)


# ------------------------------------------------------------------ outputs


def to_dot(graph: ExchangeGraph) -> str:
    """Deterministic DOT text; acyclic nodes are filled."""
    lines = ["digraph exchange {", "  node [shape=box, fontname=\"Helvetica\"];"]
    for i, Q in enumerate(graph.nodes):
        label = triple_text(Q).replace('"', '\\"')
        style = ', style=filled, fillcolor="#9ecae1"' if not Q.is_cyclic() else ""
        lines.append(f'  n{i} [label="{label}"{style}];')
    for src, k, dst in sorted(graph.edges):
        lines.append(f'  n{src} -> n{dst} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def acyclic_belts(graph: ExchangeGraph) -> list:
    """Connected components of the acyclic nodes (joined by mutation edges) that contain a cycle.

    A component contains a cycle when its edge count, counting each undirected
    edge once and each self-loop once, is at least its node count.
    """
    acyclic = {i for i, Q in enumerate(graph.nodes) if not Q.is_cyclic()}
    undirected = set()
    for src, k, dst in graph.edges:
        if src in acyclic and dst in acyclic:
            undirected.add((min(src, dst), max(src, dst), k if src == dst else None))
    parent = {i: i for i in acyclic}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b, _ in undirected:
        parent[find(a)] = find(b)
    comps = {}
    for i in acyclic:
        comps.setdefault(find(i), set()).add(i)
    belts = []
    for members in comps.values():
        edges = sum(1 for a, b, _ in undirected if a in members)
        if edges >= len(members):
            belts.append(sorted(members))
    return sorted(belts)

