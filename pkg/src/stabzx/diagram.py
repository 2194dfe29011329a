"""Open-graph representation of stabilizer ZX diagrams.

A :class:`Diagram` is a multigraph whose nodes are Z spiders, X spiders,
Hadamard boxes and numbered boundary nodes. Geometry is never stored; two
diagrams that differ only by node ids denote the same map. Parallel edges
and self-loops are allowed; the rewrite rules, not the data structure,
are responsible for removing them.

Phases are integers modulo 4 counting multiples of pi/2.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx

SPIDERS = ("Z", "X")
KINDS = ("Z", "X", "H", "in", "out")


class DiagramError(ValueError):
    """Invalid diagram structure or document."""


def phase_str(k: int) -> str:
    return ("0", "pi/2", "pi", "-pi/2")[k % 4]


@dataclass(frozen=True, order=True)
class Node:
    kind: str
    phase: int | None = None
    index: int | None = None

    @classmethod
    def z(cls, phase: int = 0) -> Node:
        return cls("Z", phase % 4)

    @classmethod
    def x(cls, phase: int = 0) -> Node:
        return cls("X", phase % 4)

    @classmethod
    def h(cls) -> Node:
        return cls("H")

    @classmethod
    def inp(cls, index: int) -> Node:
        return cls("in", index=index)

    @classmethod
    def out(cls, index: int) -> Node:
        return cls("out", index=index)

    @property
    def is_spider(self) -> bool:
        return self.kind in SPIDERS

    @property
    def is_boundary(self) -> bool:
        return self.kind in ("in", "out")

    def key(self) -> tuple:
        return (KINDS.index(self.kind), -1 if self.phase is None else self.phase,
                -1 if self.index is None else self.index)


class Diagram:
    """Immutable ZX diagram.

    ``nodes`` maps integer ids to :class:`Node`; ``edges`` is a sorted tuple
    of ``(u, v)`` pairs with ``u <= v``, repeated once per parallel edge.
    """

    __slots__ = ("nodes", "edges", "_adj")

    def __init__(self, nodes: Mapping[int, Node] | None = None,
                 edges: Iterable[tuple[int, int]] = (), *, validate: bool = True):
        self.nodes: dict[int, Node] = dict(sorted((nodes or {}).items()))
        self.edges: tuple[tuple[int, int], ...] = tuple(
            sorted((min(u, v), max(u, v)) for u, v in edges))
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            if u not in adj or v not in adj:
                raise DiagramError(f"edge ({u},{v}) has a dangling endpoint")
            adj[u].append(v)
            adj[v].append(u)
        self._adj = adj
        if validate:
            self.validate()

    # queries -------------------------------------------------------------

    def neighbours(self, v: int) -> list[int]:
        """Neighbour list with multiplicity; a self-loop lists ``v`` twice."""
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_count(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        return sum(1 for e in self.edges if e == key)

    def incident(self, v: int) -> list[int]:
        """Indices into ``edges`` of the edges touching ``v`` (loops once)."""
        return [i for i, (a, b) in enumerate(self.edges) if a == v or b == v]

    def _boundary(self, kind: str) -> list[int]:
        ids = [v for v, n in self.nodes.items() if n.kind == kind]
        return sorted(ids, key=lambda v: self.nodes[v].index)

    def inputs(self) -> list[int]:
        return self._boundary("in")

    def outputs(self) -> list[int]:
        return self._boundary("out")

    @property
    def n_inputs(self) -> int:
        return len(self.inputs())

    @property
    def n_outputs(self) -> int:
        return len(self.outputs())

    def next_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    def is_state(self) -> bool:
        return self.n_inputs == 0

    def validate(self) -> None:
        for v, n in self.nodes.items():
            if n.kind not in KINDS:
                raise DiagramError(f"node {v}: unknown kind {n.kind!r}")
            if n.is_spider:
                if not isinstance(n.phase, int) or not 0 <= n.phase <= 3:
                    raise DiagramError(f"node {v}: spider phase must be 0..3")
            elif n.phase is not None:
                raise DiagramError(f"node {v}: phase forbidden on {n.kind}")
            if n.is_boundary:
                if not isinstance(n.index, int) or n.index < 0:
                    raise DiagramError(f"node {v}: boundary needs a non-negative index")
                if self.degree(v) != 1:
                    raise DiagramError(f"node {v}: boundary must have degree 1, has {self.degree(v)}")
            elif n.index is not None:
                raise DiagramError(f"node {v}: index forbidden on {n.kind}")
            if n.kind == "H" and self.degree(v) != 2:
                raise DiagramError(f"node {v}: H box must have degree 2, has {self.degree(v)}")
        for kind in ("in", "out"):
            idx = sorted(self.nodes[v].index for v in self._boundary(kind))
            if idx != list(range(len(idx))):
                raise DiagramError(f"{kind} indices must be exactly 0..{len(idx) - 1}, got {idx}")

    # value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((tuple(self.nodes.items()), self.edges))

    def __repr__(self) -> str:
        return (f"Diagram({len(self.nodes)} nodes, {len(self.edges)} edges, "
                f"{self.n_inputs}->{self.n_outputs})")

    def builder(self) -> Builder:
        return Builder(self.nodes, self.edges)


class Builder:
    """Mutable scratch space for assembling or rewriting a diagram."""

    def __init__(self, nodes: Mapping[int, Node] | None = None,
                 edges: Iterable[tuple[int, int]] = ()):
        self.nodes: dict[int, Node] = dict(nodes or {})
        self.edges: Counter[tuple[int, int]] = Counter(
            (min(u, v), max(u, v)) for u, v in edges)
        self._next = max(self.nodes, default=-1) + 1

    def add(self, node: Node) -> int:
        v = self._next
        self._next += 1
        self.nodes[v] = node
        return v

    def connect(self, u: int, v: int, times: int = 1) -> None:
        if times:
            self.edges[(min(u, v), max(u, v))] += times

    def disconnect(self, u: int, v: int, times: int = 1) -> None:
        key = (min(u, v), max(u, v))
        if self.edges[key] < times:
            raise DiagramError(f"no edge ({u},{v}) to remove")
        self.edges[key] -= times
        if not self.edges[key]:
            del self.edges[key]

    def remove(self, v: int) -> None:
        del self.nodes[v]
        for key in [e for e in self.edges if v in e]:
            del self.edges[key]

    def neighbours(self, v: int) -> list[int]:
        out = []
        for (a, b), m in self.edges.items():
            if a == v:
                out.extend([b] * m)
            if b == v:
                out.extend([a] * m)
        return sorted(out)

    def build(self, validate: bool = True) -> Diagram:
        return Diagram(self.nodes, list(self.edges.elements()), validate=validate)


# serialization -------------------------------------------------------------


def _uint(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise DiagramError(f"{what}: expected a non-negative integer, got {x!r}")
    return x


def parse(text: str) -> Diagram:
    """Read the version-1 JSON diagram document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DiagramError("document must be a JSON object")
    if doc.get("version") != 1:
        raise DiagramError(f"unsupported version {doc.get('version')!r}")
    extra = set(doc) - {"version", "nodes", "edges"}
    if extra:
        raise DiagramError(f"unexpected keys {sorted(extra)}")
    raw_nodes, raw_edges = doc.get("nodes", []), doc.get("edges", [])
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise DiagramError("'nodes' and 'edges' must be lists")
    nodes: dict[int, Node] = {}
    for pos, item in enumerate(raw_nodes):
        where = f"nodes[{pos}]"
        if not isinstance(item, dict):
            raise DiagramError(f"{where}: expected an object")
        vid = _uint(item.get("id"), f"{where}.id")
        where = f"node {vid}"
        if vid in nodes:
            raise DiagramError(f"{where}: duplicate node id")
        kind = item.get("kind")
        if kind not in KINDS:
            raise DiagramError(f"{where}: unknown kind {kind!r}")
        keys = set(item) - {"id", "kind"}
        if kind in SPIDERS:
            if "phase" not in item:
                raise DiagramError(f"{where}: phase required on {kind}")
            phase = item["phase"]
            if isinstance(phase, bool) or not isinstance(phase, int) or not 0 <= phase <= 3:
                raise DiagramError(f"{where}: phase must be an integer 0..3")
            keys.discard("phase")
            node = Node(kind, phase)
        elif kind == "H":
            if "phase" in item:
                raise DiagramError(f"{where}: phase forbidden on H")
            node = Node.h()
        else:
            if "phase" in item:
                raise DiagramError(f"{where}: phase forbidden on {kind}")
            if "index" not in item:
                raise DiagramError(f"{where}: index required on {kind}")
            node = Node(kind, index=_uint(item["index"], f"{where}.index"))
            keys.discard("index")
        if "index" in keys:
            raise DiagramError(f"{where}: index forbidden on {kind}")
        if keys:
            raise DiagramError(f"{where}: unexpected keys {sorted(keys)}")
        nodes[vid] = node
    edges = []
    for pos, e in enumerate(raw_edges):
        if not isinstance(e, list) or len(e) != 2:
            raise DiagramError(f"edges[{pos}]: expected a pair of node ids")
        u, v = (_uint(x, f"edges[{pos}]") for x in e)
        for x in (u, v):
            if x not in nodes:
                raise DiagramError(f"edges[{pos}]: dangling endpoint {x}")
        edges.append((u, v))
    return Diagram(nodes, edges)


def to_document(d: Diagram) -> dict:
    nodes = []
    for vid, n in d.nodes.items():
        item: dict = {"id": vid, "kind": n.kind}
        if n.is_spider:
            item["phase"] = n.phase
        if n.is_boundary:
            item["index"] = n.index
        nodes.append(item)
    return {"version": 1, "nodes": nodes, "edges": [list(e) for e in d.edges]}


def serialize(d: Diagram) -> str:
    """Canonical JSON: sorted keys, nodes by id, edges lexicographic, no whitespace."""
    return json.dumps(to_document(d), sort_keys=True, separators=(",", ":"))


# composition ------------------------------------------------------------------


def _offset(d: Diagram, off: int) -> tuple[dict[int, Node], list[tuple[int, int]]]:
    return ({v + off: n for v, n in d.nodes.items()},
            [(u + off, v + off) for u, v in d.edges])


def _splice(b: Builder, junctions: list[int]) -> None:
    """Remove degree-2 placeholder nodes, joining their two neighbours."""
    for j in junctions:
        nb = b.neighbours(j)
        b.remove(j)
        if nb == [j, j]:
            continue  # closed loop: a nonzero scalar
        x, y = nb
        b.connect(x, y)


def compose_seq(first: Diagram, second: Diagram) -> Diagram:
    """``second`` after ``first``: output i of ``first`` feeds input i of ``second``."""
    if first.n_outputs != second.n_inputs:
        raise DiagramError(f"arity mismatch: {first.n_outputs} outputs vs {second.n_inputs} inputs")
    off = first.next_id()
    n2, e2 = _offset(second, off)
    b = Builder({**first.nodes, **n2}, list(first.edges) + e2)
    junctions = []
    for o, i in zip(first.outputs(), second.inputs()):
        i += off
        (x,) = b.neighbours(o)
        (y,) = b.neighbours(i)
        # o and i become one placeholder wire node
        b.remove(o)
        b.remove(i)
        j = b.add(Node.z())
        b.connect(j, x if x != i else j)
        b.connect(j, y if y != o else j)
        junctions.append(j)
    _splice(b, junctions)
    return _compact(b.build())


def tensor(a: Diagram, b: Diagram) -> Diagram:
    """Disjoint union; ``b``'s boundaries are numbered after ``a``'s."""
    off = a.next_id()
    ni, no = a.n_inputs, a.n_outputs
    nodes = dict(a.nodes)
    for v, n in b.nodes.items():
        if n.kind == "in":
            n = Node.inp(n.index + ni)
        elif n.kind == "out":
            n = Node.out(n.index + no)
        nodes[v + off] = n
    return Diagram(nodes, list(a.edges) + [(u + off, v + off) for u, v in b.edges])


def tensor_all(ds: Iterable[Diagram]) -> Diagram:
    out = Diagram()
    for d in ds:
        out = tensor(out, d)
    return out


def bend_inputs(d: Diagram) -> Diagram:
    """Turn every input into an output: bent inputs first, then old outputs."""
    n = d.n_inputs
    nodes = {}
    for v, node in d.nodes.items():
        if node.kind == "in":
            node = Node.out(node.index)
        elif node.kind == "out":
            node = Node.out(node.index + n)
        nodes[v] = node
    return Diagram(nodes, d.edges)


def unbend(d: Diagram, n_inputs: int) -> Diagram:
    """Inverse of :func:`bend_inputs`: outputs ``0..n_inputs-1`` become inputs."""
    if d.n_inputs:
        raise DiagramError("unbend expects a state")
    if n_inputs > d.n_outputs:
        raise DiagramError("not enough outputs to unbend")
    nodes = {}
    for v, node in d.nodes.items():
        if node.kind == "out":
            node = Node.inp(node.index) if node.index < n_inputs else Node.out(node.index - n_inputs)
        nodes[v] = node
    return Diagram(nodes, d.edges)


def adjoint(d: Diagram) -> Diagram:
    """Mirror inputs and outputs and negate all phases."""
    nodes = {}
    for v, n in d.nodes.items():
        if n.kind == "in":
            n = Node.out(n.index)
        elif n.kind == "out":
            n = Node.inp(n.index)
        elif n.is_spider:
            n = Node(n.kind, (-n.phase) % 4)
        nodes[v] = n
    return Diagram(nodes, d.edges)


def _compact(d: Diagram) -> Diagram:
    """Renumber node ids to ``0..len-1`` preserving their order."""
    ren = {v: i for i, v in enumerate(d.nodes)}
    return Diagram({ren[v]: n for v, n in d.nodes.items()},
                   [(ren[u], ren[v]) for u, v in d.edges], validate=False)


# structural equality ------------------------------------------------------------


def _colours(d: Diagram, rounds: int = 3) -> dict[int, tuple]:
    col = {v: (n.key(), d.degree(v)) for v, n in d.nodes.items()}
    for _ in range(rounds):
        col = {v: (col[v], tuple(sorted(col[u] for u in d.neighbours(v)))) for v in d.nodes}
    return col


def canonical_relabel(d: Diagram) -> Diagram:
    """Renumber nodes deterministically from local structure.

    Nodes are ranked by kind, phase, degree and neighbour multisets (a few
    rounds of colour refinement); remaining ties are broken by breadth-first
    traversal order from the boundaries.
    """
    col = _colours(d)
    rank = {v: i for i, v in enumerate(sorted(d.nodes, key=lambda v: (col[v], v)))}
    order: list[int] = []
    seen: set[int] = set()
    roots = d.inputs() + d.outputs() + sorted(d.nodes, key=rank.get)
    for r in roots:
        if r in seen:
            continue
        seen.add(r)
        queue = [r]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(set(d.neighbours(v)), key=rank.get):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    ren = {v: i for i, v in enumerate(order)}
    return Diagram({ren[v]: n for v, n in d.nodes.items()},
                   [(ren[u], ren[v]) for u, v in d.edges])


def to_networkx(d: Diagram) -> nx.MultiGraph:
    g = nx.MultiGraph()
    for v, n in d.nodes.items():
        g.add_node(v, label=(n.kind, n.phase, n.index))
    g.add_edges_from(d.edges)
    return g


def isomorphic(a: Diagram, b: Diagram) -> bool:
    """Equality up to node-id renaming (boundary indices must match)."""
    if Counter(a.nodes.values()) != Counter(b.nodes.values()) or len(a.edges) != len(b.edges):
        return False
    return nx.is_isomorphic(to_networkx(a), to_networkx(b),
                            node_match=lambda x, y: x["label"] == y["label"])


# gate and state builders ------------------------------------------------------------


def wire() -> Diagram:
    return Diagram({0: Node.inp(0), 1: Node.out(0)}, [(0, 1)])


def wires(n: int) -> Diagram:
    return tensor_all(wire() for _ in range(n))


def _single(node: Node) -> Diagram:
    return Diagram({0: Node.inp(0), 1: node, 2: Node.out(0)}, [(0, 1), (1, 2)])


def h_gate() -> Diagram:
    return _single(Node.h())


def z_phase_gate(p: int) -> Diagram:
    return _single(Node.z(p))


def x_phase_gate(p: int) -> Diagram:
    return _single(Node.x(p))


def cnot() -> Diagram:
    """Control on wire 0 (Z spider), target on wire 1 (X spider)."""
    nodes = {0: Node.inp(0), 1: Node.inp(1), 2: Node.z(), 3: Node.x(),
             4: Node.out(0), 5: Node.out(1)}
    return Diagram(nodes, [(0, 2), (2, 4), (1, 3), (3, 5), (2, 3)])


def cz() -> Diagram:
    """Controlled-Z as a CNOT conjugated by Hadamards on the target."""
    nodes = {0: Node.inp(0), 1: Node.inp(1), 2: Node.z(), 3: Node.h(), 4: Node.x(),
             5: Node.h(), 6: Node.out(0), 7: Node.out(1)}
    return Diagram(nodes, [(0, 2), (2, 6), (1, 3), (3, 4), (4, 5), (5, 7), (2, 4)])


def cz_from_cnots() -> Diagram:
    """Controlled-Z from two CNOTs and phase gates.

    Wire 0 carries two control spiders then Z(pi/2); wire 1 carries a
    target, Z(-pi/2), a second target and Z(pi/2).
    """
    nodes = {0: Node.inp(0), 1: Node.inp(1),
             2: Node.z(), 3: Node.z(), 4: Node.z(1),
             5: Node.x(), 6: Node.z(3), 7: Node.x(), 8: Node.z(1),
             9: Node.out(0), 10: Node.out(1)}
    edges = [(0, 2), (2, 3), (3, 4), (4, 9),
             (1, 5), (5, 6), (6, 7), (7, 8), (8, 10),
             (2, 5), (3, 7)]
    return Diagram(nodes, edges)


def ket0(n: int = 1) -> Diagram:
    """|0...0> as a row of one-legged X spiders."""
    return tensor_all(Diagram({0: Node.x(), 1: Node.out(0)}, [(0, 1)]) for _ in range(n))


def plus_state() -> Diagram:
    return Diagram({0: Node.z(), 1: Node.out(0)}, [(0, 1)])


def spider_state(kind: str, phase: int, n_out: int = 1) -> Diagram:
    nodes = {0: Node(kind, phase % 4)}
    nodes.update({i + 1: Node.out(i) for i in range(n_out)})
    return Diagram(nodes, [(0, i + 1) for i in range(n_out)])


def on_wire(gate: Diagram, wire_index: int, n: int) -> Diagram:
    """Place a gate acting on consecutive wires starting at ``wire_index``."""
    k = gate.n_inputs
    return tensor_all([wires(wire_index), gate, wires(n - wire_index - k)])


def permutation(perm: list[int]) -> Diagram:
    """Wire permutation sending input i to output ``perm[i]``."""
    n = len(perm)
    nodes = {i: Node.inp(i) for i in range(n)}
    nodes.update({n + j: Node.out(j) for j in range(n)})
    return Diagram(nodes, [(i, n + perm[i]) for i in range(n)])


# DOT export ----------------------------------------------------------------------


_DOT_STYLE = {
    "Z": 'shape=circle, style=filled, fillcolor="#99dd99"',
    "X": 'shape=circle, style=filled, fillcolor="#ff8888"',
    "H": 'shape=box, style=filled, fillcolor="#ffff88"',
    "in": "shape=point",
    "out": "shape=point",
}


def export_dot(d: Diagram) -> str:
    lines = ["digraph zx {", "  rankdir=BT;"]
    for v, n in d.nodes.items():
        if n.is_spider:
            label = "" if n.phase == 0 else phase_str(n.phase)
        elif n.kind == "H":
            label = "H"
        else:
            label = f"{n.kind}{n.index}"
        lines.append(f'  n{v} [label="{label}", {_DOT_STYLE[n.kind]}];')
    for u, v in d.edges:
        lines.append(f"  n{u} -> n{v} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def node_counts(d: Diagram) -> dict[str, int]:
    c: dict[str, int] = defaultdict(int)
    for n in d.nodes.values():
        c[n.kind] += 1
    return dict(c)
