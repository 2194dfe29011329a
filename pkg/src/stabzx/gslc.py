"""Graph states with local Cliffords (GS-LC) and their equivalence moves.

A :class:`GsLc` is a simple graph plus one single-qubit Clifford per
vertex, the operator sitting on that vertex's output wire. The zero state
is the separate value :data:`ZERO`. Graphs store one integer bitset per
vertex, so a local complementation is a masked XOR of rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import clifford1 as c1
from .clifford1 import C1, IDENTITY
from .diagram import Builder, Diagram, Node


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``; ``rows[v]`` is a neighbour bitset."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        for v, r in enumerate(self.rows):
            if r >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if r >> len(self.rows):
                raise ValueError(f"vertex {v} has a neighbour out of range")
            for u in _bits(r):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls((0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    def toggle(self, u: int, v: int) -> Graph:
        rows = list(self.rows)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph(tuple(rows))

    def local_complement(self, v: int) -> Graph:
        """G * v: complement the subgraph induced by the neighbourhood of v."""
        nb = self.rows[v]
        rows = list(self.rows)
        for u in _bits(nb):
            rows[u] ^= nb & ~(1 << u)
        return Graph(tuple(rows))

    def add_vertex(self) -> Graph:
        return Graph(self.rows + (0,))

    def remove_vertex(self, v: int) -> Graph:
        low = (1 << v) - 1
        rows = []
        for u, r in enumerate(self.rows):
            if u != v:
                rows.append((r & low) | ((r >> (v + 1)) << v))
        return Graph(tuple(rows))

    def adjacency(self) -> list[list[int]]:
        return [[int(self.has_edge(u, v)) for v in range(self.n)] for u in range(self.n)]


def _bits(x: int) -> Iterable[int]:
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


@dataclass(frozen=True)
class GsLc:
    graph: Graph
    ops: tuple[C1, ...]

    def __post_init__(self) -> None:
        if len(self.ops) != self.graph.n:
            raise ValueError("one vertex operator per vertex required")

    @property
    def n(self) -> int:
        return self.graph.n

    is_zero = False

    @classmethod
    def plus(cls, n: int) -> GsLc:
        return cls(Graph.empty(n), (IDENTITY,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   ops: Sequence[C1] | None = None) -> GsLc:
        return cls(Graph.from_edges(n, edges), tuple(ops) if ops is not None else (IDENTITY,) * n)

    def with_op(self, v: int, u: C1) -> GsLc:
        ops = list(self.ops)
        ops[v] = u
        return GsLc(self.graph, tuple(ops))

    def right(self, v: int, u: C1) -> GsLc:
        """Compose ``u`` under the vertex operator of ``v`` (nearest the graph)."""
        return self.with_op(v, c1.compose(self.ops[v], u))

    def left(self, v: int, u: C1) -> GsLc:
        """Apply ``u`` after the vertex operator of ``v``."""
        return self.with_op(v, c1.compose(u, self.ops[v]))

    def __str__(self) -> str:
        return to_json(self)


@dataclass(frozen=True)
class Zero:
    """The zero state, which has no graph."""

    is_zero = True

    def __str__(self) -> str:
        return to_json(self)


ZERO = Zero()


def _check(s: GsLc, *vs: int) -> None:
    if isinstance(s, Zero):
        raise ValueError("operation undefined on the zero state")
    for v in vs:
        if not 0 <= v < s.n:
            raise IndexError(f"qubit {v} out of range for n={s.n}")


# equivalence moves ----------------------------------------------------------------

_XM1 = c1.X(-1)
_Z1 = c1.Z(1)
_X2 = c1.X(2)
_Z2 = c1.Z(2)
_EDGE_OP = c1.compose(c1.Z(1), c1.compose(c1.X(-1), c1.Z(1)))


def local_comp(s: GsLc, v: int) -> GsLc:
    """Local complementation about ``v`` without changing the state."""
    _check(s, v)
    ops = list(s.ops)
    ops[v] = c1.compose(ops[v], _XM1)
    for u in s.graph.neighbours(v):
        ops[u] = c1.compose(ops[u], _Z1)
    return GsLc(s.graph.local_complement(v), tuple(ops))


def fixpoint(s: GsLc, v: int) -> GsLc:
    """X(pi) under ``v`` and Z(pi) under its neighbours: the graph state is unchanged."""
    _check(s, v)
    ops = list(s.ops)
    ops[v] = c1.compose(ops[v], _X2)
    for u in s.graph.neighbours(v):
        ops[u] = c1.compose(ops[u], _Z2)
    return GsLc(s.graph, tuple(ops))


def edge_local_comp(s: GsLc, v: int, w: int) -> GsLc:
    """Local complementation along the edge ``{v, w}``."""
    _check(s, v, w)
    if v == w:
        raise ValueError("edge complementation needs two distinct vertices")
    if not s.graph.has_edge(v, w):
        raise ValueError(f"{v}-{w} is not an edge")
    g = s.graph
    others = (set(g.neighbours(v)) | set(g.neighbours(w))) - {v, w}
    ops = list(s.ops)
    for x in (v, w):
        ops[x] = c1.compose(ops[x], _EDGE_OP)
    for x in others:
        ops[x] = c1.compose(ops[x], _Z2)
    g = g.local_complement(v).local_complement(w).local_complement(v)
    return GsLc(g, tuple(ops))


# conversions -------------------------------------------------------------------------


def to_diagram(s: GsLc | Zero, n_zero: int = 0) -> Diagram:
    """Graph-state diagram with H boxes on edges and vertex operators as spiders.

    The zero state becomes a legless Z(pi) spider; ``n_zero`` extra |+>
    outputs can be attached so the arity matches a state it replaces.
    """
    b = Builder()
    if isinstance(s, Zero):
        b.add(Node.z(2))
        for i in range(n_zero):
            v = b.add(Node.z())
            b.connect(v, b.add(Node.out(i)))
        return b.build()
    vert = [b.add(Node.z()) for _ in range(s.n)]
    for u, v in s.graph.edges():
        h = b.add(Node.h())
        b.connect(vert[u], h)
        b.connect(h, vert[v])
    for q in range(s.n):
        end = vert[q]
        for axis, k in reversed(c1.to_normal_word(s.ops[q])):
            x = b.add(Node(axis, k % 4))
            b.connect(end, x)
            end = x
        b.connect(end, b.add(Node.out(q)))
    return b.build()


@dataclass(frozen=True)
class PauliProduct:
    sign: int
    letters: tuple[str, ...]

    def __str__(self) -> str:
        return ("" if self.sign > 0 else "-") + "".join(self.letters)


def stabilizer_generators(g: Graph) -> list[PauliProduct]:
    gens = []
    for v in range(g.n):
        letters = ["I"] * g.n
        letters[v] = "X"
        for u in g.neighbours(v):
            letters[u] = "Z"
        gens.append(PauliProduct(1, tuple(letters)))
    return gens


def to_document(s: GsLc | Zero) -> dict:
    if isinstance(s, Zero):
        return {"zero": True}
    return {"n": s.n, "edges": [list(e) for e in s.graph.edges()],
            "ops": [u.name for u in s.ops]}


def to_json(s: GsLc | Zero) -> str:
    return json.dumps(to_document(s), separators=(",", ":"))


def from_json(text: str) -> GsLc | Zero:
    doc = json.loads(text)
    if doc.get("zero") is True:
        return ZERO
    n = doc["n"]
    ops = [c1.parse_name(x) for x in doc["ops"]]
    return GsLc(Graph.from_edges(n, [tuple(e) for e in doc["edges"]]), tuple(ops))


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled simple graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# relabelling helpers -------------------------------------------------------------------


def remove_vertex(s: GsLc, v: int) -> GsLc:
    """Drop vertex ``v`` and its edges; later vertices shift down by one."""
    _check(s, v)
    return GsLc(s.graph.remove_vertex(v), s.ops[:v] + s.ops[v + 1:])


def add_vertex(s: GsLc, op: C1 = IDENTITY) -> GsLc:
    return GsLc(s.graph.add_vertex(), s.ops + (op,))


def permute(s: GsLc, order: Sequence[int]) -> GsLc:
    """New vertex ``i`` is old vertex ``order[i]``."""
    if sorted(order) != list(range(s.n)):
        raise ValueError("order must be a permutation of the vertices")
    pos = {old: new for new, old in enumerate(order)}
    g = Graph.from_edges(s.n, [(pos[u], pos[v]) for u, v in s.graph.edges()])
    return GsLc(g, tuple(s.ops[o] for o in order))


def swap(s: GsLc, a: int, b: int) -> GsLc:
    order = list(range(s.n))
    order[a], order[b] = order[b], order[a]
    return permute(s, order)
