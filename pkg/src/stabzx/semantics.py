"""Exact interpretation of diagrams as matrices, plus random test data.

The interpreter is the reference oracle for everything else in the package:
each node becomes a small exact tensor and the network is contracted over its
internal edges. Row indices of the result encode outputs big-endian by
boundary index, column indices encode inputs the same way.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .diagram import Diagram, Node, cnot, compose_seq, h_gate, ket0, on_wire, wires, z_phase_gate
from .ring import ExactMatrix, ExactTensor, RingElem, is_zero, scalar_equal

__all__ = [
    "DEFAULT_MAX_QUBITS",
    "OracleBoundError",
    "interpret",
    "scalar_equal",
    "is_zero",
    "node_tensor",
    "make_rng",
    "random_stabilizer_diagram",
    "random_clifford_circuit",
    "random_zx_diagram",
]

DEFAULT_MAX_QUBITS = 12


class OracleBoundError(ValueError):
    """The diagram has more boundary wires than the oracle is allowed to handle."""


def _spider_coeffs(kind: str, phase: int, degree: int) -> ExactTensor:
    shape = (2,) * degree
    ip = RingElem.i_power(phase).coeffs
    if kind == "Z":
        c = np.zeros((4,) + shape, dtype=np.int64)
        c[(0,) + (0,) * degree] += 1
        for m in range(4):
            c[(m,) + (1,) * degree] += ip[m]
        return ExactTensor(c, 0)
    # X spider: |+..+> + i^phase |-..->, entries (1 + i^phase (-1)^weight) / sqrt2^degree
    c = np.zeros((4,) + shape, dtype=np.int64)
    for bits in product((0, 1), repeat=degree):
        sign = -1 if sum(bits) % 2 else 1
        c[(0,) + bits] += 1
        for m in range(4):
            c[(m,) + bits] += sign * ip[m]
    return ExactTensor(c, degree)


_H = ExactTensor.from_ints([[1, 1], [1, -1]], k=1)
_DELTA = ExactTensor.identity(2)


def node_tensor(node: Node, degree: int) -> ExactTensor:
    """Tensor of a single node with ``degree`` legs."""
    if node.is_spider:
        return _spider_coeffs(node.kind, node.phase, degree)
    if node.kind == "H":
        return _H
    return _DELTA


class _Net:
    """Tensors with string-free integer leg labels; each label occurs on two legs."""

    def __init__(self) -> None:
        self.items: list[tuple[int, ExactTensor, list[int]]] = []

    def add(self, order: int, t: ExactTensor, labels: list[int]) -> None:
        t, labels = _self_trace(t, labels)
        self.items.append((order, t, labels))


def _self_trace(t: ExactTensor, labels: list[int]) -> tuple[ExactTensor, list[int]]:
    while True:
        seen: dict[int, int] = {}
        for i, lab in enumerate(labels):
            if lab in seen:
                j = seen[lab]
                t = t.trace(j, i)
                labels = [x for p, x in enumerate(labels) if p not in (i, j)]
                break
            seen[lab] = i
        else:
            return t, labels


def _contract_pair(a: tuple[int, ExactTensor, list[int]],
                   b: tuple[int, ExactTensor, list[int]]) -> tuple[int, ExactTensor, list[int]]:
    oa, ta, la = a
    ob, tb, lb = b
    shared = [x for x in la if x in lb]
    ax_a = [la.index(x) for x in shared]
    ax_b = [lb.index(x) for x in shared]
    t = ta.contract(tb, ax_a, ax_b)
    labels = [x for x in la if x not in shared] + [x for x in lb if x not in shared]
    return min(oa, ob), t, labels


def interpret(d: Diagram, max_qubits: int = DEFAULT_MAX_QUBITS) -> ExactMatrix:
    """Exact matrix of ``d`` of shape ``(2**n_outputs, 2**n_inputs)``.

    Contraction is greedy: at every step the pair of tensors sharing at
    least one wire whose product has the fewest legs is contracted, ties
    broken by the smallest node ids. The order is therefore deterministic.
    """
    ins, outs = d.inputs(), d.outputs()
    if len(ins) + len(outs) > max_qubits:
        raise OracleBoundError(
            f"{len(ins) + len(outs)} boundary wires exceed the oracle bound of {max_qubits}")
    net = _Net()
    # internal edge labels are 0.., open boundary legs are negative
    open_label = {v: -1 - i for i, v in enumerate(outs + ins)}
    incident: dict[int, list[int]] = {v: [] for v in d.nodes}
    for e, (u, v) in enumerate(d.edges):
        incident[u].append(e)
        incident[v].append(e)
    for v, node in d.nodes.items():
        labels = list(incident[v])
        if node.is_boundary:
            labels = labels + [open_label[v]]
        net.add(v, node_tensor(node, len(incident[v])), labels)

    items = net.items
    while len(items) > 1:
        best = None
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                li, lj = items[i][2], items[j][2]
                shared = len(set(li) & set(lj))
                if not shared:
                    continue
                rank = len(li) + len(lj) - 2 * shared
                key = (rank, min(items[i][0], items[j][0]), max(items[i][0], items[j][0]))
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            # disconnected components: take outer products smallest first
            items.sort(key=lambda it: (len(it[2]), it[0]))
            i, j = 0, 1
        else:
            _, i, j = best
        merged = _contract_pair(items[i], items[j])
        items = [it for p, it in enumerate(items) if p not in (i, j)] + [merged]

    if items:
        _, t, labels = items[0]
    else:
        t, labels = ExactTensor.scalar(1), []
    want = [open_label[v] for v in outs + ins]
    t = t.transpose([labels.index(x) for x in want])
    return t.reshape((2 ** len(outs), 2 ** len(ins)))


# random data ---------------------------------------------------------------------


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator seeded from a 64-bit integer."""
    return np.random.Generator(np.random.PCG64(seed & 0xFFFF_FFFF_FFFF_FFFF))


def _gate_sequence(n: int, depth: int, rng: np.random.Generator) -> list[Diagram]:
    gates = []
    for _ in range(depth):
        g = int(rng.integers(3)) if n > 1 else int(rng.integers(2))
        if g == 0:
            gates.append(on_wire(h_gate(), int(rng.integers(n)), n))
        elif g == 1:
            gates.append(on_wire(z_phase_gate(1), int(rng.integers(n)), n))
        else:
            c, t = (int(x) for x in rng.choice(n, size=2, replace=False))
            gates.append(_cnot_between(c, t, n))
    return gates


def _cnot_between(c: int, t: int, n: int) -> Diagram:
    base = on_wire(cnot(), 0, n)
    # relabel boundaries so that wire 0 becomes c and wire 1 becomes t
    order = [c, t] + [w for w in range(n) if w not in (c, t)]
    nodes = {}
    for v, node in base.nodes.items():
        if node.is_boundary:
            node = Node(node.kind, index=order[node.index])
        nodes[v] = node
    return Diagram(nodes, base.edges)


def random_clifford_circuit(n: int, depth: int, seed: int) -> Diagram:
    """Unitary diagram of ``depth`` gates drawn uniformly from H, S and CNOT."""
    rng = make_rng(seed)
    d = wires(n)
    for g in _gate_sequence(n, depth, rng):
        d = compose_seq(d, g)
    return d


def random_stabilizer_diagram(n: int, depth: int, seed: int) -> Diagram:
    """``ket0(n)`` followed by ``depth`` random gates from H, S and CNOT.

    The stream comes from numpy's PCG64 generator seeded with ``seed``, so a
    seed fixes the diagram byte for byte.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    rng = make_rng(seed)
    d = ket0(n)
    for g in _gate_sequence(n, depth, rng):
        d = compose_seq(d, g)
    return d


def random_zx_diagram(n_in: int, n_out: int, n_spiders: int, seed: int,
                      edge_prob: float = 0.35, h_prob: float = 0.3) -> Diagram:
    """Arbitrary ZX diagram: random spiders, random wiring, random phases.

    Unlike circuits these may contain self-loops, parallel edges and
    zero-valued pieces, so they exercise the zero branches of the pipeline.
    """
    rng = make_rng(seed)
    nodes: dict[int, Node] = {}
    edges: list[tuple[int, int]] = []
    m = max(n_spiders, 1)
    for s in range(m):
        kind = "Z" if rng.random() < 0.5 else "X"
        nodes[s] = Node(kind, int(rng.integers(4)))
    nxt = m

    def link(u: int, v: int) -> None:
        nonlocal nxt
        if u != v and rng.random() < h_prob:
            nodes[nxt] = Node.h()
            edges.extend([(u, nxt), (nxt, v)])
            nxt += 1
        else:
            edges.append((u, v))

    for u in range(m):
        for v in range(u, m):
            p = edge_prob if u != v else edge_prob / 4
            if rng.random() < p:
                link(u, v)
            if u != v and rng.random() < edge_prob / 6:
                link(u, v)
    for kind, count in (("in", n_in), ("out", n_out)):
        for i in range(count):
            nodes[nxt] = Node(kind, index=i)
            edges.append((nxt, int(rng.integers(m))))
            nxt += 1
    return Diagram(nodes, edges)
