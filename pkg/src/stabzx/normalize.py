"""From arbitrary stabilizer state diagrams to reduced GS-LC form.

:func:`decompose` cuts a state diagram into a sequence of primitives (new
qubit, single-qubit Clifford, plus effect, 1->2 and 2->1 green spiders);
:func:`to_gslc` folds them over a GS-LC state; :func:`reduce` brings the
result into rGS-LC form, where every vertex operator lies in the
six-element set R and no two adjacent vertices both carry a red rotation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from . import clifford1 as c1
from .clifford1 import C1, RClass, in_R
from .diagram import Diagram, DiagramError
from .gslc import (
    ZERO,
    GsLc,
    Zero,
    add_vertex,
    edge_local_comp,
    fixpoint,
    local_comp,
    permute,
    remove_vertex,
    swap,
)
from .ring import RingElem

# primitives ----------------------------------------------------------------------------


@dataclass(frozen=True)
class NewQubit:
    def __str__(self) -> str:
        return "NEW"


@dataclass(frozen=True)
class ApplyClifford:
    qubit: int
    op: C1

    def __str__(self) -> str:
        return f"CLIFF {self.qubit} {self.op.name}"


@dataclass(frozen=True)
class PlusEffect:
    qubit: int

    def __str__(self) -> str:
        return f"EFF {self.qubit}"


@dataclass(frozen=True)
class Split:
    qubit: int

    def __str__(self) -> str:
        return f"SPLIT {self.qubit}"


@dataclass(frozen=True)
class Join:
    a: int
    b: int

    def __str__(self) -> str:
        return f"JOIN {self.a} {self.b}"


Primitive = Union[NewQubit, ApplyClifford, PlusEffect, Split, Join]


def dump(prims: list[Primitive]) -> str:
    return "".join(f"{p}\n" for p in prims)


class _Emitter:
    """Tracks which diagram wire each live qubit carries while emitting primitives."""

    def __init__(self) -> None:
        self.prims: list[Primitive] = []
        self.live: list[tuple] = []

    def new(self, label: tuple) -> int:
        self.prims.append(NewQubit())
        self.live.append(label)
        return len(self.live) - 1

    def cliff(self, q: int, u: C1) -> None:
        if u != c1.IDENTITY:
            self.prims.append(ApplyClifford(q, u))

    def eff(self, q: int) -> None:
        self.prims.append(PlusEffect(q))
        del self.live[q]

    def split(self, q: int, label: tuple) -> int:
        self.prims.append(Split(q))
        self.live.append(label)
        return len(self.live) - 1

    def join(self, a: int, b: int) -> int:
        """Fuse ``b`` into ``a``; returns the new position of ``a``."""
        self.prims.append(Join(a, b))
        del self.live[b]
        return a - 1 if b < a else a

    def pos(self, label: tuple) -> int:
        return self.live.index(label)


def decompose(d: Diagram) -> list[Primitive]:
    """Primitive sequence building the state ``d``.

    Non-boundary nodes are visited in increasing id order. Each wire of the
    diagram becomes a live qubit once its first endpoint has been visited and
    disappears when its second endpoint is. X spiders are turned into Z
    spiders by Hadamards on all their legs. At the end the wires ending on
    output boundaries are permuted into output order.
    """
    if d.n_inputs:
        raise DiagramError("decompose expects a state (no inputs); bend inputs first")
    em = _Emitter()
    hadamard = c1.H

    def label(e: int) -> tuple:
        u, v = d.edges[e]
        for x in (u, v):
            if d.nodes[x].kind == "out":
                return ("out", d.nodes[x].index)
        return ("e", e)

    incident: dict[int, list[int]] = {v: [] for v in d.nodes}
    for e, (u, v) in enumerate(d.edges):
        incident[u].append(e)
        if u != v:
            incident[v].append(e)

    # bare cups between two outputs
    for e, (u, v) in enumerate(d.edges):
        if d.nodes[u].kind == "out" and d.nodes[v].kind == "out":
            q = em.new(("out", d.nodes[u].index))
            em.split(q, ("out", d.nodes[v].index))

    for v, node in d.nodes.items():
        if node.is_boundary:
            continue
        edges = incident[v]
        loops = [e for e in edges if d.edges[e][0] == d.edges[e][1]]
        ins = [e for e in edges if e not in loops and ("e", e) in em.live]
        outs = [e for e in edges if e not in loops and ("e", e) not in em.live]
        if node.kind == "H":
            if loops:
                # a Hadamard wired to itself is its trace, which vanishes
                q = em.new(("loop", v, 0))
                r = em.split(q, ("loop", v, 1))
                em.cliff(r, hadamard)
                q = em.join(q, r)
                em.eff(q)
            elif len(ins) == 2:
                em.cliff(em.pos(("e", ins[0])), hadamard)
                q = em.join(em.pos(("e", ins[0])), em.pos(("e", ins[1])))
                em.eff(q)
            elif len(ins) == 1:
                q = em.pos(("e", ins[0]))
                em.cliff(q, hadamard)
                em.live[q] = label(outs[0])
            else:
                q = em.new(label(outs[0]))
                r = em.split(q, label(outs[1]))
                em.cliff(r, hadamard)
            continue

        # spiders; self-loops on a spider are removed by the spider law
        red = node.kind == "X"
        if ins:
            if red:
                for e in ins:
                    em.cliff(em.pos(("e", e)), hadamard)
            q = em.pos(("e", ins[0]))
            for e in ins[1:]:
                q = em.join(q, em.pos(("e", e)))
        else:
            q = em.new(("spider", v))
        if node.phase:
            em.cliff(q, c1.Z(node.phase))
        if not outs:
            em.eff(q)
            continue
        em.live[q] = label(outs[0])
        legs = [q]
        for e in outs[1:]:
            legs.append(em.split(q, label(e)))
        if red:
            for r in legs:
                em.cliff(r, hadamard)

    # permute output wires into boundary order
    want = [("out", i) for i in range(d.n_outputs)]
    if em.live != want:
        for lab in want:
            p = em.pos(lab)
            em.new(("tmp",))
            em.join(len(em.live) - 1, p)
            em.live[-1] = lab
    if em.live != want:
        raise AssertionError("wire bookkeeping out of sync")
    return em.prims


# steering -------------------------------------------------------------------------------

_XM1 = c1.X(-1)
_Z1 = c1.Z(1)


def _plan(start: C1, goal) -> list[str]:
    """Shortest word over {LC at q, LC at partner} taking ``start`` into ``goal``."""
    seen = {start: []}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if goal(u):
            return seen[u]
        for move, gen in (("q", _XM1), ("p", _Z1)):
            w = c1.compose(u, gen)
            if w not in seen:
                seen[w] = seen[u] + [move]
                queue.append(w)
    raise AssertionError("the two moves generate the whole Clifford group")


def steer(s: GsLc, q: int, partner: int, goal) -> GsLc:
    """Local complementations about ``q`` and a neighbour until ``goal(op_q)``."""
    if not s.graph.has_edge(q, partner):
        raise ValueError("swapping partner must be adjacent")
    for move in _plan(s.ops[q], goal):
        s = local_comp(s, q if move == "q" else partner)
        if not s.graph.has_edge(q, partner):
            raise AssertionError("edge to the swapping partner was lost")
    if not goal(s.ops[q]):
        raise AssertionError("steering missed its goal")
    return s


def _diagonal(u: C1) -> bool:
    return u.image_z == c1.SignedPauli("Z", 1)


def _partner(s: GsLc, q: int, exclude: int | None = None) -> int | None:
    nb = [u for u in s.graph.neighbours(q) if u != exclude]
    return nb[0] if nb else None


# primitive application ---------------------------------------------------------------------


def apply_new_qubit(s: GsLc | Zero) -> GsLc | Zero:
    if isinstance(s, Zero):
        return ZERO
    return add_vertex(s)


def apply_clifford(s: GsLc | Zero, q: int, u: C1) -> GsLc | Zero:
    if isinstance(s, Zero):
        return ZERO
    _range(s, q)
    return s.left(q, u)


def _range(s: GsLc, *qs: int) -> None:
    for q in qs:
        if not 0 <= q < s.n:
            raise IndexError(f"qubit {q} out of range for n={s.n}")


def apply_plus_effect(s: GsLc | Zero, q: int) -> GsLc | Zero:
    """Post-select qubit ``q`` on <+|."""
    if isinstance(s, Zero):
        return ZERO
    _range(s, q)
    p = _partner(s, q)
    if p is None:
        # U|+> is the +1 eigenstate of U X U^dag; <+| kills it only if that is -X
        if s.ops[q].image_x == c1.SignedPauli("X", -1):
            return ZERO
        return remove_vertex(s, q)
    # make <+| U_q a computational-basis effect <b|
    s = steer(s, q, p, lambda u: u.image_z.letter == "X")
    flip = s.ops[q].image_z.sign < 0
    if flip:
        for u in s.graph.neighbours(q):
            s = s.right(u, c1.Z(2))
    return remove_vertex(s, q)


_PHASE_OF = {("X", 1): 0, ("Y", 1): 1, ("X", -1): 2, ("Y", -1): 3}


def apply_split(s: GsLc | Zero, q: int) -> GsLc | Zero:
    """Green 1->2 spider on ``q``; the new leg is appended as the last qubit."""
    if isinstance(s, Zero):
        return ZERO
    _range(s, q)
    p = _partner(s, q)
    if p is None:
        ix = s.ops[q].image_x
        if ix.letter == "Z":
            # a computational basis state is copied
            return add_vertex(s, s.ops[q])
        # Z(a)|+> splits into Z(a) on one half of a Bell pair
        s = s.with_op(q, c1.Z(_PHASE_OF[(ix.letter, ix.sign)]))
    else:
        s = steer(s, q, p, _diagonal)
    s = add_vertex(s, c1.H)
    return GsLc(s.graph.toggle(q, s.n - 1), s.ops)


def _absorb(s: GsLc, a: int, b: int) -> GsLc | Zero:
    """Join a diagonal ``a`` with a leaf ``b`` hanging off it."""
    from .clifford1 import to_matrix

    v = to_matrix(c1.compose(s.ops[b], c1.H))
    d0, d1 = v[0, 0], v[1, 1]
    if d0.is_zero() and d1.is_zero():
        return ZERO
    for c in range(4):
        if d1 == d0 * RingElem.i_power(c):
            s = s.right(a, c1.Z(c))
            return remove_vertex(s, b)
    raise AssertionError("Clifford diagonal ratio must be a power of i")


def _merge(s: GsLc, a: int, b: int) -> GsLc:
    """Join two diagonal vertices into ``a``."""
    alpha, beta = c1.z_phase(s.ops[a]), c1.z_phase(s.ops[b])
    g = s.graph
    joined = g.has_edge(a, b)
    nb = (set(g.neighbours(a)) ^ set(g.neighbours(b))) - {a, b}
    for u in set(g.neighbours(a)) - {b}:
        g = g.toggle(a, u)
    for u in nb:
        g = g.toggle(a, u)
    s = GsLc(g, s.ops).with_op(a, c1.Z(alpha + beta + (2 if joined else 0)))
    return remove_vertex(s, b)


def _join_isolated(s: GsLc, a: int, b: int) -> GsLc | Zero:
    """Join where ``b`` is isolated, so it is a single-qubit state U_b|+>."""
    ix = s.ops[b].image_x
    s = remove_vertex(s, b)
    a = a - 1 if b < a else a
    if ix.letter != "Z":
        # the state Z(c)|+> acts as the diagonal map Z(c)
        return s.left(a, c1.Z(_PHASE_OF[(ix.letter, ix.sign)]))
    # |beta> acts as the projector |beta><beta|
    xb = c1.X(0 if ix.sign > 0 else 2)
    s = s.left(a, c1.compose(c1.H, xb))
    r = apply_plus_effect(s, a)
    if isinstance(r, Zero):
        return ZERO
    r = add_vertex(r, c1.compose(xb, c1.H))
    order = list(range(r.n - 1))
    order.insert(a, r.n - 1)
    return permute(r, order)


def apply_join(s: GsLc | Zero, a: int, b: int) -> GsLc | Zero:
    """Green 2->1 spider on ``a`` and ``b``; the result sits where ``a`` was."""
    if isinstance(s, Zero):
        return ZERO
    _range(s, a, b)
    if a == b:
        raise ValueError("join needs two distinct qubits")
    g = s.graph
    if not g.degree(b):
        return _join_isolated(s, a, b)
    if not g.degree(a):
        return _join_isolated(swap(s, a, b), a, b)
    if _partner(s, a, b) is None and _partner(s, b, a) is not None:
        s = swap(s, a, b)
    pa = _partner(s, a, b)
    s = steer(s, a, pa if pa is not None else b, _diagonal)
    pb = _partner(s, b, a)
    if pb is None:
        return _absorb(s, a, b)
    s = steer(s, b, pb, _diagonal)
    if not _diagonal(s.ops[a]):
        raise AssertionError("steering b disturbed a")
    return _merge(s, a, b)


def apply_primitive(s: GsLc | Zero, p: Primitive) -> GsLc | Zero:
    if isinstance(p, NewQubit):
        return apply_new_qubit(s)
    if isinstance(p, ApplyClifford):
        return apply_clifford(s, p.qubit, p.op)
    if isinstance(p, PlusEffect):
        return apply_plus_effect(s, p.qubit)
    if isinstance(p, Split):
        return apply_split(s, p.qubit)
    if isinstance(p, Join):
        return apply_join(s, p.a, p.b)
    raise TypeError(f"not a primitive: {p!r}")


def replay(prims: list[Primitive], start: GsLc | Zero | None = None) -> GsLc | Zero:
    s = GsLc.plus(0) if start is None else start
    for p in prims:
        s = apply_primitive(s, p)
    return s


def to_gslc(d: Diagram) -> GsLc | Zero:
    """GS-LC form of the state ``d`` (or :data:`ZERO`)."""
    return replay(decompose(d))


# reduction ----------------------------------------------------------------------------------


@dataclass
class ReduceStats:
    local_comps: int = 0
    fixpoints: int = 0
    edge_comps: int = 0
    n: int = 0
    trace: list[str] = field(default_factory=list)


def is_reduced(s: GsLc | Zero) -> bool:
    if isinstance(s, Zero):
        return True
    cls = [in_R(u) for u in s.ops]
    if any(c is RClass.NOT_IN_R for c in cls):
        return False
    return not any(cls[u] is cls[v] is RClass.RED_TOPPED for u, v in s.graph.edges())


def _into_R(s: GsLc, v: int, stats: ReduceStats) -> GsLc:
    """Land ``op_v`` in R with X rotations under it (local complementation / fixpoint)."""
    for k in range(4):
        if in_R(c1.compose(s.ops[v], c1.X(k))) is not RClass.NOT_IN_R:
            break
    else:
        raise AssertionError("every coset of the X rotations meets R")
    if k in (1, 2):
        s = fixpoint(s, v)
        stats.fixpoints += 1
        stats.trace.append(f"fixpoint {v}")
    if k in (1, 3):
        s = local_comp(s, v)
        stats.local_comps += 1
        stats.trace.append(f"lc {v}")
    return s


def reduce(s: GsLc | Zero, stats: ReduceStats | None = None) -> GsLc | Zero:
    """rGS-LC form of ``s`` by local complementations and fixpoints."""
    if stats is None:
        stats = ReduceStats()
    if isinstance(s, Zero):
        return ZERO
    stats.n = s.n
    # condition (i): every vertex operator in R
    while True:
        bad = [v for v in range(s.n) if in_R(s.ops[v]) is RClass.NOT_IN_R]
        if not bad:
            break
        s = _into_R(s, bad[0], stats)
    if stats.local_comps > 2 * s.n:
        raise AssertionError(f"{stats.local_comps} local complementations exceed 2n")
    # condition (ii): no edge between two red-topped vertices
    while True:
        red = [(u, v) for u, v in s.graph.edges()
               if in_R(s.ops[u]) is in_R(s.ops[v]) is RClass.RED_TOPPED]
        if not red:
            break
        u, v = red[0]
        s = edge_local_comp(s, u, v)
        stats.edge_comps += 1
        stats.trace.append(f"edge-lc {u} {v}")
        for x in (u, v, u):
            if in_R(s.ops[x]) is not RClass.GREEN_ONLY:
                s = fixpoint(s, x)
                stats.fixpoints += 1
                stats.trace.append(f"fixpoint {x}")
        if not (in_R(s.ops[u]) is in_R(s.ops[v]) is RClass.GREEN_ONLY):
            raise AssertionError("edge complementation left a red rotation behind")
    if stats.edge_comps > s.n // 2:
        raise AssertionError(f"{stats.edge_comps} edge complementations exceed n/2")
    if not is_reduced(s):
        raise AssertionError("reduction did not reach rGS-LC form")
    return s


def normalize(d: Diagram, stats: ReduceStats | None = None) -> GsLc | Zero:
    """rGS-LC form of a state diagram."""
    return reduce(to_gslc(d), stats)
