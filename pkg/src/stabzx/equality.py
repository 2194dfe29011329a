"""Deciding equality of stabilizer diagrams.

Two rGS-LC states are first brought into a *simplified pair*: whenever a
qubit carries a red rotation only on the left and an adjacent qubit carries
one only on the right, an equivalence move transfers a red rotation so the
two pair up. For simplified pairs, equality of the states is decided by
plain identity of graphs and vertex operators. Maps are compared by bending
their inputs into outputs first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford1 import RClass, in_R, z_phase
from .diagram import Diagram, bend_inputs
from .gslc import GsLc, Zero, edge_local_comp, fixpoint, local_comp
from .normalize import ReduceStats, is_reduced, reduce, to_gslc


@dataclass(frozen=True)
class SimplifiedPair:
    left: GsLc
    right: GsLc
    steps: tuple[str, ...] = ()


def _red(s: GsLc) -> list[bool]:
    return [in_R(u) is RClass.RED_TOPPED for u in s.ops]


def find_unsimplified(a: GsLc, b: GsLc) -> tuple[int, int, int] | None:
    """First ``(p, q, side)`` violating the simplified-pair condition.

    ``p`` is red only in ``a``, ``q`` red only in ``b``; ``side`` is 0 if
    they are adjacent in ``a`` and 1 otherwise (adjacent in ``b``).
    """
    ra, rb = _red(a), _red(b)
    for p in range(a.n):
        if not (ra[p] and not rb[p]):
            continue
        for q in range(a.n):
            if not (rb[q] and not ra[q]):
                continue
            if a.graph.has_edge(p, q):
                return p, q, 0
            if b.graph.has_edge(p, q):
                return p, q, 1
    return None


def _land_in_R(s: GsLc, vs: tuple[int, ...]) -> GsLc:
    for v in vs:
        if in_R(s.ops[v]) is RClass.NOT_IN_R:
            s = fixpoint(s, v)
    return s


def transfer_red(s: GsLc, red: int, green: int) -> GsLc:
    """Move the red rotation of ``red`` onto its green neighbour ``green``.

    A green neighbour with phase 0 or pi takes local complementations about
    ``green`` then ``red``; one with phase +-pi/2 takes a complementation
    along the edge. Fixpoints then bring both operators back into R.
    """
    if z_phase(s.ops[green]) % 2 == 0:
        s = local_comp(local_comp(s, green), red)
    else:
        s = edge_local_comp(s, red, green)
    s = _land_in_R(s, (red, green))
    if not is_reduced(s):
        raise AssertionError("red transfer left rGS-LC form")
    if not (in_R(s.ops[green]) is RClass.RED_TOPPED and in_R(s.ops[red]) is RClass.GREEN_ONLY):
        raise AssertionError("red rotation did not move")
    return s


def simplify_pair(a: GsLc, b: GsLc) -> SimplifiedPair:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")
    if not (is_reduced(a) and is_reduced(b)):
        raise ValueError("simplify_pair expects rGS-LC states")
    steps = []
    reds = sum(_red(a)) + sum(_red(b))
    for _ in range(a.n + 1):
        hit = find_unsimplified(a, b)
        if hit is None:
            return SimplifiedPair(a, b, tuple(steps))
        p, q, side = hit
        if side == 0:
            a = transfer_red(a, p, q)
        else:
            b = transfer_red(b, q, p)
        steps.append(f"{'left' if side == 0 else 'right'} {p} {q}")
        if sum(_red(a)) + sum(_red(b)) != reds:
            raise AssertionError("red count changed")
    raise AssertionError("pair simplification did not terminate")


def identical(a: GsLc, b: GsLc) -> bool:
    return a.graph == b.graph and a.ops == b.ops


def equal_states(a: GsLc | Zero, b: GsLc | Zero) -> bool:
    """Whether two GS-LC states are equal up to a nonzero scalar."""
    za, zb = isinstance(a, Zero), isinstance(b, Zero)
    if za or zb:
        return za and zb
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")
    pair = simplify_pair(reduce(a), reduce(b))
    return identical(pair.left, pair.right)


def normal_pair(d1: Diagram, d2: Diagram) -> tuple[GsLc | Zero, GsLc | Zero]:
    """Bent, reduced and pair-simplified forms of two diagrams of equal arity."""
    s1 = reduce(to_gslc(bend_inputs(d1)), ReduceStats())
    s2 = reduce(to_gslc(bend_inputs(d2)), ReduceStats())
    if isinstance(s1, Zero) or isinstance(s2, Zero):
        return s1, s2
    pair = simplify_pair(s1, s2)
    return pair.left, pair.right


def equal_diagrams(d1: Diagram, d2: Diagram) -> bool:
    """Whether two diagrams denote the same map up to a nonzero scalar."""
    if (d1.n_inputs, d1.n_outputs) != (d2.n_inputs, d2.n_outputs):
        return False
    return equal_states(to_gslc(bend_inputs(d1)), to_gslc(bend_inputs(d2)))
