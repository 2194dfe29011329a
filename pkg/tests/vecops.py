"""Independent exact state-vector versions of the pipeline primitives.

States are ExactTensors of shape (2**n, 1), qubit 0 most significant. Each
function realises one primitive's semantic contract directly, without going
through diagrams or graph states.
"""

from __future__ import annotations

from stabzx.clifford1 import C1, to_matrix
from stabzx.normalize import ApplyClifford, Join, NewQubit, PlusEffect, Split
from stabzx.ring import ExactTensor

PLUS = ExactTensor.from_ints([[1], [1]])
PLUS_EFFECT = ExactTensor.from_ints([1, 1])
COPY = ExactTensor.from_ints([[[1, 0], [0, 0]], [[0, 0], [0, 1]]])


def _n(psi: ExactTensor) -> int:
    return psi.shape[0].bit_length() - 1


def _tensor(psi: ExactTensor) -> ExactTensor:
    return psi.reshape((2,) * _n(psi))


def _vector(t: ExactTensor) -> ExactTensor:
    return t.reshape((2 ** t.ndim, 1))


def _move(t: ExactTensor, src: int, dst: int) -> ExactTensor:
    order = list(range(t.ndim))
    order.insert(dst, order.pop(src))
    return t.transpose(order)


def empty() -> ExactTensor:
    return ExactTensor.identity(1)


def new(psi: ExactTensor) -> ExactTensor:
    return psi.kron(PLUS)


def cliff(psi: ExactTensor, q: int, u: C1) -> ExactTensor:
    t = to_matrix(u).contract(_tensor(psi), [1], [q])
    return _vector(_move(t, 0, q))


def eff(psi: ExactTensor, q: int) -> ExactTensor:
    t = PLUS_EFFECT.contract(_tensor(psi), [0], [q])
    return _vector(t)


def split(psi: ExactTensor, q: int) -> ExactTensor:
    n = _n(psi)
    t = COPY.contract(_tensor(psi), [0], [q])
    # legs: copy of q, appended copy, then the others in order
    t = _move(t, 1, n)
    t = _move(t, 0, q)
    return _vector(t)


def join(psi: ExactTensor, a: int, b: int) -> ExactTensor:
    t = COPY.contract(_tensor(psi), [1, 2], [a, b])
    pos = a - 1 if b < a else a
    return _vector(_move(t, 0, pos))


def step(psi: ExactTensor, p) -> ExactTensor:
    if isinstance(p, NewQubit):
        return new(psi)
    if isinstance(p, ApplyClifford):
        return cliff(psi, p.qubit, p.op)
    if isinstance(p, PlusEffect):
        return eff(psi, p.qubit)
    if isinstance(p, Split):
        return split(psi, p.qubit)
    if isinstance(p, Join):
        return join(psi, p.a, p.b)
    raise TypeError(p)


CZ = ExactTensor.from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]).reshape((2, 2, 2, 2))


def cz(psi: ExactTensor, u: int, v: int) -> ExactTensor:
    a, b = sorted((u, v))
    t = CZ.contract(_tensor(psi), [2, 3], [a, b])
    t = _move(t, 1, b)
    t = _move(t, 0, a)
    return _vector(t)


def graph_state(s) -> ExactTensor:
    """Vector of a GS-LC state: CZs on |+>^n, then the vertex operators."""
    psi = empty()
    for _ in range(s.n):
        psi = new(psi)
    for u, v in s.graph.edges():
        psi = cz(psi, u, v)
    for q, op in enumerate(s.ops):
        psi = cliff(psi, q, op)
    return psi
