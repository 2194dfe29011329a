"""Exact arithmetic over Z[w][1/sqrt2] with w = exp(i*pi/4).

A scalar ``a0 + a1 w + a2 w^2 + a3 w^3`` divided by ``sqrt2**k`` is a
:class:`RingElem`. An :class:`ExactTensor` stores a whole array of such
values with one shared ``k``; the coefficient array has a leading axis of
length 4 holding the components of 1, w, w^2 and w^3.

Every amplitude a stabilizer ZX diagram can produce lives in this ring, so
equality decisions on these objects are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# int64 products are switched to Python ints above this magnitude.
_INT64_SAFE = 2**62


def _times_sqrt2(a0, a1, a2, a3):
    # (a0 + a1 w + a2 w^2 + a3 w^3)(w - w^3), using w^4 = -1
    return (a1 - a3, a0 + a2, a1 + a3, a2 - a0)


@dataclass(frozen=True)
class RingElem:
    """A single value ``(a0 + a1 w + a2 w^2 + a3 w^3) / sqrt2**k``."""

    a0: int = 0
    a1: int = 0
    a2: int = 0
    a3: int = 0
    k: int = 0

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)

    @classmethod
    def from_int(cls, x: int) -> RingElem:
        return cls(x)

    @classmethod
    def omega_power(cls, p: int) -> RingElem:
        """w**p."""
        p %= 8
        c = [0, 0, 0, 0]
        c[p % 4] = 1 if p < 4 else -1
        return cls(*c)

    @classmethod
    def i_power(cls, p: int) -> RingElem:
        return cls.omega_power(2 * p)

    def is_zero(self) -> bool:
        return self.coeffs == (0, 0, 0, 0)

    def with_k(self, k: int) -> RingElem:
        """Same value, expressed with divisor exponent ``k >= self.k``."""
        if k < self.k:
            raise ValueError("can only raise the divisor exponent")
        c = self.coeffs
        for _ in range(k - self.k):
            c = _times_sqrt2(*c)
        return RingElem(*c, k=k)

    def normalized(self) -> RingElem:
        """Smallest non-negative ``k`` representing the same value."""
        c, k = self.coeffs, self.k
        if c == (0, 0, 0, 0):
            return RingElem()
        while k > 0 and (c[0] - c[2]) % 2 == 0 and (c[1] - c[3]) % 2 == 0:
            c = tuple(x // 2 for x in _times_sqrt2(*c))
            k -= 1
        return RingElem(*c, k=k)

    def __add__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            other = RingElem(other)
        k = max(self.k, other.k)
        a, b = self.with_k(k), other.with_k(k)
        return RingElem(*(x + y for x, y in zip(a.coeffs, b.coeffs)), k=k)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(-self.a0, -self.a1, -self.a2, -self.a3, k=self.k)

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-other)

    def __mul__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            return RingElem(*(x * other for x in self.coeffs), k=self.k)
        out = [0, 0, 0, 0]
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                m = i + j
                if m >= 4:
                    out[m - 4] -= x * y
                else:
                    out[m] += x * y
        return RingElem(*out, k=self.k + other.k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        k = max(self.k, other.k)
        return self.with_k(k).coeffs == other.with_k(k).coeffs

    def __hash__(self) -> int:
        n = self.normalized()
        return hash((n.coeffs, n.k))

    def to_complex(self) -> complex:
        w = np.exp(1j * np.pi / 4)
        return complex(sum(c * w**p for p, c in enumerate(self.coeffs)) / np.sqrt(2) ** self.k)

    def __str__(self) -> str:
        return f"({self.a0},{self.a1},{self.a2},{self.a3})/sqrt2^{self.k}"


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


class ExactTensor:
    """Dense array of ring values sharing one ``sqrt2`` divisor exponent.

    ``coeffs`` has shape ``(4, *shape)``. Two-dimensional instances double as
    the exact matrices returned by the diagram interpreter.
    """

    __slots__ = ("coeffs", "k")

    def __init__(self, coeffs: np.ndarray, k: int = 0):
        if coeffs.shape[:1] != (4,):
            raise ValueError("leading axis must hold the 4 ring components")
        self.coeffs = coeffs
        self.k = k

    # construction -----------------------------------------------------

    @classmethod
    def from_ints(cls, values, k: int = 0) -> ExactTensor:
        """Integer-valued array (component of 1 only)."""
        arr = np.asarray(values, dtype=np.int64)
        c = np.zeros((4,) + arr.shape, dtype=np.int64)
        c[0] = arr
        return cls(c, k)

    @classmethod
    def from_elems(cls, elems: Sequence, shape: Sequence[int]) -> ExactTensor:
        """Build from a flat sequence of :class:`RingElem` (row-major)."""
        elems = [e if isinstance(e, RingElem) else RingElem(int(e)) for e in elems]
        k = max((e.k for e in elems), default=0)
        c = np.zeros((4, len(elems)), dtype=object)
        for j, e in enumerate(elems):
            c[:, j] = e.with_k(k).coeffs
        return cls(_shrink(c.reshape((4,) + tuple(shape))), k).normalized()

    @classmethod
    def scalar(cls, e: RingElem | int = 1) -> ExactTensor:
        return cls.from_elems([e], ())

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> ExactTensor:
        return cls(np.zeros((4,) + tuple(shape), dtype=np.int64), 0)

    @classmethod
    def identity(cls, dim: int) -> ExactTensor:
        return cls.from_ints(np.eye(dim, dtype=np.int64))

    # basic properties --------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape[1:]

    @property
    def ndim(self) -> int:
        return self.coeffs.ndim - 1

    def __getitem__(self, index) -> RingElem:
        idx = index if isinstance(index, tuple) else (index,)
        c = self.coeffs[(slice(None),) + idx]
        if c.ndim != 1:
            raise IndexError("indexing must select a single entry")
        return RingElem(*(int(x) for x in c), k=self.k)

    def flat(self) -> list[RingElem]:
        c = self.coeffs.reshape(4, -1)
        return [RingElem(*(int(x) for x in c[:, j]), k=self.k) for j in range(c.shape[1])]

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def copy(self) -> ExactTensor:
        return ExactTensor(self.coeffs.copy(), self.k)

    # structural ops ------------------------------------------------------

    def reshape(self, shape: Sequence[int]) -> ExactTensor:
        return ExactTensor(self.coeffs.reshape((4,) + tuple(shape)), self.k)

    def transpose(self, perm: Sequence[int]) -> ExactTensor:
        return ExactTensor(self.coeffs.transpose([0] + [p + 1 for p in perm]), self.k)

    def normalized(self) -> ExactTensor:
        """Divide out common factors of sqrt2 while ``k > 0``."""
        c, k = self.coeffs, self.k
        if not np.any(c):
            return ExactTensor(c, 0)
        while k > 0 and not np.any((c[0] - c[2]) % 2) and not np.any((c[1] - c[3]) % 2):
            c = np.stack(_times_sqrt2(c[0], c[1], c[2], c[3])) // 2
            k -= 1
        return ExactTensor(_shrink(c), k)

    # arithmetic ----------------------------------------------------------

    def scale(self, e: RingElem) -> ExactTensor:
        out = _ring_mul(self.coeffs, np.array(e.coeffs, dtype=object).reshape((4,) + (1,) * self.ndim),
                        lambda x, y: x * y)
        return ExactTensor(_shrink(out), self.k + e.k).normalized()

    def contract(self, other: ExactTensor, axes_self: Sequence[int], axes_other: Sequence[int]) -> ExactTensor:
        """Tensor contraction with :func:`numpy.tensordot` axis semantics."""
        a, b = _promote(self.coeffs, other.coeffs, int(np.prod([self.shape[i] for i in axes_self] or [1])))
        out = _ring_mul(
            a, b, lambda x, y: np.tensordot(x, y, axes=(list(axes_self), list(axes_other)))
        )
        return ExactTensor(_shrink(out), self.k + other.k).normalized()

    def outer(self, other: ExactTensor) -> ExactTensor:
        return self.contract(other, [], [])

    def trace(self, ax1: int, ax2: int) -> ExactTensor:
        c = np.trace(self.coeffs, axis1=ax1 + 1, axis2=ax2 + 1)
        if c.ndim == 0:
            c = c.reshape(4)
        return ExactTensor(c, self.k).normalized()

    def __add__(self, other: ExactTensor) -> ExactTensor:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        a, b = self, other
        k = max(a.k, b.k)
        return ExactTensor(_raise_k(a.coeffs, k - a.k) + _raise_k(b.coeffs, k - b.k), k).normalized()

    def __neg__(self) -> ExactTensor:
        return ExactTensor(-self.coeffs, self.k)

    def __sub__(self, other: ExactTensor) -> ExactTensor:
        return self + (-other)

    def matmul(self, other: ExactTensor) -> ExactTensor:
        return self.contract(other, [self.ndim - 1], [0])

    def __matmul__(self, other: ExactTensor) -> ExactTensor:
        return self.matmul(other)

    def kron(self, other: ExactTensor) -> ExactTensor:
        """Kronecker product of two 2-D tensors."""
        (r1, c1), (r2, c2) = self.shape, other.shape
        return self.outer(other).transpose([0, 2, 1, 3]).reshape((r1 * r2, c1 * c2))

    def equals(self, other: ExactTensor) -> bool:
        """Exact value equality (not up to scalar)."""
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    def to_complex(self) -> np.ndarray:
        w = np.exp(1j * np.pi / 4)
        c = self.coeffs.astype(np.float64)
        return sum(c[p] * w**p for p in range(4)) / np.sqrt(2) ** self.k

    # text format ---------------------------------------------------------

    def to_text(self) -> str:
        """One row per line, tab-separated ``(a0,a1,a2,a3)/sqrt2^k`` entries."""
        if self.ndim != 2:
            raise ValueError("text output needs a 2-D tensor")
        rows, cols = self.shape
        lines = []
        for i in range(rows):
            lines.append("\t".join(str(self[i, j]) for j in range(cols)))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> ExactTensor:
        rows = [ln for ln in text.splitlines() if ln.strip()]
        entries = [[_parse_entry(tok) for tok in ln.split("\t")] for ln in rows]
        if not entries or any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged matrix text")
        ks = {e.k for r in entries for e in r}
        if len(ks) != 1:
            raise ValueError("entries must share one sqrt2 exponent")
        (k,) = ks
        flat = [e for r in entries for e in r]
        c = np.array([e.coeffs for e in flat], dtype=object).T.reshape(4, len(entries), len(entries[0]))
        return cls(_shrink(c), k)

    def __repr__(self) -> str:
        return f"ExactTensor(shape={self.shape}, k={self.k})"


ExactMatrix = ExactTensor

_ENTRY = re.compile(r"^\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)/sqrt2\^(\d+)$")


def _parse_entry(tok: str) -> RingElem:
    m = _ENTRY.match(tok.strip())
    if not m:
        raise ValueError(f"bad matrix entry {tok!r}")
    a = [int(x) for x in m.groups()]
    return RingElem(*a[:4], k=a[4])


def _raise_k(c: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        c = np.stack(_times_sqrt2(c[0], c[1], c[2], c[3]))
    return c


def _shrink(c: np.ndarray) -> np.ndarray:
    """Back to int64 when the values allow it."""
    if c.dtype == object:
        if c.size == 0 or _max_abs(c) < _INT64_SAFE:
            return c.astype(np.int64)
    return c


def _promote(a: np.ndarray, b: np.ndarray, inner: int) -> tuple[np.ndarray, np.ndarray]:
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = _max_abs(a) * _max_abs(b) * 4 * max(inner, 1)
        if bound < _INT64_SAFE:
            return a, b
    return a.astype(object), b.astype(object)


def _ring_mul(a: np.ndarray, b: np.ndarray, op) -> np.ndarray:
    out = None
    for i in range(4):
        if not np.any(a[i]):
            continue
        for j in range(4):
            if not np.any(b[j]):
                continue
            t = op(a[i], b[j])
            if out is None:
                out = np.zeros((4,) + np.shape(t), dtype=np.result_type(a, b))
            m = i + j
            if m >= 4:
                out[m - 4] -= t
            else:
                out[m] += t
    if out is None:
        t = op(np.zeros_like(a[0]), np.zeros_like(b[0]))
        out = np.zeros((4,) + np.shape(t), dtype=np.int64)
    return out


def scalar_equal(m1: ExactTensor, m2: ExactTensor) -> bool:
    """True iff ``m1 = c * m2`` for some nonzero ring scalar, or both are zero."""
    if m1.shape != m2.shape:
        raise ValueError(f"shape mismatch: {m1.shape} vs {m2.shape}")
    a = m1.coeffs.reshape(4, -1)
    b = m2.coeffs.reshape(4, -1)
    nz = np.flatnonzero(np.any(a, axis=0))
    if nz.size == 0:
        return not np.any(b)
    i0 = int(nz[0])
    if not np.any(b[:, i0]):
        return False
    ai = a[:, i0].astype(object).reshape(4, 1)
    bi = b[:, i0].astype(object).reshape(4, 1)
    lhs = _ring_mul(ai, b.astype(object), lambda x, y: x * y)
    rhs = _ring_mul(bi, a.astype(object), lambda x, y: x * y)
    return bool(np.all(lhs == rhs))


def is_zero(m: ExactTensor) -> bool:
    return m.is_zero()


def stack_kron(mats: Iterable[ExactTensor]) -> ExactTensor:
    out = ExactTensor.identity(1)
    for m in mats:
        out = out.kron(m)
    return out
