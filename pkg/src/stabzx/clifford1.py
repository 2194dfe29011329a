"""The single-qubit Clifford group modulo global phase.

An element is stored as its conjugation action on the Paulis X and Z, which
identifies it exactly up to phase. Composition uses a 24x24 table built at
import time. Every element also has a canonical phase word in one of the
two normal forms ``Z(a)*X(b)`` or ``X(1)*Z(+-1)*X(c)`` (phases in units of
pi/2, rightmost factor applied first).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import product

from .ring import ExactMatrix, ExactTensor, RingElem

LETTERS = ("I", "X", "Y", "Z")


@dataclass(frozen=True, order=True)
class SignedPauli:
    letter: str
    sign: int = 1

    def __post_init__(self) -> None:
        if self.letter not in LETTERS or self.sign not in (1, -1):
            raise ValueError(f"bad signed Pauli {self.sign}{self.letter}")

    def __neg__(self) -> SignedPauli:
        return SignedPauli(self.letter, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.letter


# products of Pauli letters: (a, b) -> (power of i, letter)
_PMUL: dict[tuple[str, str], tuple[int, str]] = {}
for _a in LETTERS:
    _PMUL[("I", _a)] = (0, _a)
    _PMUL[(_a, "I")] = (0, _a)
    _PMUL[(_a, _a)] = (0, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PMUL[(_a, _b)] = (1, _c)
    _PMUL[(_b, _a)] = (3, _c)


def pauli_mul(p: SignedPauli, q: SignedPauli) -> tuple[int, SignedPauli]:
    """``p*q`` as ``(i power, signed Pauli)`` with the sign folded in."""
    ip, letter = _PMUL[(p.letter, q.letter)]
    sign = p.sign * q.sign
    if ip >= 2:
        ip -= 2
        sign = -sign
    return ip, SignedPauli(letter, sign)


@dataclass(frozen=True)
class C1:
    """A single-qubit Clifford, identified by ``U X U^dag`` and ``U Z U^dag``."""

    image_x: SignedPauli
    image_z: SignedPauli

    def __post_init__(self) -> None:
        if "I" in (self.image_x.letter, self.image_z.letter) or self.image_x.letter == self.image_z.letter:
            raise ValueError("images of X and Z must be distinct non-identity Paulis")

    @property
    def index(self) -> int:
        return _INDEX[(self.image_x, self.image_z)]

    def act(self, p: SignedPauli) -> SignedPauli:
        """Conjugate a signed Pauli by this Clifford."""
        if p.letter == "I":
            return p
        if p.letter == "X":
            img = self.image_x
        elif p.letter == "Z":
            img = self.image_z
        else:
            # Y = i X Z, so U Y U^dag = i (U X U^dag)(U Z U^dag)
            ip, prod = pauli_mul(self.image_x, self.image_z)
            if ip != 1:
                raise AssertionError("conjugation must map Y to a Hermitian Pauli")
            img = -prod
        return img if p.sign > 0 else -img

    def __matmul__(self, inner: C1) -> C1:
        return compose(self, inner)

    def inverse(self) -> C1:
        return _INVERSE[self.index]

    @property
    def name(self) -> str:
        return word_name(to_normal_word(self))

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"C1({self.name})"


ELEMENTS: tuple[C1, ...] = tuple(
    C1(SignedPauli(lx, sx), SignedPauli(lz, sz))
    for lx, lz in product("XYZ", repeat=2) if lx != lz
    for sx, sz in product((1, -1), repeat=2)
)
_INDEX: dict[tuple[SignedPauli, SignedPauli], int] = {
    (u.image_x, u.image_z): i for i, u in enumerate(ELEMENTS)
}

_TABLE: list[list[int]] = [
    [_INDEX[(o.act(i.image_x), o.act(i.image_z))] for i in ELEMENTS] for o in ELEMENTS
]


def compose(outer: C1, inner: C1) -> C1:
    """``outer`` applied after ``inner``."""
    return ELEMENTS[_TABLE[outer.index][inner.index]]


IDENTITY = C1(SignedPauli("X"), SignedPauli("Z"))
H = C1(SignedPauli("Z"), SignedPauli("X"))
_S = C1(SignedPauli("Y"), SignedPauli("Z"))

_INVERSE: dict[int, C1] = {
    u.index: next(v for v in ELEMENTS if compose(u, v) == IDENTITY) for u in ELEMENTS
}


def Z(k: int) -> C1:
    """Green rotation by ``k*pi/2``."""
    u = IDENTITY
    for _ in range(k % 4):
        u = compose(_S, u)
    return u


def X(k: int) -> C1:
    """Red rotation by ``k*pi/2``."""
    return compose(H, compose(Z(k), H))


def rotation(axis: str, k: int) -> C1:
    if axis == "Z":
        return Z(k)
    if axis == "X":
        return X(k)
    raise ValueError(f"unknown rotation axis {axis!r}")


# phase words --------------------------------------------------------------------

Word = tuple[tuple[str, int], ...]


def from_word(word) -> C1:
    """Product of the rotations, leftmost outermost."""
    u = IDENTITY
    for axis, k in reversed(list(word)):
        u = compose(rotation(axis, k), u)
    return u


def _normal_words() -> list[Word]:
    words: list[Word] = []
    for a, b in product(range(4), repeat=2):
        w = []
        if a:
            w.append(("Z", a))
        if b:
            w.append(("X", b))
        words.append(tuple(w))
    for s, c in product((1, 3), range(4)):
        w = [("X", 1), ("Z", s)]
        if c:
            w.append(("X", c))
        words.append(tuple(w))
    return words


NORMAL_WORDS: tuple[Word, ...] = tuple(_normal_words())
_WORD_OF: dict[C1, Word] = {}
for _w in NORMAL_WORDS:
    _u = from_word(_w)
    if _u in _WORD_OF:
        raise AssertionError(f"normal forms {_WORD_OF[_u]} and {_w} collide")
    _WORD_OF[_u] = _w
if len(_WORD_OF) != 24:
    raise AssertionError("normal forms must cover the whole group")


def to_normal_word(u: C1) -> Word:
    return _WORD_OF[u]


def word_name(word) -> str:
    word = tuple(word)
    if not word:
        return "I"
    return "*".join(f"{axis}{k % 4}" for axis, k in word)


_NAME = re.compile(r"^(?:I|[ZX][1-3](?:\*[ZX][1-3])*)$")


def parse_name(name: str) -> C1:
    """Inverse of :attr:`C1.name`; accepts any word in the name grammar."""
    if not _NAME.match(name):
        raise ValueError(f"bad Clifford name {name!r}")
    if name == "I":
        return IDENTITY
    return from_word((tok[0], int(tok[1])) for tok in name.split("*"))


# the reduced set R -------------------------------------------------------------


class RClass(Enum):
    GREEN_ONLY = "GreenOnly"
    RED_TOPPED = "RedTopped"
    NOT_IN_R = "NotInR"


def in_R(u: C1) -> RClass:
    w = to_normal_word(u)
    if len(w) == 0 or (len(w) == 1 and w[0][0] == "Z"):
        return RClass.GREEN_ONLY
    if w in ((("X", 1), ("Z", 1)), (("X", 1), ("Z", 3))):
        return RClass.RED_TOPPED
    return RClass.NOT_IN_R


def z_phase(u: C1) -> int:
    """The ``a`` with ``u == Z(a)``; ``u`` must be GreenOnly."""
    for a in range(4):
        if Z(a) == u:
            return a
    raise ValueError(f"{u.name} is not a green rotation")


R_ELEMENTS: tuple[C1, ...] = tuple(u for u in ELEMENTS if in_R(u) is not RClass.NOT_IN_R)


# matrices -----------------------------------------------------------------------

_HM = ExactTensor.from_ints([[1, 1], [1, -1]], k=1)


def _zm(k: int) -> ExactMatrix:
    return ExactTensor.from_elems([RingElem(1), 0, 0, RingElem.i_power(k)], (2, 2))


def rotation_matrix(axis: str, k: int) -> ExactMatrix:
    if axis == "Z":
        return _zm(k)
    return _HM @ _zm(k) @ _HM


def to_matrix(u: C1) -> ExactMatrix:
    """A 2x2 unitary (up to phase) realising ``u``, built from its normal word."""
    m = ExactTensor.identity(2)
    for axis, k in to_normal_word(u):
        m = m @ rotation_matrix(axis, k)
    return m


def pauli_matrix(p: SignedPauli) -> ExactMatrix:
    i = RingElem.i_power
    table = {
        "I": [1, 0, 0, 1],
        "X": [0, 1, 1, 0],
        "Y": [0, i(3), i(1), 0],
        "Z": [1, 0, 0, -1],
    }
    vals = [RingElem(e) if isinstance(e, int) else e for e in table[p.letter]]
    if p.sign < 0:
        vals = [-e for e in vals]
    return ExactTensor.from_elems(vals, (2, 2))
