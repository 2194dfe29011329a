from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabzx import clifford1 as c1
from stabzx import diagram as D
from stabzx import equality as E
from stabzx import gslc
from stabzx.clifford1 import ELEMENTS, H, IDENTITY, R_ELEMENTS, RClass, in_R
from stabzx.gslc import ZERO, GsLc, to_diagram
from stabzx.normalize import is_reduced, reduce, to_gslc
from stabzx.semantics import interpret, random_zx_diagram, scalar_equal


def _named(edges, names):
    return GsLc.from_edges(4, edges, [c1.parse_name(x) for x in names])


# rGS-LC forms of the two worked CZ encodings, qubits renumbered from 0
REF_LEFT = _named([(0, 3), (1, 2), (0, 2)], ("Z1", "X1*Z1", "Z1", "X1*Z1"))
REF_CZ = _named([(0, 3), (1, 2), (2, 3)], ("X1*Z1", "X1*Z1", "Z1", "Z1"))


def _sem(s):
    return interpret(to_diagram(s))


@st.composite
def reduced_states(draw, n):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if draw(st.booleans())]
    ops = [draw(st.sampled_from(ELEMENTS)) for _ in range(n)]
    return reduce(GsLc.from_edges(n, edges, ops))


def _reds(s):
    return sum(in_R(u) is RClass.RED_TOPPED for u in s.ops)


def test_identical_no_red_unchanged():
    s = GsLc.from_edges(3, [(0, 1), (1, 2)], [c1.Z(1), IDENTITY, c1.Z(2)])
    pair = E.simplify_pair(s, s)
    assert pair.left == s and pair.right == s and pair.steps == ()


def test_cz_example():
    left = reduce(to_gslc(D.bend_inputs(D.cz_from_cnots())))
    right = reduce(to_gslc(D.bend_inputs(D.cz())))
    assert left != right
    assert E.find_unsimplified(left, right) is not None
    pair = E.simplify_pair(left, right)
    # our reduced forms differ from the worked example's; two transfers here
    assert len(pair.steps) == 2
    assert E.identical(pair.left, pair.right)
    assert gslc.to_json(pair.left) == gslc.to_json(pair.right)
    a, b = E.normal_pair(D.cz_from_cnots(), D.cz())
    assert gslc.to_json(a) == gslc.to_json(b)


def test_worked_pair_simplifies_in_one_step():
    assert is_reduced(REF_LEFT) and is_reduced(REF_CZ)
    assert scalar_equal(_sem(REF_LEFT), _sem(REF_CZ))
    # reds on qubit 3 (left only) and qubit 0 (right only), adjacent on the left
    assert E.find_unsimplified(REF_LEFT, REF_CZ) == (3, 0, 0)
    pair = E.simplify_pair(REF_LEFT, REF_CZ)
    assert len(pair.steps) == 1
    assert pair.left == REF_CZ and pair.right == REF_CZ
    assert E.equal_states(REF_LEFT, REF_CZ)


def test_cz_example_matches_reference_up_to_relabelling():
    a, _ = E.normal_pair(D.cz_from_cnots(), D.cz())
    f = {0: 2, 1: 0, 2: 1, 3: 3}
    order = [next(o for o, p in f.items() if p == i) for i in range(4)]
    assert gslc.permute(a, order) == REF_CZ


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(reduced_states(n), reduced_states(n))))
def test_simplify_pair_invariant_and_semantics(pair):
    a, b = pair
    out = E.simplify_pair(a, b)
    assert E.find_unsimplified(out.left, out.right) is None
    assert is_reduced(out.left) and is_reduced(out.right)
    assert scalar_equal(_sem(out.left), _sem(a))
    assert scalar_equal(_sem(out.right), _sem(b))
    assert _reds(out.left) + _reds(out.right) == _reds(a) + _reds(b)
    assert len(out.steps) < max(a.n, 2)


def test_transfer_red_both_cases():
    red = c1.compose(c1.X(1), c1.Z(1))
    for green in R_ELEMENTS:
        if in_R(green) is not RClass.GREEN_ONLY:
            continue
        s = GsLc.from_edges(3, [(0, 1), (1, 2)], [red, green, c1.Z(1)])
        t = E.transfer_red(s, 0, 1)
        assert in_R(t.ops[1]) is RClass.RED_TOPPED and in_R(t.ops[0]) is RClass.GREEN_ONLY
        assert scalar_equal(_sem(t), _sem(s))


def test_equal_states_examples():
    s = GsLc.from_edges(2, [(0, 1)], [H, c1.Z(1)])
    assert E.equal_states(s, s)
    zero = GsLc.plus(1).with_op(0, H)
    one = GsLc.plus(1).with_op(0, c1.compose(c1.X(2), H))
    assert not E.equal_states(zero, one)
    assert E.equal_states(ZERO, ZERO)
    assert not E.equal_states(ZERO, s) and not E.equal_states(s, ZERO)
    with pytest.raises(ValueError):
        E.equal_states(s, GsLc.plus(3))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(reduced_states(n), reduced_states(n))))
def test_equal_states_matches_oracle(pair):
    a, b = pair
    assert E.equal_states(a, b) == scalar_equal(_sem(a), _sem(b))


def test_equal_states_all_single_qubit_pairs():
    for u in ELEMENTS:
        for w in ELEMENTS:
            a, b = GsLc.plus(1).with_op(0, u), GsLc.plus(1).with_op(0, w)
            assert E.equal_states(a, b) == scalar_equal(_sem(a), _sem(b))


def test_equal_diagrams_examples():
    assert E.equal_diagrams(D.cz(), D.cz_from_cnots())
    assert not E.equal_diagrams(D.cnot(), D.cz())
    assert not E.equal_diagrams(D.wire(), D.plus_state())
    assert E.equal_diagrams(D.Diagram(), D.Diagram())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**40), st.integers(0, 2), st.integers(0, 2))
def test_equal_diagrams_self_and_oracle(seed, ni, no):
    d1 = random_zx_diagram(ni, no, 4, seed)
    d2 = random_zx_diagram(ni, no, 4, seed + 1)
    assert E.equal_diagrams(d1, d1)
    assert E.equal_diagrams(d1, D.canonical_relabel(d1))
    assert E.equal_diagrams(d1, d2) == scalar_equal(interpret(d1), interpret(d2))
