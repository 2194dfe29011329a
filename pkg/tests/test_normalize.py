from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vecops as V
from stabzx import clifford1 as c1
from stabzx import diagram as D
from stabzx import normalize as N
from stabzx.clifford1 import ELEMENTS, H, IDENTITY, RClass, in_R
from stabzx.gslc import ZERO, GsLc, Zero, to_diagram
from stabzx.ring import ExactTensor
from stabzx.semantics import interpret, is_zero, random_stabilizer_diagram, random_zx_diagram, scalar_equal


def _sem(s):
    return interpret(to_diagram(s))


def _agrees(s, psi) -> bool:
    if isinstance(s, Zero):
        return is_zero(psi)
    return not is_zero(psi) and scalar_equal(_sem(s), psi)


@st.composite
def states(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if draw(st.booleans())]
    ops = [draw(st.sampled_from(ELEMENTS)) for _ in range(n)]
    return GsLc.from_edges(n, edges, ops)


def test_decompose_examples():
    assert N.decompose(D.plus_state()) == [N.NewQubit()]
    assert N.decompose(D.spider_state("Z", 0, 2)) == [N.NewQubit(), N.Split(0)]
    assert N.decompose(D.spider_state("Z", 1, 1)) == [N.NewQubit(), N.ApplyClifford(0, c1.Z(1))]
    with pytest.raises(D.DiagramError):
        N.decompose(D.wire())


def test_dump_format():
    prims = [N.NewQubit(), N.ApplyClifford(0, H), N.Split(0), N.Join(1, 0), N.PlusEffect(0)]
    assert N.dump(prims) == "NEW\nCLIFF 0 X1*Z1*X1\nSPLIT 0\nJOIN 1 0\nEFF 0\n"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**40), st.integers(1, 3), st.integers(1, 6))
def test_decompose_replay_matches_oracle(seed, no, ns):
    d = random_zx_diagram(0, no, ns, seed)
    psi = V.empty()
    for p in N.decompose(d):
        psi = V.step(psi, p)
    assert scalar_equal(psi, interpret(d))


def test_new_qubit():
    s = N.apply_new_qubit(GsLc.plus(0))
    assert s == GsLc.plus(1)
    t = GsLc.from_edges(2, [(0, 1)], [H, c1.Z(1)])
    u = N.apply_new_qubit(t)
    assert u.n == 3 and u.graph.neighbours(0) == [1] and u.ops[2] == IDENTITY
    assert scalar_equal(_sem(u), V.new(_sem(t)))


def test_apply_clifford_examples():
    s = GsLc.from_edges(2, [(0, 1)], [c1.Z(1), IDENTITY])
    assert N.apply_clifford(s, 0, IDENTITY) == s
    assert N.apply_clifford(N.apply_clifford(s, 1, H), 1, H) == s
    with pytest.raises(IndexError):
        N.apply_clifford(s, 2, H)


def test_plus_effect_examples():
    assert N.apply_plus_effect(GsLc.plus(1).with_op(0, c1.Z(2)), 0) is ZERO
    s = GsLc.from_edges(3, [(1, 2)], [IDENTITY, c1.Z(1), H])
    assert N.apply_plus_effect(s, 0) == GsLc.from_edges(2, [(0, 1)], [c1.Z(1), H])
    t = N.apply_plus_effect(GsLc.from_edges(2, [(0, 1)], [H, IDENTITY]), 0)
    assert t == GsLc.plus(1)


def test_split_examples():
    cup = N.apply_split(GsLc.plus(1), 0)
    assert scalar_equal(_sem(cup), ExactTensor.from_ints([[1], [0], [0], [1]]))
    # basis states are copied
    for beta in (0, 2):
        u = c1.compose(H, c1.X(beta))
        s = N.apply_split(GsLc.plus(1).with_op(0, u), 0)
        assert not s.graph.edges()
        assert scalar_equal(_sem(s), V.split(_sem(GsLc.plus(1).with_op(0, u)), 0))
    s = GsLc.from_edges(2, [(0, 1)])
    t = N.apply_split(s, 0)
    assert t.n == 3 and t.graph.has_edge(0, 2)
    assert scalar_equal(_sem(t), V.split(_sem(s), 0))


def test_join_examples():
    cup = N.apply_split(GsLc.plus(1), 0)
    assert scalar_equal(_sem(N.apply_join(cup, 0, 1)), ExactTensor.from_ints([[1], [1]]))
    assert N.apply_join(GsLc.plus(2), 0, 1) == GsLc.plus(1)
    with pytest.raises(ValueError):
        N.apply_join(GsLc.plus(2), 1, 1)


def test_join_zero_branch():
    # |0> joined with |1> vanishes
    zero_one = GsLc.plus(2).with_op(0, H).with_op(1, c1.compose(c1.X(2), H))
    assert N.apply_join(zero_one, 0, 1) is ZERO
    # exhaustive over pairs of single-qubit states
    for u in ELEMENTS:
        for w in ELEMENTS:
            s = GsLc.plus(2).with_op(0, u).with_op(1, w)
            assert _agrees(N.apply_join(s, 0, 1), V.join(_sem(s), 0, 1))


@settings(max_examples=150, deadline=None)
@given(states(), st.data())
def test_each_primitive_matches_vector_semantics(s, data):
    psi = _sem(s)
    q = data.draw(st.integers(0, s.n - 1))
    u = data.draw(st.sampled_from(ELEMENTS))
    assert _agrees(N.apply_clifford(s, q, u), V.cliff(psi, q, u))
    assert _agrees(N.apply_plus_effect(s, q), V.eff(psi, q))
    assert _agrees(N.apply_split(s, q), V.split(psi, q))
    assert _agrees(N.apply_new_qubit(s), V.new(psi))
    if s.n >= 2:
        a, b = data.draw(st.permutations(range(s.n)))[:2]
        assert _agrees(N.apply_join(s, a, b), V.join(psi, a, b))


@settings(max_examples=40, deadline=None)
@given(states(), st.data())
def test_split_then_join_is_identity(s, data):
    q = data.draw(st.integers(0, s.n - 1))
    t = N.apply_join(N.apply_split(s, q), q, s.n)
    assert scalar_equal(_sem(t), _sem(s))


def test_zero_is_absorbing():
    for p in (N.NewQubit(), N.ApplyClifford(0, H), N.PlusEffect(0), N.Split(0), N.Join(0, 1)):
        assert N.apply_primitive(ZERO, p) is ZERO


def test_to_gslc_examples():
    assert N.to_gslc(D.plus_state()) == GsLc.plus(1)
    d = D.compose_seq(D.compose_seq(D.plus_state(), D.z_phase_gate(2)), D.adjoint(D.plus_state()))
    assert N.to_gslc(d) is ZERO
    s = N.to_gslc(D.bend_inputs(D.cz_from_cnots()))
    assert isinstance(s, GsLc) and s.n == 4
    assert scalar_equal(_sem(s), interpret(D.bend_inputs(D.cz_from_cnots())))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**40), st.integers(1, 4), st.integers(0, 20))
def test_pipeline_on_circuits(seed, n, depth):
    d = random_stabilizer_diagram(n, depth, seed)
    stats = N.ReduceStats()
    s = N.normalize(d, stats)
    assert N.is_reduced(s)
    assert scalar_equal(_sem(s), interpret(d))
    assert stats.local_comps <= 2 * n and stats.edge_comps <= n // 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**40), st.integers(1, 3), st.integers(1, 6))
def test_pipeline_zero_iff_oracle_zero(seed, no, ns):
    d = random_zx_diagram(0, no, ns, seed)
    s = N.normalize(d)
    psi = interpret(d)
    assert _agrees(s, psi)
    if isinstance(s, GsLc):
        assert s.n == no


def test_reduce_examples():
    s = GsLc.from_edges(3, [(0, 1), (1, 2)])
    assert N.reduce(s) == s
    one = N.reduce(GsLc.plus(1).with_op(0, H))
    assert in_R(one.ops[0]) is not RClass.NOT_IN_R
    assert scalar_equal(_sem(one), ExactTensor.from_ints([[1], [0]]))
    assert N.reduce(ZERO) is ZERO


@settings(max_examples=100, deadline=None)
@given(states(max_n=5))
def test_reduce_properties(s):
    stats = N.ReduceStats()
    r = N.reduce(s, stats)
    assert N.is_reduced(r)
    assert scalar_equal(_sem(r), _sem(s))
    assert stats.local_comps <= 2 * s.n
    assert stats.edge_comps <= s.n // 2


def test_steer_keeps_partner_edge():
    for u in ELEMENTS:
        s = GsLc.from_edges(3, [(0, 1), (1, 2)], [u, IDENTITY, c1.Z(1)])
        t = N.steer(s, 0, 1, lambda w: w == IDENTITY)
        assert t.ops[0] == IDENTITY and t.graph.has_edge(0, 1)
        assert scalar_equal(_sem(t), _sem(s))
