from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabzx import clifford1 as c1
from stabzx import gslc
from stabzx.clifford1 import ELEMENTS, IDENTITY, X, Z, compose, to_matrix
from stabzx.gslc import ZERO, Graph, GsLc, edge_local_comp, fixpoint, local_comp, to_diagram
from stabzx.ring import ExactTensor, stack_kron
from stabzx.semantics import interpret, is_zero, scalar_equal


@st.composite
def states(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    edges = [p for p in pairs if draw(st.booleans())]
    ops = [draw(st.sampled_from(ELEMENTS)) for _ in range(n)]
    return GsLc.from_edges(n, edges, ops)


def _sem(s):
    return interpret(to_diagram(s))


def _edges(g: Graph) -> set[frozenset]:
    return {frozenset(e) for e in g.edges()}


def _es(*pairs) -> set[frozenset]:
    return {frozenset(p) for p in pairs}


def test_line_graph_example():
    # vertices 1..4 of the example are 0..3 here
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    g1 = g.local_complement(2)
    assert _edges(g1) == _es((0, 1), (1, 2), (2, 3), (1, 3))
    g2 = g1.local_complement(1)
    assert _edges(g2) == _es((0, 1), (1, 2), (1, 3), (0, 2), (0, 3))


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph((2, 0))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


@settings(max_examples=60, deadline=None)
@given(states(), st.data())
def test_moves_preserve_semantics(s, data):
    v = data.draw(st.integers(0, s.n - 1))
    ref = _sem(s)
    assert scalar_equal(_sem(local_comp(s, v)), ref)
    assert scalar_equal(_sem(fixpoint(s, v)), ref)
    if s.graph.edges():
        a, b = data.draw(st.sampled_from(s.graph.edges()))
        assert scalar_equal(_sem(edge_local_comp(s, a, b)), ref)


@settings(max_examples=40, deadline=None)
@given(states(), st.data())
def test_double_lc_is_fixpoint(s, data):
    v = data.draw(st.integers(0, s.n - 1))
    twice = local_comp(local_comp(s, v), v)
    assert twice.graph == s.graph
    assert twice == fixpoint(s, v)
    assert fixpoint(fixpoint(s, v), v) == s


def test_isolated_double_lc():
    s = GsLc.plus(1)
    t = local_comp(local_comp(s, 0), 0)
    assert t.ops[0] == X(2)
    assert fixpoint(s, 0).ops[0] == X(2)


def test_fixpoint_single_edge():
    s = GsLc.from_edges(2, [(0, 1)])
    t = fixpoint(s, 0)
    assert t.ops == (X(2), Z(2)) and t.graph == s.graph
    assert scalar_equal(_sem(t), _sem(s))


def test_edge_lc_single_edge():
    s = GsLc.from_edges(2, [(0, 1)])
    t = edge_local_comp(s, 0, 1)
    op = compose(Z(1), compose(X(-1), Z(1)))
    assert t.graph == s.graph and t.ops == (op, op)
    assert scalar_equal(_sem(t), _sem(s))


def test_edge_lc_path():
    s = GsLc.from_edges(3, [(0, 1), (1, 2)])
    t = edge_local_comp(s, 1, 2)
    assert t.graph.has_edge(0, 2) and not t.graph.has_edge(0, 1) and t.graph.has_edge(1, 2)


def test_edge_lc_errors():
    s = GsLc.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        edge_local_comp(s, 0, 2)
    with pytest.raises(ValueError):
        edge_local_comp(s, 1, 1)
    with pytest.raises(IndexError):
        local_comp(s, 3)
    with pytest.raises(ValueError):
        local_comp(ZERO, 0)


def test_edge_lc_properties_exhaustive():
    for n in range(2, 6):
        for g in gslc.all_graphs(n):
            for v, w in g.edges():
                h = edge_local_comp(GsLc(g, (IDENTITY,) * n), v, w).graph
                assert h == edge_local_comp(GsLc(g, (IDENTITY,) * n), w, v).graph
                assert h.has_edge(v, w)
                rest = [u for u in range(n) if u not in (v, w)]
                for u in rest:
                    assert h.has_edge(u, v) == g.has_edge(u, w)
                    assert h.has_edge(u, w) == g.has_edge(u, v)
                for p, q in combinations(rest, 2):
                    P = frozenset(x for x in (v, w) if g.has_edge(p, x))
                    Q = frozenset(x for x in (v, w) if g.has_edge(q, x))
                    toggled = len({P, Q, frozenset()}) == 3
                    assert h.has_edge(p, q) == (g.has_edge(p, q) != toggled)


def _on(n: int, ops: dict[int, c1.C1]) -> ExactTensor:
    return stack_kron(to_matrix(ops.get(q, IDENTITY)) for q in range(n))


def test_lc_state_identity_cross_check():
    # |G * v> = X(pi/2)_v Z(-pi/2)_N(v) |G>, the sign fixed by the oracle
    for n in range(1, 5):
        for g in gslc.all_graphs(n):
            for v in range(n):
                psi = _sem(GsLc(g, (IDENTITY,) * n))
                lhs = _sem(GsLc(g.local_complement(v), (IDENTITY,) * n))
                dress = {v: X(1), **{u: Z(-1) for u in g.neighbours(v)}}
                assert scalar_equal(lhs, _on(n, dress) @ psi)


def test_stabilizer_generators_examples():
    assert [str(p) for p in gslc.stabilizer_generators(Graph.empty(1))] == ["X"]
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert [str(p) for p in gslc.stabilizer_generators(g)] == ["XZZZ", "ZXZZ", "ZZXI", "ZZIX"]
    d = to_diagram(GsLc(g, (IDENTITY,) * 4))
    assert sum(1 for node in d.nodes.values() if node.kind == "H") == 5


def _anticommute(a: str, b: str) -> bool:
    return sum(x != "I" and y != "I" and x != y for x, y in zip(a, b)) % 2 == 1


def test_generators_commute():
    for g in gslc.all_graphs(4):
        gens = [str(p) for p in gslc.stabilizer_generators(g)]
        assert not any(_anticommute(a, b) for a in gens for b in gens)


def test_to_diagram_plus_and_zero():
    d = to_diagram(GsLc.plus(1))
    assert scalar_equal(interpret(d), ExactTensor.from_ints([[1], [1]]))
    z = to_diagram(ZERO)
    assert is_zero(interpret(z))
    assert to_diagram(ZERO, n_zero=2).n_outputs == 2


@settings(max_examples=40, deadline=None)
@given(states())
def test_json_round_trip(s):
    text = gslc.to_json(s)
    assert gslc.from_json(text) == s
    assert text.startswith('{"n":')
    assert gslc.from_json(gslc.to_json(ZERO)) is ZERO


def test_json_format():
    assert gslc.to_json(GsLc.plus(1)) == '{"n":1,"edges":[],"ops":["I"]}'
    assert gslc.to_json(ZERO) == '{"zero":true}'


@settings(max_examples=30, deadline=None)
@given(states(min_n=2), st.data())
def test_relabelling_helpers(s, data):
    order = data.draw(st.permutations(range(s.n)))
    p = gslc.permute(s, order)
    for i in range(s.n):
        for j in range(s.n):
            if i != j:
                assert p.graph.has_edge(i, j) == s.graph.has_edge(order[i], order[j])
        assert p.ops[i] == s.ops[order[i]]
    assert gslc.swap(gslc.swap(s, 0, 1), 0, 1) == s
    assert gslc.remove_vertex(gslc.add_vertex(s), s.n) == s


def test_all_graphs_count():
    assert sum(1 for _ in gslc.all_graphs(4)) == 64
    assert np.array(Graph.from_edges(2, [(0, 1)]).adjacency()).tolist() == [[0, 1], [1, 0]]
