import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zerograph.asano import (
    AScheme,
    asano_contract,
    contract_graph,
    in_var,
    multiply,
    out_var,
    specialize,
    vertex_factor,
)
from zerograph.cyclotomic import I, ZETA, ZETA_BAR, Cyc8
from zerograph.graph import GraphError, double
from zerograph.multiaffine import MultiAffinePoly, SharedVariableError
from zerograph.poly import IntPoly
from zerograph.roots import to_int_poly
from zerograph.subgraphs import multivar_P, pairing_check, poly_family, poly_v0

from conftest import oriented, oriented_graphs, simple_graphs, undirected

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyc8s = st.builds(Cyc8, rationals, rationals, rationals, rationals)


def M(universe, terms):
    return MultiAffinePoly(universe, {frozenset(k): v for k, v in terms.items()})


# -- Cyc8 ----------------------------------------------------------------------


def test_named_elements():
    w = cmath.exp(1j * cmath.pi / 4)
    assert abs(complex(ZETA) - (1 + 1j) / 2**0.5) < 1e-15
    assert abs(complex(ZETA_BAR) - (1 - 1j) / 2**0.5) < 1e-15
    assert I == ZETA * ZETA and ZETA**4 == Cyc8(-1)
    assert ZETA * ZETA.conjugate() == Cyc8(1)
    assert ZETA.conjugate() == -(ZETA**3)
    assert abs(complex(ZETA**3) - w**3) < 1e-15


@given(cyc8s, cyc8s)
def test_ring_ops_match_complex_embedding(x, y):
    for exact, approx in ((x + y, complex(x) + complex(y)), (x * y, complex(x) * complex(y)),
                          (x - y, complex(x) - complex(y)), (x.conjugate(), complex(x).conjugate())):
        assert abs(complex(exact) - approx) < 1e-9


@given(cyc8s)
def test_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == Cyc8(1)


@given(cyc8s)
def test_cyc8_json_round_trip(x):
    assert Cyc8.from_dict(x.to_dict()) == x


def test_cyc8_json_layout():
    assert Cyc8(Fraction(1, 2), 0, Fraction(-1, 3)).to_dict() == \
        {"c0": "3", "c1": "0", "c2": "-2", "c3": "0", "den": "6"}


# -- multiaffine basics ------------------------------------------------------------


def test_multiply_examples():
    p = M(["x"], {(): 1, ("x",): 1})
    q = M(["y"], {(): 1, ("y",): 1})
    assert multiply(p, q) == M(["x", "y"], {(): 1, ("x",): 1, ("y",): 1, ("x", "y"): 1})
    assert multiply(p, MultiAffinePoly.constant(1)) == p
    p2 = M(["x"], {(): 2, ("x",): 1})
    q3 = M(["y"], {(): 3, ("y",): 1})
    assert multiply(p2, q3) == M(["x", "y"], {(): 6, ("x",): 3, ("y",): 2, ("x", "y"): 1})


def test_multiply_rejects_shared_variable():
    p = M(["x"], {(): 1, ("x",): 1})
    with pytest.raises(SharedVariableError):
        multiply(p, p)


def test_contract_examples():
    p = M(["z1", "z2"], {(): 1, ("z1",): 1, ("z2",): 1, ("z1", "z2"): 1})
    assert asano_contract(p, ("z1", "z2"), "z") == M(["z"], {(): 1, ("z",): 1})
    p = M(["z1", "z2"], {(): 2, ("z1",): 5, ("z2",): 7, ("z1", "z2"): 3})
    assert asano_contract(p, ("z1", "z2"), "z") == M(["z"], {(): 2, ("z",): 3})
    f = [M([v], {(): 1, (v,): 1}) for v in ("z1", "z2", "w")]
    prod = multiply(multiply(f[0], f[1]), f[2])
    want = multiply(M(["z"], {(): 1, ("z",): 1}), f[2])
    assert asano_contract(prod, ("z1", "z2"), "z") == want


def test_contract_errors():
    p = M(["z1", "z2"], {(): 1})
    with pytest.raises(ValueError):
        asano_contract(p, ("z1", "q"), "z")
    with pytest.raises(ValueError):
        asano_contract(M(["z1", "z2", "z"], {}), ("z1", "z2"), "z")


@settings(max_examples=60)
@given(st.lists(st.tuples(cyc8s, cyc8s), min_size=3, max_size=3))
def test_contraction_commutes_with_independent_factors(coeffs):
    # factors in z1, z2 and w; contract (z1, z2) before or after the w factor
    (a, b), (c, d), (e, f) = coeffs
    p1 = M(["z1"], {(): a, ("z1",): b})
    p2 = M(["z2"], {(): c, ("z2",): d})
    w = M(["w"], {(): e, ("w",): f})
    late = asano_contract(multiply(multiply(p1, p2), w), ("z1", "z2"), "z")
    early = multiply(asano_contract(multiply(p1, p2), ("z1", "z2"), "z"), w)
    assert late == early


def test_specialize_example():
    p = M(["a", "b"], {(): 1, ("a",): 2, ("a", "b"): -1})
    assert specialize(p) == [Cyc8(1), Cyc8(2), Cyc8(-1)]


def test_multiaffine_json_round_trip(doubled_edge):
    P = contract_graph(doubled_edge, AScheme.zeta_bipartite(doubled_edge))
    assert MultiAffinePoly.from_json(P.to_json()) == P
    assert P.to_dict()["vars"] == ["a'", "a''"]


# -- vertex factors and contraction of graphs ------------------------------------------


def test_vertex_factor_ones(triangle):
    p = vertex_factor(triangle, "1", AScheme.ones(triangle))
    za, zc = out_var("a"), in_var("c")
    assert p == M([za, zc], {(): 1, (za,): 1, (zc,): 1, (za, zc): 1})


def test_vertex_factor_tilde(triangle):
    p = vertex_factor(triangle, "1", AScheme.ones(triangle).with_tilde(["1"]))
    za, zc = out_var("a"), in_var("c")
    assert p == M([za, zc], {(): 2, (za,): 1, (zc,): 1, (za, zc): 1})


def test_vertex_factor_zeta(doubled_edge):
    p = vertex_factor(doubled_edge, "1", AScheme.zeta_bipartite(doubled_edge))
    zo, zi = out_var("a'"), in_var("a''")
    assert p == M([zo, zi], {(): 1, (zi,): ZETA, (zo,): ZETA_BAR, (zo, zi): 1})


def test_vertex_factor_unknown_vertex(triangle):
    with pytest.raises(GraphError):
        vertex_factor(triangle, "9", AScheme.ones(triangle))


def test_contract_triangle(triangle):
    P = contract_graph(triangle, AScheme.ones(triangle))
    assert len(P) == 8 and all(c == 1 for c in P.terms.values())
    assert P == multivar_P(triangle, AScheme.ones(triangle))
    assert to_int_poly(specialize(P)) == IntPoly((1, 3, 3, 1))


def test_contract_doubled_edge_zeta(doubled_edge):
    P = contract_graph(doubled_edge, AScheme.zeta_bipartite(doubled_edge))
    assert P == M(["a'", "a''"], {(): 1, ("a'",): -I, ("a''",): I, ("a'", "a''"): 1})
    assert specialize(P) == [Cyc8(1), Cyc8(0), Cyc8(1)]


def test_contract_single_arc_v0_empty(single_arc):
    assert contract_graph(single_arc, AScheme.from_v0(single_arc, [])).is_zero()


def test_zeta_needs_bipartition(triangle):
    with pytest.raises(GraphError):
        AScheme.zeta_bipartite(triangle)


def _simultaneous(g, scheme):
    # full product first, then every contraction: the unoptimised route
    p = MultiAffinePoly.constant(1)
    for x in g.vertices:
        p = multiply(p, vertex_factor(g, x, scheme))
    for a in g.arcs:
        p = asano_contract(p, (out_var(a.id), in_var(a.id)), a.id)
    return p


@settings(max_examples=80, deadline=None)
@given(oriented_graphs(max_vertices=4, max_arcs=6), st.data())
def test_elimination_order_is_irrelevant(g, data):
    tilde = data.draw(st.sets(st.sampled_from(g.vertices)))
    scheme = AScheme.ones(g).with_tilde(tilde)
    assert contract_graph(g, scheme) == _simultaneous(g, scheme)


@settings(max_examples=120, deadline=None)
@given(oriented_graphs(max_vertices=5, max_arcs=8))
def test_engine_equals_enumeration(g):
    scheme = AScheme.ones(g)
    P = contract_graph(g, scheme)
    assert P == multivar_P(g, scheme)
    assert all(len(m) <= len(g.arcs) for m in P.terms)
    assert to_int_poly(specialize(P)) == poly_family(g)


@settings(max_examples=80, deadline=None)
@given(oriented_graphs(max_vertices=5, max_arcs=7), st.data())
def test_engine_v0_equals_count(g, data):
    v0 = data.draw(st.sets(st.sampled_from(g.vertices)))
    scheme = AScheme.from_v0(g, v0)
    P = contract_graph(g, scheme)
    assert P == multivar_P(g, scheme)
    assert to_int_poly(specialize(P)) == poly_v0(g, v0)


@settings(max_examples=40, deadline=None)
@given(simple_graphs(max_vertices=6, max_edges=6))
def test_zeta_engine_on_doubled_bipartite(g0):
    from zerograph.graph import NotBipartite, check_bipartite
    try:
        v1, v2 = check_bipartite(g0)
    except NotBipartite:
        return
    if not v2:
        return
    d = double(g0).graph
    scheme = AScheme.zeta_bipartite(d, (v1, v2))
    P = contract_graph(d, scheme)
    assert P == multivar_P(d, scheme)
    assert pairing_check(d)
    assert to_int_poly(specialize(P)) == poly_family(d, "U_even", (v1, v2))
