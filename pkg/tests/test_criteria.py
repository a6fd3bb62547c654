from fractions import Fraction as F

import pytest
import sympy
from hypothesis import event, given, strategies as st

from oracles import to_sympy
from qopolar.criteria import (ManyRoots, PassesNecessaryCriterion, Reducible,
                              irreducibility_check, single_root_check, squarefree_part)
from qopolar.errors import NotPolygonal
from qopolar.geometry import GeneralPolyhedron, is_polygonal, minkowski_sum_general
from qopolar.resultants import newton_polyhedron
from qopolar.textio import parse_polynomial as P
from strategies import sparse_polys


@pytest.mark.parametrize("p,root", [([1, -2, 1], 1), ([-5, 1], 5), ([-8, 12, -6, 1], 2)])
def test_single_root(p, root):
    assert single_root_check(p) == root


def test_many_roots():
    assert single_root_check([-1, 0, 1]) == ManyRoots(2)
    assert isinstance(single_root_check([2, -3, 1]), ManyRoots)


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5).filter(lambda c: c[0] and c[-1]))
def test_single_root_matches_sympy(coeffs):
    t = sympy.Symbol("t")
    expr = sum(c * t ** i for i, c in enumerate(coeffs))
    roots = sympy.roots(sympy.Poly(expr, t), multiple=False)
    distinct = len(sympy.Poly(expr, t).sqf_part().all_coeffs()) - 1
    r = single_root_check(coeffs)
    if distinct == 1:
        assert list(roots) == [sympy.Rational(r.numerator, r.denominator)]
    else:
        assert r == ManyRoots(distinct)
    assert len(squarefree_part(coeffs)) - 1 == distinct


def test_cusp_passes():
    r = irreducibility_check(P("Y^2 - X1^3"))
    assert isinstance(r, PassesNecessaryCriterion)
    assert r.edge_poly == (-1, 1) and r.root == 1


def test_two_lines_rejected_by_roots():
    r = irreducibility_check(P("Y^2 - X1^2"))
    assert isinstance(r, Reducible) and r.reason == "roots"
    assert r.edge_poly == (-1, 0, 1)


def test_product_rejected_by_edges():
    r = irreducibility_check(P("(Y^2 - X1^3)*(Y^2 - X1^7)"))
    assert isinstance(r, Reducible) and r.reason == "edges"
    assert len(r.edges) == 2


def test_four_branch_factor_passes():
    r = irreducibility_check(P("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y"))
    assert isinstance(r, PassesNecessaryCriterion)
    assert r.edge_poly == (1, -2, 1) and r.root == 1


def test_non_polygonal_raises():
    with pytest.raises(NotPolygonal):
        irreducibility_check(P("X1*X2 + X1^2 + X2^2 + Y"))


polys3 = sparse_polys(d=2, max_terms=3, max_exp=3)


@given(polys3, polys3)
def test_newton_polyhedron_of_product_is_minkowski_sum(g, h):
    lhs = newton_polyhedron(g * h)
    rhs = minkowski_sum_general(newton_polyhedron(g), newton_polyhedron(h))
    assert lhs == rhs


@given(polys3, polys3)
def test_factors_of_polygonal_are_polygonal(g, h):
    if not is_polygonal(newton_polyhedron(g * h)):
        event("product not polygonal")
        return
    event("product polygonal")
    assert is_polygonal(newton_polyhedron(g))
    assert is_polygonal(newton_polyhedron(h))


@given(polys3, polys3)
def test_product_support_matches_sympy(g, h):
    names = ("X1", "X2", "Y")
    ours, _ = to_sympy(g * h, names)
    a, _ = to_sympy(g, names)
    b, _ = to_sympy(h, names)
    assert sympy.expand(ours - a * b) == 0
    if (g * h).terms:
        verts = set(GeneralPolyhedron((g * h).support_points("Y")).vertices)
        assert verts == set(newton_polyhedron(g * h).vertices)


def test_edge_polynomial_rational_exponent_denominator():
    r = irreducibility_check(P("Y^2 - X1^(3/2)"))
    assert isinstance(r, PassesNecessaryCriterion) and r.root == F(1)
