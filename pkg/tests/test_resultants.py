from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import sympy_resultant, to_sympy
from qopolar.errors import DegreeOverflow, NonMonic, NotComparable
from qopolar.geometry import profile_of_polyhedron
from qopolar.kernels import available_backends
from qopolar.resultants import (MonomialUnitForm, NotQO, discriminant_y, is_quasi_ordinary,
                                newton_polyhedron, poly_det, psi_image, resultant_y, rho)
from qopolar.textio import parse_polynomial as P
from strategies import monic_polys

F11 = "(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y"


def _same(ours, expr, names):
    theirs, _ = to_sympy(ours, names)
    return sympy.expand(theirs - expr) == 0


def test_cusp_resultant():
    assert resultant_y(P("Y^2 - X1^3"), P("Y")) == P("-X1^3")
    assert resultant_y(P("Y^2 - X1^3"), P("Y"), method="sylvester") == P("-X1^3")


def test_resultant_with_constant_is_one():
    assert resultant_y(P("Y^2 - X1^3"), P("1")) == P("1")


def test_linear_resultant_sign():
    assert resultant_y(P("Y - 2"), P("Y - 7")) == P("5")


def test_degree_bound():
    with pytest.raises(DegreeOverflow):
        resultant_y(P("Y^3"), P("Y^3"), max_degree=5)


@given(monic_polys(d=1), monic_polys(d=1))
def test_resultant_routes_agree_with_sympy(f, g):
    auto = resultant_y(f, g)
    assert auto == resultant_y(f, g, method="sylvester")
    assert _same(auto, sympy_resultant(f, g), ("X1", "Y"))


@given(monic_polys(d=2, max_terms=2, max_exp=2), monic_polys(d=2, max_terms=2, max_exp=2))
def test_resultant_two_variables_agrees_with_sympy(f, g):
    assert _same(resultant_y(f, g), sympy_resultant(f, g), ("X1", "X2", "Y"))


@given(monic_polys(d=1), monic_polys(d=1), monic_polys(d=1))
def test_resultant_multiplicative(f, g, h):
    assert resultant_y(f, g * h) == resultant_y(f, g) * resultant_y(f, h)
    assert resultant_y(g * h, f) == resultant_y(g, f) * resultant_y(h, f)


@given(monic_polys(d=1, max_terms=2), monic_polys(d=1, max_terms=2))
def test_discriminant_of_product(f, g):
    if f.degree("Y") < 1 or g.degree("Y") < 1:
        return
    r = resultant_y(f, g)
    assert discriminant_y(f * g) == discriminant_y(f) * discriminant_y(g) * r * r


def test_discriminant_examples():
    assert discriminant_y(P("Y^2 - X1^3")) == P("4*X1^3")
    assert discriminant_y(P("Y - X1")) == P("1")
    with pytest.raises(NonMonic):
        discriminant_y(P("X1*Y^2 - 1"))


@given(monic_polys(d=1, max_terms=3))
def test_discriminant_agrees_with_sympy(f):
    if f.degree("Y") < 1:
        return
    expr, (x, y) = to_sympy(f, ("X1", "Y"))
    assert _same(discriminant_y(f), sympy.discriminant(expr, y), ("X1",))


def test_quasi_ordinary_examples():
    q = is_quasi_ordinary(P("Y^2 - X1*X2"))
    assert isinstance(q, MonomialUnitForm)
    assert q.exponent == (1, 1) and q.unit_constant == 4
    assert isinstance(is_quasi_ordinary(P("Y^2 - (X1 + X2)")), NotQO)
    q = is_quasi_ordinary(P(F11))
    assert isinstance(q, MonomialUnitForm) and q.unit_constant != 0


def test_quasi_ordinary_product(corpus_text):
    from conftest import CORPUS
    from qopolar.textio import parse_poly_file
    f = parse_poly_file(corpus_text("four_branch.poly"), base=CORPUS).poly
    assert isinstance(is_quasi_ordinary(f), MonomialUnitForm)


def test_rho_examples():
    assert rho(P("Y^2 - X1^3"), P("Y")) == (3,)
    assert rho(P("Y", d=2), P("Y^2 + (X1 + X2)*Y + X1*X2^2")) == (1, 2)
    with pytest.raises(NotComparable):
        rho(P("Y - X1", d=2), P("Y - X2"))


def test_psi_examples():
    assert psi_image(P("Y^2 - X1^3"), P("Y")) == P("T + X1^3", yvars=("T", "Y")).drop_var("Y")
    one = psi_image(P("Y^2 - X1^3"), P("1"))
    assert one.constant_value() == 1


def test_psi_of_single_branch_derivative():
    f = P(F11)
    fY = f.derivative("Y").scale(F(1, 4))
    G = newton_polyhedron(psi_image(f, fY, method="sylvester"), "T")
    assert sorted(G.vertices) == [(0, 0, 3), (6, 4, 2), (19, 14, 0)]
    assert profile_of_polyhedron(G).as_dict() == {(6, 4): 1, (F(13, 2), 5): 2}


def test_newton_polyhedron_examples():
    assert newton_polyhedron(P("X1^2*X2")).vertices == ((2, 1, 0),)
    assert sorted(newton_polyhedron(P("Y^2 - X1^3")).vertices) == [(0, 2), (3, 0)]
    prof = profile_of_polyhedron(newton_polyhedron(P(F11)))
    assert prof.as_dict() == {(F(3, 2), 1): 4}


entries = st.integers(-2, 2)


@pytest.mark.skipif("compiled" not in available_backends(), reason="compiled kernels absent")
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.tuples(entries, entries, st.integers(0, 2)),
                                min_size=n, max_size=n), min_size=n, max_size=n)))
def test_backends_agree_on_determinants(rows):
    X, Y = P("X1"), P("Y")
    M = [[a + b * X ** e * Y for a, b, e in row] for row in rows]
    assert poly_det(M, "python") == poly_det(M, "compiled")
    names = ("X1", "Y")
    sm = sympy.Matrix([[to_sympy(e, names)[0] for e in row] for row in M])
    assert _same(poly_det(M, "python"), sm.det(method="berkowitz"), names)
