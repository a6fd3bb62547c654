from fractions import Fraction as F

import pytest
from hypothesis import given

from qopolar.eggers import isomorphic
from qopolar.errors import ParseError, ValidationError
from qopolar.textio import (format_poly_file, format_polynomial, format_tree, format_type,
                            parse_poly_file, parse_polynomial, parse_tree, parse_type)
from strategies import sparse_polys, valid_trees


def _support(p):
    return sorted(tuple(int(c) for c in v) for v in p.support_points())


def test_parse_simple_support():
    assert _support(parse_polynomial("Y^2 - X1^3*X2^2")) == [(0, 0, 2), (3, 2, 0)]


def test_parse_expands_powers():
    p = parse_polynomial("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y")
    assert _support(p) == [(0, 0, 4), (3, 2, 2), (5, 4, 1), (6, 4, 0)]


def test_laurent_flag():
    assert parse_polynomial("Y^2 - X1^(-1)").is_laurent()
    assert not parse_polynomial("Y^2 - X1").is_laurent()


def test_rational_coefficients_and_exponents():
    p = parse_polynomial("1/2*X1^(3/2)*Y - 3")
    assert dict(p.support_with_coeffs()) == {(F(3, 2), 1): F(1, 2), (0, 0): -3}


@pytest.mark.parametrize("text,pos", [
    ("Y^2 +* X1", 5),
    ("(Y", 2),
    ("2**Y", 2),
])
def test_syntax_error_positions(text, pos):
    with pytest.raises(ParseError, match=f"position {pos}"):
        parse_polynomial(text)


@given(sparse_polys(d=2))
def test_polynomial_round_trip(p):
    assert parse_polynomial(format_polynomial(p), d=2, yvars=("Y",)) == p


def test_four_branch_tree_file(corpus_text):
    t = parse_tree(corpus_text("four_branch.tree"))
    assert t.s == 4 and t.d == 2


def test_single_branch_file():
    t = parse_tree("branch c deg 2 exps 3/2")
    assert t.s == 1 and t.d == 1


def test_ultrametric_violation_is_named():
    text = """dim 2
branch a deg 1 exps
branch b deg 1 exps
branch c deg 1 exps
contact a b (1,0)
contact b c (0,1)
contact a c (2,2)
"""
    with pytest.raises(ValidationError, match="ultrametric"):
        parse_tree(text)


@pytest.mark.parametrize("text,msg", [
    ("branch a deg 1 exps\nbranch a deg 1 exps", "defined twice"),
    ("branch a deg 2 exps 3/2\nbranch b deg 2 exps 3/2", "missing contact"),
    ("branch a deg 2 exps 3/2\ncontact a z 1", "unknown"),
])
def test_tree_file_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_tree(text)


@given(valid_trees())
def test_tree_round_trip(tree):
    back = parse_tree(format_tree(tree))
    assert isomorphic(back, tree, match_order=True)


def test_type_round_trip(corpus_text):
    tf = parse_type(corpus_text("four_branch.type"))
    assert tf.names == ["f11", "f12", "f21", "f22"]
    again = parse_type(format_type(tf.btype, tf.names))
    assert again.btype == tf.btype and again.names == tf.names


def test_poly_file_round_trip(corpus_text):
    pf = parse_poly_file(corpus_text("two_cusps.poly"))
    back = parse_poly_file(format_poly_file(pf))
    assert back.poly == pf.poly and back.factors == pf.factors
    assert isomorphic(back.tree(), pf.tree(), match_order=True)


def test_poly_file_needs_one_poly():
    with pytest.raises(ParseError, match="exactly one"):
        parse_poly_file("factor Y\n")
