from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from oracles import to_sympy
from qopolar.btype import BunchType, shift_type
from qopolar.bunches import bunch_type_fY
from qopolar.errors import NonMonic, NotUnimodular, ShapeMismatch
from qopolar.geometry import coherent_path
from qopolar.resultants import newton_polyhedron
from qopolar.textio import parse_polynomial as P
from qopolar.toric import laurent_normalize, laurent_shift, toric_base_change
from strategies import sparse_polys, valid_trees


def test_identity_basis():
    H = P("X1*X2^3 + Y^2 - X2")
    assert toric_base_change(H, [(1, 0), (0, 1)]) == H


def test_dual_basis_solves_exponents():
    H = P("X1*X2")
    out = toric_base_change(H, [(1, 0), (1, 1)], dual=True)
    # X1 X2 = V1^0 V2^1 with V1 = X1, V2 = X1 X2
    assert out == P("X2", d=2)


def test_ray_basis():
    assert str(toric_base_change(P("X1*X2 + Y"), [(1, 0), (1, 1)])) == "Y + X1*X2^2"


def test_bad_bases():
    with pytest.raises(NotUnimodular):
        toric_base_change(P("X1*X2"), [(2, 0), (0, 1)])
    with pytest.raises(ShapeMismatch):
        toric_base_change(P("X1*X2"), [(1, 0)])


unimodular = st.sampled_from([((1, 0), (0, 1)), ((1, 0), (1, 1)), ((1, 1), (0, 1)),
                              ((2, 1), (1, 1)), ((1, 2), (1, 1)), ((3, 2), (1, 1))])
weights = st.tuples(st.integers(1, 9), st.integers(1, 9))


@given(sparse_polys(d=2, max_terms=4, max_exp=3), unimodular, weights)
def test_coherent_paths_follow_base_change(H, R, w):
    # X^e -> V^(R e), so <w, R e> = <R^T w, e> and inclinations map by R
    w = (F(w[0]), F(w[1]) + F(1, 7))
    Hv = toric_base_change(H, R)
    pull = tuple(sum(R[i][j] * w[i] for i in range(2)) for j in range(2))
    G, Gv = newton_polyhedron(H), newton_polyhedron(Hv)
    plain = coherent_path(G, pull, tiebreak=False)
    assume(plain == coherent_path(G, pull))
    assume(coherent_path(Gv, w, tiebreak=False) == coherent_path(Gv, w))
    mapped = [(tuple(sum(R[i][j] * q[j] for j in range(2)) for i in range(2)), l)
              for q, l in plain]
    assert coherent_path(Gv, w) == mapped


def test_laurent_example():
    f, q = laurent_normalize(P("Y^2 - X1^(-1)"))
    assert f == P("Y^2 - X1") and q == (-1,)


def test_laurent_noop_on_polynomials():
    F0 = P("Y^3 - X1^2*Y + X1^5")
    assert laurent_normalize(F0) == (F0, (0,))


def test_laurent_needs_monic():
    with pytest.raises(NonMonic):
        laurent_normalize(P("X1^(-1)*Y^2 - 1"))


def test_laurent_derivative_example():
    F0 = P("Y^2 - X1^(-1)")
    f, q = laurent_normalize(F0)
    assert laurent_shift(F0.derivative("Y"), q, 1) == f.derivative("Y")


@st.composite
def laurent_polys(draw):
    n = draw(st.integers(1, 3))
    terms = {((0,), (n,)): 1}
    for _ in range(draw(st.integers(1, 3))):
        j = draw(st.integers(0, n - 1))
        a = draw(st.integers(-4, 4))
        terms[((a,), (j,))] = draw(st.integers(-3, 3).filter(bool))
    from qopolar.poly import SparsePoly
    return SparsePoly(terms, ("X1",), ("Y",))


@given(laurent_polys())
def test_laurent_normalization_symbolic(F0):
    f, q = laurent_normalize(F0)
    assert not f.is_laurent()
    n = F0.degree("Y")
    x, y = sympy.symbols("X1 Y")
    e, _ = to_sympy(F0, ("X1", "Y"))
    sub = sympy.expand(x ** (-n * q[0]) * e.subs(y, x ** q[0] * y))
    ours, _ = to_sympy(f, ("X1", "Y"))
    assert sympy.expand(sub - ours) == 0
    # derivative compatibility: X^{-(n-1)q} F_Y(X^q Y) = f_Y
    dsub = sympy.expand(x ** (-(n - 1) * q[0]) * sympy.diff(e, y).subs(y, x ** q[0] * y))
    dours, _ = to_sympy(f.derivative("Y"), ("X1", "Y"))
    assert sympy.expand(dsub - dours) == 0


def test_shift_type_examples():
    t = BunchType([(((3,),), 1)])
    assert shift_type(t, (-1,), [2]) == BunchType([(((1,),), 1)])
    assert shift_type(t, (0,), [2]) == t


@given(valid_trees(), st.data())
def test_shift_type_round_trip(tree, data):
    t = bunch_type_fY(tree)
    q = tuple(data.draw(st.integers(-3, 3)) for _ in range(tree.d))
    degs = [b.degree for b in tree.branches]
    back = shift_type(shift_type(t, q, degs), tuple(-c for c in q), degs)
    assert back == t
