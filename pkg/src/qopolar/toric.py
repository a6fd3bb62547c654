"""Monomial changes of variables: toric base change and Laurent normalization."""

from __future__ import annotations

from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import NonMonic, NotUnimodular, ShapeMismatch
from .lattice import det, inverse
from .poly import SparsePoly


def _unimodular(rows: Sequence[Sequence[int]], d: int) -> list[list[int]]:
    rows = [[int(c) for c in r] for r in rows]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ShapeMismatch(f"expected {d} vectors of length {d}")
    if any(c < 0 for r in rows for c in r):
        raise ValueError("basis vectors must lie in the nonnegative orthant")
    if abs(det(rows)) != 1:
        raise NotUnimodular(f"determinant {det(rows)} is not +-1")
    return rows


def toric_base_change(H: SparsePoly, basis: Sequence[Sequence[int]], dual: bool = False
                      ) -> SparsePoly:
    """Rewrite ``H`` in the monomial variables of a regular cone.

    By default ``basis`` lists the rays ``r_1..r_d`` of a regular cone
    contained in the positive orthant, and ``X^e`` becomes ``V^c`` with
    ``c_i = <r_i, e>``.  With ``dual=True`` the vectors ``a_i`` generate the
    dual cone, ``V_i = X^{a_i}``, and ``c`` solves ``sum c_i a_i = e``.

    >>> from qopolar.textio import parse_polynomial
    >>> str(toric_base_change(parse_polynomial("X1*X2 + Y"), [(1, 0), (1, 1)]))
    'Y + X1*X2^2'
    """
    d = H.d
    rows = _unimodular(basis, d)
    if dual:
        inv = inverse([list(col) for col in zip(*rows)])

        def fn(e):
            c = tuple(sum(Fraction(a) * x for a, x in zip(r, e)) for r in inv)
            if any(x < 0 for x in c):
                raise ValueError(f"exponent {e} leaves the cone spanned by the basis")
            return c
    else:
        def fn(e):
            return tuple(sum(Fraction(a) * x for a, x in zip(r, e)) for r in rows)
    return H.map_x(fn)


def laurent_shift(F: SparsePoly, q: Sequence[int], n: int | None = None,
                  var: str | None = None) -> SparsePoly:
    """``X^{-n q} F(X^q Y)`` with ``n = deg_Y F`` by default."""
    var = var or F.main
    i = F.yvars.index(var)
    n = F.degree(var) if n is None else n
    q = tuple(Fraction(c) for c in q)
    return F.map_x_y(lambda xe, ye: tuple(a + (ye[i] - n) * b for a, b in zip(xe, q)))


def laurent_normalize(F: SparsePoly, var: str | None = None) -> tuple[SparsePoly, tuple]:
    """Clear negative exponents of a monic Laurent polynomial by ``Y -> X^q Y``.

    ``q_j = min(0, floor(min_{i<n} alpha_j / (n - i)))`` over the terms
    ``X^alpha Y^i``, the largest integer vector (capped at 0) that makes
    ``f = X^{-nq} F(X^q Y)`` a polynomial.  The same ``q`` applied with
    ``n - 1`` turns ``F_Y`` into ``f_Y``.

    >>> from qopolar.textio import parse_polynomial
    >>> f, q = laurent_normalize(parse_polynomial("Y^2 - X^(-1)"))
    >>> str(f), q
    ('Y^2 - X1', (-1,))
    """
    var = var or F.main
    if not F.is_monic(var):
        raise NonMonic("Laurent normalization needs a monic polynomial")
    n = F.degree(var)
    i = F.yvars.index(var)
    q = [0] * F.d
    for (xe, ye), _ in F.items():
        if ye[i] < n:
            for j, a in enumerate(xe):
                q[j] = min(q[j], floor(a / (n - ye[i])))
    q = tuple(q)
    return laurent_shift(F, q, n, var), q
