"""Resultants, discriminants, resultant orders and psi images.

Convention: for polynomials ``f, g`` in ``Y`` of degrees ``m, n``::

    Res_Y(f, g) = lc(g)^m * prod_{g(b) = 0} f(b)

which is the Sylvester determinant with the ``m`` shifted rows of ``g``
placed above the ``n`` rows of ``f``.  With it ``Res(Y - a, Y - b) = b - a``
and ``psi_f(h) = Res_Y(T - f, h)`` is monic in ``T`` for monic ``h``.  The
discriminant of a polynomial of degree ``n`` with constant leading
coefficient is ``(-1)^{n(n-1)/2} Res_Y(f, df/dY) / lc(f)``, so that
``disc(Y^2 - X) = 4X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .errors import DegreeOverflow, NonMonic, NotComparable
from .poly import SparsePoly, monomial_unit_split
from .qvec import QVec

DEFAULT_MAX_DEGREE = 96


# ---------------------------------------------------------------------------
# determinants of polynomial matrices through the packed kernels

def poly_det(M: Sequence[Sequence[SparsePoly]], backend=None) -> SparsePoly:
    """Determinant of a square matrix of :class:`SparsePoly` entries.

    Entries must share their variables.  Rows and columns are first divided by
    their monomial content and rows are cleared of denominators, so the kernel
    works on integer polynomials with nonnegative exponents.
    """
    kern = kernels.get_backend(backend) if isinstance(backend, (str, type(None))) else backend
    n = len(M)
    proto = next((e for row in M for e in row if e.terms), None)
    if proto is None:
        if n == 0:
            raise ValueError("empty matrix needs a prototype; use det 1")
        return M[0][0]
    xvars, yvars = proto.xvars, proto.yvars
    k = 1
    for row in M:
        for e in row:
            k = lcm(k, e.k)
    nv = len(xvars) + len(yvars)
    rows = [[e.with_yvars(yvars).with_k(k) for e in row] for row in M]

    scale = Fraction(1)
    shift = [0] * nv
    # row and column monomial contents
    for r in range(n):
        keys = [key for e in rows[r] for key in e]
        if not keys:
            return SparsePoly._raw({}, 1, xvars, yvars)
        s = [min(col) for col in zip(*keys)]
        if any(s):
            rows[r] = [{tuple(a - b for a, b in zip(key, s)): c for key, c in e.items()}
                       for e in rows[r]]
            shift = [a + b for a, b in zip(shift, s)]
    for cidx in range(n):
        keys = [key for r in range(n) for key in rows[r][cidx]]
        if not keys:
            return SparsePoly._raw({}, 1, xvars, yvars)
        s = [min(col) for col in zip(*keys)]
        if any(s):
            for r in range(n):
                e = rows[r][cidx]
                rows[r][cidx] = {tuple(a - b for a, b in zip(key, s)): c for key, c in e.items()}
            shift = [a + b for a, b in zip(shift, s)]
    for r in range(n):
        L = 1
        for e in rows[r]:
            for c in e.values():
                L = lcm(L, c.denominator)
        if L != 1:
            scale /= L
        rows[r] = [{key: int(c * L) for key, c in e.items()} for e in rows[r]]

    # field width: Bareiss numerators are products of two minors
    bound = [0] * nv
    for row in rows:
        rowmax = [0] * nv
        for e in row:
            for key in e:
                rowmax = [max(a, b) for a, b in zip(rowmax, key)]
        bound = [a + b for a, b in zip(bound, rowmax)]
    bits = max(2 * b + 1 for b in bound).bit_length() + 1
    guard = 0
    for i in range(nv):
        guard |= 1 << (bits * i + bits - 1)

    def pack(key):
        v = 0
        for i, e in enumerate(key):
            v |= e << (bits * i)
        return v

    packed = [[{pack(key): c for key, c in e.items()} for e in row] for row in rows]
    det = kern.bareiss_det(packed, guard)
    mask = (1 << bits) - 1
    out = {}
    for key, c in det.items():
        exps = tuple((key >> (bits * i)) & mask for i in range(nv))
        out[tuple(a + b for a, b in zip(exps, shift))] = Fraction(c) * scale
    return SparsePoly._raw(out, k, xvars, yvars)


# ---------------------------------------------------------------------------
# univariate-in-Y helpers on coefficient lists

def _trim(c: list) -> list:
    while c and not c[-1].terms:
        c.pop()
    return c


def _is_unit_const(p: SparsePoly) -> bool:
    return p.is_constant() and bool(p.terms)


def _rem_const_lc(f: list, g: list) -> list:
    """Remainder of ``f`` modulo ``g`` (coefficient lists), ``lc(g)`` a nonzero constant."""
    f = list(f)
    n = len(g) - 1
    inv = 1 / g[-1].constant_value()
    while len(f) - 1 >= n and f:
        q = f[-1].scale(inv)
        off = len(f) - 1 - n
        if q.terms:
            for i in range(n):
                f[off + i] = f[off + i] - q * g[i]
        f.pop()
        _trim(f)
    return f


def _sylvester(f: list, g: list) -> list[list]:
    """Sylvester matrix, rows of ``g`` first (see module convention)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    return rows


def _mult_matrix(f: list, g: list) -> list[list]:
    """Matrix of multiplication by ``f`` on ``Q[..][Y]/(g)``, basis ``1..Y^{n-1}``."""
    n = len(g) - 1
    zero = g[0] * 0
    h = _rem_const_lc(f, g)
    cols = []
    for _ in range(n):
        cols.append(h + [zero] * (n - len(h)))
        h = _rem_const_lc([zero] + h, g)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _one_like(p: SparsePoly) -> SparsePoly:
    return SparsePoly.constant(1, p.xvars, p.yvars)


def _res_lists(f: list, g: list, method: str, backend) -> SparsePoly:
    """``Res(f, g)`` of coefficient lists (both nonzero)."""
    one = _one_like(f[0])
    m, n = len(f) - 1, len(g) - 1
    if method == "sylvester":
        if m == 0 and n == 0:
            return one
        if n == 0:
            return g[0] ** m
        if m == 0:
            return f[0] ** n
        return poly_det(_sylvester(f, g), backend)

    acc = one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return acc * g[0] ** m
        if m == 0:
            return acc * f[0] ** n
        if m >= n and _is_unit_const(g[-1]):
            r = _trim(_rem_const_lc(f, g))
            if not r:
                return one * 0
            acc = acc * g[-1] ** (m - (len(r) - 1))
            f = r
            continue
        if n > m and _is_unit_const(f[-1]):
            if (m * n) % 2:
                acc = -acc
            f, g = g, f
            continue
        break
    # no further reduction; deg f < deg g with lc(g) constant, or the reverse
    if _is_unit_const(g[-1]):
        return acc * g[-1] ** m * poly_det(_mult_matrix(f, g), backend)
    if _is_unit_const(f[-1]):
        if (m * n) % 2:
            acc = -acc
        return acc * f[-1] ** n * poly_det(_mult_matrix(g, f), backend)
    return acc * poly_det(_sylvester(f, g), backend)


def resultant_y(f: SparsePoly, g: SparsePoly, var: str | None = None, method: str = "auto",
                max_degree: int = DEFAULT_MAX_DEGREE, backend=None) -> SparsePoly:
    """Resultant in ``var`` (default: the distinguished variable of ``f``).

    ``method="sylvester"`` evaluates the full Sylvester determinant.
    ``method="auto"`` first applies exact Euclidean steps while a leading
    coefficient is constant, then uses the smaller of the multiplication
    matrix or the Sylvester matrix.  Both give identical results.

    Examples
    --------
    >>> from qopolar.textio import parse_polynomial as P
    >>> str(resultant_y(P("Y^2 - X1^3"), P("Y")))
    '-X1^3'
    """
    if var is None:
        var = f.main
    fa, ga = f, g
    if var not in fa.yvars:
        fa = fa.with_yvars(fa.yvars + (var,))
    if var not in ga.yvars:
        ga = ga.with_yvars(ga.yvars + (var,))
    fa, ga = fa + 0 * ga, ga + 0 * fa  # common variables
    fa = fa.with_yvars(_union(fa.yvars, ga.yvars))
    ga = ga.with_yvars(fa.yvars)
    m, n = fa.degree(var), ga.degree(var)
    if m + n > max_degree:
        raise DegreeOverflow(f"resultant of degrees {m}+{n} exceeds bound {max_degree}")
    fl = fa.coeff_list(var)
    gl = ga.coeff_list(var)
    rest = tuple(v for v in fa.yvars if v != var)
    if not fl or not gl:
        return SparsePoly._raw({}, 1, fa.xvars, rest)
    if method not in ("auto", "sylvester"):
        raise ValueError(f"unknown resultant method {method!r}")
    return _res_lists(fl, gl, method, backend)


def _union(a, b):
    out = list(a)
    for v in b:
        if v not in out:
            out.append(v)
    return tuple(out)


def discriminant_y(f: SparsePoly, var: str | None = None, method: str = "auto",
                   backend=None) -> SparsePoly:
    """Discriminant ``(-1)^{n(n-1)/2} Res_Y(f, f') / lc(f)``.

    Raises
    ------
    NonMonic
        if the leading coefficient is not a nonzero constant.
    """
    var = var or f.main
    n = f.degree(var)
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    lc = f.leading_coeff(var)
    if not _is_unit_const(lc):
        raise NonMonic("discriminant requires a constant leading coefficient")
    r = resultant_y(f, f.derivative(var), var, method=method, backend=backend)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return r.scale(Fraction(sign) / lc.constant_value())


@dataclass(frozen=True)
class MonomialUnitForm:
    """``phi = X^exponent * eps`` with ``eps(0) = unit_constant != 0``."""

    exponent: QVec
    unit_constant: Fraction
    cofactor: SparsePoly = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class NotQO:
    """The discriminant cofactor vanishes at the origin."""

    exponent: QVec
    cofactor: SparsePoly = field(compare=False)


def monomial_unit_form(p: SparsePoly) -> MonomialUnitForm | None:
    rho, eps, c0 = monomial_unit_split(p)
    if not c0:
        return None
    return MonomialUnitForm(rho, c0, eps)


def is_quasi_ordinary(f: SparsePoly, var: str | None = None, method: str = "auto"
                      ) -> MonomialUnitForm | NotQO:
    """Test whether ``disc_Y f`` is a monomial times a unit."""
    var = var or f.main
    if not f.is_monic(var):
        raise NonMonic("quasi-ordinariness is tested on monic polynomials")
    if f.degree(var) == 1:
        return MonomialUnitForm((Fraction(0),) * f.d, Fraction(1), _one_like(f).drop_var(var))
    disc = discriminant_y(f, var, method=method)
    if not disc.terms:
        return NotQO((), disc)
    rho, eps, c0 = monomial_unit_split(disc)
    if c0:
        return MonomialUnitForm(rho, c0, eps)
    return NotQO(rho, eps)


def rho(f: SparsePoly, h: SparsePoly, var: str | None = None, method: str = "auto") -> QVec:
    """Exponent of ``Res_Y(f, h) = X^rho * eps`` with ``eps(0) != 0``.

    Raises
    ------
    NotComparable
        if the cofactor vanishes at the origin (``h`` not comparable to ``f``).
    """
    var = var or f.main
    for p in (f, h):
        if not p.is_monic(var):
            raise NonMonic("rho is defined for monic polynomials")
    r = resultant_y(f, h, var, method=method)
    if not r.terms:
        raise NotComparable("resultant vanishes (common factor)", r)
    e, eps, c0 = monomial_unit_split(r)
    if not c0:
        raise NotComparable("resultant is not a monomial times a unit", eps)
    return e


def psi_image(f: SparsePoly, h: SparsePoly, var: str | None = None, tvar: str = "T",
              method: str = "auto", backend=None) -> SparsePoly:
    """``psi_f(h) = Res_Y(T - f, h)``, a polynomial in ``X`` and ``T``."""
    var = var or f.main
    if not h.is_monic(var) and h.degree(var) > 0:
        raise NonMonic("psi image requires h monic")
    if tvar in f.yvars or tvar in h.yvars:
        raise ValueError(f"variable {tvar} already in use")
    T = SparsePoly.var(tvar, f.xvars, (tvar,) + f.yvars)
    return resultant_y(T - f, h, var, method=method, backend=backend)


def newton_polyhedron(p: SparsePoly, var: str | None = None, cap: int | None = None):
    """Newton polyhedron of ``p`` in R^{d+1} (``R^d`` when ``p`` has no integer variable)."""
    from .geometry import GeneralPolyhedron

    if not p.terms:
        raise ValueError("Newton polyhedron of the zero polynomial")
    if not p.yvars:
        return GeneralPolyhedron(p.support_points(None), cap)
    return GeneralPolyhedron(p.support_points(var or p.main), cap)
