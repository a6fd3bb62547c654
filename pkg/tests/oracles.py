"""Independent oracles used by the tests.

Nothing here imports the package's geometry or resultant code.
"""

from fractions import Fraction
from itertools import combinations

import sympy
from sympy.polys.subresultants_qq_zz import sylvester


def _solve(cols, rhs):
    """Solve ``sum x_k cols[k] = rhs`` exactly; ``None`` if inconsistent or not unique."""
    m, n = len(rhs), len(cols)
    A = [[Fraction(cols[k][r]) for k in range(n)] + [Fraction(rhs[r])] for r in range(m)]
    row = 0
    piv = []
    for c in range(n):
        p = next((r for r in range(row, m) if A[r][c] != 0), None)
        if p is None:
            return None
        A[row], A[p] = A[p], A[row]
        for r in range(m):
            if r != row and A[r][c] != 0:
                t = A[r][c] / A[row][c]
                A[r] = [a - t * b for a, b in zip(A[r], A[row])]
        piv.append(row)
        row += 1
    if any(A[r][n] != 0 for r in range(row, m)):
        return None
    return [A[piv[k]][n] / A[piv[k]][k] for k in range(n)]


def _in_hull_plus_orthant(v, points):
    """Whether ``v`` lies in ``conv(points) + R^n_{>=0}``, by Caratheodory enumeration."""
    n = len(v)
    gens = [tuple(p) + (1,) for p in points]
    gens += [tuple(int(i == j) for j in range(n)) + (0,) for i in range(n)]
    target = tuple(v) + (1,)
    for r in range(1, n + 2):
        for sub in combinations(range(len(gens)), r):
            if all(k >= len(points) for k in sub):
                continue
            x = _solve([gens[k] for k in sub], target)
            if x is not None and all(c >= 0 for c in x):
                return True
    return False


def brute_vertices(points):
    """Vertices of ``conv(points) + R^n_{>=0}``, sorted."""
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    # a point dominating another one is never a vertex
    pts = [v for v in pts
           if not any(q != v and all(a <= b for a, b in zip(q, v)) for q in pts)]
    out = []
    for v in pts:
        others = [p for p in pts if p != v]
        if not others or not _in_hull_plus_orthant(v, others):
            out.append(v)
    return out


def minkowski_points(A, B):
    return [tuple(a + b for a, b in zip(p, q)) for p in A for q in B]


# -- sympy side of the resultant dual route ------------------------------------------

def to_sympy(p, names=None):
    """Convert a SparsePoly through its public term view."""
    syms = sympy.symbols(" ".join(names or (p.xvars + p.yvars)))
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = sympy.Integer(0)
    for (xe, ye), c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, tuple(xe) + tuple(ye)):
            term *= s ** sympy.Rational(e.numerator, e.denominator)
        expr += term
    return expr, syms


def sympy_resultant(f, g, var="Y"):
    """``lc(g)^deg f * prod f(roots of g)``: sympy's Sylvester matrix of ``(g, f)``.

    ``sympy.resultant`` itself is avoided: its sign is wrong for some pairs of
    unequal degrees (``resultant(Y, Y**3 + 1)`` gives -1).
    """
    names = tuple(dict.fromkeys(f.xvars + f.yvars + g.yvars))
    ef, syms = to_sympy(f.with_yvars(names[len(f.xvars):]), names)
    eg, _ = to_sympy(g.with_yvars(names[len(f.xvars):]), names)
    y = syms[names.index(var)]
    if sympy.degree(eg, y) == 0 or sympy.degree(ef, y) == 0:
        return sympy.expand(eg ** sympy.degree(ef, y) * ef ** sympy.degree(eg, y))
    return sympy.expand(sylvester(eg, ef, y).det(method="berkowitz"))


def sympy_support(expr, syms):
    poly = sympy.Poly(expr, *syms)
    return sorted(tuple(Fraction(int(e)) for e in m) for m in poly.monoms())
