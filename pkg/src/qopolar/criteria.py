"""Polyhedral irreducibility criterion and univariate root tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotPolygonal
from .geometry import compact_edges, edge_polynomial, is_polygonal
from .poly import SparsePoly
from .resultants import newton_polyhedron


# -- univariate helpers (coefficient lists, low degree first) --------------

def utrim(p: Sequence) -> list[Fraction]:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def uderiv(p: Sequence) -> list[Fraction]:
    return utrim([i * c for i, c in enumerate(p)][1:])


def udivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a, b = utrim(a), utrim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b):
        c = r[-1] / lb
        s = len(r) - len(b)
        q[s] = c
        for i, bc in enumerate(b):
            r[s + i] -= c * bc
        r = utrim(r)
    return utrim(q), r


def ugcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd over Q."""
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def squarefree_part(p: Sequence) -> list[Fraction]:
    p = utrim(p)
    g = ugcd(p, uderiv(p))
    return udivmod(p, g)[0] if len(g) > 1 else p


# -- single root ------------------------------------------------------------

@dataclass(frozen=True)
class ManyRoots:
    """The polynomial has at least two distinct roots; ``distinct`` is their number."""

    distinct: int


def single_root_check(p: Sequence) -> Fraction | ManyRoots:
    """Return ``a`` if ``p = c (t - a)^l``, otherwise :class:`ManyRoots`.

    Decided through the squarefree part ``p / gcd(p, p')``, which is linear
    exactly when ``p`` has a single root; that root is then rational.

    >>> single_root_check([1, -2, 1])
    Fraction(1, 1)
    >>> single_root_check([-1, 0, 1])
    ManyRoots(distinct=2)
    """
    p = utrim(p)
    if len(p) < 2:
        raise ValueError("degree must be at least 1")
    if not p[0]:
        raise ValueError("zero constant term")
    sf = squarefree_part(p)
    if len(sf) == 2:
        return -sf[0] / sf[1]
    return ManyRoots(len(sf) - 1)


# -- irreducibility criterion -----------------------------------------------

@dataclass(frozen=True)
class Reducible:
    """Witness for reducibility.

    ``reason`` is ``"edges"`` (at least two compact edges), ``"roots"`` (the
    edge polynomial has several roots) or ``"monomial"``.
    """

    reason: str
    edges: tuple = ()
    edge_poly: tuple = ()


@dataclass(frozen=True)
class PassesNecessaryCriterion:
    edge: tuple
    edge_poly: tuple
    root: Fraction


def irreducibility_check(p: SparsePoly, var: str | None = None):
    """Apply the polyhedral necessary criterion for irreducibility.

    A polygonal Newton polyhedron with several compact edges, or with one
    edge whose edge polynomial has several roots, certifies reducibility.

    Raises
    ------
    NotPolygonal
        if the Newton polyhedron has a compact face of dimension >= 2.
    """
    if not p.terms:
        raise ValueError("zero polynomial")
    var = var or (p.main if p.yvars else None)
    G = newton_polyhedron(p, var)
    if not is_polygonal(G):
        raise NotPolygonal("Newton polyhedron is not polygonal; the criterion does not apply")
    edges = compact_edges(G)
    if len(edges) >= 2:
        return Reducible("edges", tuple(edges))
    if not edges:
        (v,) = G.vertices
        if sum(v) >= 2:
            return Reducible("monomial")
        raise ValueError("unit or a single variable: the criterion does not apply")
    E = edges[0]
    ep = edge_polynomial(p.support_with_coeffs(var), E)
    r = single_root_check(ep)
    if isinstance(r, ManyRoots):
        return Reducible("roots", (E,), tuple(ep))
    return PassesNecessaryCriterion(E, tuple(ep), r)
