"""Elementary and polygonal Newton polyhedra, Minkowski sums, compact faces.

Points of R^{d+1} are tuples of Fractions whose last coordinate is the
exponent of the distinguished variable (Y or T).  Every polyhedron has the
recession cone R^{d+1}_{>=0}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import hull as _hull
from .errors import (
    DimensionMismatch,
    EndpointNotOnSegmentLattice,
    IncomparableInclinations,
    NotAProfile,
    NotPolygonal,
)
from .qvec import (
    INF,
    Order,
    QVec,
    cmp_partial,
    dot,
    fmt_qval,
    lex_key,
    qvec,
    vadd,
    vscale,
    zero,
)


@dataclass(frozen=True)
class ElementaryPolyhedron:
    """Newton polyhedron of ``Y^p - X^{p q}``: vertices ``(p q, 0)`` and ``(0, p)``."""

    height: int
    inclination: QVec

    def __post_init__(self):
        if int(self.height) != self.height or self.height <= 0:
            raise ValueError("height must be a positive integer")
        if self.inclination is INF:
            raise ValueError("inclination must be finite")
        q = qvec(self.inclination)
        if any(c < 0 for c in q):
            raise ValueError("inclination must be nonnegative")
        object.__setattr__(self, "inclination", q)
        object.__setattr__(self, "height", int(self.height))

    def vertices(self) -> list[tuple]:
        d = len(self.inclination)
        return [zero(d) + (Fraction(self.height),),
                vscale(self.height, self.inclination) + (Fraction(0),)]

    def as_general(self) -> "GeneralPolyhedron":
        return GeneralPolyhedron(self.vertices())

    def __str__(self):
        return f"{self.height}/{fmt_qval(self.inclination)}"


def _positive(q) -> bool:
    # q > 0 in the coordinatewise order: nonnegative and nonzero
    return all(c >= 0 for c in q) and any(c > 0 for c in q)


def _ordered_terms(pairs: Iterable[tuple]) -> tuple:
    merged: dict[tuple, int] = defaultdict(int)
    for q, l in pairs:
        merged[qvec(q)] += l
    qs = list(merged)
    for a in range(len(qs)):
        for b in range(a + 1, len(qs)):
            if cmp_partial(qs[a], qs[b]) is Order.INCOMPARABLE:
                raise IncomparableInclinations(
                    f"inclinations {fmt_qval(qs[a])} and {fmt_qval(qs[b])} are incomparable")
    return tuple((q, merged[q]) for q in sorted(qs, key=lex_key) if merged[q])


@dataclass(frozen=True)
class PolygonalProfile:
    """Minkowski normal form ``apex + sum_i l_i/q_i`` of a polygonal polyhedron.

    ``terms`` is sorted by strictly increasing (pairwise comparable)
    inclination.  The vertex walk starts at ``(apex, total_height)`` and ends
    at level ``total_height - sum(l_i)``, which is 0 unless an explicit larger
    ``total_height`` was given.
    """

    terms: tuple
    total_height: int | None = None
    apex: QVec | None = None

    def __post_init__(self):
        if any(l <= 0 for _, l in self.terms):
            raise ValueError("term heights must be positive integers")
        terms = _ordered_terms(self.terms)
        for q, l in terms:
            if not _positive(q):
                raise ValueError(f"inclination {fmt_qval(q)} is not > 0")
            if l <= 0 or int(l) != l:
                raise ValueError("term heights must be positive integers")
        dims = {len(q) for q, _ in terms}
        if self.apex is not None:
            dims.add(len(self.apex))
        if len(dims) > 1:
            raise DimensionMismatch("terms of different dimensions")
        s = sum(l for _, l in terms)
        h = s if self.total_height is None else int(self.total_height)
        if h < s:
            raise ValueError("total height smaller than the sum of term heights")
        object.__setattr__(self, "terms", tuple((q, int(l)) for q, l in terms))
        object.__setattr__(self, "total_height", h)
        if self.apex is not None:
            object.__setattr__(self, "apex", qvec(self.apex))

    @classmethod
    def from_dict(cls, terms: dict, **kw) -> "PolygonalProfile":
        return cls(tuple(terms.items()), **kw)

    @property
    def dim(self) -> int | None:
        if self.apex is not None:
            return len(self.apex)
        return len(self.terms[0][0]) if self.terms else None

    def as_dict(self) -> dict:
        return dict(self.terms)

    def elementary_terms(self) -> list[ElementaryPolyhedron]:
        return [ElementaryPolyhedron(l, q) for q, l in self.terms]

    def vertices(self, d: int | None = None) -> list[tuple]:
        """Vertex walk from the top vertex down, in increasing inclination order."""
        d = self.dim if self.dim is not None else d
        if d is None:
            raise ValueError("dimension unknown for an empty profile; pass d")
        x = self.apex if self.apex is not None else zero(d)
        t = Fraction(self.total_height)
        out = [x + (t,)]
        for q, l in self.terms:
            x = vadd(x, vscale(l, q))
            t -= l
            out.append(x + (t,))
        return out

    def to_general(self, d: int | None = None) -> "GeneralPolyhedron":
        return GeneralPolyhedron(self.vertices(d))

    def subtract(self, q: QVec, l: int) -> "PolygonalProfile":
        """Remove ``l/q`` from the sum; ``q`` must be a term with height >= l."""
        terms = dict(self.terms)
        q = qvec(q)
        if terms.get(q, 0) < l:
            raise ValueError(f"profile has no term {l}/{fmt_qval(q)}")
        terms[q] -= l
        th = self.total_height - l
        return PolygonalProfile(tuple((a, b) for a, b in terms.items() if b), th, self.apex)

    def __str__(self):
        body = ", ".join(f"{fmt_qval(q)}:{l}" for q, l in self.terms)
        return "{" + body + "}"


def minkowski_sum_profiles(terms: Iterable) -> PolygonalProfile:
    """Minkowski sum of elementary polyhedra in normal form.

    Accepts :class:`ElementaryPolyhedron` items or ``(q, l)`` pairs.  Equal
    inclinations merge by adding heights.

    Raises
    ------
    IncomparableInclinations
        if two inclinations are incomparable; use :func:`minkowski_sum_general`.
    """
    pairs = []
    for t in terms:
        if isinstance(t, ElementaryPolyhedron):
            pairs.append((t.inclination, t.height))
        else:
            q, l = t
            pairs.append((qvec(q), l))
    return PolygonalProfile(tuple(pairs))


def vertices_of_profile(p: PolygonalProfile, d: int | None = None) -> list[tuple]:
    return p.vertices(d)


@dataclass(frozen=True, eq=False)
class CompactFace:
    dim: int
    vertices: tuple
    normal: tuple  # strictly positive integer witness

    def __eq__(self, other):
        return isinstance(other, CompactFace) and (self.dim, self.vertices) == (
            other.dim, other.vertices)

    def __hash__(self):
        return hash((self.dim, self.vertices))


class GeneralPolyhedron:
    """``conv(vertices) + R^n_{>=0}`` with an irredundant vertex set.

    The constructor accepts any finite point set and keeps only the vertices.
    """

    __slots__ = ("vertices", "n", "_hull", "_faces")

    def __init__(self, points: Iterable[Sequence], cap: int | None = None):
        pts = [qvec(p) for p in points]
        if not pts:
            raise ValueError("empty polyhedron")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("points of different dimensions")
        h = _hull.lower_hull(pts, cap)
        self._hull = h
        self.n = n
        self.vertices = tuple(h.vertex_points())
        self._faces = None

    def __eq__(self, other):
        return isinstance(other, GeneralPolyhedron) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "GeneralPolyhedron(" + ", ".join(_fmt_point(v) for v in self.vertices) + ")"

    @property
    def hull(self) -> _hull.Hull:
        return self._hull

    def compact_faces(self) -> list[CompactFace]:
        if self._faces is None:
            h = self._hull
            verts = h.vertex_points()
            out = [CompactFace(0, (v,), _vertex_witness(h, k))
                   for k, v in enumerate(verts)]
            for f in _hull.faces(h):
                if f.rmask:
                    continue
                vs = _hull.mask_members(f.vmask, verts)
                if len(vs) < 2:
                    continue
                out.append(CompactFace(_hull.affine_dim(vs), tuple(vs), f.normal))
            out.sort(key=lambda c: (c.dim, c.vertices))
            self._faces = out
        return list(self._faces)


def _vertex_witness(h: _hull.Hull, k: int) -> tuple:
    normal = [0] * h.n
    for f in h.facets:
        if f.vmask >> k & 1:
            normal = [a + b for a, b in zip(normal, f.normal)]
    return tuple(normal)


def _fmt_point(v) -> str:
    return "(" + fmt_qval(v[:-1]) + "," + str(v[-1]) + ")"


def minkowski_sum_general(A: GeneralPolyhedron, B: GeneralPolyhedron,
                          cap: int | None = None) -> GeneralPolyhedron:
    """Irredundant vertex set of ``A + B``."""
    if A.n != B.n:
        raise DimensionMismatch("polyhedra of different ambient dimension")
    _hull.check_dim(A.n, cap)
    return GeneralPolyhedron([vadd(a, b) for a in A.vertices for b in B.vertices], cap)


def compact_faces(G: GeneralPolyhedron) -> list[CompactFace]:
    """All compact faces, each with a strictly positive exposing normal."""
    return G.compact_faces()


def is_polygonal(G: GeneralPolyhedron) -> bool:
    return all(f.dim <= 1 for f in G.compact_faces())


def compact_edges(G: GeneralPolyhedron) -> list[tuple]:
    """Compact edges as ``(upper, lower)`` endpoint pairs (upper has larger last coordinate)."""
    out = []
    for f in G.compact_faces():
        if f.dim != 1:
            continue
        a, b = f.vertices
        if a[-1] < b[-1]:
            a, b = b, a
        out.append((a, b))
    return out


def profile_of_polyhedron(G: GeneralPolyhedron) -> PolygonalProfile:
    """Minkowski normal form of a polygonal polyhedron.

    Raises
    ------
    NotPolygonal
        if ``G`` has a compact face of dimension >= 2.
    IncomparableInclinations
        if two compact edges have incomparable inclinations.
    NotAProfile
        if an edge is horizontal, a height is not integral, or the
        polyhedron is not the sum of its edges.
    """
    if not is_polygonal(G):
        raise NotPolygonal("polyhedron has a compact face of dimension >= 2")
    pairs = []
    for a, b in compact_edges(G):
        h = a[-1] - b[-1]
        if h == 0:
            raise NotAProfile("compact edge parallel to the base hyperplane")
        if h.denominator != 1:
            raise NotAProfile("edge height is not an integer")
        q = tuple((y - x) / h for x, y in zip(a[:-1], b[:-1]))
        if not _positive(q):
            raise NotAProfile(f"edge inclination {fmt_qval(q)} is not positive")
        pairs.append((q, int(h)))
    top = max(G.vertices, key=lambda v: (v[-1], tuple(-c for c in v[:-1])))
    if top[-1].denominator != 1:
        raise NotAProfile("top vertex at a non-integral level")
    prof = PolygonalProfile(tuple(pairs), int(top[-1]), top[:-1])
    if tuple(sorted(prof.vertices())) != tuple(sorted(G.vertices)):
        raise NotAProfile("polyhedron is not the Minkowski sum of its compact edges")
    if prof.apex is not None and not any(prof.apex):
        prof = PolygonalProfile(prof.terms, prof.total_height)
    return prof


def _lin(w, x, tiebreak: bool):
    u = dot(w, x)
    return (u,) + tuple(x) if tiebreak else (u,)


def coherent_path(G: GeneralPolyhedron, w: Sequence, tiebreak: bool = True) -> list[tuple]:
    """Edges of the coherent polygonal path selected by ``w``.

    At every level ``t`` the path passes through the point of ``G`` minimizing
    ``<w, x>``; with ``tiebreak`` the minimization is refined lexicographically
    by ``x``, which simulates a generic irrational ``w``.  The edges are
    returned from the top vertex downward, i.e. in increasing ``w``-inclination,
    as ``(inclination, height)`` pairs.
    """
    w = qvec(w)
    if len(w) != G.n - 1:
        raise DimensionMismatch("w must have dimension d")
    if any(c < 0 for c in w):
        raise ValueError("w must lie in the closed positive orthant")
    pts = [(tuple(v), _lin(w, v[:-1], tiebreak), v[-1]) for v in G.vertices]
    # start: minimal projected value, then lowest level
    cur = min(pts, key=lambda p: (p[1], p[2], p[0]))
    bottom_level = min(p[2] for p in pts)
    path = []
    while cur[2] > bottom_level:
        best = None
        best_key = None
        for p in pts:
            dt = cur[2] - p[2]
            if dt <= 0:
                continue
            ratio = tuple((a - b) / dt for a, b in zip(p[1], cur[1]))
            key = (ratio, -dt, p[0])
            if best_key is None or key < best_key:
                best, best_key = p, key
        h = cur[2] - best[2]
        q = tuple((b - a) / h for a, b in zip(cur[0][:-1], best[0][:-1]))
        path.append((q, h if h.denominator != 1 else int(h)))
        cur = best
    return path


def edge_polynomial(support: Iterable[tuple], E: tuple, denominator: int | None = None
                    ) -> list[Fraction]:
    """Coefficients ``[c_0, ..., c_l]`` of the edge polynomial of ``E``.

    ``support`` holds ``(exponent, coefficient)`` pairs, exponents in
    Q^{d+1}.  The endpoints are ordered by increasing last coordinate, then
    ``E[1] - E[0] = l u`` with ``u`` primitive in ``(1/k) Z^{d+1}`` and
    ``c_i`` is the coefficient at ``E[0] + i u``.

    Raises
    ------
    EndpointNotOnSegmentLattice
        if an endpoint is off the lattice ``(1/denominator) Z^{d+1}`` or the
        segment is degenerate.
    """
    sup = {qvec(e): Fraction(c) for e, c in support}
    a, b = qvec(E[0]), qvec(E[1])
    if (a[-1], lex_key(a)) > (b[-1], lex_key(b)):
        a, b = b, a
    k = denominator
    if k is None:
        k = 1
        for v in list(sup) + [a, b]:
            for c in v:
                k = lcm(k, c.denominator)
    for v in (a, b):
        if any((c * k).denominator != 1 for c in v):
            raise EndpointNotOnSegmentLattice(f"endpoint {v} not in (1/{k})Z^n")
    diff = [int((y - x) * k) for x, y in zip(a, b)]
    l = 0
    for c in diff:
        l = gcd(l, c)
    if l == 0:
        raise EndpointNotOnSegmentLattice("degenerate segment")
    u = [Fraction(c // l, k) for c in diff]
    return [sup.get(tuple(x + i * s for x, s in zip(a, u)), Fraction(0)) for i in range(l + 1)]
