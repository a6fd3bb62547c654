"""Exact convex hulls of ``conv(S) + R^n_{>=0}`` by double description.

All arithmetic is on integers: input points are scaled by a common
denominator before the hull is computed.  The double-description method
enumerates the extreme rays of the cone of valid inequalities
``{(w, b) : w.s + b >= 0 for s in S, w >= 0}``; each ray with ``w != 0`` is a
facet ``w.x >= -b`` of the polyhedron.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionTooLarge
from .lattice import int_rank, inverse

DEFAULT_HULL_DIM = 4
HULL_DIM_ENV = "QOPOLAR_HULL_DIM"


def hull_dim_cap() -> int:
    """Largest ambient dimension accepted by the hull routines."""
    raw = os.environ.get(HULL_DIM_ENV)
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            cap = 0
        if cap >= 1:
            return cap
    return DEFAULT_HULL_DIM


def check_dim(n: int, cap: int | None = None) -> None:
    cap = hull_dim_cap() if cap is None else cap
    if n > cap:
        raise DimensionTooLarge(f"ambient dimension {n} exceeds hull bound {cap}")


@dataclass(frozen=True)
class Facet:
    normal: tuple  # integer, nonnegative, primitive
    offset: int  # facet is {x : normal.x >= offset} in scaled coordinates
    vmask: int  # bitmask over vertices lying on the facet
    rmask: int  # bitmask over coordinate rays e_i parallel to the facet


@dataclass(frozen=True)
class Face:
    vmask: int
    rmask: int
    normal: tuple  # sum of the normals of the facets containing the face


@dataclass(frozen=True)
class Hull:
    """Hull data in scaled integer coordinates (``points / scale``)."""

    n: int
    scale: int
    vertices: tuple  # scaled integer vertices, lexicographically sorted
    facets: tuple

    def vertex_points(self) -> list[tuple]:
        return [tuple(Fraction(c, self.scale) for c in v) for v in self.vertices]


def _primitive(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v) if g > 1 else tuple(v)


def pareto_minimal(points: Sequence[tuple]) -> list[tuple]:
    """Remove duplicates and points dominated coordinatewise by another point."""
    pts = sorted(set(points))
    front: list[tuple] = []
    for p in pts:
        # any dominating point is lexicographically smaller, hence already seen
        if any(all(a <= b for a, b in zip(q, p)) for q in front):
            continue
        front.append(p)
    return front


def _dd_cone(rows: list[tuple], N: int) -> list[tuple]:
    """Extreme rays of ``{a : r.a >= 0 for r in rows}`` (a pointed cone in Z^N)."""
    # initial basis of N independent rows
    basis: list[int] = []
    for i, r in enumerate(rows):
        if int_rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == N:
                break
    if len(basis) != N:
        raise ValueError("inequality system does not define a pointed cone")
    inv = inverse([rows[i] for i in basis])
    rays: list[tuple] = []
    zsets: list[int] = []
    for j in range(N):
        col = [inv[i][j] for i in range(N)]
        den = 1
        for c in col:
            den = lcm(den, c.denominator)
        ray = _primitive(tuple(int(c * den) for c in col))
        rays.append(ray)
        z = 0
        for t, bi in enumerate(basis):
            if t != j:
                z |= 1 << bi
        zsets.append(z)

    done = set(basis)
    for i, r in enumerate(rows):
        if i in done:
            continue
        done.add(i)
        vals = [sum(a * b for a, b in zip(r, ray)) for ray in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            bit = 1 << i
            zsets = [z | bit if vals[k] == 0 else z for k, z in enumerate(zsets)]
            continue
        new_rays = []
        new_z = []
        bit = 1 << i
        for k, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[k])
                new_z.append(zsets[k] | bit if v == 0 else zsets[k])
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                if bin(common).count("1") < N - 2:
                    continue
                adjacent = True
                for k, z in enumerate(zsets):
                    if k != p and k != q and z & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], -vals[q]
                ray = _primitive(tuple(vq * a + vp * b for a, b in zip(rays[p], rays[q])))
                new_rays.append(ray)
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    return rays


def lower_hull(points: Sequence[Sequence], cap: int | None = None) -> Hull:
    """Vertices and facets of ``conv(points) + R^n_{>=0}``.

    Parameters
    ----------
    points : sequence of rational vectors, all of the same length ``n``
    cap : optional hull-dimension bound (defaults to :func:`hull_dim_cap`)
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        raise ValueError("hull of an empty point set")
    n = len(pts[0])
    check_dim(n, cap)
    scale = 1
    for p in pts:
        for c in p:
            scale = lcm(scale, c.denominator)
    ipts = pareto_minimal([tuple(int(c * scale) for c in p) for p in pts])

    N = n + 1
    rays = [tuple(int(i == j) for j in range(n)) + (0,) for i in range(n)]
    rows = rays + [p + (1,) for p in ipts]
    cone = _dd_cone(rows, N)

    raw_facets = []
    for a in cone:
        w = a[:n]
        if not any(w):
            continue  # the face at infinity
        raw_facets.append((w, -a[n]))

    # a point is a vertex iff the facets through it have rank n
    vertices = []
    for p in ipts:
        tight = [w + (-c,) for w, c in raw_facets
                 if sum(x * y for x, y in zip(w, p)) == c]
        if int_rank(tight) == n:
            vertices.append(p)
    vertices.sort()

    facets = []
    for w, c in raw_facets:
        vmask = 0
        for k, v in enumerate(vertices):
            if sum(x * y for x, y in zip(w, v)) == c:
                vmask |= 1 << k
        rmask = 0
        for i in range(n):
            if w[i] == 0:
                rmask |= 1 << i
        facets.append(Facet(tuple(w), c, vmask, rmask))
    facets.sort(key=lambda f: (f.normal, f.offset))
    return Hull(n, scale, tuple(vertices), tuple(facets))


def faces(h: Hull) -> list[Face]:
    """All nonempty proper faces, as intersections of facets."""
    seen: dict[tuple, None] = {}
    frontier = []
    for f in h.facets:
        key = (f.vmask, f.rmask)
        if f.vmask and key not in seen:
            seen[key] = None
            frontier.append(key)
    while frontier:
        nxt = []
        for a in frontier:
            for f in h.facets:
                key = (a[0] & f.vmask, a[1] & f.rmask)
                if key[0] and key not in seen:
                    seen[key] = None
                    nxt.append(key)
        frontier = nxt
    out = []
    for vmask, rmask in seen:
        normal = [0] * h.n
        for f in h.facets:
            if f.vmask & vmask == vmask and f.rmask & rmask == rmask:
                normal = [a + b for a, b in zip(normal, f.normal)]
        out.append(Face(vmask, rmask, tuple(normal)))
    return out


def mask_members(mask: int, items: Sequence) -> list:
    return [x for k, x in enumerate(items) if mask >> k & 1]


def affine_dim(points: Sequence[tuple]) -> int:
    if not points:
        return -1
    base = points[0]
    return int_rank([tuple(a - b for a, b in zip(p, base)) for p in points[1:]])
