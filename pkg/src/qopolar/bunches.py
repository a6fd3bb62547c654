"""Bunch decompositions of the polar: type, predicted polyhedra, and the inverse problems.

The type of ``f_Y`` has one column per non-extremal vertex ``P`` of the
Eggers-Wall tree: the vector ``(nu_1(P), ..., nu_s(P))`` and the coefficient
of ``P`` in ``-d gamma``.  From it one predicts the Newton polyhedra of the
images ``psi_{f_i}(f_Y)`` and ``psi_f(f_Y)``; conversely the type (with the
branch degrees) determines the tree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .btype import BunchType
from .eggers import BranchData, EggersWallTree, ZeroChain, nu, nu_invert
from .errors import (IncomparableInclinations, InconsistentProfiles, ReconstructionError,
                     ShapeMismatch, ValidationError)
from .geometry import (ElementaryPolyhedron, GeneralPolyhedron, PolygonalProfile,
                       minkowski_sum_general, minkowski_sum_profiles)
from .lattice import Lattice
from .qvec import INF, QVec, as_qval, fmt_qval, leq, sort_chain, vadd, vscale, vsub, vsum, zero


# -- forward direction ---------------------------------------------------------

def type_from_chain(tree: EggersWallTree, chain: ZeroChain) -> BunchType:
    """Columns ``((nu_1(P), ..., nu_s(P)), c)`` of a contact chain ``sum c P``."""
    cols = [(tuple(nu(tree, i, P) for i in range(tree.s)), c) for P, c in chain.items()]
    return BunchType(cols, tree.s, tree.d)


def polar_chain(tree: EggersWallTree) -> ZeroChain:
    """``-d gamma`` restricted to the non-extremal vertices."""
    mb = tree.minus_boundary()
    return ZeroChain({P: mb[P] for P in tree.non_extremal()})


def bunch_type_fY(tree: EggersWallTree) -> BunchType:
    """Type of the bunch decomposition of ``f_Y`` read off the tree.

    Columns follow the vertex order of the tree (increasing valuation).

    >>> from qopolar.eggers import BranchData, build_tree
    >>> print(bunch_type_fY(build_tree([BranchData(2, ["3/2"])], [["inf"]])))
    (3)
    1
    """
    return type_from_chain(tree, polar_chain(tree))


def predicted_psi_i(tree: EggersWallTree, i: int) -> PolygonalProfile:
    """Newton polyhedron of ``psi_{f_i}(f_Y)`` as ``sum_P c_P / nu_i(P)``."""
    return minkowski_sum_profiles((nu(tree, i, P), c) for P, c in polar_chain(tree).items())


def predicted_psi_total(tree: EggersWallTree, cap: int | None = None) -> GeneralPolyhedron:
    """Newton polyhedron of ``psi_f(f_Y)`` as ``sum_P c_P / (nu_1(P) + ... + nu_s(P))``.

    The result need not be polygonal when the summed inclinations are
    incomparable.
    """
    d = tree.d
    terms = [(vsum((nu(tree, i, P) for i in range(tree.s)), d), c)
             for P, c in polar_chain(tree).items()]
    try:
        return minkowski_sum_profiles(terms).to_general(d)
    except IncomparableInclinations:
        pass
    acc = GeneralPolyhedron([zero(d + 1)], cap)
    for q, c in terms:
        acc = minkowski_sum_general(acc, ElementaryPolyhedron(c, q).as_general(), cap)
    return acc


# -- peeling profiles --------------------------------------------------------------

def peel_contact(profiles: Sequence[PolygonalProfile], tree: EggersWallTree) -> ZeroChain:
    """Recover the contact chain of a bunch decomposition from per-branch profiles.

    Repeatedly finds a point ``P`` such that, for every branch through
    ``P``, the steepest remaining edge of that branch's profile sits at
    ``nu_i(P)`` with one common height ``c``; records ``c P`` and removes
    ``c / nu_r(P)`` from every profile.

    Raises
    ------
    InconsistentProfiles
        if the profiles cannot come from one contact chain on ``tree``.
    """
    s = tree.s
    if len(profiles) != s:
        raise InconsistentProfiles(f"expected {s} profiles, got {len(profiles)}")
    profs = [dict(p.terms) for p in profiles]
    totals = {sum(p.values()) for p in profs}
    if len(totals) > 1:
        raise InconsistentProfiles(f"profiles of different total heights {sorted(totals)}")
    out = []
    while any(profs):
        located = {}
        for i, p in enumerate(profs):
            if not p:
                continue
            q = sort_chain(p)[-1]
            try:
                lam = nu_invert(tree, i, q)
            except ValueError as exc:
                raise InconsistentProfiles(f"branch {i + 1}: {exc}") from None
            located[i] = (tree.branch_vertex(i, lam), p[q])
        pick = None
        for i, (P, _) in sorted(located.items()):
            if all(j in located and located[j][0] == P for j in P.branches):
                pick = P
                break
        if pick is None:
            raise InconsistentProfiles("no point is the steepest edge for all its branches")
        heights = {located[j][1] for j in pick.branches}
        if len(heights) != 1:
            raise InconsistentProfiles(f"heights {sorted(heights)} disagree at {pick!r}")
        (c,) = heights
        for r in range(s):
            q = nu(tree, r, pick)
            if profs[r].get(q, 0) < c:
                raise InconsistentProfiles(
                    f"branch {r + 1} lacks {c}/{fmt_qval(q)} required by {pick!r}")
            profs[r][q] -= c
            if not profs[r][q]:
                del profs[r][q]
        out.append((pick, c))
    return ZeroChain(out)


# -- reconstruction ------------------------------------------------------------------

def _col_leq(x: tuple, y: tuple) -> bool:
    return all(leq(a, b) for a, b in zip(x, y))


def reconstruct_tree(t: BunchType, degrees: Sequence[int], names: Sequence[str] | None = None,
                     lattice: Lattice | None = None) -> EggersWallTree:
    """Rebuild the Eggers-Wall tree from the type of ``f_Y`` and the branch degrees.

    Row ``r`` locates the vertices on the branch of ``f_r``: among the
    columns sharing a value in that row, the coordinatewise-minimal one.
    The chains of two rows share a prefix that ends at their bifurcation.
    The coefficients of ``gamma`` follow from the multiplicities, working
    down from the extremal segments; they give the characteristic integers,
    and inverting ``nu_r`` gives the valuations.

    Raises
    ------
    ReconstructionError
        naming the row and value (or vertex) at which the matrix fails to
        be realizable.
    """
    s, d = t.s, t.d
    if len(degrees) != s:
        raise ShapeMismatch(f"{len(degrees)} degrees for {s} rows")
    names = list(names) if names else [f"f{i + 1}" for i in range(s)]
    cols = [v for v, _ in t.columns]
    mult = {v: c for v, c in t.columns}

    # vertices on each branch
    chains = []
    for r in range(s):
        groups: dict = {}
        for v in cols:
            groups.setdefault(v[r], []).append(v)
        mins = []
        for a, group in groups.items():
            m = [x for x in group if all(_col_leq(x, y) for y in group)]
            if len(m) != 1:
                raise ReconstructionError(
                    f"row {r + 1}, value {fmt_qval(a)}: no unique minimal column")
            mins.append(m[0])
        try:
            order = sort_chain([x[r] for x in mins])
        except ValueError as exc:
            raise ReconstructionError(f"row {r + 1}: {exc}") from None
        by_val = {x[r]: x for x in mins}
        chains.append([by_val[a] for a in order])
    on_some = set().union(*map(set, chains)) if chains else set()
    for v in cols:
        if v not in on_some:
            raise ReconstructionError(f"column {_fmt_col(v)} lies on no branch")

    parent: dict = {}
    for r, ch in enumerate(chains):
        for k, v in enumerate(ch):
            p = ch[k - 1] if k else None
            if parent.setdefault(v, p) != p:
                raise ReconstructionError(
                    f"row {r + 1}: column {_fmt_col(v)} has inconsistent predecessors")
    last_common = {}
    for r in range(s):
        for k in range(r + 1, s):
            shared = [v for v in chains[r] if v in set(chains[k])]
            if not shared or chains[r][:len(shared)] != shared \
                    or chains[k][:len(shared)] != shared:
                raise ReconstructionError(
                    f"rows {r + 1} and {k + 1} do not share an initial chain")
            last_common[(r, k)] = shared[-1]

    # gamma coefficients, from the extremal segments downwards
    incoming: dict = {}
    out_of = {v: 0 for v in cols}
    for r, ch in enumerate(chains):
        if ch:
            out_of[ch[-1]] += degrees[r]
    depth = {}
    for v in cols:
        k, p = 0, parent[v]
        while p is not None:
            k, p = k + 1, parent[p]
        depth[v] = k
    for v in sorted(cols, key=lambda x: -depth[x]):
        a = out_of[v] - mult[v]
        if a <= 0:
            raise ReconstructionError(f"column {_fmt_col(v)}: non-positive segment coefficient")
        incoming[v] = a
        if parent[v] is not None:
            out_of[parent[v]] += a
        elif a != 1:
            raise ReconstructionError(f"first segment has coefficient {a}, expected 1")

    # characteristic data and valuations along each branch
    value: dict = {}
    branches = []
    for r, ch in enumerate(chains):
        if not ch:
            if degrees[r] != 1:
                raise ReconstructionError(f"row {r + 1}: degree {degrees[r]} with no vertices")
            branches.append(BranchData(1, (), names[r]))
            continue
        coeffs = [incoming[v] for v in ch] + [degrees[r]]
        ns, char = [], []
        for k, v in enumerate(ch):
            a, b = coeffs[k], coeffs[k + 1]
            if b != a:
                if b % a or b < 2 * a:
                    raise ReconstructionError(
                        f"row {r + 1}: coefficients {a} -> {b} at {_fmt_col(v)}")
                ns.append(b // a)
                char.append(k)
        e = [1]
        for nj in reversed(ns):
            e.append(e[-1] * nj)
        e.reverse()
        if e[0] != degrees[r]:
            raise ReconstructionError(f"row {r + 1}: degree {degrees[r]} != {e[0]}")
        exps = []
        for k, v in enumerate(ch):
            c = sum(1 for x in char if x < k)
            lam = _solve_segment(exps, e, v[r], c, d)
            if not all(x >= 0 for x in lam) or not any(lam):
                raise ReconstructionError(f"row {r + 1}: valuation {fmt_qval(lam)} "
                                          f"at {_fmt_col(v)} is not positive")
            if value.setdefault(v, lam) != lam:
                raise ReconstructionError(
                    f"column {_fmt_col(v)}: valuations {fmt_qval(value[v])} and "
                    f"{fmt_qval(lam)} from different rows")
            if k in char:
                exps.append(lam)
        branches.append(BranchData(degrees[r], tuple(exps), names[r]))

    K = [[INF] * s for _ in range(s)]
    for (r, k), v in last_common.items():
        K[r][k] = K[k][r] = value[v]
    try:
        tree = EggersWallTree(branches, K, d, lattice)
    except ValidationError as exc:
        raise ReconstructionError(f"recovered data is not a valid tree: {exc}") from None
    if bunch_type_fY(tree) != t:
        raise ReconstructionError("the recovered tree has a different type")
    return tree


def _solve_segment(exps, e, a, c, d) -> QVec:
    S = zero(d)
    for k in range(1, c + 1):
        S = vadd(S, vscale(e[k - 1] - e[k], exps[k - 1]))
    return vscale(Fraction(1, e[c]), vsub(a, S))


def _fmt_col(v) -> str:
    return "[" + " ".join(fmt_qval(x) for x in v) + "]"


# -- grouping factors -------------------------------------------------------------------

def group_bunches(rho_table: Sequence[Sequence], degrees: Sequence[int],
                  d: int | None = None) -> tuple[list[list[int]], BunchType]:
    """Group factors ``h_j`` with equal normalized orders ``rho(f_i, h_j) / deg h_j``.

    ``rho_table[i][j]`` is ``rho(f_i, h_j)``.  Returns the partition of the
    factor indices (by first occurrence) and the resulting type; ``d`` is
    needed only when there are no factors.
    """
    s = len(rho_table)
    if s == 0:
        raise ShapeMismatch("empty table")
    t = len(degrees)
    if any(len(row) != t for row in rho_table):
        raise ShapeMismatch("rows of the table must have one entry per factor")
    groups: dict = {}
    for j in range(t):
        key = tuple(vscale(Fraction(1, degrees[j]), as_qval(rho_table[i][j]))
                    for i in range(s))
        groups.setdefault(key, []).append(j)
    cols = [(key, sum(degrees[j] for j in idx)) for key, idx in groups.items()]
    if cols:
        d = len(cols[0][0][0])
    return list(groups.values()), BunchType(cols, s, d)
