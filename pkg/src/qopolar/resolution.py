"""Combinatorics of the toric partial resolution driven by the Eggers-Wall tree.

Each stage reads the kappa-exponents of the current tree, creates one
exceptional component per distinct vertex ``P_{lambda_kappa(i)}``, groups the
branches into germs, and rewrites the tree of every germ by cutting the
segment below ``lambda``, shifting valuations by ``-lambda`` and extending
the reference lattice by ``lambda``.  Components are identified with the
non-extremal vertices of the original tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .bunches import peel_contact, predicted_psi_i
from .eggers import BranchData, EggersWallTree, Vertex, nu
from .errors import GoodCoordinateError, NotPolygonal, NotAProfile
from .geometry import profile_of_polyhedron
from .poly import SparsePoly
from .qvec import (INF, Order, QVal, cmp_partial, fmt_qval, leq, lex_key, lt, vadd, vsub,
                   zero)
from .resultants import newton_polyhedron, psi_image


# -- first stage -------------------------------------------------------------------

def kappa(tree: EggersWallTree, check: bool = True) -> list[QVal]:
    """``lambda_kappa(i)``: least element of the lattice coincidences and ``lambda_1``.

    With ``check`` the necessary good-coordinate conditions are verified:
    the finite values are totally ordered, at most one is infinite, and at
    most the largest lies in the reference lattice.
    """
    M = tree.lattice
    out = []
    for i, b in enumerate(tree.branches):
        A = [tree.contacts[i][j] for j in range(tree.s) if j != i
             and M.contains(tree.contacts[i][j])]
        if b.exponents:
            A.append(b.exponents[0])
        best = INF
        for a in A:
            if lt(a, best):
                best = a
        out.append(best)
    if check:
        _check_good(tree, out)
    return out


def _check_good(tree, ks):
    finite = [k for k in ks if k is not INF]
    if len(ks) - len(finite) > 1:
        raise GoodCoordinateError("more than one branch has lambda_kappa = inf")
    for a, b in combinations(finite, 2):
        if cmp_partial(a, b) is Order.INCOMPARABLE:
            raise GoodCoordinateError(
                f"lambda_kappa values {fmt_qval(a)} and {fmt_qval(b)} are incomparable; "
                "the Newton polyhedron would not be polygonal")
    if finite:
        top = max(finite, key=lex_key)
        for a in finite:
            if a != top and tree.lattice.contains(a):
                raise GoodCoordinateError(
                    f"lambda_kappa {fmt_qval(a)} lies in the lattice below the maximum")


@dataclass(frozen=True)
class FirstStep:
    """Components (as vertices), the component of each branch, and the germ partition."""

    kappa: tuple
    components: tuple
    component_of: tuple  # per branch: index into components (or None for lambda_kappa = inf)
    germs: tuple  # tuples of branch indices sharing the point o_1


def first_step_components(tree: EggersWallTree, ks: Sequence | None = None) -> FirstStep:
    """Components of the first modification and the germ points of the strict transform.

    Branches ``i`` and ``j`` land on the same component iff
    ``lambda_kappa(i) = lambda_kappa(j) <= k(f_i, f_j)``, and at the same
    point iff moreover the inequality is strict.
    """
    ks = list(kappa(tree) if ks is None else ks)
    s = tree.s
    comps: list[Vertex] = []
    comp_of: list = []
    for i in range(s):
        if ks[i] is INF:
            comp_of.append(None)
            continue
        P = tree.branch_vertex(i, ks[i])
        if P not in comps:
            comps.append(P)
        comp_of.append(comps.index(P))
    for i, j in combinations(range(s), 2):
        if ks[i] is INF or ks[j] is INF:
            continue
        same = ks[i] == ks[j] and leq(ks[i], tree.contacts[i][j])
        if same != (comp_of[i] == comp_of[j]):
            raise GoodCoordinateError(f"component rule fails for branches {i + 1}, {j + 1}")
    parent = list(range(s))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in combinations(range(s), 2):
        lam = ks[i] if ks[i] is not INF else ks[j]
        if lam is INF:
            continue
        if comp_of[i] == comp_of[j] or INF in (ks[i], ks[j]):
            if lt(lam, tree.contacts[i][j]):
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(s):
        groups.setdefault(find(i), []).append(i)
    germs = tuple(sorted(tuple(g) for g in groups.values()))
    order = sorted(range(len(comps)), key=lambda k: comps[k].sort_key())
    remap = {old: new for new, old in enumerate(order)}
    return FirstStep(tuple(ks), tuple(comps[k] for k in order),
                     tuple(None if c is None else remap[c] for c in comp_of), germs)


# -- tree rewriting ----------------------------------------------------------------

def ew_rewrite(tree: EggersWallTree, germ: Sequence[int], lam: QVal) -> EggersWallTree:
    """Tree of the strict transform at one germ point.

    Keeps the branches of ``germ``, removes everything below valuation
    ``lam``, shifts valuations by ``-lam`` and extends the reference lattice
    by ``lam``.  Raises ``ValueError`` if a coefficient of ``gamma`` is not
    divisible by the lattice index (which signals corrupted input).
    """
    if lam is INF:
        raise ValueError("no rewriting at lambda_kappa = inf")
    germ = list(germ)
    if tree.branch_vertex(germ[0], lam) not in tree:
        raise ValueError(f"{fmt_qval(lam)} is not a vertex of the tree")
    for a, b in combinations(germ, 2):
        if not lt(lam, tree.contacts[a][b]):
            raise ValueError(f"branches {a + 1}, {b + 1} do not share the germ point")
    M2 = tree.lattice.extend(lam)
    index = tree.lattice.index_in(M2)
    branches = []
    for i in germ:
        b = tree.branches[i]
        exps = tuple(vsub(x, lam) for x in b.exponents if lt(lam, x))
        if b.degree % index:
            raise ValueError(f"degree {b.degree} of {b.name} not divisible by index {index}")
        branches.append(BranchData(b.degree // index, exps, b.name))
    K = [[INF if a == b else vsub(tree.contacts[a][b], lam) for b in germ] for a in germ]
    new = EggersWallTree(branches, K, tree.d, M2)
    for P, Q, c in new.edges():
        P0, Q0 = _lift(tree, germ, lam, P), _lift(tree, germ, lam, Q)
        old = tree.gamma_coefficient(P0, Q0)
        if old != c * index:
            raise ValueError(f"gamma coefficient {old} is not {index} x {c}")
    return new


def _lift(tree, germ, lam, P: Vertex) -> Vertex:
    i = germ[min(P.branches)]
    return tree.branch_vertex(i, vadd(P.value, lam))


def is_smooth(tree: EggersWallTree) -> bool:
    return tree.s == 1 and tree.branches[0].degree == 1


# -- full resolution ---------------------------------------------------------------

@dataclass
class Component:
    label: str
    vertex: Vertex  # vertex of the original tree
    stage: int
    local_value: QVal  # valuation in the stage tree
    parent: str | None
    stage_id: int  # index into ResolutionState.stages


@dataclass
class Stage:
    index: int
    tree: EggersWallTree
    branch_map: tuple  # stage branch -> original branch
    shift: tuple  # sum of the lambdas applied so far
    kappa: tuple
    germs: tuple
    parent: str | None
    components: tuple = ()  # labels, in the order of the stage tree vertices
    germ_components: tuple = ()  # per germ: label of its component, None for lambda_kappa = inf


@dataclass
class ResolutionState:
    """Stages of the resolution and the bijection ``P -> C(P)``."""

    tree: EggersWallTree
    stages: list = field(default_factory=list)
    components: dict = field(default_factory=dict)  # label -> Component

    def component_of(self, P: Vertex) -> str:
        for c in self.components.values():
            if c.vertex == P:
                return c.label
        raise KeyError(P)

    def less(self, a: str, b: str) -> bool:
        """``C(a) < C(b)``: ``a`` was created on the path of stages leading to ``b``."""
        p = self.components[b].parent
        while p is not None:
            if p == a:
                return True
            p = self.components[p].parent
        return False

    def order_pairs(self) -> list[tuple[str, str]]:
        labels = list(self.components)
        return [(a, b) for a in labels for b in labels if self.less(a, b)]


def resolve(tree: EggersWallTree) -> ResolutionState:
    """Run the stages until every residual tree is a single smooth branch."""
    labels = tree.labels()
    state = ResolutionState(tree)
    todo = [(tree, tuple(range(tree.s)), zero(tree.d), None, 1)]
    while todo:
        cur, bmap, shift, parent, k = todo.pop(0)
        if is_smooth(cur):
            continue
        step = first_step_components(cur)
        sid = len(state.stages)
        comp_labels = []
        for P in step.components:
            orig = _original_vertex(tree, bmap, shift, P)
            if orig not in labels or tree.is_extremal(orig):
                raise ValueError(f"stage vertex {P!r} does not lift to a vertex of the tree")
            lab = "C(" + labels[orig] + ")"
            if lab in state.components:
                raise ValueError(f"component {lab} created twice")
            state.components[lab] = Component(lab, orig, k, P.value, parent, sid)
            comp_labels.append(lab)
        gcomp = tuple(None if step.component_of[g[0]] is None
                      else comp_labels[step.component_of[g[0]]] for g in step.germs)
        state.stages.append(Stage(k, cur, bmap, shift, step.kappa, step.germs, parent,
                                  tuple(comp_labels), gcomp))
        for germ in step.germs:
            c = step.component_of[germ[0]]
            if c is None:
                continue
            lam = step.kappa[germ[0]]
            new = ew_rewrite(cur, germ, lam)
            nmap = tuple(bmap[i] for i in germ)
            nshift = vadd(shift, lam)
            for P in new.vertices:
                if _original_vertex(tree, nmap, nshift, P) not in labels:
                    raise ValueError("valuations do not telescope")
            todo.append((new, nmap, nshift, comp_labels[c], k + 1))
    expected = {labels[P] for P in tree.non_extremal()}
    got = {c.label[2:-1] for c in state.components.values()}
    if expected != got:
        raise ValueError(f"components {sorted(got)} do not match vertices {sorted(expected)}")
    return state


def _original_vertex(tree, bmap, shift, P: Vertex) -> Vertex:
    i = bmap[min(P.branches)]
    return tree.branch_vertex(i, vadd(P.value, shift))


def bunch_incidence(tree: EggersWallTree, state: ResolutionState | None = None) -> dict:
    """Map each column of the type of ``f_Y`` to the component its bunch meets."""
    state = state or resolve(tree)
    out = {}
    for P in tree.non_extremal():
        key = tuple(nu(tree, i, P) for i in range(tree.s))
        out[key] = state.component_of(P)
    return out


# -- plane curves ------------------------------------------------------------------

@dataclass(frozen=True)
class D1Vertex:
    label: str
    value: QVal  # valuation in the original tree
    stage: int
    valency: int  # in the resolution graph, strict transforms counted
    omega: int  # valency, plus one for the first exceptional curve
    rupture: bool
    dead_arcs: int

    @property
    def dead_arc(self) -> bool:
        return self.dead_arcs > 0


@dataclass(frozen=True)
class DualGraphD1:
    """Skeleton of the resolution graph of a plane curve: rupture vertices and dead arcs."""

    vertices: tuple
    edges: tuple  # pairs of labels joined by a (possibly empty) chain of curves

    def vertex(self, label: str) -> D1Vertex:
        for v in self.vertices:
            if v.label == label:
                return v
        raise KeyError(label)


def _pq(value: QVal, lattice) -> tuple[int, int]:
    (g,) = lattice.generators()[0]
    r = Fraction(value[0]) / g
    return r.numerator, r.denominator


def dead_arc_and_rupture(tree: EggersWallTree, state: ResolutionState | None = None
                         ) -> DualGraphD1:
    """Classify the components for ``d = 1``.

    In a stage chart the components sit on rays ``(q, p)`` of the dual fan,
    ``p/q`` the local value in lowest terms of the stage lattice, ordered by
    value between the rays of ``{U = 0}`` and ``{V = 0}``.  Consecutive
    components are joined by a chain.  The first cone adds a chain iff
    ``p > 1``: at the first stage it ends at the first exceptional curve
    (ray ``(1, 1)``), which is never the end of a dead arc; later it joins
    the parent component.  A first-stage component of value 1 is that
    curve itself and its ``omega`` is one more than its valency.  The last
    cone adds a chain iff ``q > 1``; it is a dead arc unless a smooth branch
    with ``lambda_kappa = inf`` is the strict transform of ``{V = 0}``.
    Each germ point on a component adds one to its valency: a strict
    transform, or the chain towards the next stage.  Rupture means
    ``omega >= 3``.

    Raises
    ------
    ValueError
        if ``d != 1`` or a first-stage value is below 1 (then ``X = 0`` is
        in the tangent cone).
    """
    if tree.d != 1:
        raise ValueError("dead arcs are defined for plane curves (d = 1)")
    state = state or resolve(tree)
    valency: dict = {lab: 0 for lab in state.components}
    dead: dict = {lab: 0 for lab in state.components}
    bonus: dict = {lab: 0 for lab in state.components}
    edges = []
    for st in state.stages:
        comps = list(st.components)
        first, last = comps[0], comps[-1]
        p, q0 = _pq(state.components[first].local_value, st.tree.lattice)
        _, q = _pq(state.components[last].local_value, st.tree.lattice)
        if st.parent is not None:
            # the parent side already counts this germ point
            edges.append((st.parent, first))
            valency[first] += 1
        elif p < q0:
            raise ValueError("a first-stage value is below 1: X = 0 is in the tangent cone")
        elif p > 1:
            valency[first] += 1
        else:
            bonus[first] = 1
        for a, b in zip(comps, comps[1:]):
            edges.append((a, b))
            valency[a] += 1
            valency[b] += 1
        if None in st.germ_components:
            valency[last] += 1
        elif q > 1:
            valency[last] += 1
            dead[last] += 1
        for c in st.germ_components:
            if c is not None:
                valency[c] += 1
    verts = []
    for c in sorted(state.components.values(), key=lambda c: c.vertex.sort_key()):
        lab = c.label
        om = valency[lab] + bonus[lab]
        verts.append(D1Vertex(lab, c.vertex.value, c.stage, valency[lab], om, om >= 3,
                              dead[lab]))
    return DualGraphD1(tuple(verts), tuple(edges))


@dataclass
class LMWReport:
    ok: bool
    hits: dict  # component label -> degree of the polar meeting it
    missing: list
    messages: list


def tangent_cone_ok(f: SparsePoly) -> bool:
    """``X = 0`` is not in the tangent cone: the lowest-degree form contains ``Y^n``."""
    n = f.degree()
    return min(sum(p) for p in f.support_points()) == n


def lmw_verify(f: SparsePoly, tree: EggersWallTree, factors: Sequence[SparsePoly] | None = None
               ) -> LMWReport:
    """Check that the polar meets every rupture vertex and every dead arc.

    The bunches of ``f_Y`` are obtained from the oracle: the Newton
    polyhedra of ``psi_{f_i}(f_Y)`` computed by resultants are peeled into a
    contact chain, whose points are then sent to components.  ``factors``
    are the branches of ``f`` in tree order (not needed for one branch).
    """
    if f.d != 1 or tree.d != 1:
        raise ValueError("lmw_verify is for plane curves")
    if not tangent_cone_ok(f):
        raise ValueError("X = 0 lies in the tangent cone")
    if factors is None:
        if tree.s != 1:
            raise ValueError("pass the branch equations for a reducible curve")
        factors = [f]
    prod = factors[0]
    for g in factors[1:]:
        prod = prod * g
    if prod != f or len(factors) != tree.s:
        raise ValueError("factors do not multiply to f in tree order")
    msgs = []
    n = f.degree()
    fY = f.derivative().scale(Fraction(1, n))
    profiles = []
    for i, fi in enumerate(factors):
        G = newton_polyhedron(psi_image(fi, fY))
        try:
            prof = profile_of_polyhedron(G)
        except (NotPolygonal, NotAProfile) as exc:
            return LMWReport(False, {}, [], [f"branch {i + 1}: {exc}"])
        if prof.apex is not None or prof.total_height != sum(l for _, l in prof.terms):
            return LMWReport(False, {}, [], [f"branch {i + 1}: unexpected polyhedron {G!r}"])
        if prof != predicted_psi_i(tree, i):
            msgs.append(f"branch {i + 1}: oracle {prof} differs from prediction "
                        f"{predicted_psi_i(tree, i)}")
        profiles.append(prof)
    chain = peel_contact(profiles, tree)
    state = resolve(tree)
    graph = dead_arc_and_rupture(tree, state)
    hits: dict = {}
    for P, c in chain.items():
        try:
            lab = state.component_of(P)
        except KeyError:
            msgs.append(f"a bunch meets no component ({P!r})")
            continue
        hits[lab] = hits.get(lab, 0) + c
    missing = [v.label for v in graph.vertices
               if (v.rupture or v.dead_arc) and v.label not in hits]
    ok = not msgs and not missing
    return LMWReport(ok, hits, missing, msgs)
