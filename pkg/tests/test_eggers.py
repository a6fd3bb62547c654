from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import event, given, strategies as st

from qopolar.btype import BunchType
from qopolar.bunches import bunch_type_fY
from qopolar.eggers import (BranchData, EggersWallTree, Vertex, attach_point, build_tree,
                            characteristic_structure, contact_chain, isomorphic, nu,
                            nu_invert, rho_from_coincidence, validate)
from qopolar.errors import ValidationError
from qopolar.qvec import INF, Order, cmp_partial, leq, lt, qvec
from qopolar.resultants import rho
from qopolar.textio import parse_polynomial as P
from strategies import pos_vectors, tree_data, valid_trees

L1, L2 = "(3/2,1)", "(7/4,3/2)"


def four_branch():
    b = [BranchData(4, [L1, L2], n) for n in ("f11", "f12", "f21", "f22")]
    K = [["inf", L2, L1, L1], [L2, "inf", L1, L1], [L1, L1, "inf", L2], [L1, L1, L2, "inf"]]
    return build_tree(b, K)


def cusp():
    return build_tree([BranchData(2, ["3/2"], "c")], [["inf"]])


def test_four_branch_validates():
    t = four_branch()
    assert validate(t.branches, t.contacts, 2) == []


def test_ultrametric_violation_reported():
    b = [BranchData(1, [], n) for n in "abc"]
    K = [["inf", "(1,0)", "(2,2)"], ["(1,0)", "inf", "(0,1)"], ["(2,2)", "(0,1)", "inf"]]
    errs = validate(b, K, 2)
    assert any("ultrametric" in e for e in errs)
    with pytest.raises(ValidationError):
        EggersWallTree(b, K, 2)


def test_single_branch_validates():
    assert validate([BranchData(6, ["3/2", "7/3"])], [["inf"]], 1) == []


def test_characteristic_structure():
    cs = characteristic_structure(BranchData(4, [L1, L2]))
    assert cs.n == (2, 2) and cs.e == (4, 2, 1)
    cs = characteristic_structure(BranchData(2, ["3/2"]))
    assert cs.n == (2,) and cs.e == (2, 1)
    assert characteristic_structure(BranchData(1, [])).e == (1,)


def test_exponent_inside_lattice_rejected():
    with pytest.raises(ValidationError, match="lies in M_0"):
        characteristic_structure(BranchData(2, ["2"]))


def test_four_branch_edges_and_boundary():
    t = four_branch()
    lab = t.labels()
    edges = {(lab[P], lab[Q]): c for P, Q, c in t.edges()}
    assert edges[("P0", "P1")] == 1
    assert edges[("P1", "P2")] == edges[("P1", "P3")] == 2
    assert all(edges[(p, n)] == 4 for (p, n) in edges if n.startswith("f"))
    assert t.vertex("P1").value == qvec(F(3, 2), 1)
    assert t.vertex("P2").value == t.vertex("P3").value == qvec(F(7, 4), F(3, 2))
    mb = t.minus_boundary()
    assert {lab[P]: mb[P] for P in t.non_extremal()} == {"P1": 3, "P2": 6, "P3": 6}


def test_single_branch_segments():
    t = build_tree([BranchData(3, ["5/3"])], [["inf"]])
    assert [c for _, _, c in t.edges()] == [1, 3]
    (P,) = t.non_extremal()
    assert t.minus_boundary()[P] == 2


def test_bifurcation_above_characteristic_vertices():
    t = build_tree([BranchData(2, ["3/2"]), BranchData(2, ["3/2"])], [["inf", "2"], ["2", "inf"]])
    vals = sorted(P.value for P in t.non_extremal())
    assert vals == [qvec(F(3, 2)), qvec(2)]
    top = [P for P in t.non_extremal() if P.value == qvec(2)][0]
    assert top.branches == frozenset({0, 1})


def test_nu_examples():
    t = four_branch()
    P1, P2 = t.vertex("P1"), t.vertex("P2")
    assert nu(t, 0, P1) == (6, 4)
    assert nu(t, 0, P2) == (F(13, 2), 5)
    assert nu(t, 2, P2) == (6, 4)
    assert nu_invert(t, 0, (6, 4)) == (F(3, 2), 1)
    assert nu_invert(t, 0, (F(13, 2), 5)) == (F(7, 4), F(3, 2))
    single = build_tree([BranchData(1, [])], [["inf"]], d=2)
    assert nu_invert(single, 0, (3, 1)) == (3, 1)


def test_nu_invert_outside_image():
    with pytest.raises(ValueError):
        nu_invert(four_branch(), 0, (7, 3))


def test_rho_from_coincidence_examples():
    assert rho_from_coincidence(cusp(), 0, "3/2") == (3,)
    assert rho(P("Y^2 - X1^3"), P("Y")) == (3,)
    assert rho_from_coincidence(four_branch(), 0, L2) == (F(13, 2), 5)
    assert rho_from_coincidence(cusp(), 0, "1") == (2,)


def test_rho_from_coincidence_against_resultant():
    t = build_tree([BranchData(2, ["3/2"], "a"), BranchData(2, ["7/2"], "b")],
                   [["inf", "3/2"], ["3/2", "inf"]])
    fa, fb = P("Y^2 - X1^3"), P("Y^2 - X1^7")
    assert rho(fa, fb) == tuple(2 * x for x in rho_from_coincidence(t, 0, "3/2", 2))
    assert rho(fb, fa) == tuple(2 * x for x in rho_from_coincidence(t, 1, "3/2", 2))


def test_contact_chain():
    t = four_branch()
    P1 = t.vertex("P1")
    assert contact_chain(t, [(3, [L1] * 4)]) == type(t.minus_boundary())({P1: 3})
    ch = contact_chain(t, [(1, [L1] * 4), (2, [L2, L2, L1, L1])])
    assert ch[P1] == 1 and ch[t.vertex("P2")] == 2


def test_attach_point_checks_ultrametric():
    with pytest.raises(ValidationError):
        attach_point(four_branch(), [L2, L1, L2, L1])


@given(valid_trees())
def test_nu_is_monotone(tree):
    for i, chain in enumerate(tree.chains):
        finite = [P for P in chain if P.value is not INF and any(P.value)]
        vals = [nu(tree, i, P) for P in finite]
        for a, b in zip(vals, vals[1:]):
            assert lt(a, b)
        for V in tree.vertices:
            if V.value is INF or i in V.branches:
                continue
            # constant off the branch, at most the value where it leaves
            j = min(V.branches)
            assert nu(tree, i, V) == nu(tree, i, tree.branch_vertex(i, tree.contacts[i][j]))


def _ultrametric_ok(K):
    s = len(K)
    for i, j, r in permutations(range(s), 3):
        a, b, c = K[i][j], K[j][r], K[i][r]
        if cmp_partial(a, b) is Order.INCOMPARABLE:
            return False
        m = a if leq(a, b) else b
        if not leq(m, c) or (a != b and c != m):
            return False
    return True


@given(tree_data(max_branches=5, min_branches=3), st.data())
def test_validation_rejects_perturbed_trees(data, draw):
    branches, K, d = data
    s = len(branches)
    if s < 3:
        return  # a split was skipped by the degree cap
    i, j = draw.draw(st.permutations(range(s)))[:2]
    K = [list(r) for r in K]
    K[i][j] = K[j][i] = draw.draw(pos_vectors(d))
    K = [[INF if x == "inf" else x for x in r] for r in K]
    if not _ultrametric_ok(K):
        event("perturbation breaks the ultrametric rules")
        assert validate(branches, K, d)


@given(valid_trees(), st.randoms())
def test_permuted_tree_is_isomorphic(tree, rnd):
    perm = list(range(tree.s))
    rnd.shuffle(perm)
    K = [[tree.contacts[perm[a]][perm[b]] for b in range(tree.s)] for a in range(tree.s)]
    other = EggersWallTree([tree.branches[p] for p in perm], K, tree.d)
    assert isomorphic(tree, other)
    t1 = bunch_type_fY(tree)
    moved = BunchType([(tuple(v[p] for p in perm), c) for v, c in t1.columns], t1.s, t1.d)
    assert bunch_type_fY(other) == moved


@given(valid_trees())
def test_gamma_boundary_balances_degrees(tree):
    mb = tree.minus_boundary()
    # -d(gamma) at a leaf is minus the degree, at the root it is 1
    assert mb[tree.root] == 1
    for i, b in enumerate(tree.branches):
        assert mb[tree.leaf(i)] == -b.degree
    assert all(isinstance(c, int) for _, _, c in tree.edges())


def test_vertex_repr_is_readable():
    assert "3/2" in repr(Vertex(frozenset([0]), qvec(F(3, 2))))
