from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qopolar.btype import BunchType
from qopolar.bunches import (bunch_type_fY, group_bunches, peel_contact, polar_chain,
                             predicted_psi_i, predicted_psi_total, reconstruct_tree)
from qopolar.eggers import BranchData, ZeroChain, build_tree, isomorphic
from qopolar.errors import InconsistentProfiles, ReconstructionError
from qopolar.geometry import PolygonalProfile, is_polygonal
from qopolar.resultants import rho
from qopolar.textio import parse_polynomial as P
from strategies import valid_trees
from test_eggers import cusp, four_branch

A, B = (6, 4), (F(13, 2), 5)
GOLDEN = BunchType([((A, A, A, A), 3), ((B, B, A, A), 6), ((A, A, B, B), 6)])


def f11_tree():
    return build_tree([BranchData(4, ["(3/2,1)", "(7/4,3/2)"])], [["inf"]])


def test_four_branch_type():
    t = bunch_type_fY(four_branch())
    assert t == GOLDEN
    assert t.columns == GOLDEN.columns  # tree order
    assert t.degree() == 15


def test_cusp_type():
    assert bunch_type_fY(cusp()) == BunchType([(((3,),), 1)])


def test_single_factor_type():
    assert bunch_type_fY(f11_tree()) == BunchType([((A,), 1), ((B,), 2)])


def test_predicted_profiles():
    t = four_branch()
    for i in range(4):
        assert predicted_psi_i(t, i).as_dict() == {A: 9, B: 6}
    assert predicted_psi_i(t, 0).vertices() == [(0, 0, 15), (54, 36, 6), (93, 66, 0)]
    assert predicted_psi_i(cusp(), 0).as_dict() == {(3,): 1}
    assert predicted_psi_i(f11_tree(), 0).as_dict() == {A: 1, B: 2}


def test_predicted_total():
    G = predicted_psi_total(four_branch())
    assert sorted(G.vertices) == [(0, 0, 15), (72, 48, 12), (372, 264, 0)]
    single = f11_tree()
    assert predicted_psi_total(single) == predicted_psi_i(single, 0).to_general()


def test_total_can_fail_to_be_polygonal():
    # the two characteristic vertices give summed inclinations (5,8) and (8,5)
    t = build_tree([BranchData(2, ["(3/2,3)"]), BranchData(2, ["(3,3/2)"])],
                   [["inf", "(1,1)"], ["(1,1)", "inf"]])
    assert not is_polygonal(predicted_psi_total(t))


def test_peel_four_branch():
    t = four_branch()
    ch = peel_contact([predicted_psi_i(t, i) for i in range(4)], t)
    lab = t.labels()
    assert {lab[P]: c for P, c in ch.items()} == {"P1": 3, "P2": 6, "P3": 6}


def test_peel_cusp_and_empty():
    t = cusp()
    (P,) = t.non_extremal()
    assert peel_contact([predicted_psi_i(t, 0)], t) == ZeroChain({P: 1})
    smooth = build_tree([BranchData(1, [])], [["inf"]], d=1)
    assert peel_contact([PolygonalProfile(())], smooth) == ZeroChain()


def test_peel_rejects_inconsistent_profiles():
    t = four_branch()
    profs = [predicted_psi_i(t, i) for i in range(4)]
    profs[0] = PolygonalProfile(((A, 10), (B, 5)))
    with pytest.raises(InconsistentProfiles):
        peel_contact(profs, t)


@given(valid_trees())
def test_peel_recovers_polar_chain(tree):
    profs = [predicted_psi_i(tree, i) for i in range(tree.s)]
    assert peel_contact(profs, tree) == polar_chain(tree)


def test_reconstruct_four_branch():
    t = reconstruct_tree(GOLDEN, [4, 4, 4, 4])
    assert isomorphic(t, four_branch())
    lab = t.labels()
    assert t.vertex("P1").value == (F(3, 2), 1)
    assert t.vertex("P2").value == t.vertex("P3").value == (F(7, 4), F(3, 2))
    assert {(lab[P], lab[Q]): c for P, Q, c in t.edges()}[("P1", "P2")] == 2


def test_reconstruct_cusp():
    t = reconstruct_tree(BunchType([(((3,),), 1)]), [2])
    (b,) = t.branches
    assert b.exponents == ((F(3, 2),),) and t.structures[0].n == (2,)


def test_reconstruct_rejects_wrong_degrees():
    with pytest.raises(ReconstructionError):
        reconstruct_tree(GOLDEN, [4, 4, 4, 5])


@given(valid_trees())
def test_reconstruct_round_trip(tree):
    t = bunch_type_fY(tree)
    back = reconstruct_tree(t, [b.degree for b in tree.branches])
    assert bunch_type_fY(back) == t
    assert isomorphic(back, tree, match_order=True)


def test_group_bunches_trivial_cases():
    parts, t = group_bunches([[(1,), (2,), (3,)]], [1, 1, 1])
    assert parts == [[0], [1], [2]]
    parts, t = group_bunches([[(3,)]], [1])
    assert parts == [[0]] and t == BunchType([(((3,),), 1)])


@given(valid_trees(), st.data())
def test_group_bunches_reassembles_type(tree, data):
    # split every bunch into factors of smaller degree with proportional orders
    degs, table = [], [[] for _ in range(tree.s)]
    for values, c in bunch_type_fY(tree).columns:
        while c:
            k = data.draw(st.integers(1, c))
            c -= k
            degs.append(k)
            for i, v in enumerate(values):
                table[i].append(tuple(k * x for x in v))
    parts, t = group_bunches(table, degs, tree.d)
    assert t == bunch_type_fY(tree)
    assert sum(len(p) for p in parts) == len(degs)


def test_group_bunches_from_resultants():
    # (Y^2 - X^3)(Y^2 - X^7) has polar factors Y and Y^2 - (X^3 + X^7)/2
    fa, fb = P("Y^2 - X1^3"), P("Y^2 - X1^7")
    hs = [P("Y"), P("Y^2 - 1/2*X1^3 - 1/2*X1^7")]
    assert (fa * fb).derivative("Y") == hs[0] * hs[1] * P("4")
    table = [[rho(f, h) for h in hs] for f in (fa, fb)]
    _, t = group_bunches(table, [1, 2])
    tree = build_tree([BranchData(2, ["3/2"]), BranchData(2, ["7/2"])],
                      [["inf", "3/2"], ["3/2", "inf"]])
    assert t == bunch_type_fY(tree)
