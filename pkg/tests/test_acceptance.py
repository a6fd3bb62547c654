"""Acceptance criteria 1-9.  Each test prints one ``criterion N: PASS|FAIL`` line."""

import time
from fractions import Fraction as F

import pytest

import test_bunches
import test_criteria
import test_eggers
import test_geometry
import test_resolution
import test_resultants
import test_toric
from conftest import CORPUS
from qopolar.btype import BunchType
from qopolar.bunches import bunch_type_fY, predicted_psi_i, predicted_psi_total
from qopolar.cli import main
from qopolar.criteria import PassesNecessaryCriterion, Reducible, irreducibility_check
from qopolar.eggers import isomorphic
from qopolar.geometry import profile_of_polyhedron
from qopolar.resolution import dead_arc_and_rupture, lmw_verify, resolve
from qopolar.resultants import newton_polyhedron, psi_image, resultant_y
from qopolar.textio import parse_poly_file, parse_polynomial as P, parse_tree
from qopolar.toric import laurent_normalize
from test_eggers import cusp, four_branch

A, B = (6, 4), (F(13, 2), 5)


@pytest.fixture
def report(capsys):
    """Print the verdict of a criterion outside of pytest's capture, then assert it."""
    def check(n, checks, elapsed=None, limit=None):
        failed = [name for name, ok in checks if not ok]
        if limit is not None and elapsed >= limit:
            failed.append(f"runtime {elapsed:.2f}s >= {limit}s")
        verdict = "PASS" if not failed else "FAIL (" + "; ".join(failed) + ")"
        timing = "" if elapsed is None else f" [{elapsed:.2f}s]"
        with capsys.disabled():
            print(f"\ncriterion {n}: {verdict}{timing}")
        assert not failed, failed
    return check


def cli_lines(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.splitlines()


def test_criterion_1_golden_type(capsys, report, corpus):
    t0 = time.perf_counter()
    code, out = cli_lines(capsys, "type", corpus("four_branch.tree"))
    elapsed = time.perf_counter() - t0
    rows = [line.split()[1:] for line in out[:4]]
    report(1, [
        ("exit code", code == 0),
        ("rows", rows == [["(6,4)", "(13/2,5)", "(6,4)"]] * 2 + [["(6,4)", "(6,4)", "(13/2,5)"]] * 2),
        ("multiplicities", out[4:] == ["mult 3 6 6"]),
        ("library type", bunch_type_fY(four_branch()) == test_bunches.GOLDEN),
    ], elapsed, 1.0)


def test_criterion_2_golden_polyhedra(report):
    t0 = time.perf_counter()
    t = four_branch()
    profs = [predicted_psi_i(t, i) for i in range(4)]
    total = predicted_psi_total(t)
    elapsed = time.perf_counter() - t0
    report(2, [
        ("profiles", all(p.as_dict() == {A: 9, B: 6} for p in profs)),
        ("branch vertices", all(p.vertices() == [(0, 0, 15), (54, 36, 6), (93, 66, 0)]
                                for p in profs)),
        ("total vertices", sorted(total.vertices) == [(0, 0, 15), (72, 48, 12), (372, 264, 0)]),
    ], elapsed, 1.0)


def test_criterion_3_reconstruction(capsys, report, corpus):
    t0 = time.perf_counter()
    code, out = cli_lines(capsys, "reconstruct", corpus("four_branch.type"), "--deg", "4,4,4,4")
    t = parse_tree("\n".join(out))
    elapsed = time.perf_counter() - t0
    lab = t.labels()
    edges = {(lab[P], lab[Q]): c for P, Q, c in t.edges()}
    report(3, [
        ("exit code", code == 0),
        ("isomorphic", isomorphic(t, four_branch())),
        ("v(P1)", t.vertex("P1").value == (F(3, 2), 1)),
        ("v(P2), v(P3)", t.vertex("P2").value == t.vertex("P3").value == (F(7, 4), F(3, 2))),
        ("edge P1 -> P2", edges[("P1", "P2")] == 2),
    ], elapsed, 1.0)


def test_criterion_4_single_branch_oracle(report):
    t0 = time.perf_counter()
    f = P("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y")
    G = newton_polyhedron(psi_image(f, f.derivative("Y").scale(F(1, 4)), method="sylvester"), "T")
    elapsed = time.perf_counter() - t0
    predicted = predicted_psi_i(test_bunches.f11_tree(), 0)
    report(4, [
        ("vertices", sorted(G.vertices) == [(0, 0, 3), (6, 4, 2), (19, 14, 0)]),
        ("profile", profile_of_polyhedron(G) == predicted),
        ("prediction", predicted.as_dict() == {A: 1, B: 2}),
    ], elapsed, 10.0)


@pytest.mark.slow
def test_criterion_5_full_product_oracle(report):
    t0 = time.perf_counter()
    with open(f"{CORPUS}/four_branch.poly") as fh:
        pf = parse_poly_file(fh.read(), base=CORPUS)
    f = pf.poly
    n = f.degree("Y")
    fY = f.derivative("Y").scale(F(1, n))
    tree = four_branch()
    checks = [("degree", n == 16)]
    for i, fi in enumerate(pf.factors):
        G = newton_polyhedron(psi_image(fi, fY, method="sylvester"), "T")
        checks.append((f"branch {i + 1}", profile_of_polyhedron(G) == predicted_psi_i(tree, i)))
    G = newton_polyhedron(psi_image(f, fY), "T")
    checks.append(("total", G == predicted_psi_total(tree)))
    report(5, checks, time.perf_counter() - t0, 1800.0)


def test_criterion_6_cusp(report):
    t0 = time.perf_counter()
    f, tree = P("Y^2 - X^3"), cusp()
    state = resolve(tree)
    (v,) = dead_arc_and_rupture(tree, state).vertices
    rep = lmw_verify(f, tree)
    elapsed = time.perf_counter() - t0
    report(6, [
        ("type", bunch_type_fY(tree) == BunchType([(((3,),), 1)])),
        ("resultant", resultant_y(f, P("Y")) == P("-X^3")),
        ("one component", list(state.components) == ["C(P1)"]),
        ("dead arc", v.dead_arc),
        ("lmw", rep.ok and rep.hits == {"C(P1)": 1}),
    ], elapsed, 1.0)


PROPERTIES = [
    ("Minkowski profile/general", test_geometry.test_profile_sum_agrees_with_general_sum),
    ("Minkowski general/brute force", test_geometry.test_minkowski_general_matches_brute_force),
    ("N(fg) = N(f) + N(g)", test_criteria.test_newton_polyhedron_of_product_is_minkowski_sum),
    ("Res multiplicativity", test_resultants.test_resultant_multiplicative),
    ("discriminant of a product", test_resultants.test_discriminant_of_product),
    ("factors of polygonal", test_criteria.test_factors_of_polygonal_are_polygonal),
    ("nu monotone", test_eggers.test_nu_is_monotone),
    ("ultrametric rejection", test_eggers.test_validation_rejects_perturbed_trees),
    ("reconstruction round trip", test_bunches.test_reconstruct_round_trip),
    ("kappa trichotomy", test_resolution.test_kappa_trichotomy),
    ("stage telescoping", test_resolution.test_resolution_telescopes),
    ("gamma division", test_resolution.test_gamma_divides_by_lattice_index),
]


def test_criterion_7_property_suite(report):
    checks = []
    t0 = time.perf_counter()
    for name, prop in PROPERTIES:
        try:
            prop()
            checks.append((name, True))
        except Exception as exc:  # report every property, not just the first failure
            checks.append((f"{name}: {type(exc).__name__}", False))
    report(7, checks, time.perf_counter() - t0)


def test_criterion_8_irreducibility(report):
    cusp_r = irreducibility_check(P("Y^2 - X1^3"))
    lines = irreducibility_check(P("Y^2 - X1^2"))
    prod = irreducibility_check(P("(Y^2 - X1^3)*(Y^2 - X1^7)"))
    report(8, [
        ("cusp passes", isinstance(cusp_r, PassesNecessaryCriterion)),
        ("lines: roots", isinstance(lines, Reducible) and lines.reason == "roots"
         and lines.edge_poly == (-1, 0, 1)),
        ("product: edges", isinstance(prod, Reducible) and prod.reason == "edges"
         and len(prod.edges) == 2),
    ])


def test_criterion_9_laurent(report):
    f, q = laurent_normalize(P("Y^2 - X1^(-1)"))
    checks = [("normalization", f == P("Y^2 - X1") and q == (-1,))]
    for name, prop in [("shift round trip", test_toric.test_shift_type_round_trip),
                       ("derivative, symbolic", test_toric.test_laurent_normalization_symbolic)]:
        try:
            prop()
            checks.append((name, True))
        except Exception as exc:
            checks.append((f"{name}: {type(exc).__name__}", False))
    test_toric.test_laurent_derivative_example()
    report(9, checks)
