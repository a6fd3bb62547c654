"""Command-line interface.

Exit codes: 0 ok, 1 usage, 2 validation failure, 3 verification mismatch.
Output is line-based text with exact rationals; ``--format figure`` emits
DOT (trees) or SVG (polyhedra) instead.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import hull
from .btype import shift_type
from .bunches import bunch_type_fY, predicted_psi_i, predicted_psi_total, reconstruct_tree
from .criteria import PassesNecessaryCriterion, Reducible, irreducibility_check
from .eggers import EggersWallTree, rho_from_coincidence
from .errors import QOPolarError
from .geometry import GeneralPolyhedron, profile_of_polyhedron
from .poly import SparsePoly
from .qvec import INF, common_denominator, fmt_qval
from .render import polyhedron_svg, tree_dot
from .resolution import bunch_incidence, dead_arc_and_rupture, lmw_verify, resolve
from .resultants import is_quasi_ordinary, newton_polyhedron, psi_image, rho
from .textio import (PolyFile, format_polynomial, format_tree, format_type, parse_poly_file,
                     parse_polynomial, parse_tree, parse_type)
from .toric import laurent_normalize, laurent_shift

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3
DEFAULT_DENOMINATOR_CAP = 10**6


@dataclass(frozen=True)
class SessionConfig:
    """Options shared by all subcommands."""

    d: int | None = None
    denominator_cap: int = DEFAULT_DENOMINATOR_CAP
    hull_dim_cap: int = hull.DEFAULT_HULL_DIM
    output: str = "text"  # text | records | figure

    def __post_init__(self):
        if self.d is not None and self.d < 1:
            raise ValueError("dimension must be at least 1")
        if self.denominator_cap < 1 or self.hull_dim_cap < 1:
            raise ValueError("caps must be positive")
        if self.output not in ("text", "records", "figure"):
            raise ValueError(f"unknown output format {self.output!r}")


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


# -- input helpers ---------------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _check_den(cfg: SessionConfig, values, what: str):
    den = common_denominator(v for v in values if v is not INF)
    if den > cfg.denominator_cap:
        raise ValueError(f"{what}: common denominator {den} exceeds the cap "
                         f"{cfg.denominator_cap}")


def _check_dim(cfg: SessionConfig, d: int, what: str):
    if cfg.d is not None and cfg.d != d:
        raise ValueError(f"{what} has dimension {d}, expected {cfg.d}")


def load_tree(path: str, cfg: SessionConfig) -> EggersWallTree:
    """A tree file, or the tree carried by a polynomial file."""
    if path.endswith(".poly"):
        t = load_poly(path, cfg).tree()
        if t is None:
            raise UsageError(f"{path} carries no tree")
    else:
        t = parse_tree(_read(path))
    _check_dim(cfg, t.d, path)
    _check_den(cfg, [e for b in t.branches for e in b.exponents], path)
    _check_den(cfg, [x for row in t.contacts for x in row], path)
    return t


def _check_poly(cfg: SessionConfig, p: SparsePoly, what: str):
    if p.denominator_lcm() > cfg.denominator_cap:
        raise ValueError(f"{what}: exponent denominators exceed the cap {cfg.denominator_cap}")


def load_poly(arg: str, cfg: SessionConfig) -> PolyFile:
    """A polynomial file, or an expression given on the command line."""
    if os.path.exists(arg):
        pf = parse_poly_file(_read(arg), os.path.dirname(arg), cfg.d)
    else:
        pf = PolyFile(parse_polynomial(arg, cfg.d))
    _check_dim(cfg, pf.poly.d, arg)
    for p in [pf.poly] + pf.factors:
        _check_poly(cfg, p, arg)
    return pf


def _vlist(points) -> str:
    return " ".join(fmt_qval(tuple(p)) for p in points)


# -- subcommands -------------------------------------------------------------------

def cmd_type(args, cfg: SessionConfig) -> list[str]:
    t = load_tree(args.tree, cfg)
    if cfg.output == "figure":
        return [tree_dot(t).rstrip("\n")]
    names = [b.name for b in t.branches]
    return format_type(bunch_type_fY(t), names).rstrip("\n").split("\n")


def cmd_polyhedron(args, cfg: SessionConfig) -> list[str]:
    t = load_tree(args.tree, cfg)
    idx = range(t.s)
    if args.branch:
        names = [b.name for b in t.branches]
        if args.branch not in names:
            raise UsageError(f"no branch {args.branch}")
        idx = [names.index(args.branch)]
    total = None if args.branch else predicted_psi_total(t, cfg.hull_dim_cap)
    if cfg.output == "figure":
        verts = total.vertices if total is not None else predicted_psi_i(t, idx[0]).vertices()
        return [polyhedron_svg(verts, _weights(args.w, t.d)).rstrip("\n")]
    out = []
    for i in idx:
        prof = predicted_psi_i(t, i)
        name = t.branches[i].name
        out.append(f"branch {name} profile {prof}")
        out.append(f"branch {name} vertices {_vlist(prof.vertices())}")
    if total is not None:
        out.append(f"total vertices {_vlist(total.vertices)}")
    return out


def _weights(text, d):
    if not text:
        return None
    w = [Fraction(x) for x in text.split(",")]
    if len(w) != d:
        raise UsageError(f"--w needs {d} entries")
    return w


def _degrees(text: str | None, fallback) -> list[int]:
    if text:
        try:
            degs = [int(x) for x in text.split(",")]
        except ValueError:
            raise UsageError("--deg expects comma separated integers") from None
    elif fallback:
        degs = list(fallback)
    else:
        raise UsageError("degrees required (--deg or a deg line in the type file)")
    return degs


def cmd_reconstruct(args, cfg: SessionConfig) -> list[str]:
    tf = parse_type(_read(args.type))
    degs = _degrees(args.deg, tf.degrees)
    if len(degs) != tf.btype.s:
        raise UsageError(f"{len(degs)} degrees for {tf.btype.s} rows")
    t = reconstruct_tree(tf.btype, degs, tf.names)
    _check_dim(cfg, t.d, args.type)
    if cfg.output == "figure":
        return [tree_dot(t).rstrip("\n")]
    out = format_tree(t).rstrip("\n").split("\n")
    labels = t.labels()
    for P in t.non_extremal():
        out.append(f"# vertex {labels[P]} {fmt_qval(P.value)}")
    for P, Q, c in t.edges():
        out.append(f"# edge {labels[P]} {labels[Q]} {c}")
    return out


def cmd_resolve(args, cfg: SessionConfig) -> list[str]:
    t = load_tree(args.tree, cfg)
    state = resolve(t)
    labels = t.labels()
    if cfg.output == "figure":
        return [tree_dot(t).rstrip("\n")]
    out = []
    for c in sorted(state.components.values(), key=lambda c: c.vertex.sort_key()):
        out.append(f"component {c.label} vertex {labels[c.vertex]} "
                   f"value {fmt_qval(c.vertex.value)} stage {c.stage} "
                   f"parent {c.parent or '-'}")
    for a, b in state.order_pairs():
        out.append(f"order {a} < {b}")
    for col, lab in bunch_incidence(t, state).items():
        out.append(f"incidence {_vlist(col)} {lab}")
    if t.d == 1:
        g = dead_arc_and_rupture(t, state)
        for v in g.vertices:
            out.append(f"d1 {v.label} valency {v.valency} omega {v.omega} "
                       f"rupture {'yes' if v.rupture else 'no'} dead_arcs {v.dead_arcs}")
        for a, b in g.edges:
            out.append(f"d1-edge {a} {b}")
    if args.lmw:
        if args.lmw is True and not args.tree.endswith(".poly"):
            raise UsageError("--lmw needs a polynomial unless the tree comes from a .poly file")
        pf = load_poly(args.tree if args.lmw is True else args.lmw, cfg)
        rep = lmw_verify(pf.poly, t, pf.factors or None)
        for lab, c in sorted(rep.hits.items()):
            out.append(f"lmw hit {lab} {c}")
        out += [f"lmw missing {lab}" for lab in rep.missing]
        out += [f"lmw note {m}" for m in rep.messages]
        out.append("lmw " + ("ok" if rep.ok else "FAILED"))
        if not rep.ok:
            raise Mismatch("\n".join(out))
    return out


# oracle jobs are module level so they can run in worker processes

def _psi_job(fi: SparsePoly, h: SparsePoly, cap: int, method: str) -> tuple:
    return tuple(newton_polyhedron(psi_image(fi, h, method=method), cap=cap).vertices)


def _rho_job(fi: SparsePoly, fj: SparsePoly, method: str) -> tuple:
    return rho(fi, fj, method=method)


def _run(jobs, n_jobs: int):
    if n_jobs <= 1 or len(jobs) <= 1:
        return [fn(*a) for fn, a in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as ex:
        futs = [ex.submit(fn, *a) for fn, a in jobs]
        return [f.result() for f in futs]


def cmd_oracle(args, cfg: SessionConfig) -> list[str]:
    pf = load_poly(args.poly, cfg)
    f = pf.poly
    if f.is_laurent():
        raise ValueError("Laurent input; normalize it first with the laurent subcommand")
    factors = pf.factors or [f]
    prod = factors[0]
    for g in factors[1:]:
        prod = prod * g
    if prod != f:
        raise ValueError("factors do not multiply to the polynomial")
    n = f.degree()
    fY = f.derivative().scale(Fraction(1, n))
    out = []
    qo = is_quasi_ordinary(f)
    if hasattr(qo, "unit_constant"):
        out.append(f"discriminant monomial {fmt_qval(qo.exponent)} unit {qo.unit_constant}")
    else:
        out.append("discriminant not a monomial times a unit")
    out.append(f"newton f {_vlist(newton_polyhedron(f, cap=cfg.hull_dim_cap).vertices)}")
    m = args.method
    jobs = [(_psi_job, (fi, fY, cfg.hull_dim_cap, m)) for fi in factors]
    pairs = [(i, j) for i in range(len(factors)) for j in range(len(factors)) if i != j]
    jobs += [(_rho_job, (factors[i], factors[j], m)) for i, j in pairs]
    if args.total and len(factors) > 1:
        jobs.append((_psi_job, (f, fY, cfg.hull_dim_cap, m)))
    res = _run(jobs, args.jobs)
    psi = res[:len(factors)]
    rhos = dict(zip(pairs, res[len(factors):len(factors) + len(pairs)]))
    total = res[-1] if args.total and len(factors) > 1 else (psi[0] if len(factors) == 1
                                                              else None)
    names = [f"f{i + 1}" for i in range(len(factors))]
    tree = pf.tree() if args.verify else None
    if tree is not None:
        names = [b.name for b in tree.branches]
    for i, vs in enumerate(psi):
        out.append(f"psi {names[i]} vertices {_vlist(vs)}")
    for (i, j), r in rhos.items():
        out.append(f"rho {names[i]} {names[j]} {fmt_qval(r)}")
    if total is not None and len(factors) > 1:
        out.append(f"psi total vertices {_vlist(total)}")
    if not args.verify:
        return out
    if tree is None:
        raise UsageError("--verify needs a tree (inline records or a tree line)")
    if tree.s != len(factors):
        raise ValueError(f"tree has {tree.s} branches but {len(factors)} factors were given")
    bad = []
    for i, vs in enumerate(psi):
        pred = predicted_psi_i(tree, i)
        got = GeneralPolyhedron(vs)
        if got != pred.to_general(tree.d):
            bad.append(f"psi {names[i]}: oracle {_vlist(vs)} != predicted "
                       f"{_vlist(pred.vertices())}")
        else:
            out.append(f"psi {names[i]} profile {profile_of_polyhedron(got)}")
    for (i, j), r in rhos.items():
        deg = factors[j].degree()
        pred = rho_from_coincidence(tree, i, tree.contacts[i][j], deg)
        got = tuple(x / deg for x in r)
        if got != pred:
            bad.append(f"rho {names[i]} {names[j]}: oracle {fmt_qval(got)} per degree != "
                       f"predicted {fmt_qval(pred)}")
    if total is not None:
        pred_total = predicted_psi_total(tree, cfg.hull_dim_cap)
        if GeneralPolyhedron(total) != pred_total:
            bad.append(f"psi total: oracle {_vlist(total)} != predicted "
                       f"{_vlist(pred_total.vertices)}")
    if bad:
        raise Mismatch("\n".join(out + bad + ["MISMATCH"]))
    out.append("MATCH")
    return out


def cmd_laurent(args, cfg: SessionConfig) -> list[str]:
    F = load_poly(args.poly, cfg).poly
    f, q = laurent_normalize(F)
    n = F.degree()
    out = [f"poly {format_polynomial(f)}", f"q {fmt_qval(q)}"]
    dF = F.derivative()
    ok = laurent_shift(dF, q, n - 1) == f.derivative()
    out.append(f"derivative {'ok' if ok else 'FAILED'}")
    if not ok:
        raise Mismatch("\n".join(out))
    if args.tree:
        t = load_tree(args.tree, cfg)
        degs = [b.degree for b in t.branches]
        tf = bunch_type_fY(t)
        out.append("type of the normalized polar:")
        out += format_type(tf).rstrip("\n").split("\n")
        out.append("type of the original polar:")
        out += format_type(shift_type(tf, q, degs)).rstrip("\n").split("\n")
    return out


def cmd_irred(args, cfg: SessionConfig) -> list[str]:
    f = load_poly(args.poly, cfg).poly
    v = irreducibility_check(f)
    if isinstance(v, PassesNecessaryCriterion):
        return [f"passes edge {_vlist(v.edge)} edge_poly {list(map(str, v.edge_poly))} "
                f"root {v.root}"]
    if isinstance(v, Reducible):
        if v.reason == "edges":
            return [f"reducible edges {len(v.edges)}"]
        if v.reason == "roots":
            return [f"reducible roots edge_poly {list(map(str, v.edge_poly))}"]
        return ["reducible monomial"]
    raise AssertionError(v)


def cmd_render(args, cfg: SessionConfig) -> list[str]:
    text = _read(args.file)
    if args.file.endswith(".poly"):
        p = load_poly(args.file, cfg).poly
        G = newton_polyhedron(p, cap=cfg.hull_dim_cap)
        return [polyhedron_svg(G.vertices, _weights(args.w, p.d)).rstrip("\n")]
    t = parse_tree(text)
    if args.kind == "polyhedron":
        G = predicted_psi_total(t, cfg.hull_dim_cap)
        return [polyhedron_svg(G.vertices, _weights(args.w, t.d)).rstrip("\n")]
    return [tree_dot(t).rstrip("\n")]


# -- entry point --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qopolar", description="Polar hypersurfaces of quasi-ordinary "
                "singularities: bunch types, polyhedra, reconstruction, resolution.")
    p.add_argument("--dim", type=int, default=None, help="expected dimension d")
    p.add_argument("--den-cap", type=int, default=DEFAULT_DENOMINATOR_CAP,
                   help="largest common denominator accepted in the input")
    p.add_argument("--hull-dim", type=int, default=None,
                   help=f"hull dimension cap (default ${hull.HULL_DIM_ENV} or "
                   f"{hull.DEFAULT_HULL_DIM})")
    p.add_argument("--format", choices=["text", "records", "figure"], default="text")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("type", help="bunch type of the polar from a tree file")
    s.add_argument("tree")
    s.set_defaults(fn=cmd_type)

    s = sub.add_parser("polyhedron", help="predicted Newton polyhedra of the discriminant")
    s.add_argument("tree")
    s.add_argument("--branch", help="only this branch")
    s.add_argument("--w", help="projection weights for figures, e.g. 1,1")
    s.set_defaults(fn=cmd_polyhedron)

    s = sub.add_parser("reconstruct", help="tree from a type matrix")
    s.add_argument("type")
    s.add_argument("--deg", help="degrees of the branches, e.g. 4,4,4,4")
    s.set_defaults(fn=cmd_reconstruct)

    s = sub.add_parser("resolve", help="components of the toric resolution")
    s.add_argument("tree", help="tree file, or a .poly file carrying a tree")
    s.add_argument("--lmw", metavar="POLY", nargs="?", const=True,
                   help="check the polar of POLY against the resolution (plane curves); "
                   "POLY defaults to the input when it is a .poly file")
    s.set_defaults(fn=cmd_resolve)

    s = sub.add_parser("oracle", help="resultant computations on equations")
    s.add_argument("poly", help="polynomial file or expression")
    s.add_argument("--verify", action="store_true", help="compare with the tree predictions")
    s.add_argument("--total", action="store_true",
                   help="also compute psi_f(f_Y) for the whole product (slow)")
    s.add_argument("--method", choices=["auto", "sylvester"], default="auto",
                   help="resultant route: Euclidean reduction first, or the full "
                   "Sylvester determinant")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("laurent", help="normalize a Laurent polynomial")
    s.add_argument("poly")
    s.add_argument("--tree", help="tree of the normalized polynomial, to shift its type")
    s.set_defaults(fn=cmd_laurent)

    s = sub.add_parser("irred-check", help="polyhedral irreducibility criterion")
    s.add_argument("poly")
    s.set_defaults(fn=cmd_irred)

    s = sub.add_parser("render", help="DOT of a tree or SVG of a polyhedron")
    s.add_argument("file", help=".tree or .poly file")
    s.add_argument("--kind", choices=["tree", "polyhedron"], default="tree")
    s.add_argument("--w", help="projection weights, e.g. 1,1")
    s.set_defaults(fn=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cap = args.hull_dim if args.hull_dim is not None else hull.hull_dim_cap()
        cfg = SessionConfig(args.dim, args.den_cap, cap, args.format)
    except ValueError as exc:
        print(f"qopolar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.hull_dim is not None:
        os.environ[hull.HULL_DIM_ENV] = str(cap)
    try:
        lines = args.fn(args, cfg)
    except UsageError as exc:
        print(f"qopolar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Mismatch as exc:
        print(str(exc))
        return EXIT_MISMATCH
    except (QOPolarError, ValueError) as exc:
        print(f"qopolar: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for line in lines:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
