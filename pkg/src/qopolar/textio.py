"""Text formats: polynomial expressions, tree files, type files, polynomial files.

All numbers are exact rationals written ``a/b``; vectors are ``(a1,...,ad)``
(a bare rational is accepted when ``d = 1``) and ``inf`` is infinity.  Lines
starting with ``#`` are comments in every file format.

Polynomial grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' exponent]
    atom   := number | name | '(' expr ')'
    exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'

Names are ``X1 .. Xd`` (``X`` is an alias of ``X1``), ``Y`` and ``T``.
Rational or negative exponents are allowed on monomials only; division is
allowed by constants only.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .btype import BunchType
from .eggers import BranchData, EggersWallTree
from .errors import ParseError
from .poly import SparsePoly, default_xvars, format_poly
from .qvec import INF, fmt_qval, parse_qvec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")
INT_VARS = ("T", "Y")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, xvars: tuple, yvars: tuple):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.xvars = xvars
        self.yvars = yvars

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self) -> SparsePoly:
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                rhs = self.factor()
                if not rhs.is_constant() or not rhs.terms:
                    self.error("division by a non-constant or zero", t)
                acc = acc.scale(1 / rhs.constant_value())
            else:
                return acc

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.exponent()
            return self.power(base, e, t)
        return base

    def exponent(self) -> Fraction:
        t = self.peek()
        if t[0] == "op" and t[1] == "(":
            self.take()
            neg = self._sign()
            num = self._int()
            den = 1
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self._int()
                if den == 0:
                    self.error("zero denominator")
            self.expect(")")
            return Fraction(-num if neg else num, den)
        neg = self._sign()
        n = self._int()
        return Fraction(-n if neg else n)

    def _sign(self) -> bool:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            return t[1] == "-"
        return False

    def _int(self) -> int:
        t = self.take()
        if t[0] != "num":
            self.error("expected an integer", t)
        return int(t[1])

    def power(self, base: SparsePoly, e: Fraction, tok) -> SparsePoly:
        if e.denominator == 1 and e >= 0:
            return base ** int(e)
        if len(base.terms) != 1:
            self.error("rational or negative exponent on a non-monomial", tok)
        ((xe, ye), c), = base.items()
        if c != 1 or any(ye):
            self.error("rational or negative exponent allowed on X-monomials only", tok)
        return SparsePoly({(tuple(a * e for a in xe), ye): 1}, base.xvars, base.yvars)

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return SparsePoly.constant(int(t[1]), self.xvars, self.yvars)
        if t[0] == "name":
            name = t[1]
            if name == "X" and len(self.xvars) >= 1:
                name = self.xvars[0]
            if name in self.xvars or name in self.yvars:
                return SparsePoly.var(name, self.xvars, self.yvars)
            self.error(f"unknown variable {t[1]!r}", t)
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        self.error("unexpected token", t)


def infer_dimension(text: str) -> int:
    idx = [int(m) for m in re.findall(r"\bX(\d+)\b", text)]
    return max(idx) if idx else 1


def parse_polynomial(text: str, d: int | None = None, yvars: tuple | None = None
                     ) -> SparsePoly:
    """Parse a polynomial expression.

    The result is over ``X1..Xd`` (``d`` inferred from the text when not
    given) and over the integer variables that occur (``Y`` by default).
    Negative X exponents produce a Laurent polynomial (see
    :meth:`SparsePoly.is_laurent`).

    Examples
    --------
    >>> p = parse_polynomial("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y")
    >>> sorted(p.support_points())[:2]
    [(Fraction(0, 1), Fraction(0, 1), Fraction(4, 1)), (Fraction(3, 1), Fraction(2, 1), Fraction(2, 1))]
    """
    if d is None:
        d = infer_dimension(text)
    xvars = default_xvars(d)
    if yvars is None:
        found = [v for v in INT_VARS if re.search(rf"\b{v}\b", text)]
        yvars = tuple(found) or ("Y",)
    return _Parser(text, xvars, tuple(yvars)).parse()


def format_polynomial(p: SparsePoly) -> str:
    """Inverse of :func:`parse_polynomial` (up to term order)."""
    return format_poly(p)


# -- line-based files ------------------------------------------------------------

_FIELD = re.compile(r"\([^)]*\)|\S+")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _vec(tok: str, no: int) -> object:
    try:
        return parse_qvec(tok)
    except ParseError as exc:
        raise ParseError(f"line {no}: {exc}") from None


# -- tree files ------------------------------------------------------------------

def parse_tree_data(text: str) -> tuple[list[BranchData], list[list], int | None]:
    """Read ``branch``/``contact`` records without building the tree.

    Format::

        dim 2                                   # optional
        branch f11 deg 4 exps (3/2,1) (7/4,3/2) # one line per branch
        contact f11 f12 (7/4,3/2)               # one line per pair

    ``exps`` may be followed by nothing (a smooth branch).  Contacts must be
    given for every pair of distinct branches.
    """
    branches: list[BranchData] = []
    pairs: dict = {}
    d = None
    for no, line in _lines(text):
        toks = _FIELD.findall(line)
        kw = toks[0]
        if kw == "dim":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise ParseError(f"line {no}: expected 'dim <positive integer>'")
            d = int(toks[1])
        elif kw == "branch":
            if len(toks) < 5 or toks[2] != "deg" or toks[4] != "exps":
                raise ParseError(f"line {no}: expected 'branch <name> deg <n> exps <list>'")
            name = toks[1]
            if any(b.name == name for b in branches):
                raise ParseError(f"line {no}: branch {name} defined twice")
            if not toks[3].isdigit() or int(toks[3]) < 1:
                raise ParseError(f"line {no}: degree must be a positive integer")
            exps = [_vec(t, no) for t in toks[5:]]
            if any(e is INF for e in exps):
                raise ParseError(f"line {no}: exponents must be finite")
            branches.append(BranchData(int(toks[3]), exps, name))
        elif kw == "contact":
            if len(toks) != 4:
                raise ParseError(f"line {no}: expected 'contact <a> <b> <vector|inf>'")
            key = frozenset(toks[1:3])
            if len(key) != 2:
                raise ParseError(f"line {no}: contact of a branch with itself")
            v = _vec(toks[3], no)
            if key in pairs and pairs[key][0] != v:
                raise ParseError(f"line {no}: conflicting contact for {toks[1]}, {toks[2]}")
            pairs[key] = (v, no)
        else:
            raise ParseError(f"line {no}: unknown record {kw!r}")
    if not branches:
        raise ParseError("no branch records")
    names = [b.name for b in branches]
    for key, (_, no) in pairs.items():
        for n in key:
            if n not in names:
                raise ParseError(f"line {no}: unknown branch {n}")
    s = len(branches)
    K = [[INF] * s for _ in range(s)]
    for i in range(s):
        for j in range(i + 1, s):
            key = frozenset((names[i], names[j]))
            if key not in pairs:
                raise ParseError(f"missing contact {names[i]} {names[j]}")
            K[i][j] = K[j][i] = pairs[key][0]
    return branches, K, d


def parse_tree(text: str, lattice=None) -> EggersWallTree:
    """Parse a tree file and build the validated tree.

    Raises
    ------
    ParseError
        on a malformed record.
    ValidationError
        when the data violates a constraint; the violations are listed verbatim.
    """
    branches, K, d = parse_tree_data(text)
    return EggersWallTree(branches, K, d, lattice)


def format_tree(tree: EggersWallTree) -> str:
    out = [f"dim {tree.d}"]
    for b in tree.branches:
        exps = " ".join(fmt_qval(e) for e in b.exponents)
        out.append(f"branch {b.name} deg {b.degree} exps {exps}".rstrip())
    for i in range(tree.s):
        for j in range(i + 1, tree.s):
            out.append(f"contact {tree.branches[i].name} {tree.branches[j].name} "
                       f"{fmt_qval(tree.contacts[i][j])}")
    return "\n".join(out) + "\n"


# -- type files ------------------------------------------------------------------

@dataclass
class TypeFile:
    btype: BunchType
    names: list | None = None
    degrees: list | None = None


def parse_type(text: str) -> TypeFile:
    """Parse a type matrix.

    One line per row, optionally prefixed with ``<name>:``, then a line
    ``mult c1 c2 ...`` and optionally ``deg n1 n2 ...`` (degrees of the rows).
    """
    rows, names = [], []
    mult = degs = None
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head in ("mult", "deg"):
            try:
                vals = [int(x) for x in rest.split()]
            except ValueError:
                raise ParseError(f"line {no}: expected integers after {head}") from None
            if head == "mult":
                mult = vals
            else:
                degs = vals
            continue
        if mult is not None:
            raise ParseError(f"line {no}: row after the mult line")
        name = None
        m = re.match(r"^([A-Za-z_][\w.]*)\s*:\s*(.*)$", line)
        if m:
            name, line = m.group(1), m.group(2)
        rows.append([_vec(t, no) for t in _FIELD.findall(line)])
        names.append(name)
    if not rows or mult is None:
        raise ParseError("a type needs at least one row and a mult line")
    if any(len(r) != len(mult) for r in rows):
        raise ParseError("rows and mult line have different lengths")
    if any(v is INF for r in rows for v in r):
        raise ParseError("type entries must be finite")
    if any(n is None for n in names) and any(n is not None for n in names):
        raise ParseError("either all rows are named or none")
    if degs is not None and len(degs) != len(rows):
        raise ParseError("deg line must have one entry per row")
    d = len(rows[0][0]) if rows[0] else None
    cols = [(tuple(r[c] for r in rows), mult[c]) for c in range(len(mult))]
    t = BunchType(cols, len(rows), d)
    return TypeFile(t, None if names[0] is None else names, degs)


def format_type(t: BunchType, names=None, degrees=None) -> str:
    rows = t.rows()
    width = [max(len(fmt_qval(r[c])) for r in rows) for c in range(len(t))]
    out = []
    for k, r in enumerate(rows):
        body = "  ".join(fmt_qval(v).ljust(w) for v, w in zip(r, width)).rstrip()
        out.append(f"{names[k]}: {body}" if names else body)
    out.append("mult " + " ".join(str(c) for c in t.multiplicities()))
    if degrees is not None:
        out.append("deg " + " ".join(str(n) for n in degrees))
    return "\n".join(out) + "\n"


# -- polynomial files ----------------------------------------------------------------

@dataclass
class PolyFile:
    """A polynomial, optionally its branches and the tree they are claimed to have."""

    poly: SparsePoly
    factors: list = field(default_factory=list)
    tree_text: str | None = None

    def tree(self, lattice=None) -> EggersWallTree | None:
        return None if self.tree_text is None else parse_tree(self.tree_text, lattice)


def parse_poly_file(text: str, base: str | None = None, d: int | None = None) -> PolyFile:
    """Parse a polynomial file.

    Records::

        poly <expression>       # exactly one
        factor <expression>     # optional, the branches in tree order
        tree <path>             # optional, relative to ``base``
        branch ... / contact ... / dim ...   # or the tree inline

    The dimension is the largest ``Xk`` index over all expressions and the
    ``dim`` record, and at least ``d``.
    """
    exprs, factors, tree_lines, tree_path = [], [], [], None
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "poly":
            exprs.append((no, rest))
        elif head == "factor":
            factors.append((no, rest))
        elif head == "tree":
            tree_path = rest
        elif head in ("branch", "contact", "dim"):
            tree_lines.append(line)
        else:
            raise ParseError(f"line {no}: unknown record {head!r}")
    if len(exprs) != 1:
        raise ParseError("a polynomial file needs exactly one poly record")
    if tree_path and tree_lines:
        raise ParseError("give the tree either inline or by path, not both")
    d = max([d or 1] + [infer_dimension(e) for _, e in exprs + factors])
    for line in tree_lines:
        if line.startswith("dim") and line.split()[-1].isdigit():
            d = max(d, int(line.split()[-1]))

    def parse(no, e):
        try:
            return parse_polynomial(e, d)
        except ParseError as exc:
            raise ParseError(f"line {no}: {exc}") from None

    poly = parse(*exprs[0])
    fs = [parse(no, e) for no, e in factors]
    tree_text = "\n".join(tree_lines) if tree_lines else None
    if tree_path:
        path = os.path.join(base or ".", tree_path)
        with open(path) as fh:
            tree_text = fh.read()
    return PolyFile(poly, fs, tree_text)


def format_poly_file(pf: PolyFile) -> str:
    out = [f"poly {format_polynomial(pf.poly)}"]
    out += [f"factor {format_polynomial(g)}" for g in pf.factors]
    if pf.tree_text:
        out += [l for _, l in _lines(pf.tree_text)]
    return "\n".join(out) + "\n"
