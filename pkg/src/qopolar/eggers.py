"""Eggers-Wall trees of quasi-ordinary polynomials.

A tree is built from characteristic data: for each branch its degree and
characteristic exponents, plus the symmetric matrix of orders of
coincidence.  Vertices are keyed by the set of branches passing through
them together with their valuation, so the same point reached from two
branches has the same key.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError
from .lattice import Lattice
from .qvec import (INF, Order, QVal, QVec, as_qval, cmp_partial, fmt_qval, leq,
                   lex_key, lt, sort_chain, vadd, vscale, vsub, zero)


# -- branch data -------------------------------------------------------------

@dataclass(frozen=True)
class BranchData:
    """Degree and characteristic exponents of one irreducible factor."""

    degree: int
    exponents: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(as_qval(e) for e in self.exponents))
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def g(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class CharStructure:
    """Characteristic integers ``n_1..n_g``, ``e_0..e_g`` and lattices ``M_0..M_g``."""

    n: tuple
    e: tuple
    lattices: tuple


def _structure(b: BranchData, M: Lattice) -> tuple[CharStructure | None, list[str]]:
    errs = []
    lats = [M]
    ns = []
    for j, lam in enumerate(b.exponents, 1):
        if lats[-1].contains(lam):
            errs.append(f"{b.name}: exponent lambda_{j}={fmt_qval(lam)} lies in M_{j-1}")
            return None, errs
        nxt = lats[-1].extend(lam)
        ns.append(lats[-1].index_in(nxt))
        lats.append(nxt)
    e = [1]
    for nj in reversed(ns):
        e.append(e[-1] * nj)
    e.reverse()
    if e[0] != b.degree:
        errs.append(f"{b.name}: degree {b.degree} differs from n_1...n_g = {e[0]}")
    return CharStructure(tuple(ns), tuple(e), tuple(lats)), errs


def characteristic_structure(b: BranchData, lattice: Lattice | None = None) -> CharStructure:
    """Lattices ``M_j = M_{j-1} + Z lambda_j``, indices ``n_j`` and ``e_j = n_{j+1}...n_g``.

    >>> b = BranchData(4, ["(3/2,1)", "(7/4,3/2)"])
    >>> cs = characteristic_structure(b)
    >>> cs.n, cs.e
    ((2, 2), (4, 2, 1))
    """
    if lattice is None:
        if not b.exponents:
            return CharStructure((), (1,), ())
        lattice = Lattice.standard(len(b.exponents[0]))
    st, errs = _structure(b, lattice)
    if errs:
        raise ValidationError(errs)
    return st


# -- validation ----------------------------------------------------------------

def _positive(u) -> bool:
    return all(c >= 0 for c in u) and any(c > 0 for c in u)


def _name(branches, i):
    return branches[i].name or f"f{i + 1}"


def validate(branches: Sequence[BranchData], contacts: Sequence[Sequence], d: int,
             lattice: Lattice | None = None) -> list[str]:
    """Return the list of violated constraints (empty when the data is valid).

    Checks shapes, symmetry, positivity, strictly increasing exponents,
    genuine lattice jumps, total order of each set of marked values, the
    ultrametric inequality with its equality clause, agreement of the
    exponents below each order of coincidence, and that an order of
    coincidence outside the current lattice is an exponent of one side.
    """
    s = len(branches)
    M = lattice or Lattice.standard(d)
    errs: list[str] = []
    if s == 0:
        return ["no branches"]
    if len(contacts) != s or any(len(r) != s for r in contacts):
        return [f"contact matrix is not {s}x{s}"]
    K = [[as_qval(x) for x in row] for row in contacts]
    nm = lambda i: _name(branches, i)  # noqa: E731
    for i in range(s):
        if K[i][i] is not INF:
            errs.append(f"k({nm(i)},{nm(i)}) must be inf")
        for j in range(s):
            if i == j:
                continue
            if K[i][j] != K[j][i]:
                errs.append(f"k({nm(i)},{nm(j)}) != k({nm(j)},{nm(i)})")
            if K[i][j] is INF:
                errs.append(f"k({nm(i)},{nm(j)}) is inf for distinct branches")
            elif len(K[i][j]) != d or not _positive(K[i][j]):
                errs.append(f"k({nm(i)},{nm(j)})={fmt_qval(K[i][j])} is not a positive "
                            f"vector of dimension {d}")
    if errs:
        return errs
    structs = []
    for i, b in enumerate(branches):
        if b.degree < 1:
            errs.append(f"{nm(i)}: degree must be positive")
        ex = b.exponents
        for lam in ex:
            if lam is INF or len(lam) != d or not _positive(lam):
                errs.append(f"{nm(i)}: exponent {fmt_qval(lam)} is not a positive "
                            f"vector of dimension {d}")
        if errs:
            structs.append(None)
            continue
        for a, c in zip(ex, ex[1:]):
            if not lt(a, c):
                errs.append(f"{nm(i)}: exponents {fmt_qval(a)}, {fmt_qval(c)} "
                            "are not strictly increasing")
        st, e2 = _structure(BranchData(b.degree, ex, nm(i)), M)
        errs += e2
        structs.append(st)
    if errs:
        return errs
    for i in range(s):
        marked = list(branches[i].exponents) + [K[i][j] for j in range(s) if j != i]
        for a, c in combinations(marked, 2):
            if cmp_partial(a, c) is Order.INCOMPARABLE:
                errs.append(f"marked values of {nm(i)} not totally ordered: "
                            f"{fmt_qval(a)} vs {fmt_qval(c)}")
    for i, j, r in permutations(range(s), 3):
        if i > r:
            continue
        a, b, c = K[i][j], K[j][r], K[i][r]
        if cmp_partial(a, b) is Order.INCOMPARABLE:
            continue  # already reported: both are marked values of j
        m = a if leq(a, b) else b
        if not leq(m, c):
            errs.append(f"ultrametric: k({nm(i)},{nm(r)})={fmt_qval(c)} >= "
                        f"min{{k({nm(i)},{nm(j)})={fmt_qval(a)}, "
                        f"k({nm(j)},{nm(r)})={fmt_qval(b)}}} fails")
        elif a != b and c != m:
            errs.append(f"ultrametric: k({nm(i)},{nm(j)}) != k({nm(j)},{nm(r)}) "
                        f"but k({nm(i)},{nm(r)})={fmt_qval(c)} is not their minimum "
                        f"{fmt_qval(m)}")
    if errs:
        return errs
    for i, j in combinations(range(s), 2):
        k = K[i][j]
        below_i = [x for x in branches[i].exponents if lt(x, k)]
        below_j = [x for x in branches[j].exponents if lt(x, k)]
        if below_i != below_j:
            errs.append(f"{nm(i)} and {nm(j)} have different exponents below "
                        f"k={fmt_qval(k)}")
            continue
        Mc = structs[i].lattices[len(below_i)]
        if not Mc.contains(k) and k not in branches[i].exponents \
                and k not in branches[j].exponents:
            errs.append(f"k({nm(i)},{nm(j)})={fmt_qval(k)} lies outside M_{len(below_i)} "
                        "but is an exponent of neither branch")
    return errs


# -- vertices and chains -----------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    """Point of the tree: branches through it and its valuation."""

    branches: frozenset
    value: QVal

    def sort_key(self):
        return (lex_key(self.value), min(self.branches), tuple(sorted(self.branches)))

    def __repr__(self):
        return f"Vertex({sorted(self.branches)}, {fmt_qval(self.value)})"


class ZeroChain(Mapping):
    """Finite integer combination of vertices."""

    def __init__(self, coeffs: Mapping | Iterable = ()):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for P, c in items:
            acc[P] = acc.get(P, 0) + c
        self._c = {P: c for P, c in acc.items() if c}

    def __getitem__(self, P):
        return self._c.get(P, 0)

    def __iter__(self):
        return iter(sorted(self._c, key=Vertex.sort_key))

    def __len__(self):
        return len(self._c)

    def __contains__(self, P):
        return P in self._c

    def __eq__(self, other):
        if isinstance(other, ZeroChain):
            return self._c == other._c
        return NotImplemented

    def __add__(self, other: "ZeroChain") -> "ZeroChain":
        return ZeroChain(list(self._c.items()) + list(other._c.items()))

    def __neg__(self):
        return ZeroChain({P: -c for P, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return "ZeroChain(" + " + ".join(f"{c}*{P!r}" for P, c in self.items()) + ")"


class OneChain(Mapping):
    """Finite integer combination of segments ``(P, P')`` oriented by increasing valuation."""

    def __init__(self, coeffs: Mapping | Iterable = ()):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for (P, Q), c in items:
            if not lt(P.value, Q.value):
                raise ValueError(f"segment {P!r} -> {Q!r} is not oriented upwards")
            acc[(P, Q)] = acc.get((P, Q), 0) + c
        self._c = {e: c for e, c in acc.items() if c}

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def __iter__(self):
        return iter(sorted(self._c, key=lambda e: (e[1].sort_key(), e[0].sort_key())))

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, OneChain):
            return self._c == other._c
        return NotImplemented


def boundary(c: OneChain) -> ZeroChain:
    """Linear boundary with ``d(P -> P') = P' - P``."""
    out = []
    for (P, Q), k in c.items():
        out.append((Q, k))
        out.append((P, -k))
    return ZeroChain(out)


# -- the tree ----------------------------------------------------------------

def _nu_formula(exps: Sequence[QVec], e: Sequence[int], lam: QVal) -> QVal:
    if lam is INF:
        return INF
    c = 0
    for j, x in enumerate(exps, 1):
        o = cmp_partial(x, lam)
        if o is Order.INCOMPARABLE:
            raise ValueError(f"{fmt_qval(lam)} is not comparable with exponent {fmt_qval(x)}")
        if o is Order.LT:
            c = j
    val = vscale(e[c], lam)
    for k in range(1, c + 1):
        val = vadd(val, vscale(e[k - 1] - e[k], exps[k - 1]))
    return val


class EggersWallTree:
    """Glued tree of the elementary branches with its chain ``gamma``.

    Parameters
    ----------
    branches : list of :class:`BranchData`
    contacts : ``s x s`` matrix of orders of coincidence (``inf`` on the diagonal)
    d : dimension; inferred from the data when possible
    lattice : reference lattice (``Z^d`` by default); exponents and valuations
        are measured relative to it

    Raises
    ------
    ValidationError
        listing every violated constraint.
    """

    def __init__(self, branches: Sequence[BranchData], contacts: Sequence[Sequence],
                 d: int | None = None, lattice: Lattice | None = None):
        branches = [b if b.name else BranchData(b.degree, b.exponents, f"f{i + 1}")
                    for i, b in enumerate(branches)]
        if d is None:
            d = _infer_d(branches, contacts, lattice)
        self.d = d
        self.lattice = lattice or Lattice.standard(d)
        errs = validate(branches, contacts, d, self.lattice)
        if errs:
            raise ValidationError(errs)
        self.branches = tuple(branches)
        self.contacts = tuple(tuple(as_qval(x) for x in row) for row in contacts)
        self.structures = tuple(_structure(b, self.lattice)[0] for b in branches)
        self._build()

    # construction
    def branch_vertex(self, i: int, lam: QVal) -> Vertex:
        """Key of the point of valuation ``lam`` on the elementary branch of ``i``."""
        B = frozenset(j for j in range(self.s) if leq(lam, self.contacts[i][j]))
        return Vertex(B, lam)

    def _build(self):
        s = self.s
        self.chains = []
        parent: dict = {}
        gamma: dict = {}
        root = Vertex(frozenset(range(s)), zero(self.d))
        for i, b in enumerate(self.branches):
            marks = {zero(self.d), INF}
            marks.update(b.exponents)
            marks.update(self.contacts[i][j] for j in range(s) if j != i)
            chain = [self.branch_vertex(i, lam) for lam in sort_chain(marks)]
            self.chains.append(tuple(chain))
            n = self.structures[i].n
            for P, Q in zip(chain, chain[1:]):
                c = 1
                for j, lam in enumerate(b.exponents):
                    if leq(lam, P.value):
                        c *= n[j]
                if parent.setdefault(Q, P) != P:
                    raise ValidationError([f"vertex {Q!r} reached from two parents"])
                if gamma.setdefault(Q, c) != c:
                    raise ValidationError([f"segment to {Q!r} has coefficients "
                                           f"{gamma[Q]} and {c}"])
        self.root = root
        self.parent = parent
        self._gamma = gamma
        verts = {root} | set(parent)
        self.vertices = tuple(sorted(verts, key=Vertex.sort_key))
        children: dict = {P: [] for P in self.vertices}
        for Q, P in parent.items():
            children[P].append(Q)
        self.children = {P: tuple(sorted(c, key=Vertex.sort_key)) for P, c in children.items()}
        self._labels = None

    # basic queries
    @property
    def s(self) -> int:
        return len(self.branches)

    def leaf(self, i: int) -> Vertex:
        return Vertex(frozenset([i]), INF)

    def is_extremal(self, P: Vertex) -> bool:
        return P == self.root or P.value is INF

    def non_extremal(self) -> list[Vertex]:
        return [P for P in self.vertices if not self.is_extremal(P)]

    def edges(self) -> list[tuple]:
        """``(P, Q, coefficient)`` for every segment, ``P`` the lower end."""
        return [(self.parent[Q], Q, self._gamma[Q]) for Q in self.vertices if Q in self.parent]

    def gamma(self) -> OneChain:
        return OneChain({(P, Q): c for P, Q, c in self.edges()})

    def gamma_coefficient(self, P: Vertex, Q: Vertex) -> int:
        if self.parent.get(Q) != P:
            raise KeyError(f"no segment {P!r} -> {Q!r}")
        return self._gamma[Q]

    def minus_boundary(self) -> ZeroChain:
        return -boundary(self.gamma())

    def labels(self) -> dict:
        """Display names: ``P0`` for the root, ``P1..`` in vertex order, branch names at leaves."""
        if self._labels is None:
            lab = {self.root: "P0"}
            k = 1
            for P in self.vertices:
                if P == self.root:
                    continue
                if P.value is INF:
                    (i,) = P.branches
                    lab[P] = self.branches[i].name
                else:
                    lab[P] = f"P{k}"
                    k += 1
            self._labels = lab
        return dict(self._labels)

    def vertex(self, label: str) -> Vertex:
        for P, name in self.labels().items():
            if name == label:
                return P
        raise KeyError(label)

    def on_branch(self, i: int, P: Vertex) -> bool:
        return i in P.branches

    def __contains__(self, P):
        return P in self.children

    def __repr__(self):
        return (f"EggersWallTree(s={self.s}, d={self.d}, "
                f"vertices={len(self.vertices)})")

    # structural equality of the input data
    def __eq__(self, other):
        if not isinstance(other, EggersWallTree):
            return NotImplemented
        return (self.d == other.d and self.lattice == other.lattice
                and [(b.degree, b.exponents) for b in self.branches]
                == [(b.degree, b.exponents) for b in other.branches]
                and self.contacts == other.contacts)

    def __hash__(self):
        return hash((self.d, self.contacts))


def _infer_d(branches, contacts, lattice) -> int:
    if lattice is not None:
        return lattice.dim
    for b in branches:
        for e in b.exponents:
            return len(as_qval(e))
    for row in contacts:
        for x in row:
            x = as_qval(x)
            if x is not INF:
                return len(x)
    raise ValueError("cannot infer the dimension; pass d")


def build_tree(branches: Sequence[BranchData], contacts: Sequence[Sequence],
               d: int | None = None, lattice: Lattice | None = None) -> EggersWallTree:
    """Validate the data and glue the elementary branches.

    >>> b = [BranchData(4, ["(3/2,1)", "(7/4,3/2)"], n) for n in ("f11", "f12", "f21", "f22")]
    >>> a, c = "(7/4,3/2)", "(3/2,1)"
    >>> K = [["inf", a, c, c], [a, "inf", c, c], [c, c, "inf", a], [c, c, a, "inf"]]
    >>> t = build_tree(b, K)
    >>> [(t.labels()[P], t.labels()[Q], c) for P, Q, c in t.edges()][:3]
    [('P0', 'P1', 1), ('P1', 'P2', 2), ('P1', 'P3', 2)]
    """
    return EggersWallTree(branches, contacts, d, lattice)


# -- valuations ----------------------------------------------------------------

def nu_on_branch(tree: EggersWallTree, i: int, lam: QVal) -> QVal:
    """``nu_i`` at the point of valuation ``lam`` of the elementary branch of ``i``."""
    return _nu_formula(tree.branches[i].exponents, tree.structures[i].e, lam)


def nu(tree: EggersWallTree, i: int, P: Vertex) -> QVal:
    """Valuation ``nu_i`` of a vertex (also of attached points).

    On the elementary branch of ``i`` it is piecewise linear in the
    valuation; off it, ``nu_i`` is constant, equal to its value at the
    bifurcation point.

    >>> b = [BranchData(2, ["3/2"])]
    >>> t = build_tree(b, [["inf"]])
    >>> nu(t, 0, t.non_extremal()[0])
    (Fraction(3, 1),)
    """
    if i in P.branches:
        if P.value is INF and P.branches != frozenset([i]):
            raise ValueError(f"{P!r} is not a vertex")
        return nu_on_branch(tree, i, P.value)
    j = min(P.branches)
    return nu_on_branch(tree, i, tree.contacts[i][j])


def nu_invert(tree: EggersWallTree, i: int, a: QVal) -> QVal:
    """The valuation ``lam`` on the branch of ``i`` with ``nu_i(P_lam) = a``.

    Raises
    ------
    ValueError
        if ``a`` is not in the image of ``nu_i``.
    """
    return nu_invert_data(tree.branches[i].exponents, tree.structures[i].e, a, tree.d)


def nu_invert_data(exps: Sequence[QVec], e: Sequence[int], a: QVal, d: int) -> QVal:
    if a is INF:
        return INF
    a = as_qval(a)
    if not any(a):
        return zero(d)
    S = zero(d)
    for c in range(len(exps) + 1):
        if c > 0:
            S = vadd(S, vscale(e[c - 1] - e[c], exps[c - 1]))
        lam = vscale(Fraction(1, e[c]), vsub(a, S))
        if not _positive(lam):
            continue
        if c > 0 and not lt(exps[c - 1], lam):
            continue
        if c < len(exps) and not leq(lam, exps[c]):
            continue
        return lam
    raise ValueError(f"{fmt_qval(a)} is not a value of nu on this branch")


def rho_from_coincidence(tree: EggersWallTree, i: int, k: QVal, deg_h: int = 1,
                         contacts: Sequence | None = None) -> QVal:
    """Normalized order ``rho(f_i, h) / deg h`` of an irreducible ``h`` from ``k(h, f_i)``.

    ``contacts`` optionally gives ``k(h, f_j)`` for every branch; it is then
    checked for consistency with the tree.  Multiply by ``deg_h`` to get
    ``rho(f_i, h)`` itself.
    """
    k = as_qval(k)
    if contacts is not None:
        attach_point(tree, contacts)
        if as_qval(contacts[i]) != k:
            raise ValueError("k(h, f_i) disagrees with the contact vector")
    if deg_h < 1:
        raise ValueError("degree of h must be positive")
    return nu_on_branch(tree, i, k)


def attach_point(tree: EggersWallTree, contacts: Sequence) -> tuple[int, Vertex]:
    """Branch index and point where an irreducible ``h`` leaves the tree.

    Raises
    ------
    ValidationError
        if the contact vector violates the ultrametric rules against the tree.
    """
    s = tree.s
    kh = [as_qval(x) for x in contacts]
    if len(kh) != s:
        raise ValidationError([f"expected {s} orders of coincidence, got {len(kh)}"])
    errs = []
    for j in range(s):
        if kh[j] is INF or len(kh[j]) != tree.d or not _positive(kh[j]):
            errs.append(f"k(h,{_name(tree.branches, j)}) must be a finite positive vector")
    if errs:
        raise ValidationError(errs)
    for j, r in permutations(range(s), 2):
        a, b, c = kh[j], tree.contacts[j][r], kh[r]
        if cmp_partial(a, b) is Order.INCOMPARABLE:
            errs.append(f"k(h,{j + 1}) and k({j + 1},{r + 1}) are incomparable")
            continue
        m = a if leq(a, b) else b
        if not leq(m, c):
            errs.append(f"ultrametric: k(h,{r + 1}) >= min{{k(h,{j + 1}), "
                        f"k({j + 1},{r + 1})}} fails")
        elif a != b and c != m:
            errs.append(f"ultrametric equality fails for h, {j + 1}, {r + 1}")
    for j in range(s):
        for x in tree.branches[j].exponents:
            if cmp_partial(x, kh[j]) is Order.INCOMPARABLE:
                errs.append(f"k(h,{j + 1}) incomparable with an exponent of branch {j + 1}")
    if errs:
        raise ValidationError(errs)
    top = 0
    for j in range(1, s):
        if lt(kh[top], kh[j]):
            top = j
    return top, tree.branch_vertex(top, kh[top])


def contact_chain(tree: EggersWallTree, factors: Iterable[tuple]) -> ZeroChain:
    """``sum deg(h_j) * P^{h_j}`` for factors given as ``(degree, contact vector)``."""
    out = []
    for deg, contacts in factors:
        _, P = attach_point(tree, contacts)
        out.append((P, int(deg)))
    return ZeroChain(out)


# -- isomorphism ---------------------------------------------------------------------

def isomorphic(a: EggersWallTree, b: EggersWallTree, match_order: bool = False) -> bool:
    """Whether two trees agree up to a relabelling of branches.

    With ``match_order`` the branch order must agree as well.  Valuations,
    degrees, exponents and hence the chain ``gamma`` are compared.
    """
    if (a.s, a.d) != (b.s, b.d) or a.lattice != b.lattice:
        return False
    sig_a = [(x.degree, x.exponents) for x in a.branches]
    sig_b = [(x.degree, x.exponents) for x in b.branches]
    if match_order:
        return sig_a == sig_b and a.contacts == b.contacts
    if sorted(sig_a, key=repr) != sorted(sig_b, key=repr):
        return False
    s = a.s
    perm = [None] * s
    used = [False] * s

    def extend(i):
        if i == s:
            return True
        for j in range(s):
            if used[j] or sig_a[i] != sig_b[j]:
                continue
            if all(a.contacts[i][r] == b.contacts[j][perm[r]] for r in range(i)):
                perm[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    return extend(0)
