"""Sparse multivariate polynomials with rational coefficients and exponents.

A :class:`SparsePoly` has monomial variables ``X1..Xd`` whose exponents are
rational (stored as integers over a common denominator ``k``), and a tuple of
integer-exponent variables such as ``("T", "Y")``; the last one is the
distinguished variable by default.  Negative X exponents are allowed (Laurent
polynomials).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .qvec import fmt_frac


def default_xvars(d: int) -> tuple:
    return tuple(f"X{i}" for i in range(1, d + 1))


class SparsePoly:
    """Immutable sparse polynomial.

    Parameters
    ----------
    terms : mapping from ``(x_exponents, y_exponents)`` to coefficient, where
        ``x_exponents`` are rationals (length d) and ``y_exponents`` integers.
    xvars : names of the monomial variables.
    yvars : names of the integer-exponent variables.
    """

    __slots__ = ("xvars", "yvars", "k", "terms", "_hash")

    def __init__(self, terms: Mapping = None, xvars: Sequence[str] = ("X1",),
                 yvars: Sequence[str] = ("Y",)):
        self.xvars = tuple(xvars)
        self.yvars = tuple(yvars)
        d = len(self.xvars)
        k = 1
        clean = {}
        for (xe, ye), c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            xe = tuple(Fraction(e) for e in xe)
            ye = tuple(int(e) for e in ye)
            if len(xe) != d or len(ye) != len(self.yvars):
                raise ValueError("exponent length does not match the variables")
            if any(e < 0 for e in ye):
                raise ValueError("negative exponent of an integer variable")
            for e in xe:
                k = lcm(k, e.denominator)
            key = (xe, ye)
            clean[key] = clean.get(key, 0) + c
        self.k = k
        self.terms = {tuple(int(e * k) for e in xe) + ye: c
                      for (xe, ye), c in clean.items() if c}
        self._hash = None

    # -- raw construction -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, k: int, xvars: tuple, yvars: tuple) -> "SparsePoly":
        """Build from scaled integer keys, normalizing ``k`` to be minimal."""
        p = object.__new__(cls)
        p.xvars = xvars
        p.yvars = yvars
        d = len(xvars)
        g = k
        if k > 1:
            for key in terms:
                for e in key[:d]:
                    g = gcd(g, e)
                    if g == 1:
                        break
                if g == 1:
                    break
        if g > 1:
            terms = {tuple(e // g for e in key[:d]) + key[d:]: c for key, c in terms.items()}
            k //= g
        p.k = k
        p.terms = {key: c for key, c in terms.items() if c}
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, xvars=("X1",), yvars=("Y",)) -> "SparsePoly":
        d, m = len(xvars), len(yvars)
        return cls._raw({(0,) * (d + m): Fraction(c)} if c else {}, 1, tuple(xvars), tuple(yvars))

    @classmethod
    def var(cls, name: str, xvars=("X1",), yvars=("Y",)) -> "SparsePoly":
        xvars, yvars = tuple(xvars), tuple(yvars)
        names = xvars + yvars
        key = tuple(int(n == name) for n in names)
        if name not in names:
            raise ValueError(f"unknown variable {name}")
        return cls._raw({key: Fraction(1)}, 1, xvars, yvars)

    @classmethod
    def monomial(cls, xexp, yexp=(), coeff=1, xvars=("X1",), yvars=("Y",)) -> "SparsePoly":
        yexp = tuple(yexp) or (0,) * len(yvars)
        return cls({(tuple(xexp), yexp): coeff}, xvars, yvars)

    # -- basic properties -------------------------------------------------
    @property
    def d(self) -> int:
        return len(self.xvars)

    @property
    def main(self) -> str:
        return self.yvars[-1]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Iterate ``((x_exponents as Fractions), (y_exponents)), coefficient``."""
        d, k = self.d, self.k
        for key, c in self.terms.items():
            yield (tuple(Fraction(e, k) for e in key[:d]), key[d:]), c

    def is_laurent(self) -> bool:
        d = self.d
        return any(e < 0 for key in self.terms for e in key[:d])

    def _yindex(self, var):
        if var is None:
            return len(self.yvars) - 1
        try:
            return self.yvars.index(var)
        except ValueError:
            return None

    def degree(self, var: str | None = None) -> int:
        """Degree in an integer variable (``-1`` for the zero polynomial)."""
        i = self._yindex(var)
        if not self.terms:
            return -1
        if i is None:
            return 0
        d = self.d
        return max(key[d + i] for key in self.terms)

    def total_degree(self) -> Fraction:
        d, k = self.d, self.k
        return max(Fraction(sum(key[:d]), k) + sum(key[d:]) for key in self.terms)

    # -- embedding and equality -------------------------------------------
    def with_yvars(self, yvars: Sequence[str]) -> "SparsePoly":
        """Re-express over a larger tuple of integer variables."""
        yvars = tuple(yvars)
        if yvars == self.yvars:
            return self
        d = self.d
        pos = []
        for name in self.yvars:
            if name in yvars:
                pos.append(yvars.index(name))
            else:
                pos.append(None)
        terms = {}
        for key, c in self.terms.items():
            new = [0] * len(yvars)
            for j, p in enumerate(pos):
                e = key[d + j]
                if p is None:
                    if e:
                        raise ValueError(f"variable {self.yvars[j]} would be dropped")
                    continue
                new[p] = e
            terms[key[:d] + tuple(new)] = c
        return SparsePoly._raw(terms, self.k, self.xvars, yvars)

    def with_k(self, k: int) -> dict:
        """Terms rescaled to denominator ``k`` (a multiple of ``self.k``)."""
        if k % self.k:
            raise ValueError("new denominator must be a multiple of the old one")
        f = k // self.k
        d = self.d
        if f == 1:
            return dict(self.terms)
        return {tuple(e * f for e in key[:d]) + key[d:]: c for key, c in self.terms.items()}

    def _align(self, other: "SparsePoly"):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(other, self.xvars, self.yvars)
        if other.xvars != self.xvars:
            raise ValueError("polynomials over different monomial variables")
        yvars = self.yvars
        if other.yvars != yvars:
            merged = list(yvars)
            for n in other.yvars:
                if n not in merged:
                    merged.append(n)
            yvars = tuple(_canonical_order(merged))
        a = self.with_yvars(yvars)
        b = other.with_yvars(yvars)
        k = lcm(a.k, b.k)
        return a.with_k(k), b.with_k(k), k, yvars

    def _canon(self):
        used = [j for j in range(len(self.yvars))
                if any(key[self.d + j] for key in self.terms)]
        names = tuple(self.yvars[j] for j in used)
        order = sorted(range(len(used)), key=lambda t: names[t])
        d = self.d
        terms = frozenset(
            (key[:d] + tuple(key[d + used[t]] for t in order), c) for key, c in self.terms.items())
        return (self.xvars, tuple(names[t] for t in order), self.k, terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.xvars, self.yvars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._canon() == other._canon()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canon())
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b, k, yv = self._align(other)
        for key, c in b.items():
            a[key] = a.get(key, 0) + c
        return SparsePoly._raw(a, k, self.xvars, yv)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({key: -c for key, c in self.terms.items()}, self.k,
                               self.xvars, self.yvars)

    def __sub__(self, other):
        a, b, k, yv = self._align(other)
        for key, c in b.items():
            a[key] = a.get(key, 0) - c
        return SparsePoly._raw(a, k, self.xvars, yv)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b, k, yv = self._align(other)
        out: dict = {}
        get = out.get
        if len(a) > len(b):
            a, b = b, a
        bi = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bi:
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = get(key, 0) + ca * cb
        return SparsePoly._raw(out, k, self.xvars, yv)

    __rmul__ = __mul__

    def scale(self, c) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly._raw({key: v * c for key, v in self.terms.items()} if c else {},
                               self.k, self.xvars, self.yvars)

    def __truediv__(self, c):
        if isinstance(c, SparsePoly):
            raise TypeError("use exact_div for polynomial division")
        return self.scale(1 / Fraction(c))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(1, self.xvars, self.yvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure in an integer variable --------------------------------
    def coeff_list(self, var: str | None = None) -> list["SparsePoly"]:
        """Coefficients ``[a_0, ..., a_n]`` in ``var``; they no longer involve ``var``."""
        i = self._yindex(var)
        if i is None:
            return [self]
        d = self.d
        yv = self.yvars[:i] + self.yvars[i + 1:]
        buckets: dict[int, dict] = {}
        for key, c in self.terms.items():
            e = key[d + i]
            buckets.setdefault(e, {})[key[:d + i] + key[d + i + 1:]] = c
        n = max(buckets) if buckets else -1
        return [SparsePoly._raw(buckets.get(e, {}), self.k, self.xvars, yv) for e in range(n + 1)]

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence["SparsePoly"], var: str, xvars, yvars
                        ) -> "SparsePoly":
        """Inverse of :meth:`coeff_list`; ``yvars`` must contain ``var``."""
        yvars = tuple(yvars)
        i = yvars.index(var)
        rest = yvars[:i] + yvars[i + 1:]
        k = 1
        for c in coeffs:
            k = lcm(k, c.k)
        d = len(xvars)
        terms = {}
        for e, c in enumerate(coeffs):
            c = c.with_yvars(rest)
            for key, v in c.with_k(k).items():
                terms[key[:d + i] + (e,) + key[d + i:]] = v
        return cls._raw(terms, k, tuple(xvars), yvars)

    def leading_coeff(self, var: str | None = None) -> "SparsePoly":
        return self.coeff_list(var)[-1] if self.terms else self.constant(0, self.xvars)

    def is_monic(self, var: str | None = None) -> bool:
        lc = self.leading_coeff(var)
        return lc.is_constant() and lc.constant_value() == 1

    def is_constant(self) -> bool:
        return all(not any(key) for key in self.terms)

    def constant_value(self) -> Fraction:
        zero = (0,) * (self.d + len(self.yvars))
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(zero, Fraction(0))

    def derivative(self, var: str | None = None) -> "SparsePoly":
        i = self._yindex(var)
        if i is None:
            raise ValueError("derivative only in an integer variable")
        d = self.d
        out = {}
        for key, c in self.terms.items():
            e = key[d + i]
            if e:
                nk = list(key)
                nk[d + i] = e - 1
                out[tuple(nk)] = c * e
        return SparsePoly._raw(out, self.k, self.xvars, self.yvars)

    def drop_var(self, var: str) -> "SparsePoly":
        """Remove an integer variable that does not occur."""
        return self.with_yvars(tuple(v for v in self.yvars if v != var))

    def substitute_zero(self, var: str) -> "SparsePoly":
        """Set an integer variable to zero."""
        return self.coeff_list(var)[0]

    # -- X-exponent manipulations ----------------------------------------
    def x_exponents(self) -> list[tuple]:
        d, k = self.d, self.k
        return [tuple(Fraction(e, k) for e in key[:d]) for key in self.terms]

    def map_x(self, fn) -> "SparsePoly":
        """Apply ``fn`` (rational tuple -> rational tuple) to every X exponent."""
        terms = {}
        for (xe, ye), c in self.items():
            key = (tuple(fn(xe)), ye)
            terms[key] = terms.get(key, 0) + c
        return SparsePoly(terms, self.xvars, self.yvars)

    def map_x_y(self, fn) -> "SparsePoly":
        """Replace each X exponent by ``fn(x_exponents, y_exponents)``."""
        terms = {}
        for (xe, ye), c in self.items():
            key = (tuple(fn(xe, ye)), ye)
            terms[key] = terms.get(key, 0) + c
        return SparsePoly(terms, self.xvars, self.yvars)

    def shift_x(self, delta: Sequence) -> "SparsePoly":
        """Multiply by the monomial ``X^delta``."""
        delta = tuple(Fraction(e) for e in delta)
        return self.map_x(lambda e: tuple(a + b for a, b in zip(e, delta)))

    def min_x_exponent(self) -> tuple:
        """Componentwise minimum of the X exponents over the support."""
        exps = self.x_exponents()
        return tuple(min(col) for col in zip(*exps))

    def support_points(self, var: str | None = None) -> list[tuple]:
        """Points ``(x_exponents, deg_var)``; other integer variables must be absent."""
        i = self._yindex(var)
        d, k = self.d, self.k
        pts = []
        for key in self.terms:
            for j in range(len(self.yvars)):
                if j != i and key[d + j]:
                    raise ValueError(f"variable {self.yvars[j]} occurs")
            x = tuple(Fraction(e, k) for e in key[:d])
            pts.append(x + ((Fraction(key[d + i]),) if i is not None else ()))
        return pts

    def support_with_coeffs(self, var: str | None = None) -> list[tuple]:
        return list(zip(self.support_points(var), self.terms.values()))

    def denominator_lcm(self) -> int:
        L = 1
        for c in self.terms.values():
            L = lcm(L, c.denominator)
        return L

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"SparsePoly({format_poly(self)!r})"


def _canonical_order(names):
    # keep X-independent variables in a fixed order: T before Y, others sorted
    rank = {"T": 0, "Y": 1}
    return sorted(names, key=lambda n: (rank.get(n, 2), n))


def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return "(" + fmt_frac(e) + ")"


def format_poly(p: SparsePoly) -> str:
    """Render in the text grammar understood by the parser."""
    if not p.terms:
        return "0"
    names = p.xvars + p.yvars
    pieces = []

    def sort_key(item):
        (xe, ye), c = item
        return (tuple(-e for e in reversed(ye)), tuple(xe))

    for (xe, ye), c in sorted(p.items(), key=sort_key):
        exps = list(xe) + [Fraction(e) for e in ye]
        factors = []
        for name, e in zip(names, exps):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{_fmt_exp(e)}")
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if not factors:
            body = fmt_frac(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = fmt_frac(mag) + "*" + "*".join(factors)
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def monomial_unit_split(p: SparsePoly):
    """Split ``p = X^rho * eps``; return ``(rho, eps, eps(0))``.

    ``p`` must not involve integer variables with positive degree.  ``eps(0)``
    is zero when ``p`` is not a monomial times a unit.
    """
    if not p.terms:
        raise ValueError("zero polynomial")
    rho = p.min_x_exponent()
    eps = p.shift_x(tuple(-e for e in rho))
    zero = (0,) * (eps.d + len(eps.yvars))
    return rho, eps, eps.terms.get(zero, Fraction(0))
