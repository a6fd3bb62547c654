"""Rational vectors of Q^d, extended by +infinity, under the coordinatewise order.

A finite vector is a plain ``tuple`` of :class:`fractions.Fraction`.  The value
``+inf`` is the singleton :data:`INF`, greater than every finite vector.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, ParseError


class _Infinity:
    """The distinguished value +inf."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("qopolar-inf")

    def __eq__(self, other):
        return other is self

    # Ordering against anything finite; used by min()/max() on mixed lists.
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

QVec = tuple
QVal = Union[tuple, _Infinity]


class Order(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCOMPARABLE = "INCOMPARABLE"


def qvec(*coords) -> QVec:
    """Build a finite vector; accepts ints, Fractions, or strings like ``"3/2"``."""
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return tuple(Fraction(c) for c in coords)


def as_qval(x) -> QVal:
    if x is INF:
        return INF
    if isinstance(x, str):
        return parse_qvec(x)
    if isinstance(x, (int, Fraction)):
        return (Fraction(x),)
    return tuple(Fraction(c) for c in x)


def is_inf(u) -> bool:
    return u is INF


def dim(u) -> int:
    if u is INF:
        raise DimensionMismatch("+inf has no intrinsic dimension")
    return len(u)


def zero(d: int) -> QVec:
    return (Fraction(0),) * d


def _check(u, v):
    if u is not INF and v is not INF and len(u) != len(v):
        raise DimensionMismatch(f"dimension mismatch: {len(u)} vs {len(v)}")


def cmp_partial(u: QVal, v: QVal) -> Order:
    """Compare under the coordinatewise order.

    Examples
    --------
    >>> cmp_partial(qvec(0, 0), qvec(3, 2))
    <Order.LT: 'LT'>
    >>> cmp_partial(qvec(1, 2), qvec(2, 1))
    <Order.INCOMPARABLE: 'INCOMPARABLE'>
    """
    _check(u, v)
    if u is INF:
        return Order.EQ if v is INF else Order.GT
    if v is INF:
        return Order.LT
    le = all(a <= b for a, b in zip(u, v))
    ge = all(a >= b for a, b in zip(u, v))
    if le and ge:
        return Order.EQ
    if le:
        return Order.LT
    if ge:
        return Order.GT
    return Order.INCOMPARABLE


def leq(u: QVal, v: QVal) -> bool:
    return cmp_partial(u, v) in (Order.LT, Order.EQ)


def lt(u: QVal, v: QVal) -> bool:
    return cmp_partial(u, v) is Order.LT


def comparable(u: QVal, v: QVal) -> bool:
    return cmp_partial(u, v) is not Order.INCOMPARABLE


def is_positive(u: QVal) -> bool:
    """True for +inf or a finite vector with every coordinate > 0."""
    return u is INF or all(c > 0 for c in u)


def is_nonnegative(u: QVal) -> bool:
    return u is INF or all(c >= 0 for c in u)


def vadd(u: QVal, v: QVal) -> QVal:
    _check(u, v)
    if u is INF or v is INF:
        return INF
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: QVec, v: QVec) -> QVec:
    _check(u, v)
    if u is INF or v is INF:
        raise ValueError("cannot subtract with +inf")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: QVal) -> QVal:
    if u is INF:
        if c <= 0:
            raise ValueError("+inf scaled by a non-positive number")
        return INF
    c = Fraction(c)
    return tuple(c * a for a in u)


def vsum(vectors: Iterable[QVal], d: int) -> QVal:
    acc = zero(d)
    for v in vectors:
        acc = vadd(acc, v)
    return acc


def dot(w: Sequence, u: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(w, u)), Fraction(0))


def vmin(values: Iterable[QVal]) -> QVal:
    """Minimum of a totally ordered family; raises if two are incomparable."""
    best = None
    for v in values:
        if best is None:
            best = v
            continue
        o = cmp_partial(v, best)
        if o is Order.INCOMPARABLE:
            raise ValueError(f"incomparable values {fmt_qval(v)} and {fmt_qval(best)}")
        if o is Order.LT:
            best = v
    if best is None:
        raise ValueError("minimum of an empty family")
    return best


def vmax(values: Iterable[QVal]) -> QVal:
    best = None
    for v in values:
        if best is None:
            best = v
            continue
        o = cmp_partial(v, best)
        if o is Order.INCOMPARABLE:
            raise ValueError(f"incomparable values {fmt_qval(v)} and {fmt_qval(best)}")
        if o is Order.GT:
            best = v
    if best is None:
        raise ValueError("maximum of an empty family")
    return best


def sort_chain(values: Iterable[QVal]) -> list:
    """Sort a totally ordered family increasingly (raises on incomparable pairs)."""
    out = list(values)
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            if cmp_partial(out[a], out[b]) is Order.INCOMPARABLE:
                raise ValueError(
                    f"incomparable values {fmt_qval(out[a])} and {fmt_qval(out[b])}")
    # on a chain the coordinatewise order agrees with lexicographic order
    return sorted(out, key=lex_key)


def lex_key(u: QVal):
    """Total order key: lexicographic on finite vectors, +inf last."""
    if u is INF:
        return (1, ())
    return (0, tuple(u))


def denominator(u: QVal) -> int:
    if u is INF:
        return 1
    k = 1
    for c in u:
        k = lcm(k, c.denominator)
    return k


def common_denominator(values: Iterable[QVal]) -> int:
    k = 1
    for v in values:
        k = lcm(k, denominator(v))
    return k


def is_integral(u: QVec) -> bool:
    return all(c.denominator == 1 for c in u)


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for c in v:
        g = gcd(g, int(c))
    if g == 0:
        return tuple(int(c) for c in v)
    return tuple(int(c) // g for c in v)


def fmt_frac(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt_qval(u: QVal) -> str:
    """Format as ``(3/2,1)`` or ``inf``."""
    if u is INF:
        return "inf"
    return "(" + ",".join(fmt_frac(c) for c in u) + ")"


_NUM = r"[+-]?\d+(?:/\d+)?"
_QVEC_RE = re.compile(r"^\(\s*(" + _NUM + r")(\s*,\s*" + _NUM + r")*\s*\)$")


def parse_qvec(text: str) -> QVal:
    """Parse ``(3/2,1)``, ``3/2`` (d=1) or ``inf``."""
    s = text.strip()
    if s in ("inf", "+inf", "INF", "∞", "+∞"):
        return INF
    if re.fullmatch(_NUM, s):
        return (Fraction(s),)
    if not _QVEC_RE.match(s):
        raise ParseError(f"malformed vector {text!r}")
    return tuple(Fraction(p.strip()) for p in s[1:-1].split(","))
