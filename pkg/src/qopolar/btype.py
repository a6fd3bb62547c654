"""The type of a bunch decomposition: columns of normalized orders with degrees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeMismatch
from .qvec import QVec, fmt_qval, qvec, vadd, vscale


def _flat(col) -> tuple:
    values, c = col
    return tuple(x for v in values for x in v) + (c,)


@dataclass(frozen=True, eq=False)
class BunchType:
    """Columns ``((q_1, ..., q_s), c)``: one per bunch, ``c`` its degree.

    Column order is kept as given (tree order when produced from a tree);
    equality and hashing ignore it.
    """

    columns: tuple
    s: int
    d: int

    def __init__(self, columns: Iterable, s: int | None = None, d: int | None = None):
        cols = []
        for values, c in columns:
            values = tuple(qvec(v) for v in values)
            if int(c) != c or c <= 0:
                raise ValueError(f"bunch degree {c} is not a positive integer")
            cols.append((values, int(c)))
        if cols:
            s = len(cols[0][0]) if s is None else s
            d = len(cols[0][0][0]) if d is None and s else d
        if s is None or d is None:
            raise ValueError("empty type needs explicit s and d")
        for values, _ in cols:
            if len(values) != s or any(len(v) != d for v in values):
                raise ShapeMismatch("columns of different shapes")
        if len({v for v, _ in cols}) != len(cols):
            raise ValueError("two columns carry the same vector of orders")
        object.__setattr__(self, "columns", tuple(cols))
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    def canonical(self) -> tuple:
        return tuple(sorted(self.columns, key=_flat))

    def __eq__(self, other):
        return (isinstance(other, BunchType) and (self.s, self.d) == (other.s, other.d)
                and self.canonical() == other.canonical())

    def __hash__(self):
        return hash((self.s, self.d, self.canonical()))

    def __len__(self):
        return len(self.columns)

    def rows(self) -> list[list[QVec]]:
        return [[values[r] for values, _ in self.columns] for r in range(self.s)]

    def multiplicities(self) -> list[int]:
        return [c for _, c in self.columns]

    def degree(self) -> int:
        return sum(self.multiplicities())

    def __str__(self):
        lines = [" ".join(fmt_qval(q) for q in row) for row in self.rows()]
        lines.append(" ".join(str(c) for c in self.multiplicities()))
        return "\n".join(lines)


def shift_type(t: BunchType, q: Sequence, factor_degrees: Sequence[int]) -> BunchType:
    """Add ``deg(f_j) * q`` to every entry of row ``j``.

    This is the effect of ``Y -> X^q Y`` on the type of the polar.

    >>> t = BunchType([(((3,),), 1)])
    >>> str(shift_type(t, (-1,), [2]))
    '(1)\\n1'
    """
    if len(factor_degrees) != t.s:
        raise ShapeMismatch(f"{len(factor_degrees)} degrees for {t.s} rows")
    q = qvec(q)
    if len(q) != t.d:
        raise ShapeMismatch("shift of the wrong dimension")
    cols = [(tuple(vadd(v, vscale(n, q)) for v, n in zip(values, factor_degrees)), c)
            for values, c in t.columns]
    return BunchType(cols, t.s, t.d)
