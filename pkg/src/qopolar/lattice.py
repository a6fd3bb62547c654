"""Integer linear algebra: Hermite normal form, ranks, and lattices in Q^d."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .qvec import QVec, denominator


def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by integer ``rows``.

    Returns the nonzero rows, in echelon form with positive pivots and the
    entries above each pivot reduced modulo the pivot.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    r0 = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r0, len(A)) if A[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r0], A[piv] = A[piv], A[r0]
            p = A[r0][col]
            clean = True
            for i in range(r0 + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if r0 < len(A) and A[r0][col] != 0:
            if A[r0][col] < 0:
                A[r0] = [-a for a in A[r0]]
            p = A[r0][col]
            for i in range(r0):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
            r0 += 1
            if r0 == len(A):
                break
    return [row for row in A[:r0] if any(row)]


def int_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over Q of an integer (or rational) matrix."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rank = 0
    ncols = len(M[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, len(M)):
            if M[i][col]:
                f = M[i][col] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant of a small square rational matrix."""
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return sign * result


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square nonsingular system ``A x = b`` exactly."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    cols = [solve(A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Lattice:
    """A full-rank lattice in Q^d, stored as ``(1/k) * L`` with ``L`` an integer HNF."""

    k: int
    basis: tuple  # integer HNF rows of k * lattice

    @classmethod
    def standard(cls, d: int) -> "Lattice":
        return cls(1, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def from_generators(cls, gens: Iterable[QVec]) -> "Lattice":
        gens = [tuple(Fraction(c) for c in g) for g in gens]
        k = 1
        for g in gens:
            k = lcm(k, denominator(g))
        rows = hnf([[int(c * k) for c in g] for g in gens])
        d = len(gens[0])
        if len(rows) != d:
            raise ValueError("generators do not span a full-rank lattice")
        return cls._reduced(k, rows)

    @classmethod
    def _reduced(cls, k, rows):
        # keep k minimal so that equal lattices compare equal
        from math import gcd

        g = k
        for r in rows:
            for c in r:
                g = gcd(g, c)
        if g > 1:
            k //= g
            rows = [[c // g for c in r] for r in rows]
        return cls(k, tuple(tuple(r) for r in hnf(rows)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generators(self) -> list[QVec]:
        return [tuple(Fraction(c, self.k) for c in r) for r in self.basis]

    def covolume(self) -> Fraction:
        return abs(det(self.basis)) / Fraction(self.k) ** self.dim

    def contains(self, v: QVec) -> bool:
        """Membership test for a finite vector."""
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        x = solve([list(col) for col in zip(*self.basis)], [c * self.k for c in v])
        return all(c.denominator == 1 for c in x)

    def extend(self, v: QVec) -> "Lattice":
        """The lattice ``self + Z v``."""
        return Lattice.from_generators(self.generators() + [tuple(v)])

    def index_in(self, sup: "Lattice") -> int:
        """Index ``[sup : self]`` for a sublattice ``self`` of ``sup``."""
        r = self.covolume() / sup.covolume()
        if r.denominator != 1:
            raise ValueError("not a sublattice")
        return int(r)


def index_of_extension(lattice: Lattice, v: QVec) -> int:
    """Index of ``lattice`` inside ``lattice + Z v``."""
    return lattice.index_in(lattice.extend(v))
