"""Reference implementation of the packed-exponent polynomial kernels.

A polynomial is a ``dict`` mapping a packed exponent key to a nonzero ``int``
coefficient.  Exponent vectors are packed into fields of ``bits`` bits each;
the top bit of every field is a guard bit that must stay clear, so that a
borrow during key subtraction is detectable with ``guard`` (the mask of all
guard bits).  The highest field is the most significant variable, and the
largest key is the lexicographic leading term.
"""

from heapq import heapify, heappop, heappush

BACKEND = "python"


def poly_mul(a, b):
    """Product of two packed polynomials."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bi = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bi:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def poly_mul_sub(a, d, b, c):
    """``a*d - b*c`` in one accumulation pass."""
    out = {}
    get = out.get
    if a and d:
        if len(a) > len(d):
            a, d = d, a
        di = list(d.items())
        for ka, ca in a.items():
            for kd, cd in di:
                k = ka + kd
                out[k] = get(k, 0) + ca * cd
    if b and c:
        if len(b) > len(c):
            b, c = c, b
        ci = list(c.items())
        for kb, cb in b.items():
            for kc, cc in ci:
                k = kb + kc
                out[k] = get(k, 0) - cb * cc
    return {k: v for k, v in out.items() if v}


def poly_divexact(a, b, guard):
    """Exact quotient ``a / b``; raises ``ArithmeticError`` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    if len(b) == 1:
        (kb, cb), = b.items()
        out = {}
        for k, c in a.items():
            if ((k | guard) - kb) & guard != guard:
                raise ArithmeticError("inexact division")
            q, r = divmod(c, cb)
            if r:
                raise ArithmeticError("inexact division")
            out[k - kb] = q
        return out
    kb = max(b)
    cb = b[kb]
    rest = [(k - kb, c) for k, c in b.items() if k != kb]  # offsets may be negative
    rem = dict(a)
    heap = [-k for k in rem]
    heapify(heap)
    q = {}
    while heap:
        k = -heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        if ((k | guard) - kb) & guard != guard:
            raise ArithmeticError("inexact division")
        qc, r = divmod(c, cb)
        if r:
            raise ArithmeticError("inexact division")
        dk = k - kb
        q[dk] = qc
        for off, cc in rest:
            key = k + off
            v = rem.get(key)
            if v is None:
                rem[key] = -qc * cc
                heappush(heap, -key)
            else:
                v -= qc * cc
                if v:
                    rem[key] = v
                else:
                    del rem[key]
    return q


def _divexact_any(a, p, guard):
    if len(p) == 1 and next(iter(p)) == 0:
        c = p[0]
        if c == 1:
            return a
        out = {}
        for k, v in a.items():
            qv, r = divmod(v, c)
            if r:
                raise ArithmeticError("inexact division")
            out[k] = qv
        return out
    return poly_divexact(a, p, guard)


def bareiss_det(rows, guard):
    """Determinant of a square matrix of packed polynomials (fraction-free)."""
    n = len(rows)
    if n == 0:
        return {0: 1}
    M = [list(r) for r in rows]
    sign = 1
    prev = {0: 1}
    for k in range(n - 1):
        if not M[k][k]:
            cand = [i for i in range(k + 1, n) if M[i][k]]
            if not cand:
                return {}
            piv = min(cand, key=lambda i: len(M[i][k]))
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        p = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            lead = rowi[k]
            for j in range(k + 1, n):
                num = poly_mul_sub(rowi[j], p, lead, rowk[j])
                rowi[j] = _divexact_any(num, prev, guard) if num else {}
            rowi[k] = {}
        prev = p
    det = M[n - 1][n - 1]
    if sign < 0:
        det = {k: -v for k, v in det.items()}
    return det
