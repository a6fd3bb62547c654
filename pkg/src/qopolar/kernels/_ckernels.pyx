# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled packed-exponent polynomial kernels.

Same interface and results as ``_pykernels``.  Keys are handled as C
``long long`` when they fit in 62 bits; coefficients use native 64-bit
arithmetic when a bound proves no overflow, Python integers otherwise.
Inputs that do not fit are delegated to the reference implementation.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from cython.operator cimport dereference as deref

from . import _pykernels as _py

BACKEND = "compiled"

cdef object KEY_LIMIT = 1 << 62
cdef object COEF_LIMIT = 1 << 62


cdef object _maxabs(dict a):
    cdef object m = 0
    cdef object v
    for v in a.values():
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m


cdef inline bint _keys_fit(dict a, dict b):
    return max(a) + max(b) < KEY_LIMIT


cdef void _acc_small(dict a, dict b, long long sign, unordered_map[long long, long long]& acc):
    cdef vector[long long] kb, cb
    cdef long long ka, ca, k
    cdef size_t j, nb
    for key, val in b.items():
        kb.push_back(key)
        cb.push_back(val)
    nb = kb.size()
    for key, val in a.items():
        ka = key
        ca = val * sign
        for j in range(nb):
            k = ka + kb[j]
            acc[k] += ca * cb[j]


cdef void _acc_big(dict a, dict b, int sign, unordered_map[long long, Py_ssize_t]& idx,
                   list coeffs, vector[long long]& order):
    cdef vector[long long] kb
    cdef list cb = []
    cdef long long ka, k
    cdef size_t j, nb
    cdef Py_ssize_t slot
    cdef object ca, prod
    cdef unordered_map[long long, Py_ssize_t].iterator it
    for key, val in b.items():
        kb.push_back(key)
        cb.append(val)
    nb = kb.size()
    for key, val in a.items():
        ka = key
        ca = val if sign > 0 else -val
        for j in range(nb):
            k = ka + kb[j]
            prod = ca * cb[j]
            it = idx.find(k)
            if it == idx.end():
                idx[k] = len(coeffs)
                coeffs.append(prod)
                order.push_back(k)
            else:
                slot = deref(it).second
                coeffs[slot] = coeffs[slot] + prod


cdef dict _emit_big(list coeffs, vector[long long]& order):
    cdef dict out = {}
    cdef size_t i
    for i in range(order.size()):
        c = coeffs[i]
        if c:
            out[order[i]] = c
    return out


cdef dict _mul_small(dict a, dict b):
    cdef unordered_map[long long, long long] acc
    acc.reserve(len(a) * len(b))
    _acc_small(a, b, 1, acc)
    return _collect(acc)


cdef dict _collect(unordered_map[long long, long long]& acc):
    cdef dict out = {}
    for kv in acc:
        if kv.second != 0:
            out[kv.first] = kv.second
    return out


def poly_mul(dict a, dict b):
    """Product of two packed polynomials."""
    if not a or not b:
        return {}
    if not _keys_fit(a, b):
        return _py.poly_mul(a, b)
    if len(a) > len(b):
        a, b = b, a
    if _maxabs(a) * _maxabs(b) * len(a) < COEF_LIMIT:
        return _mul_small(a, b)
    cdef unordered_map[long long, Py_ssize_t] idx
    cdef vector[long long] order
    cdef list coeffs = []
    _acc_big(a, b, 1, idx, coeffs, order)
    return _emit_big(coeffs, order)


def poly_mul_sub(dict a, dict d, dict b, dict c):
    """``a*d - b*c`` in one accumulation pass."""
    cdef bint left = bool(a) and bool(d)
    cdef bint right = bool(b) and bool(c)
    if not left and not right:
        return {}
    if (left and not _keys_fit(a, d)) or (right and not _keys_fit(b, c)):
        return _py.poly_mul_sub(a, d, b, c)
    if left and len(a) > len(d):
        a, d = d, a
    if right and len(b) > len(c):
        b, c = c, b
    bound = 0
    if left:
        bound += _maxabs(a) * _maxabs(d) * len(a)
    if right:
        bound += _maxabs(b) * _maxabs(c) * len(b)
    cdef unordered_map[long long, long long] acc
    cdef unordered_map[long long, Py_ssize_t] idx
    cdef vector[long long] order
    cdef list coeffs
    if bound < COEF_LIMIT:
        if left:
            _acc_small(a, d, 1, acc)
        if right:
            _acc_small(b, c, -1, acc)
        return _collect(acc)
    coeffs = []
    if left:
        _acc_big(a, d, 1, idx, coeffs, order)
    if right:
        _acc_big(b, c, -1, idx, coeffs, order)
    return _emit_big(coeffs, order)


def poly_divexact(dict a, dict b, guard):
    """Exact quotient ``a / b``; raises ``ArithmeticError`` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    if len(b) == 1 or max(a) >= KEY_LIMIT or guard >= KEY_LIMIT:
        return _py.poly_divexact(a, b, guard)
    cdef long long g = guard
    cdef long long kb = max(b)
    cdef object cb = b[kb]
    cdef vector[long long] offs
    cdef list offc = []
    for key, val in b.items():
        if key != kb:
            offs.push_back(<long long>key - kb)
            offc.append(val)
    cdef unordered_map[long long, Py_ssize_t] idx
    cdef list vals = []
    cdef priority_queue[long long] heap
    cdef long long k, key2
    cdef Py_ssize_t slot
    cdef size_t j, no = offs.size()
    cdef unordered_map[long long, Py_ssize_t].iterator it
    for key, val in a.items():
        k = key
        idx[k] = len(vals)
        vals.append(val)
        heap.push(k)
    cdef dict q = {}
    while not heap.empty():
        k = heap.top()
        heap.pop()
        it = idx.find(k)
        if it == idx.end():
            continue
        slot = deref(it).second
        c = vals[slot]
        idx.erase(it)
        if not c:
            continue
        if ((k | g) - kb) & g != g:
            raise ArithmeticError("inexact division")
        qc, r = divmod(c, cb)
        if r:
            raise ArithmeticError("inexact division")
        q[k - kb] = qc
        for j in range(no):
            key2 = k + offs[j]
            it = idx.find(key2)
            if it == idx.end():
                idx[key2] = len(vals)
                vals.append(-qc * offc[j])
                heap.push(key2)
            else:
                slot = deref(it).second
                vals[slot] = vals[slot] - qc * offc[j]
    return q


cdef dict _divexact_any(dict a, dict p, guard):
    if len(p) == 1 and 0 in p:
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
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, i, j
    if n == 0:
        return {0: 1}
    cdef list M = [list(r) for r in rows]
    cdef int sign = 1
    cdef dict prev = {0: 1}
    cdef dict p, num
    cdef list rowk, rowi
    for k in range(n - 1):
        if not M[k][k]:
            cand = [i for i in range(k + 1, n) if M[i][k]]
            if not cand:
                return {}
            piv = min(cand, key=lambda t: len(M[t][k]))
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
        det = {kk: -v for kk, v in det.items()}
    return det
