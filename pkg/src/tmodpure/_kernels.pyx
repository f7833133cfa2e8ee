# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over a small finite field.

Same functions and semantics as ``_kernels_py``; the field tables are read
through typed memoryviews and dense arithmetic runs on C int buffers.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

IMPLEMENTATION = "cython"


def sp_add(dict a, dict b, F):
    cdef const int[:] add = F.add
    cdef int q = F.q
    cdef int c, d, s
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for e, cv in b.items():
        c = cv
        dv = out.get(e)
        if dv is None:
            out[e] = c
        else:
            d = dv
            s = add[d * q + c]
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def sp_sub(dict a, dict b, F):
    cdef const int[:] sub = F.sub
    cdef const int[:] neg = F.neg
    cdef int q = F.q
    cdef int c, d, s
    cdef dict out = dict(a)
    for e, cv in b.items():
        c = cv
        dv = out.get(e)
        if dv is None:
            out[e] = neg[c]
        else:
            d = dv
            s = sub[d * q + c]
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def sp_scale(dict a, int c, F):
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    cdef const int[:] mul = F.mul
    cdef int row = c * F.q
    cdef int x
    cdef dict out = {}
    for e, xv in a.items():
        x = xv
        out[e] = mul[row + x]
    return out


def sp_mul(dict a, dict b, F):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef const int[:] add = F.add
    cdef const int[:] mul = F.mul
    cdef int q = F.q
    cdef Py_ssize_t na = len(a), i
    cdef list aexp = list(a.keys())
    cdef int *acoef = <int *> PyMem_Malloc(na * sizeof(int))
    cdef int cb, p, d, row
    cdef dict out = {}
    if acoef == NULL:
        raise MemoryError()
    try:
        i = 0
        for v in a.values():
            acoef[i] = v
            i += 1
        for eb, cbv in b.items():
            cb = cbv
            row = cb * q
            for i in range(na):
                e = aexp[i] + eb
                p = mul[row + acoef[i]]
                dv = out.get(e)
                if dv is None:
                    out[e] = p
                else:
                    d = dv
                    out[e] = add[d * q + p]
    finally:
        PyMem_Free(acoef)
    return {e: c for e, c in out.items() if c}


def sp_divmod(dict a, dict b, F):
    """Long division of sparse ``a`` by sparse nonzero ``b``."""
    cdef const int[:] mul = F.mul
    cdef const int[:] sub = F.sub
    cdef const int[:] neg = F.neg
    cdef int q = F.q
    db = max(b)
    cdef int lead_inv = F.inv[b[db]]
    cdef int c, x, t, d, s, row
    cdef list bterms = [(e - db, cv) for e, cv in b.items() if e != db]
    cdef dict rem = dict(a)
    cdef dict quo = {}
    while rem:
        top = max(rem)
        if top < db:
            break
        c = rem.pop(top)
        c = mul[c * q + lead_inv]
        quo[top - db] = c
        row = c * q
        for e, xv in bterms:
            x = xv
            k = top + e
            t = mul[row + x]
            dv = rem.get(k)
            if dv is None:
                rem[k] = neg[t]
            else:
                d = dv
                s = sub[d * q + t]
                if s:
                    rem[k] = s
                else:
                    del rem[k]
    return quo, rem


cdef list _trim(list a):
    while a and a[len(a) - 1] == 0:
        a.pop()
    return a


cdef int *_to_c(list a, Py_ssize_t n) except NULL:
    cdef int *buf = <int *> PyMem_Malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = a[i] if i < len(a) else 0
    return buf


cdef list _from_c(int *buf, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = [buf[i] for i in range(n)]
    return _trim(out)


def dn_trim(list a):
    return _trim(a)


def dn_mul(list a, list b, F):
    if not a or not b:
        return []
    cdef const int[:] add = F.add
    cdef const int[:] mul = F.mul
    cdef int q = F.q
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, n = na + nb - 1
    cdef int *ab = _to_c(a, na)
    cdef int *bb = _to_c(b, nb)
    cdef int *out = _to_c([], n)
    cdef int row, ca
    try:
        for i in range(n):
            out[i] = 0
        for j in range(nb):
            if bb[j] == 0:
                continue
            row = bb[j] * q
            for i in range(na):
                ca = ab[i]
                if ca:
                    out[i + j] = add[out[i + j] * q + mul[row + ca]]
        return _from_c(out, n)
    finally:
        PyMem_Free(ab)
        PyMem_Free(bb)
        PyMem_Free(out)


cdef void _rem_inplace(int *r, Py_ssize_t nr, int *b, Py_ssize_t nb, int *quo,
                       const int[:] mul, const int[:] sub, int q, int lead_inv) noexcept:
    cdef Py_ssize_t n = nb - 1, i, j, s
    cdef int c, row
    for i in range(nr - 1, n - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul[c * q + lead_inv]
        s = i - n
        if quo != NULL:
            quo[s] = c
        row = c * q
        for j in range(nb):
            if b[j]:
                r[s + j] = sub[r[s + j] * q + mul[row + b[j]]]


def dn_divmod(list a, list b, F):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    cdef Py_ssize_t na = len(a), nb = len(b), nq
    if na < nb:
        return [], _trim(list(a))
    cdef const int[:] mul = F.mul
    cdef const int[:] sub = F.sub
    cdef int q = F.q
    cdef int lead_inv = F.inv[b[nb - 1]]
    nq = na - nb + 1
    cdef int *r = _to_c(a, na)
    cdef int *bb = _to_c(b, nb)
    cdef int *quo = _to_c([], nq)
    try:
        _rem_inplace(r, na, bb, nb, quo, mul, sub, q, lead_inv)
        return _from_c(quo, nq), _from_c(r, nb - 1)
    finally:
        PyMem_Free(r)
        PyMem_Free(bb)
        PyMem_Free(quo)


def dn_rem(list a, list b, F):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na < nb:
        return _trim(list(a))
    cdef const int[:] mul = F.mul
    cdef const int[:] sub = F.sub
    cdef int q = F.q
    cdef int lead_inv = F.inv[b[nb - 1]]
    cdef int *r = _to_c(a, na)
    cdef int *bb = _to_c(b, nb)
    try:
        _rem_inplace(r, na, bb, nb, NULL, mul, sub, q, lead_inv)
        return _from_c(r, nb - 1)
    finally:
        PyMem_Free(r)
        PyMem_Free(bb)


def dn_gcd(list a, list b, F):
    """Monic gcd of dense polynomials (Euclid on C buffers)."""
    cdef const int[:] mul = F.mul
    cdef const int[:] sub = F.sub
    cdef const int[:] inv = F.inv
    cdef int q = F.q
    a = _trim(list(a))
    b = _trim(list(b))
    cdef Py_ssize_t na = len(a), nb = len(b), i, m
    cdef int *x = _to_c(a, na)
    cdef int *y = _to_c(b, nb)
    cdef int *tmp
    cdef int c, row
    try:
        while nb > 0:
            if na >= nb:
                _rem_inplace(x, na, y, nb, NULL, mul, sub, q, inv[y[nb - 1]])
                na = nb - 1
                while na > 0 and x[na - 1] == 0:
                    na -= 1
            # swap roles: (x, y) <- (y, x mod y)
            tmp = x
            x = y
            y = tmp
            m = na
            na = nb
            nb = m
        if na == 0:
            return []
        c = inv[x[na - 1]]
        row = c * q
        return [mul[row + x[i]] for i in range(na)]
    finally:
        PyMem_Free(x)
        PyMem_Free(y)
