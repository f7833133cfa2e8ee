"""Pure-Python polynomial kernels over a small finite field.

Field elements are integers ``0 <= c < q``; the field object ``F`` supplies
flat ``q*q`` tables ``add``/``sub``/``mul`` plus ``q``-length ``neg``/``inv``.

Sparse polynomials are dicts ``{exponent: coefficient}`` with nonzero
coefficients only.  Dense polynomials are coefficient lists, lowest degree
first, without trailing zeros (``[]`` is zero).

The compiled module ``_kernels`` implements the same functions with the
same signatures; ``tmodpure.kernels`` picks one at import time.
"""

IMPLEMENTATION = "python"


def sp_add(a, b, F):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    add = F.add
    q = F.q
    for e, c in b.items():
        d = out.get(e)
        if d is None:
            out[e] = c
        else:
            s = add[d * q + c]
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def sp_sub(a, b, F):
    out = dict(a)
    sub = F.sub
    neg = F.neg
    q = F.q
    for e, c in b.items():
        d = out.get(e)
        if d is None:
            out[e] = neg[c]
        else:
            s = sub[d * q + c]
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def sp_scale(a, c, F):
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    mul = F.mul
    row = c * F.q
    return {e: mul[row + x] for e, x in a.items()}


def sp_mul(a, b, F):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    add = F.add
    mul = F.mul
    q = F.q
    aitems = list(a.items())
    for eb, cb in b.items():
        row = cb * q
        for ea, ca in aitems:
            e = ea + eb
            p = mul[row + ca]
            d = out.get(e)
            if d is None:
                out[e] = p
            else:
                out[e] = add[d * q + p]
    return {e: c for e, c in out.items() if c}


def sp_divmod(a, b, F):
    """Long division of sparse ``a`` by sparse nonzero ``b``."""
    db = max(b)
    lead_inv = F.inv[b[db]]
    mul = F.mul
    sub = F.sub
    q = F.q
    bterms = [(e - db, c) for e, c in b.items() if e != db]
    rem = dict(a)
    quo = {}
    while rem:
        top = max(rem)
        if top < db:
            break
        c = mul[rem.pop(top) * q + lead_inv]
        shift = top - db
        quo[shift] = c
        row = c * q
        for e, x in bterms:
            k = top + e
            t = mul[row + x]
            d = rem.get(k)
            if d is None:
                rem[k] = F.neg[t]
            else:
                s = sub[d * q + t]
                if s:
                    rem[k] = s
                else:
                    del rem[k]
    return quo, rem


def dn_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def dn_mul(a, b, F):
    if not a or not b:
        return []
    add = F.add
    mul = F.mul
    q = F.q
    out = [0] * (len(a) + len(b) - 1)
    for j, cb in enumerate(b):
        if cb == 0:
            continue
        row = cb * q
        for i, ca in enumerate(a):
            if ca:
                k = i + j
                out[k] = add[out[k] * q + mul[row + ca]]
    return dn_trim(out)


def dn_divmod(a, b, F):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    n = len(b) - 1
    if len(r) - 1 < n:
        return [], dn_trim(r)
    mul = F.mul
    sub = F.sub
    q = F.q
    lead_inv = F.inv[b[-1]]
    quo = [0] * (len(r) - n)
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul[c * q + lead_inv]
        s = i - n
        quo[s] = c
        row = c * q
        for j in range(n + 1):
            bj = b[j]
            if bj:
                r[s + j] = sub[r[s + j] * q + mul[row + bj]]
    return dn_trim(quo), dn_trim(r[:n])


def dn_rem(a, b, F):
    r = list(a)
    n = len(b) - 1
    if len(r) - 1 < n:
        return dn_trim(r)
    mul = F.mul
    sub = F.sub
    q = F.q
    lead_inv = F.inv[b[-1]]
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c == 0:
            continue
        row = mul[c * q + lead_inv] * q
        s = i - n
        for j in range(n + 1):
            bj = b[j]
            if bj:
                r[s + j] = sub[r[s + j] * q + mul[row + bj]]
    return dn_trim(r[:n])


def dn_gcd(a, b, F):
    """Monic gcd of dense polynomials."""
    a = dn_trim(list(a))
    b = dn_trim(list(b))
    while b:
        a, b = b, dn_rem(a, b, F)
    if not a:
        return []
    inv = F.inv[a[-1]]
    if inv == 1:
        return a
    mul = F.mul
    row = inv * F.q
    return [mul[row + c] for c in a]
