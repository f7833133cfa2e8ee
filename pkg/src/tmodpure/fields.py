"""Exact arithmetic in F_q and in the perfect closure of F_q(theta).

An element of the perfect closure is stored at a *level* ``m`` as a reduced
fraction ``num(u)/den(u)`` of polynomials over F_q in ``u = theta^(1/q^m)``.
Polynomials are sparse (``{exponent: coefficient}``) because Frobenius
twisting produces exponents like ``q^9`` with only a handful of terms.

Since every coefficient lies in F_q, ``f(u)^q = f(u^q)``: the Frobenius map
lowers the level by one and its inverse raises it by one without touching
the coefficient data.
"""

from __future__ import annotations

import functools
import math
import re
from array import array
from fractions import Fraction

from . import kernels as _k
from .errors import DivisionByZero, FieldError, ParseError

MAX_Q = 256
# Degree bound (after exponent deflation) for the dense gcd used to reduce
# fractions.  Larger fractions are kept unreduced; equality then falls back
# to cross-multiplication.
GCD_DENSE_LIMIT = 2048


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _fp_poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        s = len(a) - len(b)
        for j, bj in enumerate(b):
            a[s + j] = (a[s + j] - c * bj) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible_fp(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2 over F_p."""
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for code in range(p**deg):
            div = []
            c = code
            for _ in range(deg):
                div.append(c % p)
                c //= p
            div.append(1)
            if not _fp_poly_rem(poly, div, p):
                return False
    return True


class FqConfig:
    """The finite field F_q, q = p^k, with lookup tables for its arithmetic.

    Elements are encoded as integers ``0 <= c < q`` whose base-p digits are
    the coefficients (constant first) of a polynomial in the generator ``g``,
    the class of x modulo ``modulus``.  Use :func:`fq` to get cached
    instances; identical configurations are then the same object.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if k == 1:
            if modulus is not None and len(modulus) not in (0, 2):
                raise FieldError("a modulus is only meaningful for k > 1")
            modulus = None
        else:
            if modulus is None:
                raise FieldError(f"F_{p}^{k} needs an explicit degree-{k} modulus")
            modulus = [int(c) % p for c in modulus]
            while modulus and modulus[-1] == 0:
                modulus.pop()
            if len(modulus) != k + 1:
                raise FieldError(f"modulus must have degree {k}")
            inv = pow(modulus[-1], p - 2, p)
            modulus = [c * inv % p for c in modulus]
            if not is_irreducible_fp(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        if self.q > MAX_Q:
            raise FieldError(f"q = {self.q} exceeds the supported bound {MAX_Q}")
        self.modulus = tuple(modulus) if modulus is not None else None
        self._build_tables()

    def _digits(self, c: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(c % self.p)
            c //= self.p
        return out

    def _encode(self, digits) -> int:
        c = 0
        for d in reversed(digits):
            c = c * self.p + d
        return c

    def _poly_mul_mod(self, a: list[int], b: list[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if self.modulus is not None:
            mod = self.modulus
            for i in range(len(prod) - 1, k - 1, -1):
                c = prod[i]
                if c:
                    for j in range(k + 1):
                        prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return prod[:k]

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        digits = [self._digits(c) for c in range(q)]
        add = array("i", [0]) * (q * q)
        sub = array("i", [0]) * (q * q)
        mul = array("i", [0]) * (q * q)
        for a in range(q):
            da = digits[a]
            for b in range(q):
                db = digits[b]
                add[a * q + b] = self._encode([(x + y) % p for x, y in zip(da, db)])
                sub[a * q + b] = self._encode([(x - y) % p for x, y in zip(da, db)])
                if b >= a:
                    m = self._encode(self._poly_mul_mod(da, db))
                    mul[a * q + b] = m
                    mul[b * q + a] = m
        neg = array("i", [sub[c] for c in range(q)])
        inv = array("i", [0]) * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self.add, self.sub, self.mul, self.neg, self.inv = add, sub, mul, neg, inv

    def from_int(self, n: int) -> int:
        return n % self.p

    def generator(self) -> int:
        if self.k == 1:
            raise FieldError("prime fields have no declared generator")
        return self.p

    def pow(self, c: int, n: int) -> int:
        if n < 0:
            if c == 0:
                raise DivisionByZero("0 has no inverse in F_q")
            c, n = self.inv[c], -n
        r = 1
        q = self.q
        while n:
            if n & 1:
                r = self.mul[r * q + c]
            c = self.mul[c * q + c]
            n >>= 1
        return r

    def format(self, c: int) -> str:
        if self.k == 1:
            return str(c)
        parts = []
        for i, d in reversed(list(enumerate(self._digits(c)))):
            if d == 0:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                parts.append(str(d))
            elif d == 1:
                parts.append(mono)
            else:
                parts.append(f"{d}*{mono}")
        return "+".join(parts) if parts else "0"

    def key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FqConfig) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.k == 1:
            return f"FqConfig(p={self.p})"
        return f"FqConfig(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


@functools.lru_cache(maxsize=None)
def _fq_cached(p, k, modulus):
    return FqConfig(p, k, list(modulus) if modulus is not None else None)


def fq(p: int, k: int = 1, modulus=None) -> FqConfig:
    """Cached :class:`FqConfig` constructor."""
    if modulus is not None and k > 1:
        modulus = [int(c) % p for c in modulus]
        while modulus and modulus[-1] == 0:
            modulus.pop()
        if modulus:
            inv = pow(modulus[-1], p - 2, p)
            modulus = [c * inv % p for c in modulus]
        modulus = tuple(modulus)
    else:
        modulus = None
    return _fq_cached(p, k, modulus)


def field_for_q(q: int, modulus=None) -> FqConfig:
    """Field of order ``q``; for prime powers a modulus is required."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise FieldError(f"{q} is not a prime power")
    if k > 1 and modulus is None:
        raise FieldError(f"q = {q} needs a modulus (e.g. --modulus)")
    return fq(p, k, modulus)


class FqElem:
    """An element of F_q (thin wrapper over the integer encoding)."""

    __slots__ = ("F", "value")

    def __init__(self, F: FqConfig, value: int):
        if not 0 <= value < F.q:
            raise FieldError(f"{value} is not an element encoding of F_{F.q}")
        self.F = F
        self.value = value

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.F is not self.F and other.F != self.F:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.F.from_int(other)
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.F, self.F.add[self.value * self.F.q + b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.F, self.F.sub[self.value * self.F.q + b])

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.F, self.F.sub[b * self.F.q + self.value])

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.F, self.F.mul[self.value * self.F.q + b])

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.F, self.F.neg[self.value])

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("0 has no inverse in F_q")
        return FqElem(self.F, self.F.inv[self.value])

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        if b == 0:
            raise DivisionByZero("division by zero in F_q")
        return FqElem(self.F, self.F.mul[self.value * self.F.q + self.F.inv[b]])

    def __pow__(self, n: int):
        return FqElem(self.F, self.F.pow(self.value, n))

    def __eq__(self, other):
        b = self._other(other)
        return b is not None and b == self.value

    def __hash__(self):
        return hash((self.F.key(), self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FqElem({self.F.format(self.value)})"

    def __str__(self):
        return self.F.format(self.value)


# --- sparse polynomial helpers -------------------------------------------

def _shift(a: dict, s: int) -> dict:
    if s == 0:
        return a
    return {e + s: c for e, c in a.items()}


def _scale_exps(a: dict, f: int) -> dict:
    if f == 1:
        return a
    return {e * f: c for e, c in a.items()}


def _exp_gcd(*polys) -> int:
    g = 0
    for a in polys:
        for e in a:
            g = math.gcd(g, e)
            if g == 1:
                return 1
    return g


def _to_dense(a: dict, G: int) -> list[int]:
    out = [0] * (max(a) // G + 1)
    for e, c in a.items():
        out[e // G] = c
    return out


def poly_gcd(F: FqConfig, a: dict, b: dict):
    """Monic gcd of two nonzero sparse polynomials, or None if too large."""
    ma, mb = min(a), min(b)
    mono = min(ma, mb)
    a = _shift(a, -ma)
    b = _shift(b, -mb)
    if len(a) == 1 or len(b) == 1:
        return {mono: 1}
    G = _exp_gcd(a, b)
    if max(max(a), max(b)) // G > GCD_DENSE_LIMIT:
        return None
    g = _k.dn_gcd(_to_dense(a, G), _to_dense(b, G), F)
    return {i * G + mono: c for i, c in enumerate(g) if c}


_ONE = {0: 1}


class PerfElem:
    """Element of the perfect closure of F_q(theta).

    Instances are immutable.  Arithmetic accepts other ``PerfElem`` values of
    the same field and Python ints (reduced mod p).
    """

    __slots__ = ("F", "level", "num", "den", "reduced")

    def __init__(self, F, level, num, den, reduced=True):
        # Trusted constructor: callers pass normalized data.  Use make().
        self.F = F
        self.level = level
        self.num = num
        self.den = den
        self.reduced = reduced

    # -- construction ----------------------------------------------------

    @classmethod
    def make(cls, F: FqConfig, level: int, num: dict, den: dict) -> "PerfElem":
        """Normalize ``num/den`` at ``level``: reduce, monic den, minimal level."""
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return cls(F, 0, {}, _ONE)
        reduced = True
        m = min(min(num), min(den))
        if m:
            num = _shift(num, -m)
            den = _shift(den, -m)
        if len(den) > 1:
            if len(num) == 1 and min(den) == 0:
                pass
            else:
                g = poly_gcd(F, num, den)
                if g is None:
                    reduced = False
                elif len(g) > 1 or max(g) > 0:
                    num, r1 = _k.sp_divmod(num, g, F)
                    den, r2 = _k.sp_divmod(den, g, F)
                    if r1 or r2:
                        raise ArithmeticError("inexact gcd division")
        lead = den[max(den)]
        if lead != 1:
            inv = F.inv[lead]
            num = _k.sp_scale(num, inv, F)
            den = _k.sp_scale(den, inv, F)
        if level:
            level, num, den = _min_level(F, level, num, den)
        return cls(F, level, num, den, reduced)

    @classmethod
    def zero(cls, F):
        return cls(F, 0, {}, _ONE)

    @classmethod
    def one(cls, F):
        return cls(F, 0, _ONE, _ONE)

    @classmethod
    def const(cls, F, c: int) -> "PerfElem":
        """Element of F_q from its integer encoding ``0 <= c < q``."""
        if c == 0:
            return cls.zero(F)
        return cls(F, 0, {0: c}, _ONE)

    @classmethod
    def from_int(cls, F, n: int) -> "PerfElem":
        return cls.const(F, n % F.p)

    @classmethod
    def theta(cls, F) -> "PerfElem":
        return cls(F, 0, {1: 1}, _ONE)

    @classmethod
    def theta_power(cls, F, e) -> "PerfElem":
        """``theta^e`` for ``e`` an integer or a Fraction with p-power denominator."""
        e = Fraction(e)
        level = 0
        while e.denominator != 1:
            e *= F.q
            level += 1
        n = int(e)
        if n >= 0:
            return cls.make(F, level, {n: 1}, _ONE)
        return cls.make(F, level, _ONE, {-n: 1})

    @classmethod
    def from_poly(cls, F, coeffs) -> "PerfElem":
        """Polynomial in theta from a coefficient list (constant first, F_q codes)."""
        num = {i: c for i, c in enumerate(coeffs) if c}
        return cls(F, 0, num, _ONE) if num else cls.zero(F)

    def _coerce(self, other):
        if isinstance(other, PerfElem):
            if other.F is not self.F and other.F != self.F:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, int):
            return PerfElem.from_int(self.F, other)
        if isinstance(other, FqElem):
            return PerfElem.const(self.F, other.value)
        return None

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.level == 0 and self.num == _ONE and self.den == _ONE

    def is_const(self) -> bool:
        """True for elements of F_q."""
        return self.level == 0 and self.den == _ONE and (not self.num or list(self.num) == [0])

    def is_monomial(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        """True for elements of F_q[theta]."""
        return self.level == 0 and self.den == _ONE

    def degree(self) -> int:
        """theta-degree of a polynomial element (-1 for zero)."""
        if not self.is_polynomial():
            raise ValueError("degree is only defined for elements of F_q[theta]")
        return max(self.num) if self.num else -1

    def is_monic(self) -> bool:
        return self.is_polynomial() and bool(self.num) and self.num[max(self.num)] == 1

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError("not an element of F_q")
        return self.num.get(0, 0)

    # -- arithmetic ------------------------------------------------------

    def _lift(self, L: int):
        if self.level == L:
            return self.num, self.den
        f = self.F.q ** (L - self.level)
        return _scale_exps(self.num, f), _scale_exps(self.den, f)

    def _addsub(self, other, op):
        F = self.F
        if not other.num:
            return self if op is _k.sp_add else self
        if not self.num:
            return other if op is _k.sp_add else -other
        L = max(self.level, other.level)
        n1, d1 = self._lift(L)
        n2, d2 = other._lift(L)
        if d1 == d2:
            num = op(n1, n2, F)
            if not num:
                return PerfElem.zero(F)
            if d1 == _ONE:
                if L:
                    L, num, d1 = _min_level(F, L, num, d1)
                return PerfElem(F, L, num, d1, self.reduced and other.reduced)
            return PerfElem.make(F, L, num, d1)
        num = op(_k.sp_mul(n1, d2, F), _k.sp_mul(n2, d1, F), F)
        return PerfElem.make(F, L, num, _k.sp_mul(d1, d2, F))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._addsub(other, _k.sp_add)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._addsub(other, _k.sp_sub)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._addsub(self, _k.sp_sub)

    def __neg__(self):
        if not self.num:
            return self
        return PerfElem(self.F, self.level, {e: self.F.neg[c] for e, c in self.num.items()},
                        self.den, self.reduced)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        F = self.F
        if not self.num or not other.num:
            return PerfElem.zero(F)
        if other.is_const():
            c = other.num[0]
            if c == 1:
                return self
            return PerfElem(F, self.level, _k.sp_scale(self.num, c, F), self.den, self.reduced)
        if self.is_const():
            return other * self
        L = max(self.level, other.level)
        n1, d1 = self._lift(L)
        n2, d2 = other._lift(L)
        if d1 == _ONE and d2 == _ONE:
            num = _k.sp_mul(n1, n2, F)
            if L:
                L, num, den = _min_level(F, L, num, _ONE)
            return PerfElem(F, L, num, _ONE)
        return PerfElem.make(F, L, _k.sp_mul(n1, n2, F), _k.sp_mul(d1, d2, F))

    __rmul__ = __mul__

    def inverse(self) -> "PerfElem":
        if not self.num:
            raise DivisionByZero("division by zero in K")
        return PerfElem.make(self.F, self.level, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = PerfElem.one(self.F)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, n: int = 1) -> "PerfElem":
        """``self^(q^n)`` for any integer ``n`` (negative n takes q-power roots)."""
        if n == 0 or self.is_const():
            return self
        m = self.level - n
        if m >= 0:
            if self.level == 0:
                # n < 0 and level 0: data may now be reducible in level.
                lvl, num, den = _min_level(self.F, m, self.num, self.den)
                return PerfElem(self.F, lvl, num, den, self.reduced)
            return PerfElem(self.F, m, self.num, self.den, self.reduced)
        f = self.F.q ** (-m)
        return PerfElem(self.F, 0, _scale_exps(self.num, f), _scale_exps(self.den, f), self.reduced)

    def inverse_frobenius(self, n: int = 1) -> "PerfElem":
        return self.frobenius(-n)

    def pth_root(self, s: int = 1) -> "PerfElem":
        """``self^(1/p^s)``."""
        k = self.F.k
        j = -(-s // k)
        return (self ** (self.F.p ** (j * k - s))).inverse_frobenius(j)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.reduced and other.reduced:
            return (self.level == other.level and self.num == other.num
                    and self.den == other.den)
        L = max(self.level, other.level)
        n1, d1 = self._lift(L)
        n2, d2 = other._lift(L)
        return _k.sp_mul(n1, d2, self.F) == _k.sp_mul(n2, d1, self.F)

    __hash__ = None

    # -- display ---------------------------------------------------------

    def _poly_str(self, poly: dict) -> str:
        F = self.F
        qm = F.q ** self.level
        terms = []
        for e in sorted(poly, reverse=True):
            c = poly[e]
            ex = Fraction(e, qm)
            if ex == 0:
                mono = ""
            elif ex == 1:
                mono = "T"
            elif ex.denominator == 1:
                mono = f"T^{ex.numerator}"
            else:
                mono = f"T^({ex.numerator}/{ex.denominator})"
            cs = F.format(c)
            if "+" in cs:
                cs = f"({cs})"
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __str__(self):
        if not self.num:
            return "0"
        ns = self._poly_str(self.num)
        if self.den == _ONE:
            return ns
        ds = self._poly_str(self.den)
        if len(self.num) > 1:
            ns = f"({ns})"
        if len(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"PerfElem({self})"


def _min_level(F, level, num, den):
    if level == 0:
        return level, num, den
    g = _exp_gcd(num, den)
    if g == 0:
        return 0, num, den
    q = F.q
    j = 0
    while j < level and g % q == 0:
        g //= q
        j += 1
    if j == 0:
        return level, num, den
    f = q**j
    return (level - j, {e // f: c for e, c in num.items()},
            {e // f: c for e, c in den.items()})


# --- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(T|theta|θ)|(g)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        num, sym, gen, op = m.groups()
        if num is not None:
            toks.append(("int", int(num)))
        elif sym is not None:
            toks.append(("T", None))
        elif gen is not None:
            toks.append(("g", None))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


class _Parser:
    def __init__(self, F, text):
        self.F = F
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1] or tok[0]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_atom(self):
        kind, v = self.peek()
        return kind in ("int", "T", "g") or (kind == "op" and v == "(")

    def term(self):
        val = self.unary()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in ("*", "/"):
                self.take()
                rhs = self.unary()
                if v == "*":
                    val = val * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError(f"division by zero in {self.text!r}")
                    val = val / rhs
            elif self._starts_atom():
                val = val * self.unary()
            else:
                return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self):
        if self.peek() == ("op", "("):
            self.take()
            sign = -1 if self.peek() == ("op", "-") and self.take() else 1
            n = self.take("int")[1]
            d = 1
            if self.peek() == ("op", "/"):
                self.take()
                d = self.take("int")[1]
            self.take("op", ")")
            if d == 0:
                raise ParseError("zero exponent denominator")
            return Fraction(sign * n, d)
        sign = -1 if self.peek() == ("op", "-") and self.take() else 1
        return Fraction(sign * self.take("int")[1])

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            return _frac_power(self.F, base, e, self.text)
        return base

    def atom(self):
        kind, v = self.take()
        F = self.F
        if kind == "int":
            return PerfElem.from_int(F, v)
        if kind == "T":
            return PerfElem.theta(F)
        if kind == "g":
            if F.k == 1:
                raise ParseError("generator g only exists for k > 1")
            return PerfElem.const(F, F.generator())
        if kind == "op" and v == "(":
            val = self.expr()
            self.take("op", ")")
            return val
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def _frac_power(F, base, e: Fraction, text=""):
    d = e.denominator
    s = 0
    while d % F.p == 0:
        d //= F.p
        s += 1
    if d != 1:
        raise ParseError(f"exponent {e} needs a power of p = {F.p} as denominator in {text!r}")
    if base.is_zero() and e <= 0:
        raise ParseError(f"0 raised to {e} in {text!r}")
    val = base ** e.numerator
    return val.pth_root(s) if s else val


def parse_elem(F: FqConfig, text) -> PerfElem:
    """Parse ``(T^2+1)/(T^3+T)``, ``T^(1/2)``, ``g^2*T`` ... into a PerfElem."""
    if isinstance(text, int):
        return PerfElem.from_int(F, text)
    return _Parser(F, str(text)).parse()


def random_elem(F: FqConfig, rng, max_deg: int = 3, max_level: int = 1,
                fraction: bool = True) -> PerfElem:
    """Random element for property tests; ``rng`` is a ``random.Random``."""
    level = rng.randint(0, max_level)
    top = max_deg * F.q**level

    def rand_poly(nonzero):
        while True:
            n_terms = rng.randint(1, 3)
            poly = {}
            for _ in range(n_terms):
                c = rng.randrange(F.q)
                if c:
                    poly[rng.randint(0, top)] = c
            if poly or not nonzero:
                return poly

    num = rand_poly(False)
    den = rand_poly(True) if fraction and rng.random() < 0.5 else dict(_ONE)
    return PerfElem.make(F, level, num, den)
