"""Twisted polynomials K{tau} and skew Laurent series K((sigma)), sigma = tau^-1.

Commutation rules: ``tau * a = a^q * tau`` and ``sigma * a = a^(1/q) * sigma``.
Coefficients are always written on the left.

A :class:`SigmaSeries` is either *exact* (finite support, ``prec is None``),
or *truncated*: the coefficients of ``sigma^j`` are known for ``j < prec``.
A truncated series whose known window is entirely zero is indeterminate and
never treated as zero.
"""

from __future__ import annotations

from .errors import PrecisionExhausted, ZeroSeries
from .fields import FqConfig, PerfElem


class TauPoly:
    """``c_0 + c_1 tau + ... + c_r tau^r`` with the c_i in K."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: FqConfig, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.F = F
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, F, c: PerfElem, k: int) -> "TauPoly":
        z = PerfElem.zero(F)
        return cls(F, [z] * k + [c])

    @classmethod
    def const(cls, F, c: PerfElem) -> "TauPoly":
        return cls(F, [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return PerfElem.zero(self.F)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TauPoly(self.F, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TauPoly(self.F, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return TauPoly(self.F, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, PerfElem):
            other = TauPoly.const(self.F, other)
        if not self.coeffs or not other.coeffs:
            return TauPoly(self.F)
        out = [PerfElem.zero(self.F)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b.frobenius(i)
        return TauPoly(self.F, out)

    def __rmul__(self, other):
        if isinstance(other, PerfElem):
            return TauPoly.const(self.F, other) * self
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TauPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c.is_one():
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}" if " " in cs or "/" in cs else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"TauPoly({self})"


def tau_mul(a: TauPoly, b: TauPoly) -> TauPoly:
    return a * b


class SigmaSeries:
    """Skew Laurent series ``sum_j c_j sigma^j`` with precision tracking.

    ``coeffs[i]`` is the coefficient of ``sigma^(val + i)``.  For a nonzero
    series the first coefficient is nonzero.  ``prec`` is the absolute
    precision (None when exact).
    """

    __slots__ = ("F", "val", "coeffs", "prec")

    def __init__(self, F, val, coeffs, prec):
        # Trusted constructor; use make() for unnormalized data.
        self.F = F
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def make(cls, F: FqConfig, val: int, coeffs, prec=None) -> "SigmaSeries":
        coeffs = list(coeffs)
        if prec is not None:
            keep = prec - val
            if keep < len(coeffs):
                coeffs = coeffs[:max(keep, 0)]
        start = 0
        while start < len(coeffs) and coeffs[start].is_zero():
            start += 1
        if start:
            coeffs = coeffs[start:]
            val += start
        if prec is None:
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
        if not coeffs:
            return cls(F, 0 if prec is None else prec, (), prec)
        return cls(F, val, tuple(coeffs), prec)

    @classmethod
    def zero(cls, F) -> "SigmaSeries":
        return cls(F, 0, (), None)

    @classmethod
    def one(cls, F) -> "SigmaSeries":
        return cls(F, 0, (PerfElem.one(F),), None)

    @classmethod
    def monomial(cls, F, c: PerfElem, k: int) -> "SigmaSeries":
        if c.is_zero():
            return cls.zero(F)
        return cls(F, k, (c,), None)

    @classmethod
    def const(cls, F, c: PerfElem) -> "SigmaSeries":
        return cls.monomial(F, c, 0)

    @classmethod
    def big_oh(cls, F, prec: int) -> "SigmaSeries":
        """The indeterminate series O(sigma^prec)."""
        return cls(F, prec, (), prec)

    # -- predicates ------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return not self.coeffs and self.prec is None

    def is_indeterminate(self) -> bool:
        return not self.coeffs and self.prec is not None

    def is_certified_nonzero(self) -> bool:
        return bool(self.coeffs)

    def is_monomial(self) -> bool:
        return self.prec is None and len(self.coeffs) == 1

    def is_one(self) -> bool:
        return self.is_monomial() and self.val == 0 and self.coeffs[0].is_one()

    def valuation(self) -> int:
        if self.coeffs:
            return self.val
        if self.prec is None:
            raise ZeroSeries("valuation of the zero series")
        raise PrecisionExhausted(
            f"all known coefficients vanish below sigma^{self.prec}", needed=self.prec)

    def lower_bound(self) -> int | None:
        """Lower bound for the valuation (None for exact zero)."""
        if self.coeffs:
            return self.val
        return self.prec

    def leading_coeff(self) -> PerfElem:
        self.valuation()
        return self.coeffs[0]

    def coeff(self, j: int) -> PerfElem:
        if self.prec is not None and j >= self.prec:
            raise PrecisionExhausted(f"coefficient of sigma^{j} is beyond precision {self.prec}",
                                     needed=j + 1)
        i = j - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return PerfElem.zero(self.F)

    def end(self) -> int:
        """One past the last stored exponent."""
        return self.val + len(self.coeffs)

    def relative_precision(self) -> float:
        if self.prec is None:
            return float("inf")
        return self.prec - self.val

    def truncate(self, prec: int) -> "SigmaSeries":
        if self.prec is not None and self.prec <= prec:
            return self
        return SigmaSeries.make(self.F, self.val, self.coeffs, prec)

    # -- arithmetic ------------------------------------------------------

    def _addsub(self, other, sign):
        F = self.F
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        if self.prec is None:
            prec = other.prec
        elif other.prec is None:
            prec = self.prec
        else:
            prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        hi = max(self.end(), other.end())
        if prec is not None:
            hi = min(hi, prec)
        out = []
        for j in range(lo, hi):
            a = self.coeffs[j - self.val] if 0 <= j - self.val < len(self.coeffs) else None
            b = other.coeffs[j - other.val] if 0 <= j - other.val < len(other.coeffs) else None
            if b is None:
                out.append(a if a is not None else PerfElem.zero(F))
            elif a is None:
                out.append(b if sign > 0 else -b)
            else:
                out.append(a + b if sign > 0 else a - b)
        if not out:
            lo = hi if prec is not None else 0
        return SigmaSeries.make(F, lo, out, prec)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        return SigmaSeries(self.F, self.val, tuple(-c for c in self.coeffs), self.prec)

    def __mul__(self, other):
        if isinstance(other, PerfElem):
            return self.mul_scalar_right(other)
        return sigma_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, PerfElem):
            return self.mul_scalar_left(other)
        return NotImplemented

    def mul_scalar_left(self, c: PerfElem) -> "SigmaSeries":
        if c.is_zero():
            return SigmaSeries.zero(self.F) if self.prec is None else \
                SigmaSeries.big_oh(self.F, self.prec)
        if c.is_one():
            return self
        return SigmaSeries(self.F, self.val, tuple(c * x for x in self.coeffs), self.prec)

    def mul_scalar_right(self, c: PerfElem) -> "SigmaSeries":
        if c.is_zero():
            return SigmaSeries.zero(self.F) if self.prec is None else \
                SigmaSeries.big_oh(self.F, self.prec)
        if c.is_const():
            return self.mul_scalar_left(c)
        return SigmaSeries(self.F, self.val, tuple(
            x * c.frobenius(-(self.val + i)) for i, x in enumerate(self.coeffs)), self.prec)

    def shift_left(self, k: int) -> "SigmaSeries":
        """``sigma^k * self``."""
        prec = None if self.prec is None else self.prec + k
        return SigmaSeries(self.F, self.val + k, tuple(c.frobenius(-k) for c in self.coeffs), prec)

    def shift_right(self, k: int) -> "SigmaSeries":
        """``self * sigma^k``."""
        prec = None if self.prec is None else self.prec + k
        return SigmaSeries(self.F, self.val + k, self.coeffs, prec)

    def inverse(self, target_prec: int) -> "SigmaSeries":
        return sigma_inv(self, target_prec)

    def agrees_with(self, other) -> bool:
        """Equal in every coefficient that both sides know."""
        return not (self - other).coeffs

    def __eq__(self, other):
        if not isinstance(other, SigmaSeries):
            return NotImplemented
        return (self.prec == other.prec and self.val == other.val
                and len(self.coeffs) == len(other.coeffs)
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            k = self.val + i
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}" if k > 0 else f"s^({k})")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c.is_one():
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}" if " " in cs or "/" in cs else f"{cs}*{mono}")
        if self.prec is not None:
            terms.append(f"O(s^{self.prec})" if self.prec >= 0 else f"O(s^({self.prec}))")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"SigmaSeries({self})"


def embed(a: TauPoly) -> SigmaSeries:
    """Exact image of a twisted polynomial under tau -> sigma^-1."""
    r = a.degree()
    if r < 0:
        return SigmaSeries.zero(a.F)
    return SigmaSeries.make(a.F, -r, list(reversed(a.coeffs)), None)


def sigma_mul(a: SigmaSeries, b: SigmaSeries) -> SigmaSeries:
    """Product using ``sigma^i x = x^(q^-i) sigma^i``."""
    F = a.F
    if a.is_zero() or b.is_zero():
        return SigmaSeries.zero(F)
    if a.prec is None and b.prec is None:
        prec = None
    else:
        pa = a.prec if a.prec is not None else float("inf")
        pb = b.prec if b.prec is not None else float("inf")
        prec = int(min(a.val + pb, b.val + pa))
    lo = a.val + b.val
    hi = a.end() + b.end() - 1
    if prec is not None:
        hi = min(hi, prec)
    if hi <= lo:
        return SigmaSeries.big_oh(F, prec)
    out = [None] * (hi - lo)
    for i, x in enumerate(a.coeffs):
        if x.is_zero():
            continue
        ea = a.val + i
        if ea + b.val >= hi:
            break
        for j, y in enumerate(b.coeffs):
            k = ea + b.val + j - lo
            if k >= len(out):
                break
            if y.is_zero():
                continue
            t = x * y.frobenius(-ea)
            out[k] = t if out[k] is None else out[k] + t
    zero = PerfElem.zero(F)
    return SigmaSeries.make(F, lo, [zero if c is None else c for c in out], prec)


def sigma_inv(a: SigmaSeries, target_prec: int) -> SigmaSeries:
    """Two-sided inverse, known up to ``sigma^target_prec`` (exact for monomials)."""
    F = a.F
    if a.is_zero():
        raise ZeroSeries("inverse of the zero series")
    v = a.valuation()
    lead_inv = a.coeffs[0].inverse()
    first = lead_inv.frobenius(v)
    if a.prec is None and len(a.coeffs) == 1:
        return SigmaSeries(F, -v, (first,), None)
    prec = target_prec
    if a.prec is not None:
        prec = min(prec, a.prec - 2 * v)
    n_terms = prec + v
    if n_terms <= 0:
        return SigmaSeries.big_oh(F, prec)
    b = [first]
    # b[n] is the coefficient of sigma^(n - v)
    for n in range(1, n_terms):
        s = None
        for i in range(1, min(n, len(a.coeffs) - 1) + 1):
            ai = a.coeffs[i]
            if ai.is_zero() or b[n - i].is_zero():
                continue
            t = ai * b[n - i].frobenius(-(v + i))
            s = t if s is None else s + t
        if s is None:
            b.append(PerfElem.zero(F))
        else:
            b.append(-(lead_inv * s).frobenius(v))
    return SigmaSeries.make(F, -v, b, prec)


def valuation(a: SigmaSeries) -> int:
    return a.valuation()
