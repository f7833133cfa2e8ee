"""Polynomials in a central variable t over K((sigma)) and their diagonalization.

``TPoly`` is an element of K((sigma))[t]; ``TMatrix`` a square matrix of them.
:func:`diagonalize` reduces a matrix (typically ``t*I - D``) to diagonal form
by elementary row and column operations, recording every step together with
left/right certificate matrices so that ``left * M * right == diag``.

Row operations act by left multiplication and column operations by right
multiplication.  Invariant factors are only defined up to similarity, so the
last one is normalized to be monic in t before its Newton polygon is read off.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InternalError, NonUnit, PrecisionExhausted
from .fields import PerfElem
from .ore import SigmaSeries, TauPoly, embed, sigma_inv

MAX_ESCALATIONS = 4
# relative precision from which a coefficient lost to truncation is settled as zero
ZERO_TEST_PREC = 12


class TPoly:
    """``sum_i c_i t^i`` with ``c_i`` in K((sigma)); t commutes with everything."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.F = F
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, F, c: SigmaSeries) -> "TPoly":
        return cls(F, [c])

    @classmethod
    def one(cls, F) -> "TPoly":
        return cls(F, [SigmaSeries.one(F)])

    @classmethod
    def t(cls, F) -> "TPoly":
        return cls(F, [SigmaSeries.zero(F), SigmaSeries.one(F)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def length(self) -> int:
        return len(self.coeffs)

    def degree(self) -> int:
        """t-degree; raises PrecisionExhausted if the top coefficient is uncertified."""
        if not self.coeffs:
            return -1
        if self.coeffs[-1].is_indeterminate():
            raise PrecisionExhausted("leading t-coefficient cannot be certified nonzero")
        return len(self.coeffs) - 1

    def lead(self) -> SigmaSeries:
        self.degree()
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return SigmaSeries.zero(self.F)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(self.F, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(self.F, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return TPoly(self.F, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, SigmaSeries):
            return self.mul_right(other)
        if not self.coeffs or not other.coeffs:
            return TPoly(self.F)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                prod = a * b
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        z = SigmaSeries.zero(self.F)
        return TPoly(self.F, [z if c is None else c for c in out])

    def __rmul__(self, other):
        if isinstance(other, SigmaSeries):
            return self.mul_left(other)
        return NotImplemented

    def mul_left(self, c: SigmaSeries) -> "TPoly":
        if c.is_one():
            return self
        return TPoly(self.F, [c * x for x in self.coeffs])

    def mul_right(self, c: SigmaSeries) -> "TPoly":
        if c.is_one():
            return self
        return TPoly(self.F, [x * c for x in self.coeffs])

    def shift(self, k: int) -> "TPoly":
        """``t^k * self``."""
        if not self.coeffs or k == 0:
            return self
        return TPoly(self.F, [SigmaSeries.zero(self.F)] * k + list(self.coeffs))

    def is_exact(self) -> bool:
        return all(c.exact for c in self.coeffs)

    def agrees_with(self, other) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[i].agrees_with(other[i]) for i in range(n))

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def min_precision(self):
        precs = [c.prec for c in self.coeffs if c.prec is not None]
        return min(precs) if precs else None

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c.is_one():
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"TPoly({self})"


class TMatrix:
    """Square matrix over K((sigma))[t]."""

    def __init__(self, F, rows):
        rows = [list(r) for r in rows]
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("TMatrix must be square")
        self.F = F
        self.d = d
        self.rows = rows

    @classmethod
    def identity(cls, F, d):
        return cls(F, [[TPoly.one(F) if i == j else TPoly(F) for j in range(d)]
                       for i in range(d)])

    @classmethod
    def diag(cls, F, entries):
        d = len(entries)
        return cls(F, [[entries[i] if i == j else TPoly(F) for j in range(d)]
                       for i in range(d)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return TMatrix(self.F, [list(r) for r in self.rows])

    def __matmul__(self, other):
        d = self.d
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = TPoly(self.F)
                for k in range(d):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return TMatrix(self.F, out)

    def agrees_with(self, other) -> bool:
        return all(self.rows[i][j].agrees_with(other.rows[i][j])
                   for i in range(self.d) for j in range(self.d))

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(self.d) for j in range(self.d)
                   if i != j)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows)


# --- elementary operations --------------------------------------------------

@dataclass
class ElementaryOp:
    """One elementary operation.

    kinds: ``swap_rows``/``swap_cols`` (i, j); ``scale_row`` (row i <- factor*row i);
    ``scale_col`` (col i <- col i*factor); ``add_row`` (row i <- row i + factor*row j);
    ``add_col`` (col i <- col i + col j*factor).  ``factor`` is a SigmaSeries
    for scalings and a TPoly for additions.
    """

    kind: str
    i: int
    j: int = -1
    factor: object = None

    def describe(self, max_len: int | None = None) -> str:
        a, b = self.i + 1, self.j + 1
        f = self.factor
        if f is not None and max_len is not None:
            f = str(f)
            if len(f) > max_len:
                f = f[:max_len] + " ..."
        if self.kind == "swap_rows":
            return f"L{a} <-> L{b}"
        if self.kind == "swap_cols":
            return f"C{a} <-> C{b}"
        if self.kind == "scale_row":
            return f"L{a} -> ({f})*L{a}"
        if self.kind == "scale_col":
            return f"C{a} -> C{a}*({f})"
        if self.kind == "add_row":
            return f"L{a} -> L{a} + ({f})*L{b}"
        if self.kind == "add_col":
            return f"C{a} -> C{a} + C{b}*({f})"
        return self.kind


def _apply_rows(rows, op):
    k = op.kind
    if k == "swap_rows":
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    elif k == "swap_cols":
        for r in rows:
            r[op.i], r[op.j] = r[op.j], r[op.i]
    elif k == "scale_row":
        rows[op.i] = [e.mul_left(op.factor) for e in rows[op.i]]
    elif k == "scale_col":
        for r in rows:
            r[op.i] = r[op.i].mul_right(op.factor)
    elif k == "add_row":
        f = op.factor
        rows[op.i] = [a if b.is_zero() else a + f * b for a, b in zip(rows[op.i], rows[op.j])]
    elif k == "add_col":
        f = op.factor
        for r in rows:
            if not r[op.j].is_zero():
                r[op.i] = r[op.i] + r[op.j] * f
    else:
        raise ValueError(f"unknown elementary operation {k!r}")


def _check_unit(op):
    if op.kind in ("scale_row", "scale_col"):
        f = op.factor
        if not isinstance(f, SigmaSeries) or not f.is_certified_nonzero():
            raise NonUnit(f"scaling factor {f} is not a certified unit")
    elif op.kind in ("add_row", "add_col") and op.i == op.j:
        raise ValueError("adding a multiple of a line to itself is not elementary")


def apply_elementary(M: TMatrix, op: ElementaryOp) -> TMatrix:
    """Return a new matrix with ``op`` applied."""
    _check_unit(op)
    out = M.copy()
    _apply_rows(out.rows, op)
    return out


def apply_sequence(M: TMatrix, ops) -> TMatrix:
    for op in ops:
        M = apply_elementary(M, op)
    return M


# --- Euclidean division in t ----------------------------------------------

def _lead_inverse(b: SigmaSeries, prec: int) -> SigmaSeries:
    return sigma_inv(b, -b.valuation() + prec)


def t_div(a: TPoly, b: TPoly, side: str = "right", prec: int = 16):
    """Divide ``a`` by ``b`` in t.

    ``side="right"``: ``a = quot*b + rem``; ``side="left"``: ``a = b*quot + rem``.
    ``prec`` is the relative sigma-precision used for the leading-coefficient
    inverse when it is not an exact monomial.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = b.degree()
    if n < 0:
        raise ZeroDivisionError("division by the zero t-polynomial")
    inv = _lead_inverse(b.lead(), prec)
    F = a.F
    rem = list(a.coeffs)
    quo = [SigmaSeries.zero(F)] * max(len(rem) - n, 0)
    for top in range(len(rem) - 1, n - 1, -1):
        c_top = rem[top]
        if c_top.is_zero():
            continue
        c = c_top * inv if side == "right" else inv * c_top
        s = top - n
        quo[s] = c
        for j in range(n):
            bj = b.coeffs[j]
            if bj.is_zero():
                continue
            term = c * bj if side == "right" else bj * c
            rem[s + j] = rem[s + j] - term
        rem[top] = SigmaSeries.zero(F)
    return TPoly(F, quo), TPoly(F, rem[:n])


# --- diagonalization --------------------------------------------------------

@dataclass
class DiagResult:
    diagonal: list
    op_log: list
    left_cert: TMatrix
    right_cert: TMatrix
    prec_used: int
    escalations: int = 0
    pivot_seed: int | None = None
    notes: list = field(default_factory=list)

    def steps(self, max_len: int | None = 80) -> list[str]:
        return [op.describe(max_len) for op in self.op_log]

    def degrees(self) -> list[int]:
        return [e.degree() for e in self.diagonal]

    def verify(self, M: TMatrix) -> bool:
        """``left_cert * M * right_cert`` equals the diagonal within precision."""
        prod = self.left_cert @ M @ self.right_cert
        return prod.agrees_with(TMatrix.diag(M.F, self.diagonal))


def _r_max(M: TMatrix) -> int:
    r = 0
    for row in M.rows:
        for e in row:
            for c in e.coeffs:
                if c.coeffs and c.val < 0:
                    r = max(r, -c.val)
    return r


def default_precision(d: int, r_max: int) -> int:
    """Initial relative sigma-precision for truncated inverses."""
    return d + r_max + 1


class _Reducer:
    def __init__(self, M: TMatrix, prec: int, pivot_seed=None, monic=True):
        self.F = M.F
        self.d = M.d
        self.A = [list(r) for r in M.rows]
        self.L = TMatrix.identity(M.F, M.d).rows
        self.R = TMatrix.identity(M.F, M.d).rows
        self.ops = []
        self.prec = prec
        self.rng = random.Random(pivot_seed) if pivot_seed is not None else None
        self.monic = monic
        self.expected_degree = None
        self.notes = []

    def inv(self, c: SigmaSeries) -> SigmaSeries:
        return sigma_inv(c, -c.valuation() + self.prec)

    def apply(self, op, override=None):
        self.ops.append(op)
        _apply_rows(self.A, op)
        if op.kind in ("swap_rows", "scale_row", "add_row"):
            _apply_rows(self.L, op)
        else:
            _apply_rows(self.R, op)
        if override:
            for (i, j), v in override.items():
                self.A[i][j] = v

    def settle(self, i, j):
        """Drop leading t-coefficients of A[i][j] that vanished to working precision.

        Below ZERO_TEST_PREC this escalates instead; each settlement is noted.
        """
        e = self.A[i][j]
        coeffs = list(e.coeffs)
        if not coeffs or not coeffs[-1].is_indeterminate():
            return
        if self.prec < ZERO_TEST_PREC:
            raise PrecisionExhausted(f"entry ({i + 1},{j + 1}) has an uncertified leading term")
        while coeffs and coeffs[-1].is_indeterminate():
            c = coeffs.pop()
            self.notes.append(f"t^{len(coeffs)} coefficient of entry ({i + 1},{j + 1}) "
                              f"vanished to O(s^{c.lower_bound()}) and was set to zero")
        self.A[i][j] = TPoly(self.F, coeffs)

    def pick_pivot(self, k):
        d, A = self.d, self.A
        cands = []
        for i in range(k, d):
            for j in range(k, d):
                self.settle(i, j)
                e = A[i][j]
                if e.is_zero():
                    continue
                lead = e.lead()
                cands.append((e.degree(), not lead.is_monomial(), abs(lead.valuation()), i, j))
        if not cands:
            raise InternalError("zero block during diagonalization")
        if self.rng is not None:
            dmin = min(c[0] for c in cands)
            pool = [c for c in cands if c[0] == dmin]
            return self.rng.choice(pool)[3:]
        return min(cands)[3:]

    def reduce_from(self, k0):
        d, A, F = self.d, self.A, self.F
        k = k0
        guard = 0
        while k < d:
            guard += 1
            if guard > 200 * d:
                raise InternalError("diagonalization does not terminate")
            pi, pj = self.pick_pivot(k)
            if pi != k:
                self.apply(ElementaryOp("swap_rows", k, pi))
            if pj != k:
                self.apply(ElementaryOp("swap_cols", k, pj))
            p = A[k][k]
            if p.degree() == 0 and not p.coeffs[0].is_one():
                inv = self.inv(p.coeffs[0])
                self.apply(ElementaryOp("scale_col", k, factor=inv),
                           override={(k, k): TPoly.one(F)})
                p = A[k][k]
            clean = True
            for i in range(k + 1, d):
                if A[i][k].is_zero():
                    continue
                quo, rem = t_div(A[i][k], p, "right", self.prec)
                if not quo.is_zero():
                    self.apply(ElementaryOp("add_row", i, k, -quo), override={(i, k): rem})
                else:
                    A[i][k] = rem
                if not rem.is_zero():
                    clean = False
            for j in range(k + 1, d):
                if A[k][j].is_zero():
                    continue
                quo, rem = t_div(A[k][j], p, "left", self.prec)
                if not quo.is_zero():
                    self.apply(ElementaryOp("add_col", j, k, -quo), override={(k, j): rem})
                else:
                    A[k][j] = rem
                if not rem.is_zero():
                    clean = False
            if clean:
                k += 1

    def sort_diagonal(self):
        d, A = self.d, self.A
        for a in range(d):
            self.settle(a, a)
        for a in range(d):
            best = min(range(a, d), key=lambda i: (A[i][i].degree(), i))
            if best != a:
                self.apply(ElementaryOp("swap_rows", a, best))
                self.apply(ElementaryOp("swap_cols", a, best))

    def chain_violation(self):
        """First ``(i, side)`` where diagonal[i] fails to divide diagonal[i+1] on ``side``."""
        A = self.A
        for i in range(self.d - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a.degree() == 0:
                continue
            for side in ("right", "left"):
                _, rem = t_div(b, a, side, self.prec)
                if rem.is_zero():
                    continue
                if all(c.is_indeterminate() or c.is_zero() for c in rem.coeffs):
                    if self.prec < ZERO_TEST_PREC:
                        raise PrecisionExhausted("divisibility of diagonal entries is undecided")
                    self.notes.append(f"diagonal entry {i + 1} {side}-divides entry {i + 2} "
                                      "to working precision")
                    continue
                return i, side
        return None

    def run(self):
        d = self.d
        self.reduce_from(0)
        for _ in range(4 * d * d + 4):
            self.sort_diagonal()
            found = self.chain_violation()
            if found is None:
                break
            # fold-back: a column sum exposes the right remainder to the row
            # elimination, a row sum exposes the left remainder to the column one
            i, side = found
            kind = "add_col" if side == "right" else "add_row"
            self.apply(ElementaryOp(kind, i, i + 1, TPoly.one(self.F)))
            self.reduce_from(i)
        else:
            raise InternalError("divisibility chain does not stabilize")
        if self.monic:
            for i in range(d):
                e = self.A[i][i]
                if e.degree() >= 1 and not e.lead().is_one():
                    inv = self.inv(e.lead())
                    normalized = e.mul_left(inv)
                    normalized = TPoly(self.F, list(normalized.coeffs[:-1]) + [SigmaSeries.one(self.F)])
                    self.apply(ElementaryOp("scale_row", i, factor=inv),
                               override={(i, i): normalized})
        diag = [self.A[i][i] for i in range(d)]
        if sum(e.degree() for e in diag) != _det_degree(self):
            raise InternalError("diagonal t-degrees do not add up")
        return diag


def _det_degree(red):
    return red.d if red.expected_degree is None else red.expected_degree


def diagonalize(M: TMatrix, prec: int | None = None, pivot_seed: int | None = None,
                monic: bool = True, max_escalations: int = MAX_ESCALATIONS,
                expected_degree: int | None = None) -> DiagResult:
    """Diagonalize ``M`` over K((sigma))[t].

    Pivots: minimal t-degree, then an exact monomial leading coefficient,
    then minimal |sigma-valuation| of the leading coefficient, then
    row-major order (``pivot_seed`` instead picks at random among the
    minimal-degree candidates).  On PrecisionExhausted the whole computation
    restarts at doubled precision, at most ``max_escalations`` times.

    With ``monic=True`` every non-unit diagonal entry is scaled on the left
    to be monic in t; ``monic=False`` keeps the entries exactly as the
    elimination produced them.  ``expected_degree`` (default ``d``) is the
    total t-degree the diagonal must have.
    """
    P = prec if prec is not None else default_precision(M.d, _r_max(M))
    last_err = None
    for esc in range(max_escalations + 1):
        red = _Reducer(M, P, pivot_seed, monic)
        red.expected_degree = expected_degree
        try:
            diag = red.run()
        except PrecisionExhausted as err:
            last_err = err
            P *= 2
            continue
        return DiagResult(diag, red.ops, TMatrix(M.F, red.L), TMatrix(M.F, red.R), P, esc,
                          pivot_seed, red.notes)
    raise PrecisionExhausted(
        f"diagonalization failed after {max_escalations} precision escalations "
        f"(last precision {P // 2}): {last_err}")


def char_matrix(D) -> TMatrix:
    """``t*I_d - D`` for a t-module given by its twisted-polynomial entries."""
    F = D.F
    rows = []
    for i in range(D.d):
        row = []
        for j in range(D.d):
            e = -embed(D.entry(i, j))
            if i == j:
                row.append(TPoly(F, [e, SigmaSeries.one(F)]))
            else:
                row.append(TPoly(F, [e]))
        rows.append(row)
    return TMatrix(F, rows)


def last_invariant_factor(D, prec=None, pivot_seed=None, monic=True) -> TPoly:
    return diagonalize(char_matrix(D), prec=prec, pivot_seed=pivot_seed,
                       monic=monic).diagonal[-1]


def fold_pair(b: TPoly, lam: TPoly, prec: int = 16):
    """Merge ``diag(b, lam)`` when b does not right-divide lam.

    With ``lam = q*b + r``, ``deg_t r = 0``, the sequence
    ``L2 -= q L1; C2 += C1; L2 = r^-1 L2; L1 -= b L2; C1 += C2 r^-1 q b``
    followed by swapping both lines gives ``diag(1, b * r^-1 * lam)``.
    Returns ``(diagonal, ops)``.
    """
    F = b.F
    quo, rem = t_div(lam, b, "right", prec)
    if rem.is_zero():
        raise ValueError("b right-divides lam; nothing to fold")
    if rem.degree() != 0:
        raise ValueError("remainder must have t-degree 0 (b of t-degree 1)")
    r_inv = sigma_inv(rem.coeffs[0], -rem.coeffs[0].valuation() + prec)
    ops = [
        ElementaryOp("add_row", 1, 0, -quo),
        ElementaryOp("add_col", 1, 0, TPoly.one(F)),
        ElementaryOp("scale_row", 1, factor=r_inv),
        ElementaryOp("add_row", 0, 1, -b),
        ElementaryOp("add_col", 0, 1, (quo * b).mul_left(r_inv)),
        ElementaryOp("swap_rows", 0, 1),
        ElementaryOp("swap_cols", 0, 1),
    ]
    rows = [[b, TPoly(F)], [TPoly(F), lam]]
    for op in ops:
        _apply_rows(rows, op)
    # entries that vanish by construction are set exactly
    rows[0][1] = rows[1][0] = TPoly(F)
    rows[0][0] = TPoly.one(F)
    return [rows[0][0], rows[1][1]], ops
