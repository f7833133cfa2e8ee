"""t-modules given by a matrix D = A_0 + A_1 tau + ... + A_r tau^r over K{tau}.

Besides the data type this module has validation, powers of D, the search for
a power with invertible leading coefficient, direct sums, named example
modules, a structure report for the powers of the two-dimensional
counterexample, JSON (de)serialization and random generators for tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigMismatch, NilpotencyViolation, ParseError, ShapeError
from .fields import FqConfig, PerfElem, field_for_q, fq, parse_elem
from .ore import TauPoly

D2_VARIANTS = ("theta-constant", "constant-I")


def _zero_mat(F, d):
    z = PerfElem.zero(F)
    return tuple(tuple(z for _ in range(d)) for _ in range(d))


def _ident(F, d, c=None):
    z, c = PerfElem.zero(F), PerfElem.one(F) if c is None else c
    return tuple(tuple(c if i == j else z for j in range(d)) for i in range(d))


def _is_zero_mat(A):
    return all(e.is_zero() for row in A for e in row)


def mat_mul(A, B):
    d = len(A)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = PerfElem.zero(A[0][0].F)
            for k in range(d):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_frob(A, n):
    if n == 0:
        return A
    return tuple(tuple(e.frobenius(n) for e in row) for row in A)


def mat_rank(A) -> int:
    """Rank over K by exact Gaussian elimination."""
    rows = [list(r) for r in A]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for c in range(n_cols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][c].is_zero():
                continue
            f = rows[i][c] * inv
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def det(A) -> PerfElem:
    """Determinant over K by exact Gaussian elimination."""
    d = len(A)
    rows = [list(r) for r in A]
    F = rows[0][0].F if d else None
    result = PerfElem.one(F) if F else None
    for c in range(d):
        piv = next((i for i in range(c, d) if not rows[i][c].is_zero()), None)
        if piv is None:
            return PerfElem.zero(F)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        result = result * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, d):
            if rows[i][c].is_zero():
                continue
            f = rows[i][c] * inv
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def twisted_mat_mul(As, Bs):
    """Product of ``sum A_i tau^i`` and ``sum B_j tau^j`` (lists of matrices)."""
    F = As[0][0][0].F
    d = len(As[0])
    out = [_zero_mat(F, d) for _ in range(len(As) + len(Bs) - 1)]
    for i, A in enumerate(As):
        if _is_zero_mat(A):
            continue
        for j, B in enumerate(Bs):
            if _is_zero_mat(B):
                continue
            out[i + j] = mat_add(out[i + j], mat_mul(A, mat_frob(B, i)))
    while len(out) > 1 and _is_zero_mat(out[-1]):
        out.pop()
    return out


class TModule:
    """``D = sum_i A_i tau^i`` acting on G_a^d; ``theta`` is the image of t in K."""

    def __init__(self, F: FqConfig, coeffs, theta: PerfElem | None = None, name=None):
        mats = [tuple(tuple(row) for row in A) for A in coeffs]
        if not mats:
            raise ShapeError("a t-module needs at least the constant matrix A_0")
        d = len(mats[0])
        for A in mats:
            if len(A) != d or any(len(row) != d for row in A):
                raise ShapeError("coefficient matrices must all be d x d")
        while len(mats) > 1 and _is_zero_mat(mats[-1]):
            mats.pop()
        self.F = F
        self.d = d
        self.coeffs = tuple(mats)
        self.theta = PerfElem.theta(F) if theta is None else theta
        self.name = name

    @property
    def r(self) -> int:
        return len(self.coeffs) - 1

    def entry(self, i: int, j: int) -> TauPoly:
        return TauPoly(self.F, [A[i][j] for A in self.coeffs])

    def validate(self) -> "TModule":
        """Raise unless ``(A_0 - theta*I)^d == 0``; returns self."""
        d = self.d
        if d == 0:
            return self
        N = tuple(tuple(e - self.theta if i == j else e for j, e in enumerate(row))
                  for i, row in enumerate(self.coeffs[0]))
        P = N
        for k in range(1, d + 1):
            if _is_zero_mat(P):
                return self
            if k < d:
                P = mat_mul(P, N)
        raise NilpotencyViolation(
            f"(A_0 - theta*I)^{d} is not zero: A_0 - theta*I is not nilpotent", power=d)

    def power(self, n: int):
        """Coefficient matrices of ``D^n``."""
        if n < 1:
            raise ValueError("power exponent must be >= 1")
        result = list(self.coeffs)
        for _ in range(n - 1):
            result = twisted_mat_mul(result, list(self.coeffs))
        return result

    def __eq__(self, other):
        if not isinstance(other, TModule):
            return NotImplemented
        return (self.F == other.F and self.d == other.d and self.theta == other.theta
                and len(self.coeffs) == len(other.coeffs)
                and all(a == b for A, B in zip(self.coeffs, other.coeffs)
                        for ra, rb in zip(A, B) for a, b in zip(ra, rb)))

    __hash__ = None

    def __str__(self):
        parts = []
        for k, A in enumerate(self.coeffs):
            mat = "[" + "; ".join(", ".join(str(e) for e in row) for row in A) + "]"
            parts.append(mat if k == 0 else f"{mat}*y" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"TModule(d={self.d}, r={self.r}, q={self.F.q})"


# --- almost strict purity ----------------------------------------------------

@dataclass
class AspReport:
    found: bool
    s_max: int
    s: int | None = None
    r: int | None = None
    per_s: list = field(default_factory=list)

    def to_dict(self):
        return {
            "found": self.found,
            "s": self.s,
            "r": self.r,
            "s_max": self.s_max,
            "per_s": [{"s": s, "r": r, "top_rank": k} for s, r, k in self.per_s],
        }


def asp_check(E: TModule, s_max: int = 8) -> AspReport:
    """Look for ``s <= s_max`` with the leading coefficient of D^s in GL_d(K)."""
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    report = AspReport(found=False, s_max=s_max)
    P = list(E.coeffs)
    for s in range(1, s_max + 1):
        if s > 1:
            P = twisted_mat_mul(P, list(E.coeffs))
        top = P[-1]
        rank = mat_rank(top)
        report.per_s.append((s, len(P) - 1, rank))
        if rank == E.d:
            report.found, report.s, report.r = True, s, len(P) - 1
            break
    return report


def direct_sum(E1: TModule, E2: TModule) -> TModule:
    if E1.F != E2.F:
        raise ConfigMismatch("direct sum of t-modules over different fields")
    if E1.theta != E2.theta:
        raise ConfigMismatch("direct sum of t-modules with different theta")
    if E2.d == 0:
        return E1
    if E1.d == 0:
        return E2
    F, d1, d2 = E1.F, E1.d, E2.d
    z = PerfElem.zero(F)
    mats = []
    for k in range(max(len(E1.coeffs), len(E2.coeffs))):
        A = E1.coeffs[k] if k < len(E1.coeffs) else _zero_mat(F, d1)
        B = E2.coeffs[k] if k < len(E2.coeffs) else _zero_mat(F, d2)
        rows = [tuple(A[i]) + (z,) * d2 for i in range(d1)]
        rows += [(z,) * d1 + tuple(B[i]) for i in range(d2)]
        mats.append(rows)
    return TModule(F, mats, E1.theta)


# --- named examples -----------------------------------------------------------

def _field(q, F):
    return F if F is not None else field_for_q(q)


def _mats(F, spec):
    return [[[parse_elem(F, e) for e in row] for row in A] for A in spec]


def carlitz(q: int = 2, F=None) -> TModule:
    """``theta + tau``."""
    F = _field(q, F)
    return TModule(F, _mats(F, [[["T"]], [["1"]]]), name="carlitz")


def maurischat_M(q: int = 2, F=None) -> TModule:
    """Two-dimensional abelian module of weight 2/3 in characteristic 2."""
    F = _field(q, F)
    spec = [
        [["T", "0"], ["1", "T"]],
        [["0", "0"], ["1", "0"]],
        [["1", "0"], ["0", "1"]],
        [["0", "1"], ["0", "0"]],
    ]
    return TModule(F, _mats(F, spec), name="maurischat")


def d2(q: int = 2, variant: str = "theta-constant", F=None) -> TModule:
    """Pure module of weight 1 without an invertible leading coefficient in any power.

    ``theta-constant``: ``theta*I + I*tau + theta*E21*tau^2``.
    ``constant-I``: ``I + I*tau + T*E21*tau^2`` with theta = 1, so that
    ``A_0 - theta*I`` is nilpotent.
    """
    F = _field(q, F)
    if variant == "theta-constant":
        spec = [[["T", "0"], ["0", "T"]], [["1", "0"], ["0", "1"]], [["0", "0"], ["T", "0"]]]
        return TModule(F, _mats(F, spec), name="d2")
    if variant == "constant-I":
        spec = [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]], [["0", "0"], ["T", "0"]]]
        return TModule(F, _mats(F, spec), theta=PerfElem.one(F), name="d2/constant-I")
    raise ValueError(f"unknown d2 variant {variant!r}; expected one of {D2_VARIANTS}")


def d2m(q: int = 2, m: int = 1, F=None) -> TModule:
    """``d2`` plus ``m`` Carlitz blocks."""
    if m < 0:
        raise ValueError("m must be >= 0")
    E = d2(q, F=F)
    C = carlitz(q, F=E.F)
    for _ in range(m):
        E = direct_sum(E, C)
    E.name = f"d2m(m={m})"
    return E


PRESETS = {
    "carlitz": lambda q, m, F: carlitz(q, F),
    "maurischat": lambda q, m, F: maurischat_M(q, F),
    "d2": lambda q, m, F: d2(q, F=F),
    "d2-constant-I": lambda q, m, F: d2(q, "constant-I", F),
    "d2m": lambda q, m, F: d2m(q, m, F),
}


def preset(name: str, q: int = 2, m: int = 1, F=None) -> TModule:
    try:
        build = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build(q, m, F)


# --- structure of D2^n ----------------------------------------------------------

def _to_poly_degree(e: PerfElem):
    """(degree, monic) for a polynomial in theta, None if not a polynomial."""
    if e.is_zero() or not e.is_polynomial():
        return None
    return e.degree(), e.is_monic()


def d2_structure_report(n: int, q: int = 2, variant: str = "theta-constant") -> dict:
    """Shape checks and measured degrees for the coefficients of ``D2^n``.

    Hard checks: every coefficient is ``[[a, 0], [b, a]]``, the tau^1 coefficient
    is scalar, the top coefficient has zero diagonal and nonzero lower-left
    entry.  Degrees of ``a_k``, ``b_k`` and the top entry ``x`` are compared
    with the claimed ``q^k (n-k)``, ``q^k (n-k+1) + q^(k-2)`` and ``q^n``.
    """
    if not 2 <= n <= 8:
        raise ValueError("n must satisfy 2 <= n <= 8")
    E = d2(q, variant)
    P = E.power(n)
    checks = []
    rows = []

    def check(name, ok):
        checks.append({"check": name, "ok": bool(ok)})

    check("tau-degree of D2^n is n+1", len(P) - 1 == n + 1)
    for k, A in enumerate(P):
        a, b = A[0][0], A[1][0]
        check(f"A_{k} upper-right entry is zero", A[0][1].is_zero())
        check(f"A_{k} has equal diagonal entries", A[0][0] == A[1][1])
        if k == 1:
            check("A_1 is scalar", b.is_zero())
        entry = {"k": k}
        if 1 <= k <= n - 1:
            meas = _to_poly_degree(a)
            claim = q**k * (n - k)
            entry["a"] = _cmp(meas, claim)
        if 2 <= k <= n:
            meas = _to_poly_degree(b)
            claim = q**k * (n - k + 1) + q**(k - 2)
            entry["b"] = _cmp(meas, claim)
        if len(entry) > 1:
            rows.append(entry)
    top = P[-1]
    x = top[1][0]
    check("top coefficient has zero diagonal", top[0][0].is_zero() and top[1][1].is_zero())
    check("top coefficient has nonzero lower-left entry", not x.is_zero())
    check("top coefficient is singular", mat_rank(top) < 2)
    top_entry = _cmp(_to_poly_degree(x), q**n)
    return {
        "n": n,
        "q": q,
        "variant": variant,
        "shape_ok": all(c["ok"] for c in checks),
        "checks": checks,
        "degrees": rows,
        "top": dict(top_entry, value=str(x)),
    }


def _cmp(meas, claim):
    if meas is None:
        return {"measured": None, "monic": None, "claimed": claim, "match": False}
    deg, monic = meas
    return {"measured": deg, "monic": monic, "claimed": claim, "match": deg == claim and monic}


def format_structure_report(rep: dict) -> str:
    lines = [f"D2^{rep['n']} over F_{rep['q']} ({rep['variant']})",
             f"shape checks: {'ok' if rep['shape_ok'] else 'FAILED'}"]
    for c in rep["checks"]:
        if not c["ok"]:
            lines.append(f"  failed: {c['check']}")
    lines.append(f"{'entry':<10}{'measured':>10}{'claimed':>10}{'monic':>7}  status")

    def line(label, e):
        status = "match" if e["match"] else "DISCREPANCY"
        meas = "-" if e["measured"] is None else e["measured"]
        monic = "-" if e["monic"] is None else ("yes" if e["monic"] else "no")
        return f"{label:<10}{meas!s:>10}{e['claimed']!s:>10}{monic:>7}  {status}"

    for row in rep["degrees"]:
        for part in ("a", "b"):
            if part in row:
                lines.append(line(f"{part}_{row['k']}", row[part]))
    lines.append(line("x (top)", rep["top"]))
    return "\n".join(lines)


# --- JSON ------------------------------------------------------------------------

def to_dict(E: TModule) -> dict:
    out = {"p": E.F.p, "k": E.F.k}
    if E.F.modulus is not None and E.F.k > 1:
        out["modulus"] = list(E.F.modulus)
    out.update({
        "theta": str(E.theta),
        "d": E.d,
        "coeffs": [[[str(e) for e in row] for row in A] for A in E.coeffs],
    })
    return out


def to_json(E: TModule, **kw) -> str:
    return json.dumps(to_dict(E), **kw)


def from_dict(data: dict) -> TModule:
    try:
        p = int(data["p"])
        k = int(data.get("k", 1))
        modulus = data.get("modulus")
        d = int(data["d"])
        coeffs = data["coeffs"]
    except (KeyError, TypeError, ValueError) as err:
        raise ParseError(f"malformed t-module description: {err}") from None
    F = fq(p, k, tuple(modulus) if modulus else None)
    theta = parse_elem(F, data.get("theta", "T"))
    if not isinstance(coeffs, list) or not coeffs:
        raise ShapeError("'coeffs' must be a non-empty list of matrices")
    mats = []
    for A in coeffs:
        if len(A) != d or any(len(row) != d for row in A):
            raise ShapeError(f"every coefficient matrix must be {d} x {d}")
        mats.append([[parse_elem(F, e) for e in row] for row in A])
    return TModule(F, mats, theta)


def from_json(text: str) -> TModule:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err}") from None
    return from_dict(data)


# --- random modules ---------------------------------------------------------------

def _random_fq_mat(F, rng, d, invertible=False, nonzero=False):
    while True:
        A = tuple(tuple(PerfElem.const(F, rng.randrange(F.q)) for _ in range(d)) for _ in range(d))
        if invertible and mat_rank(A) < d:
            continue
        if nonzero and _is_zero_mat(A):
            continue
        return A


def random_module(F: FqConfig, rng, d: int, r: int, invertible_top: bool = False,
                  density: float = 0.6) -> TModule:
    """Random valid module: ``A_0 = theta*I + N`` with N strictly lower triangular over F_q.

    Higher coefficients have entries in F_q.  With ``invertible_top`` the
    coefficient of tau^r is in GL_d(F_q).
    """
    T = PerfElem.theta(F)
    z = PerfElem.zero(F)
    A0 = tuple(tuple(T if i == j else (PerfElem.const(F, rng.randrange(F.q)) if j < i else z)
                     for j in range(d)) for i in range(d))
    mats = [A0]
    for k in range(1, r + 1):
        if k == r:
            mats.append(_random_fq_mat(F, rng, d, invertible=invertible_top, nonzero=True))
        elif rng.random() < density:
            mats.append(_random_fq_mat(F, rng, d))
        else:
            mats.append(_zero_mat(F, d))
    return TModule(F, mats)
