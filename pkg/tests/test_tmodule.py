import random
from fractions import Fraction

import pytest

from tmodpure import newton as nw
from tmodpure.errors import ConfigMismatch, NilpotencyViolation, ParseError, ShapeError
from tmodpure.fields import PerfElem, field_for_q, fq
from tmodpure.ore import TauPoly
from tmodpure.tmodule import (PRESETS, TModule, asp_check, carlitz, d2, d2_structure_report,
                              d2m, det, direct_sum, format_structure_report, from_json,
                              mat_rank, maurischat_M, preset, random_module, to_json)

F2 = field_for_q(2)


def tau_matrix_power(E, n):
    """D^n computed entrywise with TauPoly arithmetic."""
    d = E.d
    D = [[E.entry(i, j) for j in range(d)] for i in range(d)]
    P = D
    for _ in range(n - 1):
        P = [[sum((P[i][k] * D[k][j] for k in range(d)), TauPoly(E.F, []))
              for j in range(d)] for i in range(d)]
    return P


def coeff_entry(mats, i, j):
    return TauPoly(mats[0][0][0].F, [A[i][j] for A in mats])


class TestValidate:
    def test_presets_valid(self):
        for name in PRESETS:
            preset(name, 2).validate()

    def test_non_nilpotent_rejected(self):
        one, T = PerfElem.one(F2), PerfElem.theta(F2)
        E = TModule(F2, [[[T, one], [one, T]]])
        with pytest.raises(NilpotencyViolation):
            E.validate()

    def test_nilpotent_offdiagonal_ok(self):
        one, z, T = PerfElem.one(F2), PerfElem.zero(F2), PerfElem.theta(F2)
        TModule(F2, [[[T, z], [one, T]]]).validate()

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            TModule(F2, [])
        with pytest.raises(ShapeError):
            TModule(F2, [[[PerfElem.one(F2)]], [[PerfElem.one(F2)] * 2] * 2])


class TestPower:
    @pytest.mark.parametrize("build", [carlitz, maurischat_M, d2, lambda q: d2m(q, 1)])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_power_matches_entrywise_product(self, build, n):
        E = build(2)
        mats = E.power(n)
        oracle = tau_matrix_power(E, n)
        for i in range(E.d):
            for j in range(E.d):
                assert coeff_entry(mats, i, j) == oracle[i][j]

    def test_carlitz_square(self):
        F = field_for_q(3)
        mats = carlitz(3).power(2)
        T = PerfElem.theta(F)
        assert [A[0][0] for A in mats] == [T**2, T + T**3, PerfElem.one(F)]

    def test_powers_compose(self):
        E = maurischat_M(2)
        from tmodpure.tmodule import twisted_mat_mul
        assert twisted_mat_mul(E.power(2), E.power(3)) == E.power(5)

    def test_bad_exponent(self):
        with pytest.raises(ValueError):
            carlitz().power(0)


class TestAsp:
    def test_carlitz(self):
        rep = asp_check(carlitz(2))
        assert rep.found and (rep.s, rep.r) == (1, 1)

    def test_maurischat_found_at_two(self):
        rep = asp_check(maurischat_M(2), 4)
        assert rep.found and rep.s == 2

    @pytest.mark.parametrize("q", [2, 3])
    def test_d2_never(self, q):
        rep = asp_check(d2(q), 6)
        assert not rep.found
        assert [k for _, _, k in rep.per_s] == [1] * 6

    def test_report_dict(self):
        d = asp_check(carlitz(2)).to_dict()
        assert d["found"] and d["per_s"] == [{"s": 1, "r": 1, "top_rank": 1}]

    def test_bad_smax(self):
        with pytest.raises(ValueError):
            asp_check(carlitz(2), 0)


class TestBuilders:
    def test_direct_sum_shape(self):
        E = direct_sum(d2(2), carlitz(2))
        assert E.d == 3 and E.r == 2
        assert E == d2m(2, 1)

    def test_direct_sum_mismatch(self):
        with pytest.raises(ConfigMismatch):
            direct_sum(d2(2, "constant-I"), carlitz(2))
        with pytest.raises(ConfigMismatch):
            direct_sum(carlitz(2), carlitz(3))

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset("nope")
        with pytest.raises(ValueError):
            d2(2, "nope")

    def test_det_and_rank(self):
        one, z, T = PerfElem.one(F2), PerfElem.zero(F2), PerfElem.theta(F2)
        A = ((T, one), (one, T))
        assert det(A) == T**2 + one
        assert mat_rank(((z, z), (T, z))) == 1


class TestStructureReport:
    @pytest.mark.parametrize("variant", ["theta-constant", "constant-I"])
    @pytest.mark.parametrize("q", [2, 3])
    def test_shapes(self, q, variant):
        for n in range(2, 6):
            rep = d2_structure_report(n, q, variant)
            assert rep["shape_ok"], [c for c in rep["checks"] if not c["ok"]]

    def test_n2_top_degree(self):
        for q in (2, 3):
            top = d2_structure_report(2, q)["top"]
            assert top["measured"] == q and top["claimed"] == q**2 and not top["match"]

    def test_table_text(self):
        text = format_structure_report(d2_structure_report(3))
        assert "x (top)" in text and "DISCREPANCY" in text and "a_1" in text

    def test_range(self):
        with pytest.raises(ValueError):
            d2_structure_report(1)


class TestJson:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_roundtrip_presets(self, name):
        E = preset(name, 3)
        assert from_json(to_json(E)) == E

    def test_roundtrip_extension_field(self):
        F = fq(2, 2, (1, 1, 1))
        E = maurischat_M(F=F)
        back = from_json(to_json(E))
        assert back == E and back.F.k == 2

    def test_bad_inputs(self):
        with pytest.raises(ParseError):
            from_json("{")
        with pytest.raises(ParseError):
            from_json('{"p": 2}')
        with pytest.raises(ShapeError):
            from_json('{"p": 2, "d": 2, "coeffs": [[["T"]]]}')


def test_asp_implies_pure():
    rng = random.Random(5)
    checked = 0
    while checked < 20:
        F = field_for_q(rng.choice([2, 3]))
        E = random_module(F, rng, rng.randint(1, 2), rng.randint(1, 2))
        rep = asp_check(E, 2)
        if not rep.found:
            continue
        c, _ = nw.classify_tmodule(E)
        assert c.pure and c.weight == Fraction(rep.s, rep.r)
        checked += 1
