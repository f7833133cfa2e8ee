"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from tmodpure.fields import PerfElem, field_for_q, fq
from tmodpure.ore import SigmaSeries, TauPoly
from tmodpure.smith import TPoly

FIELDS = [field_for_q(2), field_for_q(3), fq(2, 2, (1, 1, 1)), fq(3, 2, (1, 0, 1))]
small_fields = st.sampled_from(FIELDS)


@st.composite
def polys(draw, F, max_deg, nonzero=False):
    terms = draw(st.dictionaries(st.integers(0, max_deg), st.integers(1, F.q - 1),
                                 min_size=1 if nonzero else 0, max_size=4))
    return terms


@st.composite
def perf_elems(draw, F, max_deg=3, max_level=1, fraction=True, nonzero=False):
    level = draw(st.integers(0, max_level))
    top = max_deg * F.q**level
    num = draw(polys(F, top, nonzero=nonzero))
    den = draw(polys(F, top, nonzero=True)) if fraction and draw(st.booleans()) else {0: 1}
    return PerfElem.make(F, level, num, den)


@st.composite
def tau_polys(draw, F, max_deg=2, **kw):
    n = draw(st.integers(0, max_deg + 1))
    return TauPoly(F, [draw(perf_elems(F, **kw)) for _ in range(n)])


@st.composite
def sigma_series(draw, F, nonzero=False, max_len=3, **kw):
    val = draw(st.integers(-3, 3))
    n = draw(st.integers(1 if nonzero else 0, max_len))
    coeffs = [draw(perf_elems(F, nonzero=(i == 0 and nonzero), **kw)) for i in range(n)]
    return SigmaSeries.make(F, val, coeffs)


@st.composite
def t_polys(draw, F, max_deg=3, monomial_lead=False):
    deg = draw(st.integers(0, max_deg))
    coeffs = [draw(sigma_series(F, fraction=False)) for _ in range(deg)]
    if monomial_lead:
        c = draw(perf_elems(F, fraction=False, nonzero=True))
        lead = SigmaSeries.monomial(F, c, draw(st.integers(-3, 3)))
    else:
        lead = draw(sigma_series(F, nonzero=True, fraction=False))
    return TPoly(F, coeffs + [lead])
