import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twyangian.algebra import RatFunc, poly_ring
from twyangian.weyl import full_group

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def polys(draw, d, max_terms=4, max_deg=3, with_hbar=True):
    """Random polynomial in x_1..x_d (and h) with small integer coefficients."""
    ring = poly_ring(d)
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        exps = [draw(st.integers(0, max_deg)) for _ in range(d)]
        exps.append(draw(st.integers(0, 2)) if with_hbar else 0)
        exps.append(0)
        terms[tuple(exps)] = draw(st.integers(-5, 5).filter(bool))
    return ring.ctx.from_dict(terms)


@st.composite
def nonzero_polys(draw, d, **kw):
    p = draw(polys(d, **kw))
    return p if p != 0 else poly_ring(d).one


@st.composite
def ratfuncs(draw, d):
    return RatFunc(poly_ring(d), draw(polys(d)), draw(nonzero_polys(d, max_terms=2, max_deg=2)))


def group_elements(d):
    return st.sampled_from(full_group(d))


@pytest.fixture
def ring2():
    return poly_ring(2)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = {}


def record(number: int, ok: bool, text: str):
    ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
