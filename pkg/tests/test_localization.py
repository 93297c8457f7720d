import pytest
from hypothesis import given
from hypothesis import strategies as st

from twyangian.algebra import RatFunc, poly_ring
from twyangian.flags import components, validate_dimvec
from twyangian.localization import (
    LocVector,
    convolve,
    delocalize,
    fixed_points,
    localize,
    oracle_compare,
    orbit_sign,
    pair_euler,
    z_class_localized,
)
from twyangian.skew import NonInvariantInput
from twyangian.weyl import SignedPerm, act_poly, parabolic_group

from conftest import polys

R1 = poly_ring(1)
C101 = validate_dimvec("C", 1, 1, (1, 0, 1))
C020 = validate_dimvec("C", 1, 1, (0, 2, 0))
E, S = SignedPerm.identity(1), SignedPerm.flip(1, 1)


def rf(p, q=None):
    return RatFunc(R1, p, q)


def test_localize_examples():
    x = R1.x(1)
    v = localize(C101, R1.one)
    assert v.entries == {E: rf(R1.one, -2 * x), S: rf(R1.one, 2 * x)}
    v = localize(C101, x)
    half = rf(R1.const("-1/2"))
    assert v.entries == {E: half, S: half}
    assert localize(C101, R1.zero).is_zero()


def test_localize_rejects_non_invariant():
    with pytest.raises(NonInvariantInput):
        localize(C020, R1.x(1))


def test_delocalize_examples():
    half = rf(R1.const("-1/2"))
    assert delocalize(C101, LocVector(C101, {E: half, S: half})) == R1.x(1)
    with pytest.raises(ValueError):
        delocalize(C101, LocVector(C101, {E: rf(R1.one), S: rf(R1.zero)}))


def test_fixed_point_count():
    for lt in "BC":
        for nu in components(lt, 2, 3):
            g = parabolic_group(nu)
            assert len(fixed_points(nu)) * len(g) == 2**3 * 6


def symmetrize(nu, p):
    acc = poly_ring(nu.d).zero
    for u in parabolic_group(nu):
        acc = acc + act_poly(u, p)
    return acc


@pytest.mark.parametrize("cotangent", [False, True])
@given(p=polys(2), which=st.integers(0, 5))
def test_round_trip(cotangent, p, which):
    comps = components("C", 2, 2) if which < 3 else components("B", 1, 2)
    nu = comps[which % len(comps)]
    f = symmetrize(nu, p)
    assert delocalize(nu, localize(nu, f, cotangent), cotangent) == f


def test_pair_euler_at_origin():
    assert pair_euler(C020, C101, E) == rf(-2 * R1.x(1))


def test_end_to_end_values():
    for r, expected in ((0, 2 * R1.one), (1, R1.hbar)):
        z = z_class_localized(C020, 1, 1, r)
        out = convolve(z, localize(C101, R1.one))
        assert delocalize(C020, out) * orbit_sign("E", 1, C101) == expected


def test_convolve_zero_vector():
    z = z_class_localized(C020, 1, 1, 2)
    out = convolve(z, localize(C101, R1.zero))
    assert out.nu == C020 and out.is_zero()


def test_convolve_component_mismatch():
    z = z_class_localized(C020, 1, 1, 0)
    with pytest.raises(ValueError):
        convolve(z, localize(C020, R1.one))


def test_orbit_sign_reads_the_source():
    # type C picks up one extra sign at the last node
    assert orbit_sign("E", 1, C101) == -1
    assert orbit_sign("E", 1, validate_dimvec("B", 1, 1, (1, 1, 1))) == -1
    assert orbit_sign("F", 1, C020) == 1
    assert orbit_sign("F", 1, validate_dimvec("C", 1, 2, (1, 2, 1))) == -1


@pytest.mark.parametrize("lt", ["B", "C"])
@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("kind", ["E", "F"])
def test_oracle_n1(lt, d, kind):
    for r in range(3):
        res = oracle_compare(lt, 1, d, kind, 1, r, 2)
        assert res["status"] == "pass", res["witness"]
        assert res["compared"] > 0


@pytest.mark.parametrize("lt", ["B", "C"])
def test_oracle_n2(lt):
    for kind in "EF":
        for i in (1, 2):
            for r in (0, 1, 2):
                res = oracle_compare(lt, 2, 2, kind, i, r, 1)
                assert res["status"] == "pass", res["witness"]


def test_oracle_distinguishes_f_orientation():
    res = oracle_compare("C", 1, 2, "F", 1, 0, 1, f_orientation="outward")
    assert res["status"] == "fail"
    assert {"source", "target", "localized", "closed_formula"} <= set(res["witness"])
