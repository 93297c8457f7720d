from math import factorial

import pytest
from hypothesis import given

from twyangian.algebra import RatFunc, poly_ring
from twyangian.flags import components, validate_dimvec
from twyangian.weyl import SignedPerm, act, coset_reps, full_group, parabolic_group

from conftest import group_elements, ratfuncs


def test_action_examples():
    r1, r2 = poly_ring(1), poly_ring(2)
    assert act(SignedPerm.flip(1, 1), RatFunc(r1, r1.x(1))) == RatFunc(r1, -r1.x(1))
    x1, x2 = r2.xs
    swap = SignedPerm.transposition(2, 1, 2)
    assert act(swap, RatFunc(r2, x1 + 2 * x2)) == RatFunc(r2, x2 + 2 * x1)
    # as a map on variables: x_1 -> x_2 -> x_1 via the swap, then x_1 -> -x_1
    w = swap * SignedPerm.flip(2, 1)
    assert act(w, RatFunc(r2, x1 * x2**2)) == RatFunc(r2, -(x1**2) * x2)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_group_order(d):
    assert len(set(full_group(d))) == 2**d * factorial(d)


@given(group_elements(3), group_elements(3), group_elements(3))
def test_group_axioms(u, v, w):
    e = SignedPerm.identity(3)
    assert (u * v) * w == u * (v * w)
    assert u * u.inverse() == e == u.inverse() * u
    assert SignedPerm.from_window(u.window()) == u


@given(group_elements(2), group_elements(2), ratfuncs(2))
def test_action_is_a_left_action(u, v, f):
    assert act(u, act(v, f)) == act(u * v, f)


@pytest.mark.parametrize("nu,order", [((0, 4, 0), 8), ((1, 2, 1), 2), ((2, 0, 2), 2)])
def test_parabolic_examples(nu, order):
    g = parabolic_group(validate_dimvec("C", 1, 2, nu))
    assert len(g) == order


@pytest.mark.parametrize("lie_type", ["B", "C"])
@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)])
def test_parabolic_order_formula_and_closure(lie_type, n, d):
    for nu in components(lie_type, n, d):
        g = parabolic_group(nu)
        m = d - nu.nubar[n]
        expected = 2**m * factorial(m)
        for v in nu.nu[:n]:
            expected *= factorial(v)
        assert len(g) == expected
        assert g.is_closed()
        assert all(u.inverse() in g for u in g)


def test_coset_examples():
    big = parabolic_group(validate_dimvec("C", 1, 2, (0, 4, 0)))
    small = parabolic_group(validate_dimvec("C", 1, 2, (1, 2, 1))).intersection(big)
    assert len(small) == 2
    assert len(coset_reps(big, small)) == 4
    assert coset_reps(big, big) == [SignedPerm.identity(2)]
    w1 = parabolic_group(validate_dimvec("C", 1, 1, (0, 2, 0)))
    triv = parabolic_group(validate_dimvec("C", 1, 1, (1, 0, 1)))
    assert set(coset_reps(w1, triv)) == {SignedPerm.identity(1), SignedPerm.flip(1, 1)}


def test_coset_reps_rejects_non_subgroup():
    a = parabolic_group(validate_dimvec("C", 1, 2, (2, 0, 2)))
    b = parabolic_group(validate_dimvec("C", 1, 2, (1, 2, 1)))
    with pytest.raises(ValueError):
        coset_reps(a, b)


@pytest.mark.parametrize("lie_type,n,d", [("C", 1, 3), ("B", 2, 3)])
def test_coset_reps_partition_and_minimality(lie_type, n, d):
    for nu in components(lie_type, n, d):
        for i in range(1, n + 1):
            for sign in (1, -1):
                other = nu.shift(i, sign)
                if other is None:
                    continue
                big = parabolic_group(nu)
                small = big.intersection(parabolic_group(other))
                reps = coset_reps(big, small)
                assert len(reps) * len(small) == len(big)
                cover = {w * u for w in reps for u in small}
                assert cover == set(big)
                for w in reps:
                    assert all(w.length() <= (w * u).length() for u in small)


def test_right_coset_rep_is_constant_on_cosets():
    nu = validate_dimvec("C", 1, 3, (1, 4, 1))
    g = parabolic_group(nu)
    rep = g.right_coset_rep()
    for w in full_group(3):
        assert all(rep[w * u] == rep[w] for u in g)
