import pytest
from hypothesis import given
from hypothesis import strategies as st

from twyangian.algebra import RatFunc, poly_ring
from twyangian.flags import components, invariant_basis, validate_dimvec
from twyangian.generators import GeneratorSpec, build
from twyangian.skew import (
    BlockOp,
    NonInvariantInput,
    SkewElem,
    apply,
    block_bracket,
    block_compose,
    equal_on_invariants,
    skew_mul,
)
from twyangian.weyl import SignedPerm, parabolic_group

from conftest import group_elements, ratfuncs

R1 = poly_ring(1)
E1, S1 = SignedPerm.identity(1), SignedPerm.flip(1, 1)


def scalar(ring, p):
    return RatFunc(ring, p)


def gen(lt, n, d, kind, i, r):
    return build(GeneratorSpec(lt, n, d, kind, i, r))


def test_skew_mul_examples():
    x = scalar(R1, R1.x(1))
    a = SkewElem(1, {S1: x})
    assert skew_mul(a, a) == SkewElem(1, {E1: scalar(R1, -R1.x(1) ** 2)})
    one = SkewElem(1, {E1: scalar(R1, R1.one)})
    assert skew_mul(one, a) == a
    c = SkewElem(1, {E1: x})
    d = SkewElem(1, {E1: scalar(R1, R1.hbar)})
    assert skew_mul(c, d) == SkewElem(1, {E1: scalar(R1, R1.x(1) * R1.hbar)})


def test_zero_coefficients_are_dropped():
    assert SkewElem(1, {E1: scalar(R1, R1.zero)}).terms == {}


skew2 = st.dictionaries(group_elements(2), ratfuncs(2), max_size=3).map(lambda t: SkewElem(2, t))


@given(skew2, skew2, skew2)
def test_skew_mul_is_associative(a, b, c):
    assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))


@given(skew2, skew2, skew2)
def test_skew_mul_distributes(a, b, c):
    assert skew_mul(a, b + c) == skew_mul(a, b) + skew_mul(a, c)


def test_compose_e_after_f():
    e, f = gen("C", 1, 1, "E", 1, 0), gen("C", 1, 1, "F", 1, 0)
    ef = block_compose(e, f)
    src = validate_dimvec("C", 1, 1, (0, 2, 0))
    two = BlockOp(1, {src: (src, SkewElem(1, {E1: scalar(R1, 2 * R1.one)}))})
    restricted = BlockOp(1, {src: ef.blocks[src]})
    assert equal_on_invariants(restricted, two)[0]


def test_compose_with_empty_and_self_bracket():
    e = gen("C", 1, 2, "E", 1, 1)
    assert block_compose(e, BlockOp(2)).blocks == {}
    assert block_compose(BlockOp(2), e).blocks == {}
    h = gen("C", 1, 2, "H", 1, 2)
    assert block_bracket(h, h).is_zero_on_invariants()


def test_apply_examples():
    src = validate_dimvec("C", 1, 1, (1, 0, 1))
    tgt = validate_dimvec("C", 1, 1, (0, 2, 0))
    assert apply(gen("C", 1, 1, "E", 1, 0), src, R1.one) == (tgt, 2 * R1.one)
    assert apply(gen("C", 1, 1, "E", 1, 1), src, R1.one) == (tgt, R1.hbar)
    assert apply(gen("C", 1, 1, "F", 1, 0), tgt, R1.one) == (src, R1.one)


def test_apply_rejects_non_invariant_input():
    src = validate_dimvec("C", 1, 1, (0, 2, 0))
    with pytest.raises(NonInvariantInput):
        apply(gen("C", 1, 1, "F", 1, 0), src, R1.x(1))


def test_apply_without_block_is_zero():
    src = validate_dimvec("C", 1, 1, (0, 2, 0))
    assert apply(gen("C", 1, 1, "E", 1, 0), src, R1.one) == (None, R1.zero)


def test_equal_on_invariants_examples():
    nu = validate_dimvec("C", 1, 1, (0, 2, 0))
    one, x = scalar(R1, R1.one), scalar(R1, R1.x(1))

    def op(terms):
        return BlockOp(1, {nu: (nu, SkewElem(1, terms))})

    assert equal_on_invariants(op({E1: one, S1: one}), op({E1: 2 * one}))[0]
    assert equal_on_invariants(op({E1: x}), op({S1: x}))[0]
    ok, wit = equal_on_invariants(op({E1: x}), op({E1: x * x}))
    assert not ok and wit["source"] == "(0,2,0)"


@pytest.mark.parametrize("lie_type,n,d", [("C", 1, 2), ("B", 1, 2), ("C", 2, 2)])
def test_generators_are_well_formed(lie_type, n, d):
    """Left translation by W_{P_target} does not change the action on invariants."""
    ring = poly_ring(d)
    one = RatFunc(ring, ring.one)
    for kind in "EF":
        for i in range(1, n + 1):
            op = gen(lie_type, n, d, kind, i, 1)
            for src, (tgt, elem) in op.blocks.items():
                for u in parabolic_group(tgt):
                    moved = skew_mul(SkewElem(d, {u: one}), elem)
                    a = BlockOp(d, {src: (tgt, elem)})
                    b = BlockOp(d, {src: (tgt, moved)})
                    assert equal_on_invariants(a, b)[0]
                # and invariants land in invariants
                for f in invariant_basis(src, 2):
                    assert apply(op, src, f)[0] == tgt


@pytest.mark.parametrize("lie_type", ["B", "C"])
def test_composition_is_associative_on_generators(lie_type):
    n, d = 2, 2
    gens = [gen(lie_type, n, d, k, i, r) for k in "EFH" for i in (1, 2) for r in (0, 1)]
    triples = [(gens[0], gens[5], gens[9]), (gens[3], gens[6], gens[2]), (gens[8], gens[1], gens[7])]
    for a, b, c in triples:
        lhs = block_compose(block_compose(a, b), c)
        rhs = block_compose(a, block_compose(b, c))
        assert equal_on_invariants(lhs, rhs)[0]


@pytest.mark.parametrize("lie_type", ["B", "C"])
def test_jacobi_identity(lie_type):
    a, b, c = (gen(lie_type, 1, 2, k, 1, r) for k, r in (("E", 1), ("F", 0), ("H", 2)))
    br = block_bracket
    total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
    assert total.is_zero_on_invariants()


def test_aggregation_agrees_with_application():
    """Equality on invariants implies equal outputs on every basis element."""
    for nu in components("C", 1, 2):
        for f in invariant_basis(nu, 2):
            e, f2 = gen("C", 1, 2, "E", 1, 1), gen("C", 1, 2, "F", 1, 1)
            lhs = block_bracket(e, f2)
            red = lhs.reduced()
            assert apply(lhs, nu, f, check=False)[1] == apply(red, nu, f, check=False)[1]
