"""Skew group algebra over rational functions and component-graded operators.

A :class:`SkewElem` ``sum_w c_w w`` acts on a function by
``f -> sum_w c_w * act(w, f)``.  A :class:`BlockOp` carries one skew element per
source component together with its target component.

Operators are only meaningful on invariant classes: on the source component
``nu`` the input is W_{P_nu}-invariant, so ``w`` and ``w u`` (u in W_{P_nu}) act
identically.  :meth:`BlockOp.reduced` folds coefficients onto one
representative per right coset ``w W_{P_nu}``; two operators agree on
invariants iff their reduced forms coincide.
"""

from __future__ import annotations

from typing import Mapping

from .algebra import RatFunc, poly_ring
from .flags import DimVec
from .weyl import SignedPerm, act, act_poly, parabolic_group

__all__ = [
    "SkewElem",
    "BlockOp",
    "skew_mul",
    "block_compose",
    "block_bracket",
    "apply",
    "equal_on_invariants",
    "NonInvariantInput",
]


class NonInvariantInput(ValueError):
    pass


class SkewElem:
    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping[SignedPerm, RatFunc] = ()):
        self.d = d
        self.terms = {w: c for w, c in dict(terms).items() if not c.is_zero()}

    @classmethod
    def scalar(cls, c: RatFunc) -> "SkewElem":
        return cls(c.ring.d, {SignedPerm.identity(c.ring.d): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SkewElem") -> "SkewElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return SkewElem(self.d, out)

    def __neg__(self):
        return SkewElem(self.d, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RatFunc) -> "SkewElem":
        """Left multiplication by a scalar function."""
        return SkewElem(self.d, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "SkewElem") -> "SkewElem":
        return skew_mul(self, other)

    def map(self, fn) -> "SkewElem":
        return SkewElem(self.d, {w: fn(c) for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SkewElem) and self.terms == other.terms

    def __call__(self, f: RatFunc) -> RatFunc:
        acc = RatFunc(poly_ring(self.d), 0)
        for w, c in self.terms.items():
            acc = acc + c * act(w, f)
        return acc

    def __repr__(self):
        inner = ", ".join(f"{w.window()}: {c}" for w, c in self.terms.items())
        return f"SkewElem({{{inner}}})"


def skew_mul(a: SkewElem, b: SkewElem) -> SkewElem:
    """Twisted product: (c w)(c' v) = (c * act(w, c')) (w v)."""
    out: dict = {}
    for w, c in a.terms.items():
        for v, c2 in b.terms.items():
            term = c * act(w, c2)
            key = w * v
            out[key] = out[key] + term if key in out else term
    return SkewElem(a.d, out)


class BlockOp:
    """Mapping ``source DimVec -> (target DimVec, SkewElem)``."""

    __slots__ = ("d", "blocks")

    def __init__(self, d: int, blocks: Mapping = ()):
        self.d = d
        self.blocks = {}
        for src, (tgt, elem) in dict(blocks).items():
            if not elem.is_zero():
                self.blocks[src] = (tgt, elem)

    def sources(self):
        return sorted(self.blocks, key=lambda nu: nu.nu)

    def __add__(self, other: "BlockOp") -> "BlockOp":
        out = dict(self.blocks)
        for src, (tgt, elem) in other.blocks.items():
            if src in out:
                tgt0, elem0 = out[src]
                if tgt0 != tgt:
                    raise ValueError(f"cannot add blocks with targets {tgt0} and {tgt} at {src}")
                out[src] = (tgt, elem0 + elem)
            else:
                out[src] = (tgt, elem)
        return BlockOp(self.d, out)

    def __neg__(self):
        return BlockOp(self.d, {s: (t, -e) for s, (t, e) in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BlockOp":
        """Multiply by a scalar (int, Fraction or h-polynomial RatFunc)."""
        if not isinstance(c, RatFunc):
            c = RatFunc(poly_ring(self.d), c)
        return BlockOp(self.d, {s: (t, e.scale(c)) for s, (t, e) in self.blocks.items()})

    def __matmul__(self, other: "BlockOp") -> "BlockOp":
        return block_compose(self, other)

    def map_coeffs(self, fn) -> "BlockOp":
        return BlockOp(self.d, {s: (t, e.map(fn)) for s, (t, e) in self.blocks.items()})

    def reduced(self) -> "BlockOp":
        """Aggregate coefficients over right cosets of the source parabolic."""
        out = {}
        for src, (tgt, elem) in self.blocks.items():
            rep = parabolic_group(src).right_coset_rep()
            agg: dict = {}
            for w, c in elem.terms.items():
                r = rep[w]
                agg[r] = agg[r] + c if r in agg else c
            out[src] = (tgt, SkewElem(self.d, agg))
        return BlockOp(self.d, out)

    def is_zero_on_invariants(self) -> bool:
        return not self.reduced().blocks

    def __repr__(self):
        parts = [f"{s.label()}->{t.label()}: {len(e.terms)} terms" for s, (t, e) in self.blocks.items()]
        return f"BlockOp({'; '.join(parts)})"


def block_compose(a: BlockOp, b: BlockOp, reduce: bool = True) -> BlockOp:
    """``a`` after ``b``.  Blocks whose target/source do not match compose to zero."""
    out = {}
    for src, (mid, eb) in b.blocks.items():
        if mid not in a.blocks:
            continue
        tgt, ea = a.blocks[mid]
        out[src] = (tgt, skew_mul(ea, eb))
    res = BlockOp(a.d, out)
    return res.reduced() if reduce else res


def block_bracket(a: BlockOp, b: BlockOp) -> BlockOp:
    return block_compose(a, b) - block_compose(b, a)


def apply(op: BlockOp, nu: DimVec, f, check: bool = True):
    """Apply ``op`` to the invariant polynomial ``f`` on component ``nu``.

    Returns ``(target, polynomial)``; ``(None, 0)`` if ``op`` has no block at ``nu``.
    """
    ring = poly_ring(nu.d)
    if check and not all(act_poly(u, f) == f for u in parabolic_group(nu)):
        raise NonInvariantInput(f"{f} is not W_P-invariant on {nu.label()}")
    if nu not in op.blocks:
        return None, ring.zero
    tgt, elem = op.blocks[nu]
    val = elem(RatFunc(ring, f))
    if not val.is_polynomial():
        raise ValueError(f"operator output on {nu.label()} is not a polynomial: {val}")
    out = val.as_poly()
    if check and not all(act_poly(u, out) == out for u in parabolic_group(tgt)):
        raise ValueError(f"output is not invariant on target {tgt.label()}")
    return tgt, out


def equal_on_invariants(a: BlockOp, b: BlockOp):
    """Compare two operators on invariant inputs.

    Returns ``(True, None)`` or ``(False, witness)`` where ``witness`` is a
    dict naming the first differing source component, coset representative and
    the aggregated coefficients on both sides.
    """
    ra, rb = a.reduced(), b.reduced()
    srcs = sorted(set(ra.blocks) | set(rb.blocks), key=lambda nu: nu.nu)
    for src in srcs:
        ta, ea = ra.blocks.get(src, (None, SkewElem(a.d)))
        tb, eb = rb.blocks.get(src, (None, SkewElem(b.d)))
        if ta is not None and tb is not None and ta != tb:
            return False, {"source": src.label(), "reason": "targets differ",
                           "targets": [ta.label(), tb.label()]}
        keys = sorted(set(ea.terms) | set(eb.terms), key=SignedPerm.sort_key)
        for w in keys:
            ca = ea.terms.get(w)
            cb = eb.terms.get(w)
            if ca is None or cb is None or ca != cb:
                return False, {
                    "source": src.label(),
                    "target": (ta or tb).label(),
                    "coset": list(w.window()),
                    "lhs": str(ca) if ca is not None else "0",
                    "rhs": str(cb) if cb is not None else "0",
                }
    return True, None
