"""Exact arithmetic kernel.

Polynomials are ``flint.fmpq_mpoly`` objects over the rationals in the
variables ``x1 .. xd, h, z`` (``h`` plays the role of hbar, ``z`` is only used
for generating-series work).  The monomial order is graded lexicographic with
``x1 > ... > xd > h > z``.

:class:`RatFunc` is a normalized quotient of two such polynomials: numerator
and denominator are coprime and the denominator has leading coefficient 1, so
equality is a syntactic comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import flint

__all__ = [
    "PolyRing",
    "poly_ring",
    "RatFunc",
    "SeriesZ",
    "rf_arith",
    "rf_substitute",
    "series_coeffs",
    "poly_terms",
]


class PolyRing:
    """Polynomial ring Q[x1..xd, h, z] shared by every object of rank ``d``."""

    def __init__(self, d: int):
        if d < 0:
            raise ValueError("rank must be non-negative")
        self.d = d
        self.names = tuple(f"x{t}" for t in range(1, d + 1)) + ("h", "z")
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "deglex")
        gens = self.ctx.gens()
        self.xs = tuple(gens[:d])
        self.hbar = gens[d]
        self.z = gens[d + 1]
        self.zero = self.ctx.from_dict({})
        self.one = self.ctx.from_dict({(0,) * (d + 2): 1})

    def __repr__(self):
        return f"PolyRing(d={self.d})"

    def x(self, t: int):
        """The variable x_t (1-based)."""
        return self.xs[t - 1]

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero
        return self.ctx.from_dict({(0,) * (self.d + 2): flint.fmpq(c.numerator, c.denominator)})

    def linear(self, coeffs: Sequence[int], hbar_coeff=0):
        """The linear form sum_t coeffs[t] x_{t+1} + hbar_coeff * h."""
        terms = {}
        n = self.d + 2
        for t, a in enumerate(coeffs):
            if a:
                e = [0] * n
                e[t] = 1
                terms[tuple(e)] = a
        hc = Fraction(hbar_coeff)
        if hc:
            e = [0] * n
            e[self.d] = 1
            terms[tuple(e)] = flint.fmpq(hc.numerator, hc.denominator)
        return self.ctx.from_dict(terms)

    def rf(self, num, den=None) -> "RatFunc":
        return RatFunc(self, num, den)


@lru_cache(maxsize=None)
def poly_ring(d: int) -> PolyRing:
    return PolyRing(d)


def poly_terms(p) -> dict:
    """Exponent tuple -> Fraction mapping; empty for the zero polynomial."""
    return {k: Fraction(int(v.p), int(v.q)) for k, v in p.to_dict().items()}


def _exact_div(a, b):
    return a / b


class RatFunc:
    """Normalized rational function over Q.

    Construct from polynomials (``num``, ``den``) or from an int/Fraction via
    ``RatFunc(ring, value)``.  Instances are immutable.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: PolyRing, num, den=None, *, _normalized=False):
        ctx = ring.ctx
        if not isinstance(num, flint.fmpq_mpoly):
            num = ring.const(num)
        if den is None:
            den = ring.one
        elif not isinstance(den, flint.fmpq_mpoly):
            den = ring.const(den)
        if not _normalized:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = ring.one
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = _exact_div(num, g)
                    den = _exact_div(den, g)
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        assert num.context() is ctx
        self.ring = ring
        self.num = num
        self.den = den

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, ring, num, den):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.num = num
        obj.den = den
        return obj

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, flint.fmpq_mpoly):
            return RatFunc._raw(self.ring, other, self.ring.one)
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(self.ring, self.ring.const(other), self.ring.one)
        return NotImplemented

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self):
        if not self.den.is_one():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFunc(self.ring, a + c, b)
        if b.is_one():
            return RatFunc._raw(self.ring, a * d + c, d)
        if d.is_one():
            return RatFunc._raw(self.ring, a + c * b, b)
        g = b.gcd(d)
        if g.is_one():
            return RatFunc(self.ring, a * d + c * b, b * d)
        bg = _exact_div(b, g)
        dg = _exact_div(d, g)
        return RatFunc(self.ring, a * dg + c * bg, bg * d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.ring, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc._raw(self.ring, self.ring.zero, self.ring.one)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc._raw(self.ring, a * c, b)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a = _exact_div(a, g1)
            d = _exact_div(d, g1)
        if not g2.is_one():
            c = _exact_div(c, g2)
            b = _exact_div(b, g2)
        num, den = a * c, b * d
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc._raw(self.ring, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc._raw(self.ring, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.ring, self.num ** k, self.den ** k)

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def cross_equal(self, other) -> bool:
        """Equality by cross-multiplication (independent of normalization)."""
        other = self._coerce(other)
        return self.num * other.den == other.num * self.den

    # substitution -----------------------------------------------------------
    def substitute_polys(self, images) -> "RatFunc":
        """Substitute generators by the polynomials ``images`` (all d+2 of them)."""
        ctx = self.ring.ctx
        num = self.num.compose(*images, ctx=ctx)
        den = self.den.compose(*images, ctx=ctx)
        return RatFunc(self.ring, num, den)

    def substitute_automorphism(self, images) -> "RatFunc":
        """Like :meth:`substitute_polys` for invertible linear substitutions.

        Coprimality survives an automorphism, so only the leading coefficient
        of the denominator has to be renormalized.
        """
        ctx = self.ring.ctx
        num = self.num.compose(*images, ctx=ctx)
        if self.den.is_one():
            return RatFunc._raw(self.ring, num, self.den)
        den = self.den.compose(*images, ctx=ctx)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc._raw(self.ring, num, den)

    def at_hbar_zero(self) -> "RatFunc":
        """Set h = 0; raises if h = 0 is a pole."""
        den = self.den.subs({"h": 0})
        if den.is_zero():
            raise ZeroDivisionError(f"pole at h=0: {self}")
        return RatFunc(self.ring, self.num.subs({"h": 0}), den)

    def degree_in(self, name: str) -> int:
        idx = self.ring.names.index(name)
        return max((m[idx] for m in self.num.monoms()), default=-1)

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Binary arithmetic by name: ``add``, ``sub``, ``mul`` or ``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_substitute(f: RatFunc, images: dict) -> RatFunc:
    """Substitute ``x_t -> sign * x_{target}`` for a signed permutation.

    ``images`` maps a 1-based variable index t to a pair ``(sign, target)``;
    variables not mentioned are fixed, and h, z are always fixed.
    """
    ring = f.ring
    imgs = list(ring.xs)
    seen = set()
    for t, (sign, target) in images.items():
        if sign not in (1, -1) or not 1 <= target <= ring.d or not 1 <= t <= ring.d:
            raise ValueError(f"malformed image {t} -> {sign}*x{target}")
        imgs[t - 1] = ring.x(target) if sign == 1 else -ring.x(target)
        seen.add(target)
    if len(seen) != len(images):
        raise ValueError("images do not come from a signed permutation")
    imgs += [ring.hbar, ring.z]
    return f.substitute_automorphism(imgs)


class SeriesZ:
    """Truncated expansion ``sum_k c_k z^{-k} + O(z^{-m-1})`` at z = infinity."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Iterable[RatFunc]):
        self.ring = ring
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "SeriesZ") -> "SeriesZ":
        m = min(self.order, other.order)
        zero = RatFunc(self.ring, 0)
        out = []
        for k in range(m + 1):
            acc = zero
            for j in range(k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return SeriesZ(self.ring, out)

    def __add__(self, other: "SeriesZ") -> "SeriesZ":
        m = min(self.order, other.order)
        return SeriesZ(self.ring, [self.coeffs[k] + other.coeffs[k] for k in range(m + 1)])

    def __sub__(self, other: "SeriesZ") -> "SeriesZ":
        m = min(self.order, other.order)
        return SeriesZ(self.ring, [self.coeffs[k] - other.coeffs[k] for k in range(m + 1)])

    def __eq__(self, other):
        return isinstance(other, SeriesZ) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"SeriesZ({[str(c) for c in self.coeffs]})"


def _split_z(p, ring: PolyRing) -> dict:
    """Polynomial -> {z-exponent: coefficient polynomial free of z}."""
    zi = ring.d + 1
    parts: dict = {}
    for mon, c in p.to_dict().items():
        k = mon[zi]
        parts.setdefault(k, {})[mon[:zi] + (0,)] = c
    return {k: ring.ctx.from_dict(v) for k, v in parts.items()}


def series_coeffs(f: RatFunc, order: int) -> SeriesZ:
    """Coefficients of z^0 .. z^-order in the expansion of f at z = infinity."""
    ring = f.ring
    num = _split_z(f.num, ring)
    den = _split_z(f.den, ring)
    dn = max(num, default=-1)
    dd = max(den)
    if dn > dd:
        raise ValueError("rational function has a pole at z = infinity")
    # in w = 1/z: a(w) / b(w) with a_k = num_{dd-k}, b_k = den_{dd-k}
    a = [RatFunc(ring, num.get(dd - k, ring.zero)) for k in range(dd + 1)]
    b = [RatFunc(ring, den.get(dd - k, ring.zero)) for k in range(dd + 1)]
    b0_inv = b[0].inverse()
    out = []
    zero = RatFunc(ring, 0)
    for k in range(order + 1):
        acc = a[k] if k <= dd else zero
        for j in range(1, min(k, dd) + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc * b0_inv)
    return SeriesZ(ring, out)
