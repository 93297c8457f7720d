"""Dimension vectors, root data and Euler classes for type B/C partial flags.

Weights are integer coefficient tuples ``(a_1, .., a_d)`` standing for the
linear form ``sum a_t x_t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import comb

from .algebra import RatFunc, poly_ring
from .weyl import SignedPerm, act_poly, parabolic_group

__all__ = [
    "DimVec",
    "validate_dimvec",
    "components",
    "all_roots",
    "tangent_weights",
    "levi_root_count",
    "euler_class",
    "chern_roots",
    "invariant_basis",
    "weight_poly",
]

LIE_TYPES = ("B", "C")


@dataclass(frozen=True)
class DimVec:
    lie_type: str
    n: int
    d: int
    nu: tuple

    @cached_property
    def nubar(self) -> tuple:
        """Partial sums; ``nubar[i]`` is nu_1 + ... + nu_i (``nubar[0] == 0``)."""
        out = [0]
        for v in self.nu:
            out.append(out[-1] + v)
        return tuple(out)

    @cached_property
    def blocks(self) -> tuple:
        """0-based variable indices of blocks 1..n."""
        nb = self.nubar
        return tuple(tuple(range(nb[i - 1], nb[i])) for i in range(1, self.n + 1))

    @cached_property
    def middle(self) -> tuple:
        return tuple(range(self.nubar[self.n], self.d))

    def shift(self, i: int, sign: int):
        """nu + 1_i (sign=+1) or nu - 1_i (sign=-1); None if it leaves the valid range."""
        if not 1 <= i <= self.n:
            raise ValueError(f"node {i} out of range 1..{self.n}")
        nu = list(self.nu)
        m = 2 * self.n + 2  # mirror: position p <-> m - p (1-based)
        nu[i - 1] += sign
        nu[i] -= sign
        if i < self.n:
            nu[m - i - 1] += sign
            nu[m - i - 2] -= sign
        else:
            nu[i] -= sign
            nu[i + 1] += sign
        if min(nu) < 0:
            return None
        return DimVec(self.lie_type, self.n, self.d, tuple(nu))

    def label(self) -> str:
        return "(" + ",".join(map(str, self.nu)) + ")"

    def __repr__(self):
        return f"DimVec({self.lie_type}, n={self.n}, d={self.d}, {self.label()})"


def validate_dimvec(lie_type: str, n: int, d: int, nu) -> DimVec:
    nu = tuple(int(v) for v in nu)
    if lie_type not in LIE_TYPES:
        raise ValueError(f"unknown Lie type {lie_type!r}")
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if len(nu) != 2 * n + 1:
        raise ValueError(f"dimension vector must have {2 * n + 1} entries")
    if any(v < 0 for v in nu):
        raise ValueError("negative entry in dimension vector")
    for i in range(1, n + 1):
        if nu[i - 1] != nu[2 * n + 1 - i]:
            raise ValueError(f"symmetry violated: nu_{i} != nu_{2 * n + 2 - i}")
    total = 2 * d + (1 if lie_type == "B" else 0)
    if sum(nu) != total:
        raise ValueError(f"entries sum to {sum(nu)}, expected {total}")
    return DimVec(lie_type, n, d, nu)


@lru_cache(maxsize=None)
def components(lie_type: str, n: int, d: int) -> tuple:
    """All valid dimension vectors, ordered lexicographically by (nu_1..nu_n)."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            mid = 2 * remaining + (1 if lie_type == "B" else 0)
            nu = tuple(prefix) + (mid,) + tuple(reversed(prefix))
            out.append(DimVec(lie_type, n, d, nu))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v)

    rec([], d)
    assert len(out) == comb(d + n, n)
    return tuple(out)


@lru_cache(maxsize=None)
def all_roots(lie_type: str, d: int) -> tuple:
    """All roots +-x_a +- x_b (a<b) and +-2x_a (type C) or +-x_a (type B)."""
    long = 2 if lie_type == "C" else 1
    roots = []
    for a in range(d):
        for b in range(a + 1, d):
            for sa in (1, -1):
                for sb in (1, -1):
                    e = [0] * d
                    e[a], e[b] = sa, sb
                    roots.append(tuple(e))
        for sa in (1, -1):
            e = [0] * d
            e[a] = sa * long
            roots.append(tuple(e))
    return tuple(roots)


def _xi(nu: DimVec) -> list:
    xi = [0] * nu.d
    for i, blk in enumerate(nu.blocks, start=1):
        for t in blk:
            xi[t] = nu.n + 1 - i
    return xi


@lru_cache(maxsize=None)
def tangent_weights(nu: DimVec, xi: tuple = None) -> tuple:
    """Roots with negative pairing against the block cocharacter: the weights of g/p_nu."""
    if xi is None:
        xi = _xi(nu)
    return tuple(r for r in all_roots(nu.lie_type, nu.d) if sum(a * b for a, b in zip(r, xi)) < 0)


def levi_root_count(nu: DimVec) -> int:
    """Number of roots of the Levi factor, from block sizes alone."""
    count = sum(v * (v - 1) for v in nu.nu[: nu.n])  # gl blocks
    m = len(nu.middle)
    count += 2 * m * m  # sp(2m) and so(2m+1) both have 2m^2 roots
    return count


def weight_poly(ring, weight, hbar_coeff=0):
    return ring.linear(weight, hbar_coeff)


def euler_class(nu: DimVec, w: SignedPerm, with_cotangent: bool = False) -> RatFunc:
    """Equivariant Euler class of Fl_nu (or of T*Fl_nu) at the fixed point w."""
    ring = poly_ring(nu.d)
    p = ring.one
    for a in tangent_weights(nu):
        p = p * ring.linear(a)
        if with_cotangent:
            p = p * ring.linear([-v for v in a], 1)
    return RatFunc(ring, act_poly(w, p))


def chern_roots(nu: DimVec, j: int) -> tuple:
    """Chern roots of the tautological bundle V_j at the base point, j = 0..n+1."""
    if not 0 <= j <= nu.n + 1:
        raise ValueError(f"bundle index {j} out of range 0..{nu.n + 1}")
    d = nu.d

    def unit(t, s=1):
        e = [0] * d
        e[t] = s
        return tuple(e)

    if j <= nu.n:
        return tuple(unit(t) for t in range(nu.nubar[j]))
    roots = [unit(t) for t in range(nu.nubar[nu.n])]
    for t in nu.middle:
        roots.append(unit(t))
        roots.append(unit(t, -1))
    if nu.lie_type == "B":
        roots.append((0,) * d)
    return tuple(roots)


@lru_cache(maxsize=None)
def invariant_basis(nu: DimVec, degree: int) -> tuple:
    """Orbit sums of monomials under W_{P_nu}, of total degree <= ``degree``.

    Each element is normalized to leading coefficient 1.
    """
    ring = poly_ring(nu.d)
    group = parabolic_group(nu)
    seen = set()
    out = []
    for deg in range(degree + 1):
        for combo in combinations_with_replacement(range(nu.d), deg):
            exps = [0] * (nu.d + 2)
            for t in combo:
                exps[t] += 1
            mono = ring.ctx.from_dict({tuple(exps): 1})
            orbit = ring.zero
            for u in group:
                orbit = orbit + act_poly(u, mono)
            if orbit.is_zero():
                continue
            support = frozenset(orbit.monoms())
            if support in seen:
                continue
            seen.add(support)
            out.append(orbit / orbit.leading_coefficient())
    return tuple(out)
