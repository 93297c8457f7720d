"""Generator operators E_{i,r}, F_{i,r}, H_{i,r} as block operators.

E and F are symmetrizations over minimal coset representatives of
``W_{P_nu} / (W_{P_nu} cap W_{P_nu'})`` of an explicit product of factors
``1 + h / (linear form)`` times a power of the line-bundle Chern root.
H is diagonal: multiplication by a coefficient of the generating series

    R(z) = prod_{a in A} (z - a + h/2) / (z - a - h/2)
         * prod_{b in B} (z - b - h) / (z - b + h)

where B are the Chern roots of V_i and A those of V_{i-1} and V_{i+1}.

Two conventions are selectable per generator:

``root_shift``
    ``"graded"`` (default) twists V_j by L(q)^{n-j} for j <= n, so every Chern
    root of V_j is shifted by (n-j)h/2, and the line root entering E_{i,r},
    F_{i,r} is shifted by (n-i)h/2.  ``"none"`` uses bare roots.  The two
    agree for n = 1.
``f_orientation``
    ``"inward"`` (default) uses factors 1 + h/(x_t - x_k) in F, the form
    obtained from fixed-point localization; ``"outward"`` uses
    1 + h/(x_k - x_t).

``sign_mode="target-signs"`` multiplies each E block by (-1)^{nu_{i+1}} (one
more sign at the last node in type C) and each F block by (-1)^{nu_i}, with
nu the target.  The default ``"plain"`` leaves the products unsigned; the
sign bookkeeping of the localization route lives in
:func:`twyangian.localization.orbit_sign`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import RatFunc, SeriesZ, poly_ring, series_coeffs
from .flags import DimVec, chern_roots, components
from .skew import BlockOp, SkewElem
from .weyl import SignedPerm, act, coset_reps, parabolic_group

__all__ = [
    "F_ORIENTATIONS",
    "GeneratorSpec",
    "H_MODES",
    "ROOT_SHIFTS",
    "SIGN_MODES",
    "build",
    "build_E",
    "build_F",
    "build_H",
    "bundle_shift",
    "e_factor",
    "f_factor",
    "h_value",
    "h_series",
    "specialize_hbar_zero",
]

H_MODES = ("series", "monomial")
SIGN_MODES = ("plain", "target-signs")
ROOT_SHIFTS = ("graded", "none")
F_ORIENTATIONS = ("inward", "outward")


@dataclass(frozen=True)
class GeneratorSpec:
    lie_type: str
    n: int
    d: int
    kind: str
    i: int
    r: int
    h_mode: str = "series"
    sign_mode: str = "plain"
    root_shift: str = "graded"
    f_orientation: str = "inward"

    def __post_init__(self):
        if self.lie_type not in ("B", "C"):
            raise ValueError(f"unknown Lie type {self.lie_type!r}")
        if self.kind not in ("E", "F", "H"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"node {self.i} out of range 1..{self.n}")
        if self.r < 0 or self.d < 0:
            raise ValueError("r and d must be non-negative")
        if self.h_mode not in H_MODES:
            raise ValueError(f"unknown h_mode {self.h_mode!r}")
        if self.sign_mode not in SIGN_MODES:
            raise ValueError(f"unknown sign_mode {self.sign_mode!r}")
        if self.root_shift not in ROOT_SHIFTS:
            raise ValueError(f"unknown root_shift {self.root_shift!r}")
        if self.f_orientation not in F_ORIENTATIONS:
            raise ValueError(f"unknown f_orientation {self.f_orientation!r}")


def _hook(ring, form):
    """1 + h / form, with ``form`` a polynomial."""
    return RatFunc(ring, form + ring.hbar, form)


def bundle_shift(n: int, j: int, root_shift: str = "graded") -> Fraction:
    """Shift (in units of h) applied to the Chern roots of V_j."""
    if root_shift == "none" or j > n:
        return Fraction(0)
    return Fraction(n - j, 2)


def _line_power(ring, k: int, r: int, shift: Fraction) -> RatFunc:
    return RatFunc(ring, ring.linear([1 if t == k else 0 for t in range(1, ring.d + 1)], shift) ** r)


def e_factor(target: DimVec, i: int, r: int, root_shift: str = "graded") -> RatFunc:
    """The product symmetrized by E_{i,r} on the block landing in ``target``."""
    ring = poly_ring(target.d)
    nb = target.nubar
    k = nb[i] + 1
    xk = ring.x(k)
    rho = _line_power(ring, k, r, bundle_shift(target.n, i, root_shift))
    if i < target.n:
        for t in range(k + 1, nb[i + 1] + 1):
            rho = rho * _hook(ring, xk - ring.x(t))
        return rho
    for t in range(k + 1, target.d + 1):
        rho = rho * _hook(ring, xk - ring.x(t)) * _hook(ring, xk + ring.x(t))
    if target.lie_type == "C":
        rho = rho * _hook(ring, 2 * xk)
    else:
        rho = rho * _hook(ring, xk)
    return rho


def f_factor(target: DimVec, i: int, r: int, root_shift: str = "graded",
             orientation: str = "inward") -> RatFunc:
    """The product symmetrized by F_{i,r} on the block landing in ``target``."""
    ring = poly_ring(target.d)
    nb = target.nubar
    k = nb[i]
    xk = ring.x(k)
    rho = _line_power(ring, k, r, bundle_shift(target.n, i, root_shift))
    for t in range(nb[i - 1] + 1, k):
        form = ring.x(t) - xk if orientation == "inward" else xk - ring.x(t)
        rho = rho * _hook(ring, form)
    return rho


def _target_sign(target: DimVec, kind: str, i: int) -> int:
    if kind == "E":
        exp = target.nu[i] + (1 if (i == target.n and target.lie_type == "C") else 0)
    else:
        exp = target.nu[i - 1]
    return -1 if exp % 2 else 1


def _symmetrize(target: DimVec, source: DimVec, rho: RatFunc) -> SkewElem:
    big = parabolic_group(target)
    small = big.intersection(parabolic_group(source))
    return SkewElem(target.d, {w: act(w, rho) for w in coset_reps(big, small)})


@lru_cache(maxsize=None)
def _build_EF(spec: GeneratorSpec) -> BlockOp:
    shift = 1 if spec.kind == "E" else -1
    blocks = {}
    for target in components(spec.lie_type, spec.n, spec.d):
        source = target.shift(spec.i, shift)
        if source is None:
            continue
        if spec.kind == "E":
            rho = e_factor(target, spec.i, spec.r, spec.root_shift)
        else:
            rho = f_factor(target, spec.i, spec.r, spec.root_shift, spec.f_orientation)
        if spec.sign_mode == "target-signs" and _target_sign(target, spec.kind, spec.i) < 0:
            rho = -rho
        blocks[source] = (target, _symmetrize(target, source, rho))
    return BlockOp(spec.d, blocks)


def build_E(spec: GeneratorSpec) -> BlockOp:
    if spec.kind != "E":
        raise ValueError("build_E needs a GeneratorSpec of kind E")
    return _build_EF(spec)


def build_F(spec: GeneratorSpec) -> BlockOp:
    if spec.kind != "F":
        raise ValueError("build_F needs a GeneratorSpec of kind F")
    return _build_EF(spec)


def _chern_sets(nu: DimVec, i: int):
    a = chern_roots(nu, i + 1) + chern_roots(nu, i - 1)
    b = chern_roots(nu, i)
    return a, b


@lru_cache(maxsize=None)
def _factor_series(d: int, weight: tuple, num_shift, den_shift, order: int) -> SeriesZ:
    """Expansion of (z - a + num_shift*h) / (z - a + den_shift*h) at infinity."""
    ring = poly_ring(d)
    num = ring.z - ring.linear(weight, -num_shift)
    den = ring.z - ring.linear(weight, -den_shift)
    return series_coeffs(RatFunc(ring, num, den), order)


@lru_cache(maxsize=None)
def h_series(nu: DimVec, i: int, order: int, root_shift: str = "graded") -> SeriesZ:
    """Truncated expansion of R(z) for node i on component nu."""
    ring = poly_ring(nu.d)
    half = Fraction(1, 2)
    s = SeriesZ(ring, [RatFunc(ring, 1)] + [RatFunc(ring, 0)] * order)
    for j in (i + 1, i - 1):
        c = bundle_shift(nu.n, j, root_shift)
        for a in chern_roots(nu, j):
            s = s * _factor_series(nu.d, a, half - c, -half - c, order)
    c = bundle_shift(nu.n, i, root_shift)
    for b in chern_roots(nu, i):
        s = s * _factor_series(nu.d, b, -1 - c, 1 - c, order)
    return s


@lru_cache(maxsize=None)
def h_value(nu: DimVec, i: int, r: int, mode: str = "series", root_shift: str = "graded"):
    """H_{i,r} on component nu, as a polynomial.

    The monomial mode keeps only the h-linear part, so it ignores ``root_shift``.
    """
    ring = poly_ring(nu.d)
    if mode == "monomial":
        a_set, b_set = _chern_sets(nu, i)
        acc = ring.zero
        for a in a_set:
            acc = acc + ring.linear(a) ** r
        for b in b_set:
            acc = acc - 2 * ring.linear(b) ** r
        return acc
    if mode != "series":
        raise ValueError(f"unknown h_mode {mode!r}")
    c = h_series(nu, i, r + 1, root_shift).coeffs[r + 1]
    if not c.is_polynomial():
        raise ArithmeticError(f"series coefficient is not polynomial on {nu.label()}")
    # exact division; flint raises if R(z) - 1 were not divisible by h
    return c.as_poly() / ring.hbar if not c.is_zero() else ring.zero


@lru_cache(maxsize=None)
def _build_H(spec: GeneratorSpec) -> BlockOp:
    ring = poly_ring(spec.d)
    ident = SignedPerm.identity(spec.d)
    blocks = {}
    for nu in components(spec.lie_type, spec.n, spec.d):
        val = h_value(nu, spec.i, spec.r, spec.h_mode, spec.root_shift)
        blocks[nu] = (nu, SkewElem(spec.d, {ident: RatFunc(ring, val)}))
    return BlockOp(spec.d, blocks)


def build_H(spec: GeneratorSpec) -> BlockOp:
    if spec.kind != "H":
        raise ValueError("build_H needs a GeneratorSpec of kind H")
    return _build_H(spec)


def build(spec: GeneratorSpec) -> BlockOp:
    if spec.kind == "H":
        return _build_H(spec)
    return _build_EF(spec)


def specialize_hbar_zero(op: BlockOp) -> BlockOp:
    """Coefficient-wise h := 0 (raises ZeroDivisionError on a pole at h = 0)."""
    return op.map_coeffs(lambda c: c.at_hbar_zero())
