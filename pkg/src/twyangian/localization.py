"""Fixed-point localization route to the E/F actions.

Classes on a component ``nu`` are stored by their restrictions to the torus
fixed points ``w W_{P_nu}``.  The correspondence class of the closed orbit
``Z^e_{nu, nu'}`` is stored on its fixed points ``(u W_{P_nu}, u W_{P_nu'})``,
``u`` running over ``W / (W_{P_nu} cap W_{P_nu'})``, with weight
``c^r / Lambda_u`` where ``Lambda_u`` is the Euler class of the orbit's conormal
bundle at that point.  Convolution with a class on ``nu'`` multiplies by the
full Euler class of ``T^*Fl_{nu'}`` at the shared point.

Nothing here calls the closed formulas in :mod:`twyangian.generators`;
:func:`oracle_compare` is where the two routes meet.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import RatFunc, poly_ring
from .flags import DimVec, components, euler_class, invariant_basis, tangent_weights
from .generators import GeneratorSpec, build, bundle_shift
from .skew import NonInvariantInput, apply
from .weyl import SignedPerm, act, act_poly, full_group, parabolic_group

__all__ = [
    "LocVector",
    "LocPairClass",
    "fixed_points",
    "localize",
    "delocalize",
    "pair_euler",
    "z_class_localized",
    "convolve",
    "orbit_sign",
    "oracle_compare",
]


@dataclass(frozen=True)
class LocVector:
    nu: DimVec
    entries: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.entries.values())


@dataclass(frozen=True)
class LocPairClass:
    """Localized class on ``Fl_target x Fl_source``; keys are the u of each pair."""

    target: DimVec
    source: DimVec
    entries: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def fixed_points(nu: DimVec) -> tuple:
    """Minimal representatives of W / W_{P_nu}."""
    rep = parabolic_group(nu).right_coset_rep()
    return tuple(sorted(set(rep.values()), key=SignedPerm.sort_key))


def localize(nu: DimVec, f, cotangent: bool = False) -> LocVector:
    """Restrictions ``act(w, f) / Eu(w)`` at every fixed point of ``Fl_nu``."""
    ring = poly_ring(nu.d)
    if not parabolic_group(nu).fixes(f):
        raise NonInvariantInput(f"{f} is not W_P-invariant on {nu.label()}")
    rf = RatFunc(ring, f)
    return LocVector(nu, {w: act(w, rf) / euler_class(nu, w, cotangent) for w in fixed_points(nu)})


def delocalize(nu: DimVec, v: LocVector, cotangent: bool = False):
    """Invert :func:`localize`; raises ``ValueError`` if ``v`` is not in its image."""
    if v.nu != nu:
        raise ValueError(f"vector lives on {v.nu.label()}, not {nu.label()}")
    ring = poly_ring(nu.d)
    zero = RatFunc(ring, 0)
    pts = fixed_points(nu)
    base = v.entries.get(pts[0], zero) * euler_class(nu, pts[0], cotangent)
    if not base.is_polynomial():
        raise ValueError(f"restriction at the base point is not polynomial: {base}")
    f = base.as_poly()
    if not parabolic_group(nu).fixes(f):
        raise ValueError(f"recovered class {f} is not W_P-invariant on {nu.label()}")
    rf = RatFunc(ring, f)
    for w in pts[1:]:
        if v.entries.get(w, zero) * euler_class(nu, w, cotangent) != act(w, rf):
            raise ValueError(f"vector is not W-coherent at fixed point {w.window()}")
    return f


@lru_cache(maxsize=None)
def _pair_points(target: DimVec, source: DimVec) -> tuple:
    small = parabolic_group(target).intersection(parabolic_group(source))
    seen, out = set(), []
    for u in full_group(target.d):
        if u in seen:
            continue
        out.append(u)
        seen.update(u * v for v in small)
    return tuple(out)


@lru_cache(maxsize=None)
def _origin_weights(target: DimVec, source: DimVec):
    """Base and fiber weights of the orbit's conormal bundle at the origin pair."""
    neg_t, neg_s = set(tangent_weights(target)), set(tangent_weights(source))
    base = sorted(neg_t | neg_s)
    pos_t = {tuple(-a for a in w) for w in neg_t}
    pos_s = {tuple(-a for a in w) for w in neg_s}
    fiber = sorted(pos_t & pos_s)
    return tuple(base), tuple(fiber)


@lru_cache(maxsize=None)
def _origin_euler(target: DimVec, source: DimVec):
    ring = poly_ring(target.d)
    base, fiber = _origin_weights(target, source)
    p = ring.one
    for a in base:
        p = p * ring.linear(a)
    for b in fiber:
        p = p * ring.linear(b, 1)
    return p


def pair_euler(target: DimVec, source: DimVec, u: SignedPerm) -> RatFunc:
    """Lambda at the fixed pair (u W_{P_target}, u W_{P_source})."""
    return RatFunc(poly_ring(target.d), act_poly(u, _origin_euler(target, source)))


def z_class_localized(target: DimVec, i: int, sign: int, r: int,
                      root_shift: str = "graded") -> LocPairClass:
    """``c_1(L^{+-}_i)^r [Z^e_{target, target +- 1_i}]`` at its fixed points."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    source = target.shift(i, sign)
    if source is None:
        raise ValueError(f"{target.label()} has no neighbour in direction {sign:+d}_{i}")
    ring = poly_ring(target.d)
    k = target.nubar[i] + 1 if sign > 0 else target.nubar[i]
    unit = [1 if t == k else 0 for t in range(1, target.d + 1)]
    line = RatFunc(ring, ring.linear(unit, bundle_shift(target.n, i, root_shift)))
    entries = {}
    for u in _pair_points(target, source):
        entries[u] = act(u, line) ** r / pair_euler(target, source, u)
    return LocPairClass(target, source, entries)


def convolve(z: LocPairClass, v: LocVector) -> LocVector:
    """Push the class ``v`` on ``z.source`` through the correspondence ``z``."""
    if v.nu != z.source:
        raise ValueError(f"component mismatch: {v.nu.label()} vs {z.source.label()}")
    ring = poly_ring(z.target.d)
    rep_t = parabolic_group(z.target).right_coset_rep()
    rep_s = parabolic_group(z.source).right_coset_rep()
    out = {}
    for u, c in z.entries.items():
        w, w2 = rep_t[u], rep_s[u]
        val = v.entries.get(w2)
        if val is None or val.is_zero():
            continue
        term = c * val * euler_class(z.source, w2, with_cotangent=True)
        out[w] = out[w] + term if w in out else term
    return LocVector(z.target, {w: out.get(w, RatFunc(ring, 0)) for w in fixed_points(z.target)})


def orbit_sign(kind: str, i: int, source: DimVec) -> int:
    """Sign prefactor of the generator, with the dimension vector of the source."""
    if kind == "E":
        exp = source.nu[i] + (1 if i == source.n and source.lie_type == "C" else 0)
    elif kind == "F":
        exp = source.nu[i - 1]
    else:
        raise ValueError(f"no orbit sign for kind {kind!r}")
    return -1 if exp % 2 else 1


def oracle_compare(lie_type: str, n: int, d: int, kind: str, i: int, r: int, degree: int,
                   root_shift: str = "graded", f_orientation: str = "inward") -> dict:
    """Compare the localization route with the closed formula on an invariant basis.

    Returns a dict with ``status`` ("pass"/"fail"), the number of comparisons
    and, on failure, the first mismatch with its intermediate data.
    """
    t0 = time.perf_counter()
    spec = GeneratorSpec(lie_type, n, d, kind, i, r, root_shift=root_shift,
                         f_orientation=f_orientation)
    op = build(spec)
    sign = 1 if kind == "E" else -1
    compared = 0
    mismatch = None
    for target in components(lie_type, n, d):
        source = target.shift(i, sign)
        if source is None:
            continue
        z = z_class_localized(target, i, sign, r, root_shift)
        eps = orbit_sign(kind, i, source)
        for f in invariant_basis(source, degree):
            loc = convolve(z, localize(source, f))
            geo = delocalize(target, loc) * eps
            tgt, closed = apply(op, source, f)
            compared += 1
            if tgt != target or geo != closed:
                mismatch = {
                    "source": source.label(),
                    "target": target.label(),
                    "input": str(f),
                    "localized": str(geo),
                    "closed_formula": str(closed),
                    "sign": eps,
                }
                break
        if mismatch:
            break
    return {
        "id": "oracle",
        "params": {"lie_type": lie_type, "n": n, "d": d, "gen": kind, "i": i, "r": r,
                   "degree": degree},
        "status": "fail" if mismatch else "pass",
        "compared": compared,
        "witness": mismatch,
        "millis": round((time.perf_counter() - t0) * 1000, 3),
    }
