"""Hyperoctahedral Weyl groups, parabolic subgroups and coset representatives."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .algebra import RatFunc, poly_ring

__all__ = [
    "SignedPerm",
    "ParabolicGroup",
    "full_group",
    "act",
    "act_poly",
    "parabolic_group",
    "block_subgroup",
    "coset_reps",
    "positive_roots",
]


@dataclass(frozen=True)
class SignedPerm:
    """Signed permutation acting on variables by ``x_t -> signs[perm[t]] * x_{perm[t]}``.

    ``perm`` holds 0-based images and ``signs`` is indexed by the target
    position.  Composition ``u * v`` is "apply v, then u" on variables, so
    ``act(u, act(v, f)) == act(u * v, f)``.
    """

    perm: tuple
    signs: tuple

    @staticmethod
    def identity(d: int) -> "SignedPerm":
        return SignedPerm(tuple(range(d)), (1,) * d)

    @staticmethod
    def flip(d: int, t: int) -> "SignedPerm":
        """Sign change of x_t (1-based)."""
        signs = [1] * d
        signs[t - 1] = -1
        return SignedPerm(tuple(range(d)), tuple(signs))

    @staticmethod
    def transposition(d: int, a: int, b: int) -> "SignedPerm":
        perm = list(range(d))
        perm[a - 1], perm[b - 1] = b - 1, a - 1
        return SignedPerm(tuple(perm), (1,) * d)

    @staticmethod
    def from_window(window: Sequence[int]) -> "SignedPerm":
        """Inverse of :meth:`window`: entry t is ``sign * (image + 1)``."""
        d = len(window)
        perm = tuple(abs(v) - 1 for v in window)
        signs = [1] * d
        for v in window:
            signs[abs(v) - 1] = 1 if v > 0 else -1
        return SignedPerm(perm, tuple(signs))

    @property
    def d(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        pu, su = self.perm, self.signs
        pv, sv = other.perm, other.signs
        d = len(pu)
        perm = tuple(pu[pv[t]] for t in range(d))
        signs = [1] * d
        for t in range(d):
            # x_t -> sv[pv t] x_{pv t} -> sv[pv t] su[pu pv t] x_{pu pv t}
            signs[perm[t]] = sv[pv[t]] * su[perm[t]]
        return SignedPerm(perm, tuple(signs))

    def inverse(self) -> "SignedPerm":
        d = self.d
        perm = [0] * d
        signs = [1] * d
        for t in range(d):
            j = self.perm[t]
            perm[j] = t
            signs[t] = self.signs[j]
        return SignedPerm(tuple(perm), tuple(signs))

    def window(self) -> tuple:
        """Signed image of each variable, 1-based: t -> signs[perm t] * (perm t + 1)."""
        return tuple(self.signs[j] * (j + 1) for j in self.perm)

    def apply_weight(self, weight: Sequence[int]) -> tuple:
        """Image of the linear form sum_t weight[t] x_t."""
        out = [0] * self.d
        for t, a in enumerate(weight):
            if a:
                j = self.perm[t]
                out[j] += a * self.signs[j]
        return tuple(out)

    def length(self) -> int:
        """Number of positive roots sent to negative roots (type B/C)."""
        return _length(self)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.d)) and all(s == 1 for s in self.signs)

    def sort_key(self):
        return (self.length(), self.window())

    def __repr__(self):
        return f"SignedPerm{self.window()}"


def positive_roots(d: int, lie_type: str = "C") -> list:
    """Positive roots x_a -+ x_b (a<b) plus 2x_a (C) or x_a (B), as coefficient tuples."""
    roots = []
    for a in range(d):
        for b in range(a + 1, d):
            e = [0] * d
            e[a], e[b] = 1, -1
            roots.append(tuple(e))
            e = [0] * d
            e[a], e[b] = 1, 1
            roots.append(tuple(e))
        e = [0] * d
        e[a] = 2 if lie_type == "C" else 1
        roots.append(tuple(e))
    return roots


def _is_positive(weight) -> bool:
    for a in weight:
        if a:
            return a > 0
    return False


@lru_cache(maxsize=None)
def _length(w: SignedPerm) -> int:
    return sum(1 for r in positive_roots(w.d) if not _is_positive(w.apply_weight(r)))


@lru_cache(maxsize=None)
def full_group(d: int) -> tuple:
    """All 2^d d! signed permutations, sorted by (length, window)."""
    elems = []
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            elems.append(SignedPerm(perm, signs))
    return tuple(sorted(elems, key=SignedPerm.sort_key))


@lru_cache(maxsize=4096)
def _images(w: SignedPerm):
    ring = poly_ring(w.d)
    imgs = []
    for t in range(w.d):
        j = w.perm[t]
        imgs.append(ring.xs[j] if w.signs[j] == 1 else -ring.xs[j])
    return tuple(imgs) + (ring.hbar, ring.z)


def act(w: SignedPerm, f: RatFunc) -> RatFunc:
    """Weyl action on rational functions; h (and z) are fixed."""
    if f.ring.d != w.d:
        raise ValueError("rank mismatch between group element and function")
    if f.num.is_constant() and f.den.is_one():
        return f
    return f.substitute_automorphism(_images(w))


def act_poly(w: SignedPerm, p):
    """Weyl action on a bare polynomial."""
    ring = poly_ring(w.d)
    return p.compose(*_images(w), ctx=ring.ctx)


class ParabolicGroup:
    """A finite subgroup of W stored by explicit enumeration."""

    def __init__(self, d: int, elements: Iterable[SignedPerm], label=None):
        self.d = d
        self.elements = tuple(sorted(set(elements), key=SignedPerm.sort_key))
        self._set = frozenset(self.elements)
        self.label = label

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w):
        return w in self._set

    def __eq__(self, other):
        return isinstance(other, ParabolicGroup) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def intersection(self, other: "ParabolicGroup") -> "ParabolicGroup":
        return ParabolicGroup(self.d, self._set & other._set)

    def issubgroup(self, other: "ParabolicGroup") -> bool:
        return self._set <= other._set

    def is_closed(self) -> bool:
        return all(u * v in self._set for u in self.elements for v in self.elements) and all(
            u.inverse() in self._set for u in self.elements
        )

    def fixes(self, f) -> bool:
        if isinstance(f, RatFunc):
            return all(act(u, f) == f for u in self.elements)
        return all(act_poly(u, f) == f for u in self.elements)

    @lru_cache(maxsize=None)
    def right_coset_rep(self) -> dict:
        """Map each w in W to the minimal representative of w * self."""
        rep = {}
        for w in full_group(self.d):
            if w in rep:
                continue
            for u in self.elements:
                rep[w * u] = w
        return rep

    def __repr__(self):
        return f"ParabolicGroup(d={self.d}, order={len(self)}, label={self.label})"


@lru_cache(maxsize=None)
def block_subgroup(d: int, blocks: tuple, signed: tuple) -> ParabolicGroup:
    """Permutations within each of ``blocks`` times signed permutations of ``signed``."""
    owner = {}
    for b, blk in enumerate(blocks):
        for t in blk:
            owner[t] = b
    sset = set(signed)
    elems = []
    for w in full_group(d):
        ok = True
        for t in range(d):
            j = w.perm[t]
            if t in sset:
                if j not in sset:
                    ok = False
                    break
            else:
                if owner.get(t) != owner.get(j) or t not in owner or w.signs[j] != 1:
                    ok = False
                    break
        if ok:
            elems.append(w)
    return ParabolicGroup(d, elems, label=(blocks, signed))


def parabolic_group(nu) -> ParabolicGroup:
    """W_{P_nu} for a validated dimension vector."""
    return block_subgroup(nu.d, nu.blocks, nu.middle)


def coset_reps(big: ParabolicGroup, small: ParabolicGroup) -> list:
    """Minimal-length representatives of the left cosets w * small inside big."""
    if not small.issubgroup(big):
        raise ValueError("second group is not a subgroup of the first")
    covered = set()
    reps = []
    for w in big.elements:
        if w in covered:
            continue
        reps.append(w)
        for u in small.elements:
            covered.add(w * u)
    return reps
