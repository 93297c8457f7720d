"""Relation catalogs, bracket-word evaluation and the verification driver.

A relation is a pair of :class:`Word` trees.  Words are evaluated by a
backend that knows how to build generators and compose them; the operator
backend below works on :class:`~twyangian.skew.BlockOp`, and
:mod:`twyangian.current` supplies a matrix backend for the current algebra.

Two catalogs are kept.  ``YANGIAN_CATALOG`` holds the defining relations of
the pre-twisted Yangian, ``CURRENT_CATALOG`` the presentation of the twisted
current algebra.  Each entry is a :class:`Relation` with a parameter grid.
"""

from __future__ import annotations

import inspect
import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .algebra import RatFunc, poly_ring
from .generators import GeneratorSpec, build, specialize_hbar_zero
from .skew import BlockOp, block_compose, equal_on_invariants

log = logging.getLogger(__name__)

__all__ = [
    "Word",
    "gen",
    "comp",
    "br",
    "anti",
    "lin",
    "ZERO",
    "Relation",
    "YANGIAN_CATALOG",
    "CURRENT_CATALOG",
    "NODE_CATALOG",
    "OperatorBackend",
    "eval_word",
    "check_relation",
    "run_checks",
    "run_suite",
    "resolve_h_mode",
    "Report",
]


# -- words ---------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    op: str
    args: tuple = ()

    def __add__(self, other):
        return lin((1, 0, self), (1, 0, other))

    def __sub__(self, other):
        return lin((1, 0, self), (-1, 0, other))

    def __neg__(self):
        return lin((-1, 0, self))

    def __rmul__(self, c):
        return lin((c, 0, self))

    def __str__(self):
        if self.op == "gen":
            kind, i, r = self.args
            return f"{kind.lower()}_{{{i},{r}}}"
        if self.op == "comp":
            return f"{self.args[0]}*{self.args[1]}"
        if self.op == "br":
            return f"[{self.args[0]},{self.args[1]}]"
        if self.op == "anti":
            return f"{{{self.args[0]},{self.args[1]}}}"
        if not self.args:
            return "0"
        parts = []
        for c, k, w in self.args:
            coef = "" if c == 1 else "-" if c == -1 else f"{c}"
            hb = "" if k == 0 else "h" if k == 1 else f"h^{k}"
            parts.append(f"{coef}{hb}{w}")
        return " + ".join(parts).replace("+ -", "- ")


def gen(kind: str, i: int, r: int) -> Word:
    return Word("gen", (kind, i, r))


def comp(a: Word, b: Word) -> Word:
    """``a`` after ``b``."""
    return Word("comp", (a, b))


def br(a: Word, b: Word) -> Word:
    return Word("br", (a, b))


def anti(a: Word, b: Word) -> Word:
    return Word("anti", (a, b))


def lin(*terms) -> Word:
    """Linear combination of ``(coefficient, power of h, word)`` triples."""
    return Word("lin", tuple((Fraction(c), int(k), w) for c, k, w in terms))


ZERO = lin()


def e(i, r):
    return gen("E", i, r)


def f(i, r):
    return gen("F", i, r)


def h(i, r):
    return gen("H", i, r)


def _cartan(i: int, j: int) -> int:
    return 2 * (i == j) - (i == j + 1) - (i == j - 1)


def _delta(a, b) -> int:
    return 1 if a == b else 0


def _even(k: int) -> int:
    return 1 if k % 2 == 0 else 0


# -- catalogs --------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    id: str
    text: str
    grid: Callable[[int, int, int], Iterable[dict]]
    lhs: Callable[..., Word]
    rhs: Callable[..., Word]


def _pairs(n, cond=lambda i, j: True):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if cond(i, j)]


def _grid_ijrs(cond=lambda n, i, j: True):
    def grid(n, r_max, s_max):
        for i, j in _pairs(n, lambda i, j: cond(n, i, j)):
            for r in range(r_max + 1):
                for s in range(s_max + 1):
                    yield {"i": i, "j": j, "r": r, "s": s}
    return grid


def _grid_ijr(n, r_max, s_max):
    for i, j in _pairs(n):
        for r in range(r_max + 1):
            yield {"i": i, "j": j, "r": r}


def _grid_serre(n, r_max, s_max):
    for i, j in _pairs(n, lambda i, j: abs(i - j) == 1):
        for r1 in range(r_max + 1):
            for r2 in range(r1, r_max + 1):
                for s in range(s_max + 1):
                    yield {"i": i, "j": j, "r1": r1, "r2": r2, "s": s}


def _grid_single(n, r_max, s_max):
    yield {"i": n}


def _grid_rn(n, r_max, s_max):
    for r in range(r_max + 1):
        for s in range(s_max + 1):
            yield {"i": n, "r": r, "s": s}


def _degree_rel(x, sgn):
    def lhs(i, j, r, s):
        return lin((2, 0, br(h(i, r + 1), x(j, s))), (-2, 0, br(h(i, r), x(j, s + 1))))

    def rhs(i, j, r, s):
        return lin((sgn * _cartan(i, j), 1, anti(h(i, r), x(j, s))))
    return lhs, rhs


def _quartic_rel(x, sgn):
    def lhs(i, r, s):
        return lin(
            (2, 0, br(h(i, r), x(i, s + 2))),
            (-1, 2, br(h(i, r), x(i, s))),
            (-4, 0, br(h(i, r + 1), x(i, s + 1))),
            (2, 0, br(h(i, r + 2), x(i, s))),
        )

    def rhs(i, r, s):
        return lin((sgn, 1, anti(h(i, r + 1), x(i, s))), (-sgn, 1, anti(h(i, r), x(i, s + 1))))
    return lhs, rhs


def _same_rel(x, sgn):
    def lhs(i, j, r, s):
        return lin((2, 0, br(x(i, r + 1), x(j, s))), (-2, 0, br(x(i, r), x(j, s + 1))))

    def rhs(i, j, r, s):
        return lin((sgn * _cartan(i, j), 1, anti(x(i, r), x(j, s))))
    return lhs, rhs


def _serre(x):
    def lhs(i, j, r1, r2, s):
        return br(x(i, r1), br(x(i, r2), x(j, s))) + br(x(i, r2), br(x(i, r1), x(j, s)))
    return lhs, lambda **_: ZERO


def _yangian_catalog():
    he_l, he_r = _degree_rel(e, 1)
    hf_l, hf_r = _degree_rel(f, -1)
    r1_l, r1_r = _quartic_rel(e, 1)
    r2_l, r2_r = _quartic_rel(f, -1)
    r3_l, r3_r = _same_rel(e, 1)
    r4_l, r4_r = _same_rel(f, -1)
    se_l, se_r = _serre(e)
    sf_l, sf_r = _serre(f)

    def h0_coef(n, i, j):
        return _cartan(i, j) + _delta(i, n) * _delta(j, n)

    rels = [
        Relation("hh", "[h_{i,r}, h_{j,s}] = 0", _grid_ijrs(),
                 lambda i, j, r, s: br(h(i, r), h(j, s)), lambda **_: ZERO),
        Relation("h0e", "[h_{i,0}, e_{j,r}] = (a_ij + d_in d_jn) e_{j,r}", _grid_ijr,
                 lambda i, j, r, n: br(h(i, 0), e(j, r)),
                 lambda i, j, r, n: lin((h0_coef(n, i, j), 0, e(j, r)))),
        Relation("h0f", "[h_{i,0}, f_{j,r}] = -(a_ij + d_in d_jn) f_{j,r}", _grid_ijr,
                 lambda i, j, r, n: br(h(i, 0), f(j, r)),
                 lambda i, j, r, n: lin((-h0_coef(n, i, j), 0, f(j, r)))),
        Relation("he", "2[h_{i,r+1},e_{j,s}] - 2[h_{i,r},e_{j,s+1}] = h a_ij {h_{i,r}, e_{j,s}}, j != n",
                 _grid_ijrs(lambda n, i, j: j != n), he_l, he_r),
        Relation("R1", "2[h_{n,r},e_{n,s+2}] - h^2[h_{n,r},e_{n,s}] - 4[h_{n,r+1},e_{n,s+1}]"
                 " + 2[h_{n,r+2},e_{n,s}] = h{h_{n,r+1},e_{n,s}} - h{h_{n,r},e_{n,s+1}}",
                 _grid_rn, r1_l, r1_r),
        Relation("hf", "2[h_{i,r+1},f_{j,s}] - 2[h_{i,r},f_{j,s+1}] = -h a_ij {h_{i,r}, f_{j,s}}, j != n",
                 _grid_ijrs(lambda n, i, j: j != n), hf_l, hf_r),
        Relation("R2", "the f-analogue of R1 with the right side negated", _grid_rn, r2_l, r2_r),
        Relation("ef", "[e_{i,r}, f_{j,s}] = d_ij h_{i,r+s}, i, j != n",
                 _grid_ijrs(lambda n, i, j: i != n and j != n),
                 lambda i, j, r, s: br(e(i, r), f(j, s)),
                 lambda i, j, r, s: h(i, r + s) if i == j else ZERO),
        Relation("R3", "2[e_{i,r+1},e_{j,s}] - 2[e_{i,r},e_{j,s+1}] = h a_ij {e_{i,r}, e_{j,s}}, (i,j) != (n,n)",
                 _grid_ijrs(lambda n, i, j: (i, j) != (n, n)), r3_l, r3_r),
        Relation("R4", "2[f_{i,r+1},f_{j,s}] - 2[f_{i,r},f_{j,s+1}] = -h a_ij {f_{i,r}, f_{j,s}}",
                 _grid_ijrs(), r4_l, r4_r),
        Relation("serre_e", "sum over S_2 of [e_{i,r1},[e_{i,r2},e_{j,s}]] = 0, |i-j| = 1",
                 _grid_serre, se_l, se_r),
        Relation("serre_f", "sum over S_2 of [f_{i,r1},[f_{i,r2},f_{j,s}]] = 0, |i-j| = 1",
                 _grid_serre, sf_l, sf_r),
        Relation("R5", "[e_{n,0},[e_{n,0},f_{n,0}]] = -4 e_{n,0}", _grid_single,
                 lambda i: br(e(i, 0), br(e(i, 0), f(i, 0))), lambda i: lin((-4, 0, e(i, 0)))),
        Relation("R6", "[f_{n,0},[f_{n,0},e_{n,0}]] = -4 f_{n,0}", _grid_single,
                 lambda i: br(f(i, 0), br(f(i, 0), e(i, 0))), lambda i: lin((-4, 0, f(i, 0)))),
    ]
    return {rel.id: rel for rel in rels}


def _current_catalog():
    def he_coef(n, i, j, r):
        return 2 * _delta(i, j) * _even(r) - _delta(i, j + 1) - _delta(i, j - 1) + _delta(i, n) * _delta(j, n)

    def cubic(x, y):
        def lhs(i, r1, r2, s):
            return br(x(i, r1), br(x(i, r2), y(i, s)))

        def rhs(i, r1, r2, s):
            c = -2 * (_even(r1 + s) + _even(r2 + s))
            return lin((c, 0, x(i, r1 + r2 + s)))
        return lhs, rhs

    def grid_cubic(n, r_max, s_max):
        for r1 in range(r_max + 1):
            for r2 in range(r_max + 1):
                for s in range(s_max + 1):
                    yield {"i": n, "r1": r1, "r2": r2, "s": s}

    def grid_serre_all(n, r_max, s_max):
        for i, j in _pairs(n, lambda i, j: abs(i - j) == 1):
            for r1 in range(r_max + 1):
                for r2 in range(r_max + 1):
                    for s in range(s_max + 1):
                        yield {"i": i, "j": j, "r1": r1, "r2": r2, "s": s}

    een_l, een_r = cubic(e, f)
    ffn_l, ffn_r = cubic(f, e)
    rels = [
        Relation("P.hh", "[h_{i,r}, h_{j,s}] = 0", _grid_ijrs(),
                 lambda i, j, r, s: br(h(i, r), h(j, s)), lambda **_: ZERO),
        Relation("P.he", "[h_{i,r}, e_{j,s}] = (2 d_ij d_{r even} - d_{i,j+1} - d_{i,j-1} + d_in d_jn) e_{j,r+s}",
                 _grid_ijrs(), lambda i, j, r, s, n: br(h(i, r), e(j, s)),
                 lambda i, j, r, s, n: lin((he_coef(n, i, j, r), 0, e(j, r + s)))),
        Relation("P.hf", "[h_{i,r}, f_{j,s}] = -(same coefficient) f_{j,r+s}",
                 _grid_ijrs(), lambda i, j, r, s, n: br(h(i, r), f(j, s)),
                 lambda i, j, r, s, n: lin((-he_coef(n, i, j, r), 0, f(j, r + s)))),
        Relation("P.ef", "[e_{i,r}, f_{j,s}] = d_ij h_{i,r+s}, i, j != n",
                 _grid_ijrs(lambda n, i, j: i != n and j != n),
                 lambda i, j, r, s: br(e(i, r), f(j, s)),
                 lambda i, j, r, s: h(i, r + s) if i == j else ZERO),
        Relation("P.ee_far", "[e_{i,r}, e_{j,s}] = 0, |i-j| > 1",
                 _grid_ijrs(lambda n, i, j: abs(i - j) > 1),
                 lambda i, j, r, s: br(e(i, r), e(j, s)), lambda **_: ZERO),
        Relation("P.ff_far", "[f_{i,r}, f_{j,s}] = 0, |i-j| > 1",
                 _grid_ijrs(lambda n, i, j: abs(i - j) > 1),
                 lambda i, j, r, s: br(f(i, r), f(j, s)), lambda **_: ZERO),
        Relation("P.ee_shift", "[e_{i,r+1}, e_{j,s}] = [e_{i,r}, e_{j,s+1}]", _grid_ijrs(),
                 lambda i, j, r, s: br(e(i, r + 1), e(j, s)),
                 lambda i, j, r, s: br(e(i, r), e(j, s + 1))),
        Relation("P.ff_shift", "[f_{i,r+1}, f_{j,s}] = [f_{i,r}, f_{j,s+1}]", _grid_ijrs(),
                 lambda i, j, r, s: br(f(i, r + 1), f(j, s)),
                 lambda i, j, r, s: br(f(i, r), f(j, s + 1))),
        Relation("P.serre_e", "[e_{i,r1},[e_{i,r2},e_{j,s}]] = 0, |i-j| = 1", grid_serre_all,
                 lambda i, j, r1, r2, s: br(e(i, r1), br(e(i, r2), e(j, s))), lambda **_: ZERO),
        Relation("P.serre_f", "[f_{i,r1},[f_{i,r2},f_{j,s}]] = 0, |i-j| = 1", grid_serre_all,
                 lambda i, j, r1, r2, s: br(f(i, r1), br(f(i, r2), f(j, s))), lambda **_: ZERO),
        Relation("P.eef", "[e_{n,r1},[e_{n,r2},f_{n,s}]] = -2(d_{r1+s even} + d_{r2+s even}) e_{n,r1+r2+s}",
                 grid_cubic, een_l, een_r),
        Relation("P.ffe", "[f_{n,r1},[f_{n,r2},e_{n,s}]] = -2(d_{r1+s even} + d_{r2+s even}) f_{n,r1+r2+s}",
                 grid_cubic, ffn_l, ffn_r),
    ]
    return {rel.id: rel for rel in rels}


def _node_catalog():
    """Quartic identities at the last node that the flag operators do satisfy.

    On a block the ratio of H series across an e-step at node n is
    (z-c+h)/(z-c-h) * (z+c+h/2)/(z+c-h/2); expanding it gives these in place
    of R1/R2.
    """
    def quartic(x, sgn):
        def lhs(i, r, s):
            return lin(
                (2, 0, br(h(i, r + 2), x(i, s))),
                (-2, 0, br(h(i, r), x(i, s + 2))),
                (1, 2, br(h(i, r), x(i, s))),
            )

        def rhs(i, r, s):
            return lin((3 * sgn, 1, anti(h(i, r + 1), x(i, s))), (sgn, 1, anti(h(i, r), x(i, s + 1))))
        return lhs, rhs

    qe_l, qe_r = quartic(e, 1)
    qf_l, qf_r = quartic(f, -1)
    rels = [
        Relation("N.e", "2[h_{n,r+2},e_{n,s}] - 2[h_{n,r},e_{n,s+2}] + h^2[h_{n,r},e_{n,s}]"
                 " = 3h{h_{n,r+1},e_{n,s}} + h{h_{n,r},e_{n,s+1}}", _grid_rn, qe_l, qe_r),
        Relation("N.f", "the f-analogue of N.e with the right side negated", _grid_rn, qf_l, qf_r),
    ]
    return {rel.id: rel for rel in rels}


YANGIAN_CATALOG = _yangian_catalog()
CURRENT_CATALOG = _current_catalog()
NODE_CATALOG = _node_catalog()


# -- evaluation --------------------------------------------------------------


class OperatorBackend:
    """Evaluates words to :class:`BlockOp` for fixed (lie_type, n, d, conventions).

    With ``hbar_zero`` every generator is specialized at h = 0 and words with
    a positive power of h evaluate to zero.
    """

    def __init__(self, lie_type: str, n: int, d: int, h_mode: str = "series",
                 hbar_zero: bool = False, **conventions):
        self.lie_type, self.n, self.d = lie_type, n, d
        self.h_mode = h_mode
        self.hbar_zero = hbar_zero
        self.conventions = conventions
        self._cache = {}

    def gen(self, kind: str, i: int, r: int) -> BlockOp:
        key = (kind, i, r)
        if key not in self._cache:
            spec = GeneratorSpec(self.lie_type, self.n, self.d, kind, i, r,
                                 h_mode=self.h_mode, **self.conventions)
            op = build(spec)
            self._cache[key] = specialize_hbar_zero(op) if self.hbar_zero else op
        return self._cache[key]

    def zero(self) -> BlockOp:
        return BlockOp(self.d)

    def mul(self, a: BlockOp, b: BlockOp) -> BlockOp:
        return block_compose(a, b)

    def add(self, a: BlockOp, b: BlockOp) -> BlockOp:
        return a + b

    def scale(self, a: BlockOp, c: Fraction, hpow: int) -> BlockOp:
        if hpow and self.hbar_zero:
            return self.zero()
        ring = poly_ring(self.d)
        return a.scale(RatFunc(ring, ring.const(c) * ring.hbar ** hpow))

    def equal(self, a: BlockOp, b: BlockOp):
        ok, wit = equal_on_invariants(a, b)
        if not ok:
            wit["residual"] = _residual(a - b)
        return ok, wit


def _residual(op: BlockOp, limit: int = 8) -> list:
    out = []
    for src in op.reduced().sources():
        tgt, elem = op.reduced().blocks[src]
        for w, c in sorted(elem.terms.items(), key=lambda kv: kv[0].sort_key()):
            out.append({"source": src.label(), "target": tgt.label(),
                        "coset": list(w.window()), "coefficient": str(c)})
            if len(out) >= limit:
                return out
    return out


def eval_word(wd: Word, backend):
    """Fold a word into the backend's value type."""
    if wd.op == "gen":
        return backend.gen(*wd.args)
    if wd.op == "comp":
        return backend.mul(eval_word(wd.args[0], backend), eval_word(wd.args[1], backend))
    if wd.op in ("br", "anti"):
        a, b = (eval_word(x, backend) for x in wd.args)
        ab, ba = backend.mul(a, b), backend.mul(b, a)
        return backend.add(ab, backend.scale(ba, Fraction(-1 if wd.op == "br" else 1), 0))
    if wd.op == "lin":
        acc = backend.zero()
        for c, k, w in wd.args:
            if c == 0:
                continue
            acc = backend.add(acc, backend.scale(eval_word(w, backend), c, k))
        return acc
    raise ValueError(f"unknown word node {wd.op!r}")


def _call(fn, params, n):
    sig = inspect.signature(fn).parameters
    return fn(**params, n=n) if "n" in sig else fn(**params)


def check_relation(rel: Relation, params: dict, backend, extra_params: dict = None) -> dict:
    """Evaluate one instance of a relation; failures are returned, not raised."""
    t0 = time.perf_counter()
    n = backend.n
    lhs = eval_word(_call(rel.lhs, params, n), backend)
    rhs = eval_word(_call(rel.rhs, params, n), backend)
    ok, wit = backend.equal(lhs, rhs)
    entry = {
        "id": rel.id,
        "params": {**(extra_params or {}), **params},
        "h_mode": getattr(backend, "h_mode", None),
        "status": "pass" if ok else "fail",
        "millis": round((time.perf_counter() - t0) * 1000, 3),
    }
    if not ok:
        entry["witness"] = wit
    log.debug("%s %s -> %s", rel.id, params, entry["status"])
    return entry


def run_checks(catalog: dict, ids, backend, r_max: int, s_max: int, extra_params=None) -> list:
    entries = []
    for rid in ids:
        rel = catalog[rid]
        for params in rel.grid(backend.n, r_max, s_max):
            entries.append(check_relation(rel, params, backend, extra_params))
    return entries


# -- reports and the suite -----------------------------------------------------


@dataclass
class Report:
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        npass = sum(1 for c in self.checks if c["status"] == "pass")
        return {"pass": npass, "fail": len(self.checks) - npass}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_dict(self) -> dict:
        return {"checks": self.checks, "summary": self.summary, **self.extra}

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=False)

    def text(self) -> str:
        lines = []
        for c in self.checks:
            p = ",".join(f"{k}={v}" for k, v in c["params"].items())
            mode = f" [{c['h_mode']}]" if c.get("h_mode") else ""
            lines.append(f"{c['status'].upper():4} {c['id']}({p}){mode} {c['millis']:.1f}ms")
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail")
        return "\n".join(lines)


def resolve_h_mode(lie_type: str, r_max: int = 1, s_max: int = 1, ds=(1, 2), **conventions) -> dict:
    """Run R1/R2 at n = 1 in both H modes and pick the mode that passes.

    Returns ``{"mode", "passed", "per_d", "residual"}``; ``mode`` falls back
    to ``"series"`` when no mode passes, and ``residual`` then carries the
    first failing witness at the largest d.
    """
    per_d = {}
    residual = None
    for d in ds:
        per_d[d] = {}
        for mode in ("series", "monomial"):
            backend = OperatorBackend(lie_type, 1, d, h_mode=mode, **conventions)
            entries = run_checks(YANGIAN_CATALOG, ("R1", "R2"), backend, r_max, s_max)
            bad = [c for c in entries if c["status"] != "pass"]
            per_d[d][mode] = not bad
            if bad and mode == "series":
                residual = {"d": d, **bad[0]}
    passing = [m for m in ("series", "monomial") if all(per_d[d][m] for d in ds)]
    return {
        "mode": passing[0] if passing else "series",
        "passed": passing,
        "per_d": {str(d): v for d, v in per_d.items()},
        "residual": None if passing else residual,
    }


def run_suite(lie_type: str, n: int, d: int, r_max: int = 1, s_max: int = 1,
              h_mode: str = "auto", relations="all", **conventions) -> Report:
    """Run the selected defining relations over the (r, s) grid."""
    if relations == "all":
        ids = list(YANGIAN_CATALOG)
    else:
        ids = list(relations)
        unknown = [i for i in ids if i not in YANGIAN_CATALOG]
        if unknown:
            raise ValueError(f"unknown relation ids: {', '.join(unknown)}")
    report = Report()
    if h_mode == "auto":
        res = resolve_h_mode(lie_type, **conventions)
        report.extra["h_mode_resolution"] = res
        h_mode = res["mode"]
        log.info("resolved h mode: %s (passing: %s)", h_mode, res["passed"])
    backend = OperatorBackend(lie_type, n, d, h_mode=h_mode, **conventions)
    report.checks = run_checks(YANGIAN_CATALOG, ids, backend, r_max, s_max,
                               {"lie_type": lie_type, "n": n, "d": d})
    return report
