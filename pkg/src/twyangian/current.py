"""Matrix realization of the twisted current algebra sl_{2n+1}[x]^theta.

theta is conjugation by the antidiagonal permutation matrix, so
``theta(E_{a,b}) = E_{N+1-a, N+1-b}`` with N = 2n+1.  A twisted generator of
degree r is ``a x^r + (-1)^r theta(a) x^r`` for a Chevalley generator a; it is
fixed by ``A(x) -> theta(A(-x))``.
"""

from __future__ import annotations

from fractions import Fraction

from flint import fmpq, fmpq_poly

from .relations import CURRENT_CATALOG, OperatorBackend, Report, run_checks

__all__ = [
    "MatPoly",
    "theta",
    "chevalley",
    "twisted_generator",
    "bracket",
    "MatrixBackend",
    "check_current_relations",
    "cross_check_hbar_zero",
]


def _xpow(r: int, c=1) -> fmpq_poly:
    coeffs = [0] * r + [fmpq(c) if not isinstance(c, Fraction) else fmpq(c.numerator, c.denominator)]
    return fmpq_poly(coeffs)


class MatPoly:
    """Square matrix with entries in Q[x], stored sparsely by 1-based (row, col)."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries=None):
        self.size = size
        self.entries = {}
        for (a, b), p in dict(entries or {}).items():
            if not (1 <= a <= size and 1 <= b <= size):
                raise IndexError(f"entry ({a},{b}) outside a {size}x{size} matrix")
            p = fmpq_poly(p)
            if p != 0:
                self.entries[(a, b)] = p

    @classmethod
    def unit(cls, size: int, a: int, b: int, r: int = 0, c=1) -> "MatPoly":
        return cls(size, {(a, b): _xpow(r, c)})

    def _check(self, other):
        if not isinstance(other, MatPoly) or other.size != self.size:
            raise ValueError("matrix size mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, p in other.entries.items():
            out[k] = out[k] + p if k in out else p
        return MatPoly(self.size, out)

    def __neg__(self):
        return MatPoly(self.size, {k: -p for k, p in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MatPoly":
        c = fmpq(c.numerator, c.denominator) if isinstance(c, Fraction) else fmpq(c)
        return MatPoly(self.size, {k: p * c for k, p in self.entries.items()})

    def __matmul__(self, other):
        self._check(other)
        rows = {}
        for (a, b), p in other.entries.items():
            rows.setdefault(a, []).append((b, p))
        out = {}
        for (a, m), p in self.entries.items():
            for b, q in rows.get(m, ()):
                out[(a, b)] = out[(a, b)] + p * q if (a, b) in out else p * q
        return MatPoly(self.size, out)

    def __eq__(self, other):
        return isinstance(other, MatPoly) and self.size == other.size and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def trace(self) -> fmpq_poly:
        acc = fmpq_poly(0)
        for (a, b), p in self.entries.items():
            if a == b:
                acc += p
        return acc

    def at_neg_x(self) -> "MatPoly":
        out = {}
        for k, p in self.entries.items():
            coeffs = [c if t % 2 == 0 else -c for t, c in enumerate(p.coeffs())]
            out[k] = fmpq_poly(coeffs)
        return MatPoly(self.size, out)

    def __repr__(self):
        body = ", ".join(f"E{a}{b}:{p}" for (a, b), p in sorted(self.entries.items()))
        return f"MatPoly({self.size}; {body})"


def theta(m: MatPoly) -> MatPoly:
    """Conjugation by the antidiagonal permutation matrix."""
    s = m.size + 1
    return MatPoly(m.size, {(s - a, s - b): p for (a, b), p in m.entries.items()})


def chevalley(kind: str, i: int, n: int) -> MatPoly:
    size = 2 * n + 1
    if not 1 <= i <= 2 * n:
        raise ValueError(f"Chevalley index {i} out of range 1..{2 * n}")
    if kind == "e":
        return MatPoly.unit(size, i, i + 1)
    if kind == "f":
        return MatPoly.unit(size, i + 1, i)
    if kind == "h":
        return MatPoly.unit(size, i, i) - MatPoly.unit(size, i + 1, i + 1)
    raise ValueError(f"unknown kind {kind!r}")


def _times_xr(m: MatPoly, r: int) -> MatPoly:
    x = _xpow(r)
    return MatPoly(m.size, {k: p * x for k, p in m.entries.items()})


def twisted_generator(kind: str, i: int, r: int, n: int) -> MatPoly:
    """``a x^r + (-1)^r theta(a) x^r`` with a the Chevalley generator of ``kind``."""
    if not 1 <= i <= n:
        raise ValueError(f"node {i} out of range 1..{n}")
    a = chevalley(kind.lower(), i, n)
    sgn = -1 if r % 2 else 1
    return _times_xr(a + theta(a).scale(sgn), r)


def bracket(a: MatPoly, b: MatPoly) -> MatPoly:
    return a @ b - b @ a


class MatrixBackend:
    """Word backend over twisted generator matrices."""

    h_mode = None

    def __init__(self, n: int):
        self.n = n
        self.size = 2 * n + 1
        self._cache = {}

    def gen(self, kind, i, r):
        key = (kind, i, r)
        if key not in self._cache:
            self._cache[key] = twisted_generator(kind, i, r, self.n)
        return self._cache[key]

    def zero(self):
        return MatPoly(self.size)

    def mul(self, a, b):
        return a @ b

    def add(self, a, b):
        return a + b

    def scale(self, a, c, hpow):
        if hpow:
            raise ValueError("the current algebra has no h")
        return a.scale(c)

    def equal(self, a, b):
        if a == b:
            return True, None
        diff = a - b
        (row, col), p = sorted(diff.entries.items())[0]
        return False, {"entry": [row, col], "lhs": str(a.entries.get((row, col), 0)),
                       "rhs": str(b.entries.get((row, col), 0)), "difference": str(p)}


def check_current_relations(n: int, r_max: int = 3, s_max: int = None, ids=None) -> Report:
    """Every current-algebra relation on the matrix realization."""
    s_max = r_max if s_max is None else s_max
    ids = list(CURRENT_CATALOG) if ids is None else list(ids)
    report = Report()
    report.checks = run_checks(CURRENT_CATALOG, ids, MatrixBackend(n), r_max, s_max,
                               {"realization": "matrix", "n": n})
    return report


def cross_check_hbar_zero(lie_type: str, n: int, d: int, r_max: int = 2, s_max: int = None,
                          ids=None) -> Report:
    """The same relations for the geometric operators at h = 0 (H in monomial mode)."""
    s_max = r_max if s_max is None else s_max
    ids = list(CURRENT_CATALOG) if ids is None else list(ids)
    backend = OperatorBackend(lie_type, n, d, h_mode="monomial", hbar_zero=True)
    report = Report()
    report.checks = run_checks(CURRENT_CATALOG, ids, backend, r_max, s_max,
                               {"realization": "operators", "lie_type": lie_type, "n": n, "d": d})
    return report
