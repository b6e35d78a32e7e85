"""Exact linear programming over the rationals.

The solver is a primal simplex on a condensed (Tucker) tableau kept in
fraction-free integer form: every entry is the true tableau entry times the
current basis determinant ``D``, and each pivot updates entries with an
exact integer division (Bareiss). Bland's rule picks entering and leaving
variables, so the method terminates on degenerate problems.

Covering programs ``min sum(x_S) s.t. sum_{S ∋ v} x_S >= h(v), x >= 0`` are
solved through their packing duals ``max sum(h(v) y_v) s.t.
sum_{v in S} y_v <= 1, y >= 0``; the slack basis of the packing form is
feasible, so no phase one is needed. Both primal and dual optima are
returned and checked against each other exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import InputError
from .graph import iter_bits, to_mask

Rational = Fraction


def common_denominator(values) -> int:
    """Least common multiple of the denominators of ``values``."""
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def as_rational(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise InputError(f"floating-point value {value!r} is not an exact rational")
    return Fraction(value)


class Status(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


@dataclass
class PackingResult:
    status: Status
    primal: list[Fraction] = field(default_factory=list)  # y, one per variable
    dual: list[Fraction] = field(default_factory=list)  # one per constraint row
    value: Fraction | None = None
    pivots: int = 0


def solve_packing(a_rows, b, c) -> PackingResult:
    """Maximise ``c·y`` subject to ``A y <= b``, ``y >= 0`` with ``b >= 0``.

    ``a_rows`` is a list of rows (sequences of rationals). Returns primal
    ``y``, dual multipliers for each row and the optimal value.
    """
    m = len(a_rows)
    n = len(c)
    if len(b) != m:
        raise InputError(f"{m} constraint rows but {len(b)} right-hand sides")
    for i, row in enumerate(a_rows):
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}")
    b = [as_rational(x) for x in b]
    if any(x < 0 for x in b):
        raise InputError("right-hand side must be nonnegative")
    c = [as_rational(x) for x in c]

    # integer scaling: row i by lam[i], objective by mu
    lam = []
    tab = []
    for i, row in enumerate(a_rows):
        row = [as_rational(x) for x in row]
        s = common_denominator(row + [b[i]])
        lam.append(s)
        tab.append([int(x * s) for x in row] + [int(b[i] * s)])
    mu = common_denominator(c)
    tab.append([-int(x * mu) for x in c] + [0])
    return _simplex(tab, m, n, lam, mu)


def _simplex(tab, m, n, lam, mu) -> PackingResult:
    # column j holds nonbasic variable col_var[j]; row i basic variable row_var[i]
    # variable ids: 0..n-1 structural, n..n+m-1 slacks
    col_var = list(range(n))
    row_var = [n + i for i in range(m)]
    det = 1
    obj = tab[m]
    pivots = 0
    while True:
        enter = -1
        best_var = None
        for j in range(n):
            if obj[j] < 0 and (best_var is None or col_var[j] < best_var):
                enter, best_var = j, col_var[j]
        if enter < 0:
            break
        leave = -1
        ln = ld = 0
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                rhs = tab[i][n]
                if leave < 0:
                    leave, ln, ld = i, rhs, a
                    continue
                lhs_cmp = rhs * ld - ln * a
                if lhs_cmp < 0 or (lhs_cmp == 0 and row_var[i] < row_var[leave]):
                    leave, ln, ld = i, rhs, a
        if leave < 0:
            return PackingResult(Status.UNBOUNDED, pivots=pivots)
        p = tab[leave][enter]
        _pivot(tab, m, n, leave, enter, det)
        det = p
        row_var[leave], col_var[enter] = col_var[enter], row_var[leave]
        pivots += 1

    y = [Fraction(0)] * n
    dual = [Fraction(0)] * m
    for i in range(m):
        v = row_var[i]
        if v < n:
            y[v] = Fraction(tab[i][n], det)
    for j in range(n):
        v = col_var[j]
        if v >= n:
            i = v - n
            dual[i] = Fraction(obj[j], det) * lam[i] / mu
    value = Fraction(obj[n], det) / mu
    return PackingResult(Status.OPTIMAL, y, dual, value, pivots)


def _pivot(tab, m, n, r, s, det):
    """Fraction-free condensed pivot on ``(r, s)``; ``det`` is the old scale."""
    prow = tab[r]
    p = prow[s]
    width = n + 1
    for i in range(m + 1):
        if i == r:
            continue
        row = tab[i]
        f = row[s]
        if f == 0:
            if p != det:
                for j in range(width):
                    if j != s:
                        row[j] = row[j] * p // det
            row[s] = 0
            continue
        for j in range(width):
            if j != s:
                row[j] = (p * row[j] - f * prow[j]) // det
        row[s] = -f
    prow[s] = det


@dataclass(frozen=True)
class CoveringLP:
    """Minimise total column weight so that each vertex ``v`` is covered by
    at least ``demands[v]``. Columns are vertex bitmasks (or iterables)."""

    n: int
    columns: tuple[int, ...]
    demands: tuple[Fraction, ...]

    def __init__(self, n, columns, demands):
        cols = tuple(c if isinstance(c, int) else to_mask(c) for c in columns)
        dem = tuple(as_rational(d) for d in demands)
        if len(dem) != n:
            raise InputError(f"{len(dem)} demands for {n} vertices")
        full = (1 << n) - 1
        for c in cols:
            if c & ~full:
                raise InputError("column mentions a vertex outside the range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "demands", dem)


@dataclass
class LPSolution:
    status: Status
    weights: list[Fraction]  # one per column
    value: Fraction | None
    duals: list[Fraction]  # one per vertex; a fractional packing certificate

    @property
    def denominator(self) -> int:
        return common_denominator(self.weights)

    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w]


def solve_covering(lp: CoveringLP) -> LPSolution:
    """Exact optimum of a covering program by simplex on its packing dual.

    A vertex with positive demand that no column contains makes the
    program infeasible; that is reported as a status, not raised.
    """
    n, cols, dem = lp.n, lp.columns, lp.demands
    union = 0
    for c in cols:
        union |= c
    if any(d < 0 or d > 1 for d in dem):
        raise InputError("demands must lie in [0, 1]")
    if any(d > 0 and not union >> v & 1 for v, d in enumerate(dem)):
        return LPSolution(Status.INFEASIBLE, [], None, [])
    mu = common_denominator(dem)
    tab = []
    for c in cols:
        row = [0] * (n + 1)
        for v in iter_bits(c):
            row[v] = 1
        row[n] = 1
        tab.append(row)
    tab.append([-int(d * mu) for d in dem] + [0])
    res = _simplex(tab, len(cols), n, [1] * len(cols), mu)
    if res.status is Status.UNBOUNDED:
        return LPSolution(Status.INFEASIBLE, [], None, [])
    sol = LPSolution(Status.OPTIMAL, res.dual, res.value, res.primal)
    _check_certificate(lp, sol)
    return sol


def _check_certificate(lp: CoveringLP, sol: LPSolution) -> None:
    """Assert primal/dual feasibility and equal objective values exactly."""
    cover = [Fraction(0)] * lp.n
    for c, w in zip(lp.columns, sol.weights):
        if w < 0:
            raise AssertionError("negative column weight")
        if w:
            for v in iter_bits(c):
                cover[v] += w
    for v in range(lp.n):
        if cover[v] < lp.demands[v]:
            raise AssertionError(f"vertex {v} undercovered")
    for c in lp.columns:
        if sum(sol.duals[v] for v in iter_bits(c)) > 1:
            raise AssertionError("dual packing violates a column")
    primal = sum(sol.weights, Fraction(0))
    dual = sum((d * y for d, y in zip(lp.demands, sol.duals)), Fraction(0))
    if not primal == dual == sol.value:
        raise AssertionError(f"duality gap: primal {primal}, dual {dual}")
