"""Exhaustive check of the degree-4 bound over an enumerated class.

Each graph gets its exact fractional chromatic number, a comparison with
``31/8``, an isomorphism test against the square of the 8-cycle, and the
feasibility of the degree-based demand LP. Workers solve graphs
independently; rows are merged in ``(n, graph6)`` order so reports do not
depend on the worker count.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .canon import is_isomorphic
from .coloring import fractional_chromatic_number, paper_demand, weighted_cover_value
from .enumerate import EnumerationSpec, enumerate_graphs
from .errors import ResourceError
from .graph import Graph
from .graph6 import read_graph6, write_graph6
from .patterns import c82

BOUND = Fraction(31, 8)
_C82 = c82()


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class VerificationRecord:
    graph6: str
    n: int
    chi_f: Fraction
    bound_ok: bool
    is_exception: bool
    demand_feasible: bool
    elapsed: float = 0.0

    @property
    def consistent(self) -> bool:
        """The bound and demand feasibility agree, or this is the exception."""
        return self.is_exception or self.bound_ok == self.demand_feasible

    def to_json(self, timings: bool = False) -> str:
        row = {
            "graph6": self.graph6,
            "n": self.n,
            "chi_f": _fmt(self.chi_f),
            "bound_ok": self.bound_ok,
            "is_exception": self.is_exception,
            "demand_feasible": self.demand_feasible,
        }
        if timings:
            row["elapsed"] = round(self.elapsed, 6)
        return json.dumps(row, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> VerificationRecord:
        row = json.loads(line)
        return cls(
            row["graph6"],
            row["n"],
            _parse(row["chi_f"]),
            row["bound_ok"],
            row["is_exception"],
            row["demand_feasible"],
            row.get("elapsed", 0.0),
        )


@dataclass(frozen=True)
class GapReport:
    min_gap: Fraction | None  # min of 4 - chi_f over non-exception rows
    witness: str | None

    def to_json(self) -> str:
        gap = None if self.min_gap is None else _fmt(self.min_gap)
        return json.dumps({"min_gap": gap, "witness": self.witness}, sort_keys=True)


@dataclass
class VerificationReport:
    records: list[VerificationRecord]
    gap: GapReport

    def violations(self) -> list[VerificationRecord]:
        """Non-exception rows that break the bound, the demand LP, or their agreement."""
        return [
            r for r in self.records
            if not r.is_exception and not (r.bound_ok and r.demand_feasible)
        ]

    def exceptions(self) -> list[VerificationRecord]:
        return [r for r in self.records if r.is_exception]

    def lines(self, timings: bool = False) -> list[str]:
        return [r.to_json(timings) for r in self.records] + [self.gap.to_json()]


def verify_graph(g: Graph) -> VerificationRecord:
    start = time.perf_counter()
    code = write_graph6(g)
    try:
        chi = fractional_chromatic_number(g)
        feasible = weighted_cover_value(g, paper_demand(g)) <= 1
    except ResourceError as exc:
        raise ResourceError(f"{exc} (graph {code})", exc.limit, exc.explored) from exc
    exception = g.n == 8 and g.num_edges == 16 and is_isomorphic(g, _C82)
    return VerificationRecord(
        graph6=code,
        n=g.n,
        chi_f=chi,
        bound_ok=chi <= BOUND,
        is_exception=exception,
        demand_feasible=feasible,
        elapsed=time.perf_counter() - start,
    )


def _verify_code(code: str) -> VerificationRecord:
    return verify_graph(read_graph6(code))


def gap_report(records) -> GapReport:
    best = None
    for r in records:
        if r.is_exception:
            continue
        gap = 4 - r.chi_f
        if best is None or gap < best[0]:
            best = (gap, r.graph6)
    return GapReport(*best) if best else GapReport(None, None)


def verify_graphs(graphs, jobs: int = 1) -> VerificationReport:
    if jobs <= 1:
        records = [verify_graph(g) for g in graphs]
    else:
        codes = [write_graph6(g) for g in graphs]
        with Pool(jobs) as pool:
            records = pool.map(_verify_code, codes, chunksize=64)
    records.sort(key=lambda r: (r.n, r.graph6))
    return VerificationReport(records, gap_report(records))


def verify_theorem(spec: EnumerationSpec, jobs: int = 1, limit: int | None = None) -> VerificationReport:
    return verify_graphs(enumerate_graphs(spec, limit), jobs)
