"""Exponent arithmetic and per-group reports.

All exponents are exact Fractions; pretty-printing happens at the CLI edge.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .config import RunConfig
from .errors import BudgetError
from .invariants import (PrimarySet, SearchConfig, SecondaryData,
                         find_primary_invariants, secondary_data)
from .molien import (DegreeVector, MolienSeries, candidate_degree_vectors,
                     default_truncation, molien_series)
from .perm import PermGroup, group_index, malle_b_Q, t_value


def schmidt_exponent(n: int) -> Fraction:
    """(n + 2)/4: the baseline bound for degree-n extensions."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    return Fraction(n + 2, 4)


def theorem_exponent(n: int, t: int, d: DegreeVector,
                     l: int = 1) -> Fraction:
    """(sum of deg f_2..f_n minus 1/l) / (2(n - t)), exactly."""
    _check_exponent_args(n, t, d)
    s = sum(d.degrees[1:])
    return (Fraction(s) - Fraction(1, l)) / (2 * (n - t))


def schmidt_recovery_exponent(n: int, t: int, d: DegreeVector) -> Fraction:
    """The same bound without the sieve savings; applies when G is full S_n."""
    _check_exponent_args(n, t, d)
    return Fraction(sum(d.degrees[1:]), 2 * (n - t))


def _check_exponent_args(n: int, t: int, d: DegreeVector):
    if len(d) != n:
        raise ValueError(f"degree vector has length {len(d)}, expected {n}")
    if d.degrees[0] != 1:
        raise ValueError("the first primary degree must be 1")
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got t={t}, n={n}")


def appendix_general_base_exponent(result_q: Fraction, l: int) -> Fraction:
    """The tables' blanket restatement for base degree l: # + 1 - 1/l.

    Kept only as a labeled alternative; it disagrees with the theorem's
    formula whenever 2(n - t) != 1.
    """
    return result_q + 1 - Fraction(1, l)


def malle_exponent(G: PermGroup) -> Fraction:
    """a(G) = 1 / ind(G)."""
    return Fraction(1, group_index(G))


@dataclass(frozen=True)
class BoundReport:
    """One table row: group data, degrees, and the three exponents."""

    label: str
    n: int
    order: int
    t: int
    degrees: DegreeVector | None
    theorem_exponent: Fraction | None
    schmidt_exponent: Fraction
    malle_a: Fraction
    malle_b_Q: int
    secondary: SecondaryData | None = None
    is_full_symmetric: bool = False
    error: str | None = None

    @property
    def subfield_degree(self) -> str:
        return "none" if self.t == 1 else f"Deg. {self.t}"

    def csv_row(self) -> str:
        degrees = self.degrees.render() if self.degrees else ""
        result = str(self.theorem_exponent) if self.theorem_exponent is not None else ""
        fields = [self.label, str(self.n), str(self.order),
                  self.subfield_degree, degrees, result,
                  str(self.malle_a), str(self.malle_b_Q),
                  str(self.schmidt_exponent),
                  self.error or ""]
        return ",".join(_csv_escape(f) for f in fields)

    @staticmethod
    def csv_header() -> str:
        return ("label,n,order,subfield,degrees,result,malle_a,malle_b,"
                "schmidt,error")


def _csv_escape(field: str) -> str:
    if "," in field or '"' in field:
        return '"' + field.replace('"', '""') + '"'
    return field


def exponent_str(q: Fraction | None) -> str:
    if q is None:
        return "?"
    if q.denominator == 1:
        return f"X^{q.numerator}"
    return f"X^{{{q.numerator}/{q.denominator}}}"


def analyze_group(G: PermGroup, label: str = "",
                  config: RunConfig | None = None) -> BoundReport:
    """Full pipeline: t, Molien series, candidates, primary system, exponents.

    Budget errors leave a partial report (degrees absent, error recorded)
    rather than raising, so table runs degrade row by row.
    """
    config = config or RunConfig()
    if not G.is_transitive():
        raise ValueError("analysis requires a transitive group")
    n = G.degree
    l = config.base_degree
    t = t_value(G)
    a = malle_exponent(G)
    b = malle_b_Q(G)
    schmidt = schmidt_exponent(n)
    trunc = config.truncation or default_truncation(n)
    H = molien_series(G, trunc)

    if G.is_symmetric():
        d = DegreeVector(tuple(range(1, n + 1)))
        result = schmidt_recovery_exponent(n, t, d)
        sec = SecondaryData(1, (0,), None)
        return BoundReport(label, n, G.order, t, d, result, schmidt, a, b,
                           sec, is_full_symmetric=True)

    search = SearchConfig(step_budget=config.step_budget,
                          subset_step_budget=config.subset_step_budget,
                          max_attempts=config.max_attempts,
                          combo_cap=config.combo_cap,
                          seed=config.seed,
                          wall_seconds=config.wall_seconds)
    try:
        candidates = candidate_degree_vectors(G, H, config.max_candidates)
        primaries = find_primary_invariants(G, candidates, search)
        sec = secondary_data(primaries, G, H)
    except BudgetError as err:
        return BoundReport(label, n, G.order, t, None, None, schmidt, a, b,
                           None, error=str(err))
    result = theorem_exponent(n, t, primaries.degrees, l)
    return BoundReport(label, n, G.order, t, primaries.degrees, result,
                       schmidt, a, b, sec)
