"""Molien series of invariant rings and candidate degree vectors.

For a permutation matrix the characteristic factor det(I - t*g) splits as a
product of (1 - t^c) over the cycle lengths c of g, so the series is a
class-weighted product expansion with exact integer coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .perm import PermGroup

_MAX_ENUM = 2_000_000  # safety valve for the structural vector enumeration


@dataclass(frozen=True)
class MolienSeries:
    """Truncated Hilbert series of the invariant ring: dimensions by degree."""

    coefficients: tuple[int, ...]
    group_order: int

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d]

    def render(self) -> str:
        return " ".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class DegreeVector:
    """Nondecreasing candidate degrees d1..dn for a primary system."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        d = self.degrees
        if not d or any(x < 1 for x in d):
            raise ValueError("degrees must be positive")
        if any(a > b for a, b in zip(d, d[1:])):
            raise ValueError("degrees must be nondecreasing")
        if any(x > i + 1 for i, x in enumerate(d)):
            raise ValueError("degree bound d_i <= i violated")

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def total(self) -> int:
        return sum(self.degrees)

    def product(self) -> int:
        return math.prod(self.degrees)

    def render(self) -> str:
        return ",".join(str(d) for d in self.degrees)

    @staticmethod
    def parse(text: str) -> "DegreeVector":
        return DegreeVector(tuple(int(v) for v in text.split(",")))


@dataclass(frozen=True)
class HilbertNumerator:
    """Numerator of the series over a candidate denominator; secondary data."""

    coefficients: tuple[int, ...]
    secondary_count: int

    def secondary_degrees(self) -> list[int]:
        out = []
        for d, c in enumerate(self.coefficients):
            out.extend([d] * c)
        return out

    def render(self) -> str:
        return " ".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class NumeratorRejection:
    """Why a candidate denominator fails; carries the first offending degree."""

    first_offending_degree: int
    reason: str


def molien_series(G: PermGroup, N: int) -> MolienSeries:
    """Coefficients a_0..a_N of the invariant-ring Hilbert series.

    Averages 1/prod(1 - t^c) over the group, grouped by cycle type.
    """
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    census = G.cycle_type_census()
    total = [0] * (N + 1)
    for ctype, count in sorted(census.items()):
        series = [1] + [0] * N
        for c in ctype:
            # multiply by 1/(1 - t^c):  s[d] += s[d - c]
            for d in range(c, N + 1):
                series[d] += series[d - c]
        for d in range(N + 1):
            total[d] += count * series[d]
    coeffs = []
    for d in range(N + 1):
        q, r = divmod(total[d], G.order)
        if r:
            raise ArithmeticError("Molien averaging produced a non-integer")
        coeffs.append(q)
    return MolienSeries(tuple(coeffs), G.order)


def hilbert_numerator(H: MolienSeries, d: DegreeVector):
    """Multiply the truncated series by prod(1 - t^{d_i}) and vet the result.

    Accepted iff the product has nonnegative integer coefficients, constant
    term 1, vanishes beyond degree sum(d_i - 1), and sums to prod(d)/|G|.
    Returns a HilbertNumerator on acceptance, a NumeratorRejection otherwise.
    """
    total = d.total()
    if H.truncation < total:
        raise PrecisionError(
            f"series truncated at {H.truncation}, need at least {total}")
    N = H.truncation
    prod = list(H.coefficients)
    for deg in d:
        # multiply by (1 - t^deg) in place, highest degree first
        for k in range(N, deg - 1, -1):
            prod[k] -= prod[k - deg]
    top = sum(x - 1 for x in d)
    for k, c in enumerate(prod):
        if c < 0:
            return NumeratorRejection(k, f"negative coefficient {c} at degree {k}")
        if c > 0 and k > top:
            return NumeratorRejection(
                k, f"nonzero coefficient beyond degree {top}")
    if prod[0] != 1:
        return NumeratorRejection(0, f"constant term {prod[0]} != 1")
    expected = d.product() // H.group_order
    got = sum(prod)
    if got != expected:
        return NumeratorRejection(
            top, f"coefficient sum {got} != secondary count {expected}")
    return HilbertNumerator(tuple(prod[:top + 1]), expected)


def structural_vectors(n: int):
    """All nondecreasing vectors with d1 = 1 and d_i <= i, by (sum, lex)."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int]):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        i = len(prefix) + 1
        for v in range(prefix[-1], i + 1):
            prefix.append(v)
            extend(prefix)
            prefix.pop()
        if len(out) > _MAX_ENUM:
            raise RuntimeError("degree-vector enumeration exploded")

    extend([1])
    out.sort(key=lambda v: (sum(v), v))
    return out


@dataclass(frozen=True)
class CandidateRecord:
    """One structurally valid vector with its acceptance status."""

    vector: DegreeVector
    status: str  # "accepted" or a rejection reason
    numerator: HilbertNumerator | None = None

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"


def scan_candidates(G: PermGroup, H: MolienSeries,
                    max_candidates: int = 64) -> list[CandidateRecord]:
    """Vet every structural vector; keep acceptance/rejection reasons.

    Acceptance stops being recorded once max_candidates vectors were accepted;
    rejected vectors keep flowing so callers can report them.
    """
    if not G.is_transitive():
        raise ValueError("candidate degree vectors need a transitive group")
    n = G.degree
    exponent = G.exponent()
    records: list[CandidateRecord] = []
    accepted = 0
    needed = n * (n + 1) // 2
    if H.truncation < needed:
        raise PrecisionError(
            f"series truncated at {H.truncation}, need {needed}")
    for vec in structural_vectors(n):
        dv = DegreeVector(vec)
        prod = dv.product()
        if prod % G.order:
            records.append(CandidateRecord(
                dv, f"product {prod} not divisible by group order {G.order}"))
            continue
        if math.lcm(*vec) % exponent:
            records.append(CandidateRecord(
                dv, f"lcm {math.lcm(*vec)} not divisible by exponent {exponent}"))
            continue
        result = hilbert_numerator(H, dv)
        if isinstance(result, NumeratorRejection):
            records.append(CandidateRecord(dv, result.reason))
            continue
        if accepted < max_candidates:
            records.append(CandidateRecord(dv, "accepted", result))
            accepted += 1
    return records


def candidate_degree_vectors(G: PermGroup, H: MolienSeries,
                             max_candidates: int = 64) -> list[DegreeVector]:
    """Accepted candidate vectors ordered by ascending sum, then lex.

    The elementary-symmetric vector (1, 2, ..., n) always qualifies, so an
    empty result signals a configuration bug rather than a mathematical fact.
    """
    accepted = [r.vector for r in scan_candidates(G, H, max_candidates)
                if r.accepted]
    if not accepted:
        raise RuntimeError(
            "no candidate vectors accepted; the symmetric vector must always "
            "qualify, so the truncation or caps are misconfigured")
    return accepted


def default_truncation(n: int) -> int:
    """Enough terms for the worst-case symmetric vector."""
    return n * (n + 1) // 2
