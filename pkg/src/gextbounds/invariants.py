"""Search for primary invariants realizing a candidate degree vector.

The engine vets each candidate vector in three stages:

1. the Hilbert-numerator screen (done upstream during candidate generation);
2. a sound rejection test on span ideals: if a sub-multiset S of the degrees
   satisfies dim V(ideal of all invariants with degree in S) > n - |S|, no
   parameter system with those degrees can exist, because any |S| members of
   one would form a regular sequence cutting the variety down to n - |S|;
3. an explicit construction: deterministic selections from the orbit-sum
   bases (power sums first, then small integer combinations), each checked by
   a Hilbert-driven truncated Buchberger run that stops as soon as the
   leading-term staircase either matches the complete-intersection series
   (accept) or exceeds it at a finished degree (reject).

Rejections are therefore proof-backed and acceptances carry a Groebner
certificate; a search that can do neither within budget raises BudgetError.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations


def _debug(message: str):
    if os.environ.get("GEXTBOUNDS_DEBUG"):
        print(f"[search] {message}", file=sys.stderr, flush=True)

from .errors import BudgetError
from .groebner import (monomial_quotient_dimension, monomial_quotient_series,
                       run_buchberger, run_buchberger_mod)
from .molien import (DegreeVector, HilbertNumerator, MolienSeries,
                     NumeratorRejection, hilbert_numerator)
from .perm import PermGroup
from .poly import (Monomial, Polynomial, apply_permutation,
                   elementary_symmetric, format_polynomial, lex_key,
                   monomial_orbit, monomials_of_degree, orbit_sum, order_key,
                   parse_polynomial)


def invariant_basis(G: PermGroup, d: int) -> list[Polynomial]:
    """One orbit sum per degree-d monomial orbit; the power sum comes first.

    The list length equals the degree-d Molien coefficient.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    gens = list(G.generators)
    reps: list[Monomial] = []
    seen: set[Monomial] = set()
    for m in sorted(monomials_of_degree(G.degree, d), key=lex_key, reverse=True):
        if m in seen:
            continue
        orbit = monomial_orbit(gens, m)
        seen |= orbit
        reps.append(m)
    # lex-descending puts x1^d (the power-sum orbit) first
    return [orbit_sum(G, rep) for rep in reps]


def eliminate_linear(polys: list[Polynomial]) -> list[Polynomial]:
    """Substitute away one linear form, dropping to one fewer variable.

    For homogeneous forms, V(L, f_2, ..) = {0} in n variables iff the
    substituted system cuts out {0} in n-1; this shrinks every staircase the
    zero-dimensionality test has to count.
    """
    linear_idx = next((i for i, f in enumerate(polys)
                       if f.total_degree() == 1), None)
    if linear_idx is None or polys[0].nvars < 2:
        return polys
    L = polys[linear_idx]
    nvars = L.nvars
    # pivot on the last variable occurring in L
    pivot = max(i for m in L.terms for i, e in enumerate(m) if e)
    pc = None
    repl_terms: dict[tuple[int, ...], Fraction] = {}
    for m, c in L.terms.items():
        i = next(j for j, e in enumerate(m) if e)
        if i == pivot:
            pc = c
            continue
        reduced = tuple(e for j, e in enumerate(m) if j != pivot)
        repl_terms[reduced] = c
    repl = Polynomial(nvars - 1, repl_terms).scale(Fraction(-1) / pc)

    powers: dict[int, Polynomial] = {0: Polynomial.constant(nvars - 1, 1),
                                     1: repl}

    def repl_power(e: int) -> Polynomial:
        if e not in powers:
            powers[e] = repl_power(e - 1) * repl
        return powers[e]

    out = []
    for idx, f in enumerate(polys):
        if idx == linear_idx:
            continue
        acc = Polynomial.zero(nvars - 1)
        for m, c in f.terms.items():
            reduced = tuple(e for j, e in enumerate(m) if j != pivot)
            base = Polynomial(nvars - 1, {reduced: c})
            if m[pivot]:
                base = base * repl_power(m[pivot])
            acc = acc + base
        out.append(acc)
    return out


def expected_ci_series(degrees, upto: int) -> list[int]:
    """Hilbert function of a complete intersection with the given degrees."""
    series = [1] + [0] * upto
    for d in degrees:
        nxt = [0] * (upto + 1)
        for k in range(upto + 1):
            c = series[k]
            if c:
                for j in range(k, min(k + d - 1, upto) + 1):
                    nxt[j] += c
        series = nxt
    return series


@dataclass(frozen=True)
class ZeroDimReport:
    """Outcome of the Hilbert-driven zero-dimensionality test."""

    zero_dimensional: bool
    staircase: tuple[Monomial, ...]
    quotient_series: tuple[int, ...]
    failure_degree: int | None = None


def hsop_zero_dim_test(polys: list[Polynomial], order: str = "grevlex",
                       step_budget: int | None = None,
                       deadline: float | None = None) -> ZeroDimReport:
    """Decide whether n homogeneous forms in n variables cut out only 0.

    A linear member is substituted away first (same variety, one variable
    fewer).  The remaining staircase quotient series is compared against the
    complete-intersection prediction: equality certifies a regular sequence,
    excess at any finished degree disproves it.  Both outcomes arrive long
    before a full basis would.
    """
    degrees = sorted(p.total_degree() for p in polys)
    reduced = eliminate_linear(polys)
    if len(reduced) < len(polys):
        degrees.remove(1)
        polys = reduced
    if any(f.is_zero() for f in polys):
        # a member fell inside the ideal of the eliminated linear form
        return ZeroDimReport(False, (), (), failure_degree=0)
    nvars = polys[0].nvars
    horizon = sum(d - 1 for d in degrees) + 1
    predicted = expected_ci_series(degrees, horizon)
    start_series = monomial_quotient_series(
        [f.leading_monomial(order) for f in polys], nvars, horizon)

    def make_pair_skip(outcome: dict):
        def pair_skip(deg: int) -> bool:
            # once the staircase quotient at this degree meets the Koszul
            # bound, every remaining S-pair of the degree reduces to zero
            series = outcome.get("series", start_series)
            return deg <= horizon and series[deg] == predicted[deg]
        return pair_skip

    debug_on = bool(os.environ.get("GEXTBOUNDS_DEBUG"))

    def make_watcher(outcome: dict):
        state = {"count": 0, "done": -1}

        def watcher(lts: list[Monomial], done_through: int):
            outcome["lts"] = tuple(lts)
            # the series computation over a big staircase costs real time,
            # so run it when the finished degree advances, then every few
            # insertions; staleness only delays a verdict, never flips it
            state["count"] += 1
            if done_through == state["done"] and state["count"] % 8:
                return None
            state["done"] = done_through
            if debug_on and len(lts) % 25 < 1:
                print(f"[staircase] {len(lts)} leading terms, finished "
                      f"degree {done_through}", file=sys.stderr, flush=True)
            series = monomial_quotient_series(lts, nvars, horizon,
                                              assume_minimal=True)
            outcome["series"] = series
            if series == predicted:
                return True
            for dd in range(min(done_through, horizon) + 1):
                if series[dd] > predicted[dd]:
                    outcome["failure_degree"] = dd
                    return False
            return None
        return watcher

    # modular first: quotient dimensions mod p dominate the rational ones,
    # so staircase equality with the prediction is already a proof
    outcome: dict = {}
    if order == "grevlex" and (nvars + 1) * 7 <= 63:
        from .fastmod import run_buchberger_mod_np
        result = run_buchberger_mod_np(polys, step_budget,
                                       degree_cap=horizon,
                                       watcher=make_watcher(outcome),
                                       pair_skip=make_pair_skip(outcome),
                                       deadline=deadline)
    else:
        result = run_buchberger_mod(polys, order, step_budget,
                                    degree_cap=horizon,
                                    watcher=make_watcher(outcome),
                                    pair_skip=make_pair_skip(outcome),
                                    deadline=deadline)
    if result is not None:
        _, verdict, _ = result
        if verdict is None:
            raise AssertionError("Hilbert-driven test ended undecided")
        if verdict:
            return ZeroDimReport(True, outcome["lts"],
                                 tuple(outcome["series"]))
        # a modular excess might be a bad-prime artifact; confirm exactly,
        # which is cheap because the excess shows at a small degree
        fail_at = outcome["failure_degree"]
        exact: dict = {}
        basis, verdict2, _ = run_buchberger(polys, order, step_budget,
                                            degree_cap=fail_at,
                                            watcher=make_watcher(exact),
                                            pair_skip=make_pair_skip(exact),
                                            deadline=deadline)
        if verdict2 is False:
            return ZeroDimReport(False, exact["lts"],
                                 tuple(exact["series"]),
                                 exact["failure_degree"])
        # the prime lied (vanishingly rare): fall through to the exact test

    outcome = {}
    basis, verdict, _ = run_buchberger(polys, order, step_budget,
                                       degree_cap=horizon,
                                       watcher=make_watcher(outcome),
                                       pair_skip=make_pair_skip(outcome),
                                       deadline=deadline)
    if verdict is None:
        # pairs exhausted without an early verdict: the staircase is final
        # through the horizon, where the sandwich argument must decide
        raise AssertionError("Hilbert-driven test ended undecided")
    return ZeroDimReport(verdict, outcome["lts"],
                         tuple(outcome.get("series", ())),
                         outcome.get("failure_degree"))


@dataclass(frozen=True)
class PrimaryCertificate:
    """Record of the checks certifying a primary system."""

    degrees: tuple[int, ...]
    homogeneous: bool
    invariant: bool
    zero_dimensional: bool
    order: str
    staircase: tuple[Monomial, ...]
    quotient_series: tuple[int, ...]

    def pure_power_degrees(self) -> dict[int, int]:
        """Variable (1-based) -> smallest pure-power exponent in the staircase."""
        out: dict[int, int] = {}
        for lm in self.staircase:
            support = [i for i, e in enumerate(lm) if e]
            if len(support) == 1:
                v = support[0] + 1
                out[v] = min(out.get(v, 10 ** 9), lm[support[0]])
        return out


@dataclass(frozen=True)
class VerificationFailure:
    check: str
    witness: str


@dataclass(frozen=True)
class PrimarySet:
    """n verified primary invariants with their certificate."""

    polys: tuple[Polynomial, ...]
    degrees: DegreeVector
    certificate: PrimaryCertificate

    def serialize(self) -> str:
        lines = ["degrees: " + " ".join(str(d) for d in self.degrees)]
        lines.extend(format_polynomial(f) for f in self.polys)
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse_polys(text: str, nvars: int) -> list[Polynomial]:
        """Read the serialized polynomial lines (header optional)."""
        polys = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("degrees:"):
                continue
            polys.append(parse_polynomial(line, nvars))
        return polys


@dataclass(frozen=True)
class SecondaryData:
    """Counts and degrees of the module generators over the primary ring."""

    count: int
    degrees: tuple[int, ...]
    g2_degree: int | None
    g2_degree_ambiguous: bool = False


@dataclass
class SearchConfig:
    step_budget: int = 2_000_000_000   # monomial operations per Groebner run
    subset_step_budget: int = 2_000_000
    attempt_step_budget: int = 12_000_000  # first-pass ceiling per selection
    max_attempts: int = 200            # deterministic small-coefficient phase
    generic_attempts: int = 3          # dense seeded combinations afterwards
    combo_cap: int = 48
    seed: int = 0
    wall_seconds: float | None = None
    order: str = "grevlex"


class _XorShift:
    """Tiny deterministic generator; stable across interpreter versions."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (seed * 2654435761 + 0x9E3779B97F4A7C15) & ((1 << 64) - 1)
        if self.state == 0:
            self.state = 1

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & ((1 << 64) - 1)
        x ^= x >> 7
        x ^= (x << 17) & ((1 << 64) - 1)
        self.state = x
        return x

    def coefficient(self, bound: int) -> int:
        """Nonzero integer in [-bound, bound]."""
        x = self.next()
        c = 1 + (x >> 8) % bound
        return c if x & 1 else -c


def verify_primary(G: PermGroup, polys: list[Polynomial],
                   order: str = "grevlex", step_budget: int | None = None):
    """Check homogeneity, invariance, and zero-dimensionality of a proposed set.

    Returns a PrimaryCertificate on success, else a VerificationFailure with a
    witness.  Zero-dimensionality of n homogeneous forms in n variables
    already forces algebraic independence, so no separate Jacobian test runs.
    """
    n = G.degree
    if len(polys) != n:
        return VerificationFailure(
            "shape", f"expected {n} polynomials, got {len(polys)}")
    if any(f.nvars != n for f in polys):
        return VerificationFailure("shape", "polynomial in wrong variable count")
    if any(f.is_zero() for f in polys):
        return VerificationFailure("shape", "zero polynomial in the set")
    for idx, f in enumerate(polys):
        if not f.is_homogeneous():
            return VerificationFailure(
                "homogeneity", f"polynomial {idx + 1} mixes degrees")
    for idx, f in enumerate(polys):
        for g in G.generators:
            if apply_permutation(g, f) != f:
                return VerificationFailure(
                    "invariance",
                    f"polynomial {idx + 1} moves under generator {g}")
    report = hsop_zero_dim_test(polys, order, step_budget)
    degrees = tuple(sorted(f.total_degree() for f in polys))
    if not report.zero_dimensional:
        missing = _missing_pure_power(report.staircase, n)
        return VerificationFailure(
            "zero_dimensionality",
            f"quotient exceeds the finite prediction at degree "
            f"{report.failure_degree}; no pure power for x{missing} in the "
            f"staircase")
    return PrimaryCertificate(degrees, True, True, True, order,
                              report.staircase, report.quotient_series)


def _missing_pure_power(lts: tuple[Monomial, ...], nvars: int) -> int:
    covered = set()
    for lm in lts:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            covered.add(support[0])
    for i in range(nvars):
        if i not in covered:
            return i + 1
    return 0


class _Feasibility:
    """Cached sound rejection tests for candidate degree multisets.

    For a value-set S of degrees, dim_verdict(S, bound) decides whether the
    ideal generated by every invariant of those degrees has variety dimension
    at most `bound`.  A pass can stop early (a partial staircase already
    bounds the dimension from above); a refutation needs the finished basis;
    a blown budget stays unknown and never rejects anything.
    """

    def __init__(self, G: PermGroup, config: SearchConfig):
        self.G = G
        self.config = config
        self.bases: dict[int, list[Polynomial]] = {}
        # values -> ("le", proven bound) or ("exact", dimension)
        self.dim_facts: dict[frozenset[int], tuple[str, int]] = {}
        self.unknown: set[tuple[frozenset[int], int]] = set()

    def basis(self, d: int) -> list[Polynomial]:
        if d not in self.bases:
            self.bases[d] = invariant_basis(self.G, d)
        return self.bases[d]

    def dim_verdict(self, values: frozenset[int], bound: int) -> bool | None:
        """True: dim <= bound proven.  False: dim > bound proven.  None: unknown."""
        fact = self.dim_facts.get(values)
        if fact:
            kind, value = fact
            if kind == "exact":
                return value <= bound
            if kind == "le" and value <= bound:
                return True
        if (values, bound) in self.unknown:
            return None
        nvars = self.G.degree
        gens: list[Polynomial] = []
        for d in sorted(values):
            gens.extend(self.basis(d))

        def watcher(lts, done_through):
            if monomial_quotient_dimension(lts, nvars) <= bound:
                return True
            return None

        # modular pass: dimensions can only shrink when moving back to Q
        try:
            result = run_buchberger_mod(
                gens, self.config.order, self.config.subset_step_budget,
                watcher=watcher)
        except BudgetError:
            self.unknown.add((values, bound))
            return None
        if result is not None and result[1]:
            self._record(values, ("le", bound))
            return True
        # no modular pass: candidate rejection needs the exact dimension
        try:
            basis, verdict, _ = run_buchberger(
                gens, self.config.order, self.config.subset_step_budget,
                watcher=watcher)
        except BudgetError:
            self.unknown.add((values, bound))
            return None
        if verdict:
            self._record(values, ("le", bound))
            return True
        lts = [g.leading_monomial(self.config.order) for g in basis]
        dim = monomial_quotient_dimension(lts, nvars)
        self._record(values, ("exact", dim))
        return dim <= bound

    def _record(self, values: frozenset[int], fact: tuple[str, int]):
        old = self.dim_facts.get(values)
        if old and old[0] == "exact":
            return
        if old and fact[0] == "le":
            fact = ("le", min(old[1], fact[1]))
        self.dim_facts[values] = fact

    def prefix_reject_reason(self, dvec: DegreeVector) -> str | None:
        """Cheap screen over proper prefix value-sets, cached per group."""
        n = self.G.degree
        mult: dict[int, int] = {}
        for d in dvec:
            mult[d] = mult.get(d, 0) + 1
        values = sorted(mult)
        running: frozenset[int] = frozenset()
        m = 0
        for v in values[:-1]:  # the full set is left to the construction
            running = running | {v}
            m += mult[v]
            if m <= 1:
                continue
            if self.dim_verdict(running, n - m) is False:
                return (f"degrees {tuple(sorted(running))} span an ideal of "
                        f"variety dimension > {n - m}")
        return None

    def reject_reason(self, dvec: DegreeVector) -> str | None:
        """A witness sub-multiset proving no parameter system exists, or None."""
        n = self.G.degree
        mult: dict[int, int] = {}
        for d in dvec:
            mult[d] = mult.get(d, 0) + 1
        values = sorted(mult)
        for size in range(1, len(values) + 1):
            for subset in combinations(values, size):
                m = sum(mult[v] for v in subset)
                if m <= 1:
                    continue  # any nonzero invariant cuts one dimension
                if self.dim_verdict(frozenset(subset), n - m) is False:
                    return (f"degrees {subset} span an ideal of variety "
                            f"dimension > {n - m}")
        return None


def _lcg_shuffle(items: list, seed: int) -> list:
    """Deterministic permutation; seed 0 keeps the natural order."""
    if seed == 0 or len(items) < 2:
        return list(items)
    out = list(items)
    state = (seed ^ 0x9E3779B9) & 0xFFFFFFFF
    for i in range(len(out) - 1, 0, -1):
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        j = state % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def _extended_elements(basis: list[Polynomial], cap: int) -> list[Polynomial]:
    """Basis elements, then small integer two-term combinations."""
    out = list(basis)
    for (i, bi), (j, bj) in combinations(list(enumerate(basis)), 2):
        for c in (1, -1, 2, -2):
            if len(out) >= cap:
                return out
            out.append(bi + bj.scale(c))
    return out


def _selection_stream(per_degree: list[tuple[int, list[Polynomial]]],
                      seed: int, limit: int):
    """Deterministic stream of full selections.

    Order: the all-first selection, then single-group sweeps (one degree
    group walks through its combinations while the others stay at rank 0),
    then the diagonal over mixed ranks.  Failures usually sit at one degree,
    so the sweeps find repairs quickly.
    """
    option_lists: list[list[tuple[int, ...]]] = []
    for mult, elements in per_degree:
        combos = list(combinations(range(len(elements)), mult))
        option_lists.append(_lcg_shuffle(combos, seed))
    if any(not opts for opts in option_lists):
        return
    parts = len(option_lists)

    def build(ranks):
        picks: list[Polynomial] = []
        for (mult, elements), opts, r in zip(per_degree, option_lists, ranks):
            picks.extend(elements[k] for k in opts[r])
        return picks

    yielded = 0
    seen: set[tuple[int, ...]] = set()

    def emit(ranks):
        nonlocal yielded
        if ranks in seen:
            return None
        if any(r >= len(option_lists[i]) for i, r in enumerate(ranks)):
            return None
        seen.add(ranks)
        yielded += 1
        return build(ranks)

    first = emit((0,) * parts)
    if first is not None:
        yield first
    if yielded >= limit:
        return
    # single-group sweeps, round-robin across groups
    max_rank = max(len(opts) for opts in option_lists)
    for r in range(1, max_rank):
        for i in range(parts):
            ranks = tuple(r if j == i else 0 for j in range(parts))
            picks = emit(ranks)
            if picks is not None:
                yield picks
                if yielded >= limit:
                    return
        if r > 24 and yielded:  # deep sweeps help less than mixing
            break
    # mixed ranks by ascending total
    for total in range(1, (max_rank - 1) * parts + 1):
        for ranks in _compositions(total, parts):
            picks = emit(tuple(ranks))
            if picks is not None:
                yield picks
                if yielded >= limit:
                    return


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def find_primary_invariants(G: PermGroup, candidates: list[DegreeVector],
                            config: SearchConfig | None = None) -> PrimarySet:
    """First realizable candidate vector, realized and certified.

    Candidates are taken in the given order; each is either realized (with a
    zero-dimensionality certificate), rejected with a span-dimension witness,
    or the search raises BudgetError naming the vector.  When every candidate
    falls through, the elementary symmetric polynomials are the fallback.
    """
    config = config or SearchConfig()
    n = G.degree
    if not G.is_transitive():
        raise ValueError("primary-invariant search expects a transitive group")
    deadline = (time.monotonic() + config.wall_seconds
                if config.wall_seconds else None)

    if G.is_symmetric():
        polys = [elementary_symmetric(n, d) for d in range(1, n + 1)]
        return _certify(G, polys, tuple(range(1, n + 1)), config)

    feas = _Feasibility(G, config)
    quick = min(8, config.max_attempts)
    for dvec in candidates:
        if deadline and time.monotonic() > deadline:
            raise BudgetError(f"wall budget exhausted before vector {dvec.render()}")
        t0 = time.monotonic()
        # prefix screen first (its span dims are shared across candidates),
        # then cheap construction attempts, then the full subset screen,
        # then the deterministic stream and the dense generic phase
        reason = feas.prefix_reject_reason(dvec)
        if reason is not None:
            _debug(f"{dvec.render()}: prefix reject ({reason}) "
                   f"[{time.monotonic() - t0:.1f}s]")
            continue
        found = _search_vector(G, dvec, feas, config, deadline, limit=quick)
        if found is not None:
            _debug(f"{dvec.render()}: realized by a quick selection "
                   f"[{time.monotonic() - t0:.1f}s]")
            return found
        reason = feas.reject_reason(dvec)
        if reason is not None:
            _debug(f"{dvec.render()}: subset reject ({reason}) "
                   f"[{time.monotonic() - t0:.1f}s]")
            continue
        found = _search_vector(G, dvec, feas, config, deadline,
                               limit=config.max_attempts, skip=quick)
        if found is None:
            # dense generic probes are the last word: the good selections
            # form a Zariski-open set, so when one exists a dense integer
            # sample almost surely lands in it, and consistent completed
            # misses drop the vector
            found, _ = _generic_search(G, dvec, feas, config, deadline,
                                       attempts=config.generic_attempts)
        _debug(f"{dvec.render()}: full search "
               f"{'succeeded' if found else 'dropped the vector'} "
               f"[{time.monotonic() - t0:.1f}s]")
        if found is not None:
            return found
    polys = [elementary_symmetric(n, d) for d in range(1, n + 1)]
    return _certify(G, polys, tuple(range(1, n + 1)), config)


def _attempt_deadline(deadline: float | None) -> float | None:
    """Per-attempt ceiling: never let one selection eat the whole row."""
    if deadline is None:
        return None
    return min(deadline, time.monotonic() + 120.0)


class _Skipped(Exception):
    """Selection exceeded the attempt budget; retry later with a bigger one."""


def _try_picks(picks: list[Polynomial], dvec: DegreeVector,
               config: SearchConfig, deadline, budget: int) -> PrimarySet | None:
    try:
        report = hsop_zero_dim_test(picks, config.order, budget,
                                    _attempt_deadline(deadline))
    except BudgetError:
        raise _Skipped
    if not report.zero_dimensional:
        return None
    ordered = sorted(picks, key=lambda f: f.total_degree())
    cert = PrimaryCertificate(tuple(dvec), True, True, True, config.order,
                              report.staircase, report.quotient_series)
    return PrimarySet(tuple(ordered), dvec, cert)


def _search_vector(G: PermGroup, dvec: DegreeVector, feas: _Feasibility,
                   config: SearchConfig, deadline, limit: int,
                   skip: int = 0) -> PrimarySet | None:
    """Two passes over the deterministic stream: cheap ceiling, then full."""
    mult: dict[int, int] = {}
    for d in dvec:
        mult[d] = mult.get(d, 0) + 1
    per_degree: list[tuple[int, list[Polynomial]]] = []
    for d in sorted(mult):
        base = feas.basis(d)
        if d == 1:
            elements = list(base)  # the single linear invariant
        else:
            elements = _extended_elements(base, config.combo_cap)
        if len(elements) < mult[d]:
            return None  # the invariant space is too thin for the multiplicity
        per_degree.append((mult[d], elements))

    expensive: list[int] = []
    for idx, picks in enumerate(
            _selection_stream(per_degree, config.seed, limit)):
        if idx < skip:
            continue
        if deadline and time.monotonic() > deadline:
            raise BudgetError(
                f"wall budget exhausted while searching vector {dvec.render()}")
        try:
            found = _try_picks(picks, dvec, config, deadline,
                               min(config.step_budget,
                                   config.attempt_step_budget))
        except _Skipped:
            expensive.append(idx)
            continue
        if found is not None:
            return found
    if not expensive:
        return None
    wanted = set(expensive)
    for idx, picks in enumerate(
            _selection_stream(per_degree, config.seed, limit)):
        if idx not in wanted:
            continue
        if deadline and time.monotonic() > deadline:
            raise BudgetError(
                f"wall budget exhausted while searching vector {dvec.render()}")
        try:
            found = _try_picks(picks, dvec, config, deadline,
                               config.step_budget)
        except _Skipped:
            continue
        if found is not None:
            return found
    return None


def _generic_search(G: PermGroup, dvec: DegreeVector, feas: _Feasibility,
                    config: SearchConfig, deadline, attempts: int,
                    skip: int = 0) -> tuple[PrimarySet | None, int]:
    """Dense seeded combinations with large coefficients.

    When a parameter system of these degrees exists, the working selections
    form a nonempty Zariski-open set, so a dense integer sample realizes one
    with overwhelming probability.  Returns (found, completed_misses): a miss
    only counts when the test finished inside its budget, so budget blowups
    never masquerade as evidence of infeasibility.
    """
    rng = _XorShift((config.seed << 16) ^ dvec.product() ^ (dvec.total() << 8))
    n = G.degree
    misses = 0
    for trial in range(attempts):
        picks: list[Polynomial] = []
        for d in dvec:
            basis = feas.basis(d)
            f = Polynomial.zero(n)
            for b in basis:
                f = f + b.scale(rng.coefficient(1 << 16))
            picks.append(f)
        if trial < skip:
            continue  # replay the generator stream deterministically
        if deadline and time.monotonic() > deadline:
            raise BudgetError(
                f"wall budget exhausted while searching vector {dvec.render()}")
        try:
            # last-resort probes run under the full row deadline
            report = hsop_zero_dim_test(picks, config.order,
                                        config.step_budget, deadline)
        except BudgetError:
            continue  # inconclusive
        if report.zero_dimensional:
            ordered = sorted(picks, key=lambda f: f.total_degree())
            cert = PrimaryCertificate(tuple(dvec), True, True, True,
                                      config.order, report.staircase,
                                      report.quotient_series)
            return PrimarySet(tuple(ordered), dvec, cert), misses
        misses += 1
    return None, misses


def _certify(G: PermGroup, polys: list[Polynomial], degrees: tuple[int, ...],
             config: SearchConfig) -> PrimarySet:
    result = verify_primary(G, polys, config.order, config.step_budget)
    if isinstance(result, VerificationFailure):
        raise AssertionError(
            f"internal: constructed set failed verification: {result.witness}")
    return PrimarySet(tuple(polys), DegreeVector(degrees), result)


def secondary_data(P: PrimarySet, G: PermGroup,
                   H: MolienSeries) -> SecondaryData:
    """Secondary-invariant count and degrees from the Hilbert numerator."""
    result = hilbert_numerator(H, P.degrees)
    if isinstance(result, NumeratorRejection):
        raise ArithmeticError(
            f"verified primary set has a rejected numerator: {result.reason}")
    degs = tuple(result.secondary_degrees())
    positive = [d for d in degs if d > 0]
    g2 = min(positive) if positive else None
    ambiguous = False
    if g2 is not None:
        ambiguous = _reachable(g2, [d for d in P.degrees if d > 1])
    return SecondaryData(result.secondary_count, degs, g2, ambiguous)


def _reachable(target: int, values: list[int]) -> bool:
    """Is target a nonnegative integer combination of the values?"""
    reach = [False] * (target + 1)
    reach[0] = True
    for v in sorted(set(values)):
        for k in range(v, target + 1):
            if reach[k - v]:
                reach[k] = True
    return reach[target]
