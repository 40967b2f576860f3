"""Buchberger's algorithm with packed-exponent internals.

Public entry points: buchberger() -> reduced basis over Q, reduce_poly()
(normal forms), is_zero_dimensional(), ideal_dimension(), and the
incremental run_buchberger()/run_buchberger_mod() loops whose watcher
callback lets callers stop early from the leading-term staircase (the
invariant engine's Hilbert-driven zero-dimensionality test).

Inside the engine a monomial is a single integer: each variable occupies an
8-bit field (guard bit on top), so multiplication is integer addition and
divisibility is a guarded subtraction.  Working polynomials are dicts from
codes to coefficients paired with a lazy max-heap of candidate leading
codes.  Exact arithmetic is fraction-free over content-stripped integers;
the modular twin works over a fixed Mersenne prime.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import BudgetError
from .poly import (Monomial, Polynomial, monomial_div, monomial_divides,
                   order_key)

MODULAR_PRIME = 2_147_483_647  # Mersenne prime; coefficients stay one limb

_FIELD = 8
_GUARD_BIT = 0x80


class Codec:
    """Packs exponent tuples into guarded 8-bit fields of one integer."""

    __slots__ = ("nvars", "guards", "shifts", "order", "_key")

    def __init__(self, nvars: int, order: str = "grevlex"):
        self.nvars = nvars
        self.shifts = tuple(_FIELD * i for i in range(nvars))
        self.guards = sum(_GUARD_BIT << s for s in self.shifts)
        self.order = order
        self._key = {}

    def pack(self, m: Monomial) -> int:
        code = 0
        for e, s in zip(m, self.shifts):
            if e >= _GUARD_BIT:
                raise OverflowError("exponent too large for packed monomials")
            code |= e << s
        return code

    def unpack(self, code: int) -> Monomial:
        return tuple((code >> s) & 0x7F for s in self.shifts)

    def degree(self, code: int) -> int:
        return sum((code >> s) & 0x7F for s in self.shifts)

    def divides(self, a: int, b: int) -> bool:
        return ((b | self.guards) - a) & self.guards == self.guards

    def lcm(self, a: int, b: int) -> int:
        out = 0
        for s in self.shifts:
            out |= max((a >> s) & 0x7F, (b >> s) & 0x7F) << s
        return out

    def key(self, code: int) -> int:
        """Integer whose natural order realizes the chosen monomial order.

        The first field folded in ends up most significant, so grevlex folds
        the complemented exponents starting from x_n, and lex folds the plain
        exponents starting from x_1.
        """
        k = self._key.get(code)
        if k is None:
            exps = self.unpack(code)
            if self.order == "grevlex":
                k = sum(exps)
                for e in reversed(exps):
                    k = (k << _FIELD) | (0x7F - e)
            else:  # lex with x1 highest
                k = 0
                for e in exps:
                    k = (k << _FIELD) | e
            self._key[code] = k
        return k


CPoly = dict[int, int]  # packed monomial -> coefficient


class StepCounter:
    """Counts merge work (in monomial operations) against an optional budget.

    Also enforces an optional wall-clock deadline, checked sparsely so the
    common path stays a pair of integer operations.
    """

    __slots__ = ("steps", "budget", "deadline", "_next_check")

    def __init__(self, budget: int | None = None,
                 deadline: float | None = None):
        self.steps = 0
        self.budget = budget
        self.deadline = deadline
        self._next_check = 1 << 20

    def tick(self, n: int = 1):
        self.steps += n
        if self.budget is not None and self.steps > self.budget:
            raise BudgetError(
                f"Groebner step budget of {self.budget} exhausted")
        if self.deadline is not None and self.steps >= self._next_check:
            self._next_check = self.steps + (1 << 20)
            if time.monotonic() > self.deadline:
                raise BudgetError("wall budget exhausted inside a Groebner run")


def _strip_content(p: CPoly) -> CPoly:
    if not p:
        return p
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            return p
    if g > 1:
        return {m: c // g for m, c in p.items()}
    return p


def _to_cpoly(f: Polynomial, codec: Codec) -> CPoly:
    if f.is_zero():
        return {}
    denom = 1
    for c in f.terms.values():
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    p = {codec.pack(m): int(c * denom) for m, c in f.terms.items()}
    return dict(_strip_content(p))


def _to_polynomial(p: CPoly, codec: Codec, monic: bool = True) -> Polynomial:
    if not p:
        return Polynomial.zero(codec.nvars)
    lead = max(p, key=codec.key)
    lc = p[lead]
    if monic:
        return Polynomial(codec.nvars,
                          {codec.unpack(m): Fraction(c, lc)
                           for m, c in p.items()}, _trusted=True)
    return Polynomial(codec.nvars,
                      {codec.unpack(m): Fraction(c) for m, c in p.items()},
                      _trusted=True)


class _Work:
    """A working polynomial: coefficient dict plus a lazy max-heap of codes."""

    __slots__ = ("coeffs", "heap", "codec")

    def __init__(self, coeffs: CPoly, codec: Codec):
        self.codec = codec
        self.coeffs = coeffs
        self.heap = [(-codec.key(m), m) for m in coeffs]
        heapq.heapify(self.heap)

    def lead(self) -> int | None:
        coeffs, heap = self.coeffs, self.heap
        while heap:
            m = heap[0][1]
            if m in coeffs:
                return m
            heapq.heappop(heap)
        return None

    def push_new(self, code: int):
        heapq.heappush(self.heap, (-self.codec.key(code), code))

    def compact(self):
        if len(self.heap) > 4 * len(self.coeffs) + 64:
            codec = self.codec
            self.heap = [(-codec.key(m), m) for m in self.coeffs]
            heapq.heapify(self.heap)


def _merge_exact(work: _Work, g: CPoly, shift: int, a: int, b: int):
    """work <- a*work - b*(x^shift)*g, cancelling the current lead exactly."""
    coeffs = work.coeffs
    if a != 1:
        for m in coeffs:
            coeffs[m] *= a
    for m, c in g.items():
        mm = m + shift
        s = coeffs.get(mm)
        if s is None:
            coeffs[mm] = -b * c
            work.push_new(mm)
        else:
            s -= b * c
            if s:
                coeffs[mm] = s
            else:
                del coeffs[mm]


def _merge_mod(work: _Work, g: CPoly, shift: int, factor: int, p: int):
    """work <- work - factor*(x^shift)*g mod p."""
    coeffs = work.coeffs
    for m, c in g.items():
        mm = m + shift
        s = coeffs.get(mm)
        if s is None:
            coeffs[mm] = (-factor * c) % p
            work.push_new(mm)
        else:
            s = (s - factor * c) % p
            if s:
                coeffs[mm] = s
            else:
                del coeffs[mm]


def _top_reduce(work: _Work, basis, codec: Codec, counter: StepCounter,
                modulus: int | None) -> int | None:
    """Reduce the lead of work until irreducible; returns the final lead code.

    Among the reducers whose leading term divides the lead, the one with the
    fewest terms wins: short reducers keep the tail sparse over long chains.
    """
    divides = codec.divides
    steps = 0
    while True:
        lead = work.lead()
        if lead is None:
            return None
        best = None
        for lt, g in basis:
            if divides(lt, lead):
                best = (lt, g)
                break
        if best is None:
            return lead
        lt, g = best
        counter.tick(len(g) + 1)
        shift = lead - lt
        coeffs = work.coeffs
        if modulus is None:
            cp, cg = coeffs[lead], g[lt]
            d = math.gcd(cp, cg)
            _merge_exact(work, g, shift, cg // d, cp // d)
            stripped = _strip_content(coeffs)
            if stripped is not coeffs:
                work.coeffs = dict(stripped)
        else:
            factor = (coeffs[lead] * pow(g[lt], modulus - 2, modulus)) % modulus
            _merge_mod(work, g, shift, factor, modulus)
        steps += 1
        if steps % 64 == 0:
            work.compact()


def _spoly(f: tuple[int, CPoly], g: tuple[int, CPoly], codec: Codec,
           counter: StepCounter, modulus: int | None) -> _Work:
    ltf, pf = f
    ltg, pg = g
    lcm = codec.lcm(ltf, ltg)
    sf, sg = lcm - ltf, lcm - ltg
    counter.tick(len(pf) + len(pg))
    res: CPoly = {}
    if modulus is None:
        cf, cg = pf[ltf], pg[ltg]
        d = math.gcd(cf, cg)
        a, b = cg // d, cf // d
        for m, c in pf.items():
            res[m + sf] = a * c
        for m, c in pg.items():
            mm = m + sg
            s = res.get(mm, 0) - b * c
            if s:
                res[mm] = s
            else:
                res.pop(mm, None)
    else:
        inv_f = pow(pf[ltf], modulus - 2, modulus)
        inv_g = pow(pg[ltg], modulus - 2, modulus)
        for m, c in pf.items():
            res[m + sf] = (c * inv_f) % modulus
        for m, c in pg.items():
            mm = m + sg
            s = (res.get(mm, 0) - c * inv_g) % modulus
            if s:
                res[mm] = s
            else:
                res.pop(mm, None)
    return _Work(res, codec)


def _core_loop(inputs: list[CPoly], codec: Codec, counter: StepCounter,
               degree_cap: int | None, watcher, modulus: int | None,
               pair_skip=None):
    """Shared Buchberger loop; returns (basis, verdict, completed_degree).

    pair_skip(degree) -> bool lets a caller drop S-pairs it can prove reduce
    to zero (Hilbert-driven pruning); dropped pairs count as processed.
    """
    basis: list[tuple[int, CPoly]] = []
    for p in inputs:
        if p:
            basis.append((max(p, key=codec.key), p))
    if not basis:
        return [], None, -1
    basis.sort(key=lambda t: codec.key(t[0]))
    lt_tuples = [codec.unpack(lt) for lt, _ in basis]

    heap: list = []
    processed: set[tuple[int, int]] = set()

    def add_pairs(j: int):
        ltj = basis[j][0]
        degj = codec.degree(ltj)
        for i in range(j):
            lti = basis[i][0]
            lcm = codec.lcm(lti, ltj)
            dlcm = codec.degree(lcm)
            # product criterion: coprime leading terms reduce to zero
            if dlcm == codec.degree(lti) + degj:
                processed.add((i, j))
                continue
            if degree_cap is not None and dlcm > degree_cap:
                continue
            heapq.heappush(heap, (codec.key(lcm), i, j, dlcm, lcm))

    for j in range(len(basis)):
        add_pairs(j)

    def chain_skippable(i: int, j: int, lcm: int) -> bool:
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not codec.divides(basis[k][0], lcm):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a in processed and b in processed:
                return True
        return False

    completed = -1
    while heap:
        _, i, j, deg, lcm = heapq.heappop(heap)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        if deg > completed + 1:
            completed = deg - 1
        if pair_skip is not None and pair_skip(deg):
            continue
        if chain_skippable(i, j, lcm):
            continue
        work = _spoly(basis[i], basis[j], codec, counter, modulus)
        lead = _top_reduce(work, basis, codec, counter, modulus)
        if lead is None:
            continue
        s = work.coeffs
        if modulus is None:
            s = dict(_strip_content(s))
            if s[lead] < 0:
                s = {m: -c for m, c in s.items()}
        basis.append((lead, s))
        lt_tuples.append(codec.unpack(lead))
        add_pairs(len(basis) - 1)
        if watcher is not None:
            done_through = completed
            if heap:
                done_through = min(done_through, heap[0][3] - 1)
            verdict = watcher(list(lt_tuples), done_through)
            if verdict is not None:
                return basis, verdict, done_through
    if watcher is not None:
        horizon = degree_cap if degree_cap is not None else 10 ** 9
        verdict = watcher(list(lt_tuples), horizon)
        if verdict is not None:
            return basis, verdict, horizon
    return basis, None, completed


def run_buchberger(gens: list[Polynomial], order: str = "grevlex",
                   step_budget: int | None = None,
                   degree_cap: int | None = None,
                   watcher=None, pair_skip=None,
                   deadline: float | None = None):
    """Exact core loop with normal (lowest lcm first) pair selection.

    Pairs whose lcm degree exceeds degree_cap are dropped, yielding a
    degree-truncated basis.  After each basis change watcher(lts, completed)
    may return True/False to stop early with that verdict; lts are exponent
    tuples.  Returns (basis as Polynomial list, verdict, completed_degree).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return [], None, -1
    codec = Codec(gens[0].nvars, order)
    counter = StepCounter(step_budget, deadline)
    inputs = [_to_cpoly(f, codec) for f in gens]
    basis, verdict, completed = _core_loop(inputs, codec, counter,
                                           degree_cap, watcher, None,
                                           pair_skip)
    polys = [_to_polynomial(p, codec) for _, p in basis]
    return polys, verdict, completed


def run_buchberger_mod(gens: list[Polynomial], order: str = "grevlex",
                       step_budget: int | None = None,
                       degree_cap: int | None = None,
                       watcher=None, p: int = MODULAR_PRIME,
                       pair_skip=None, deadline: float | None = None):
    """Modular twin of run_buchberger; leading monomials only.

    Returns None when an input coefficient vanishes mod p (caller falls back
    to exact arithmetic).  Quotient dimensions mod p dominate the rational
    ones degreewise, so a watcher verdict of "small enough" transfers to Q.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return [], None, -1
    codec = Codec(gens[0].nvars, order)
    counter = StepCounter(step_budget, deadline)
    inputs = []
    for f in gens:
        q = _to_cpoly(f, codec)
        qm = {m: c % p for m, c in q.items()}
        if any(c == 0 for c in qm.values()):
            return None
        inputs.append(qm)
    basis, verdict, completed = _core_loop(inputs, codec, counter,
                                           degree_cap, watcher, p,
                                           pair_skip)
    lts = [codec.unpack(lt) for lt, _ in basis]
    return lts, verdict, completed


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic generators, sorted by leading monomial."""

    generators: tuple[Polynomial, ...]
    order: str = "grevlex"

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars if self.generators else 0

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]


def buchberger(gens: list[Polynomial], order: str = "grevlex",
               step_budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis((), order)
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators live in different polynomial rings")
    codec = Codec(nvars, order)
    counter = StepCounter(step_budget)
    inputs = [_to_cpoly(f, codec) for f in gens]
    raw, _, _ = _core_loop(inputs, codec, counter, None, None, None)

    # prune members whose leading term another member's divides, then
    # inter-reduce the survivors fully
    kept: list[tuple[int, CPoly]] = []
    for lt, p in sorted(raw, key=lambda t: codec.key(t[0])):
        if any(codec.divides(lt2, lt) for lt2, _ in kept):
            continue
        kept.append((lt, p))
    reduced: list[Polynomial] = []
    for idx, (lt, p) in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        nf = _normal_form(p, others, codec, counter)
        if nf:
            reduced.append(_to_polynomial(nf, codec))
    reduced.sort(key=lambda f: order_key(order)(f.leading_monomial(order)))
    return GroebnerBasis(tuple(reduced), order)


def _normal_form_frac(p: dict[int, Fraction], basis: list[tuple[int, CPoly]],
                      codec: Codec, counter: StepCounter) -> dict[int, Fraction]:
    """Full normal form over Q: no term of the result reducible by the basis.

    Used only on the small polynomials of final inter-reductions and normal
    form queries, where exact unscaled output matters more than speed.
    """
    remainder: dict[int, Fraction] = {}
    work = _Work(dict(p), codec)
    coeffs = work.coeffs
    divides = codec.divides
    while True:
        lead = work.lead()
        if lead is None:
            break
        for lt, g in basis:
            if divides(lt, lead):
                counter.tick(len(g) + 1)
                shift = lead - lt
                factor = coeffs[lead] / g[lt]
                for m, c in g.items():
                    mm = m + shift
                    s = coeffs.get(mm)
                    if s is None:
                        coeffs[mm] = -factor * c
                        work.push_new(mm)
                    else:
                        s = s - factor * c
                        if s:
                            coeffs[mm] = s
                        else:
                            del coeffs[mm]
                break
        else:
            remainder[lead] = coeffs.pop(lead)
    return remainder


def _normal_form(p: CPoly, basis: list[tuple[int, CPoly]], codec: Codec,
                 counter: StepCounter) -> CPoly:
    frac = _normal_form_frac({m: Fraction(c) for m, c in p.items()},
                             basis, codec, counter)
    if not frac:
        return {}
    denom = 1
    for c in frac.values():
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    return dict(_strip_content({m: int(c * denom) for m, c in frac.items()}))


def reduce_poly(f: Polynomial, basis: GroebnerBasis,
                step_budget: int | None = None) -> Polynomial:
    """Normal form of f modulo a Groebner basis; scale of f is preserved."""
    codec = Codec(f.nvars, basis.order)
    counter = StepCounter(step_budget)
    ib = [(codec.pack(g.leading_monomial(basis.order)), _to_cpoly(g, codec))
          for g in basis.generators]
    start = {codec.pack(m): Fraction(c) for m, c in f.terms.items()}
    nf = _normal_form_frac(start, ib, codec, counter)
    return Polynomial(f.nvars, {codec.unpack(m): c for m, c in nf.items()},
                      _trusted=True)


def is_zero_dimensional(B: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    if not B.generators:
        return False
    nvars = B.nvars
    covered = [False] * nvars
    for lm in B.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            covered[support[0]] = True
    return all(covered)


# ---------------------------------------------------------------------------
# combinatorics of monomial ideals: Hilbert series and Krull dimension


def _minimalize(lts: list[Monomial]) -> tuple[Monomial, ...]:
    out: list[Monomial] = []
    for m in sorted(lts, key=sum):
        if not any(monomial_divides(o, m) for o in out):
            out.append(m)
    return tuple(sorted(out))


def _free_series(nvars: int, upto: int) -> list[int]:
    out = [1] * (upto + 1)
    for d in range(1, upto + 1):
        out[d] = out[d - 1] * (nvars + d - 1) // d
    return out


@lru_cache(maxsize=200_000)
def _series_cached(lts: tuple[Monomial, ...], nvars: int, upto: int) -> tuple[int, ...]:
    if not lts:
        return tuple(_free_series(nvars, upto))
    if any(sum(m) == 0 for m in lts):
        return (0,) * (upto + 1)  # unit ideal
    if all(sum(1 for e in m if e) == 1 for m in lts):
        # powers of distinct variables: series = free ring * prod(1 - t^e)
        out = _free_series(nvars, upto)
        for m in lts:
            e = sum(m)
            for d in range(upto, e - 1, -1):
                out[d] -= out[d - e]
        return tuple(out)
    # pivot x^e: most shared variable among mixed-support generators (so both
    # branches strictly shrink), at its smallest positive exponent
    counts = [0] * len(lts[0])
    for m in lts:
        if sum(1 for ex in m if ex) >= 2:
            for i, ex in enumerate(m):
                if ex:
                    counts[i] += 1
    pivot = max(range(len(counts)), key=lambda i: counts[i])
    e = min(m[pivot] for m in lts if m[pivot])
    pv = tuple(e if i == pivot else 0 for i in range(len(lts[0])))

    # split by divisibility by x^e:  S/I = x^e * S/(I : x^e)  (+)  S/(I + <x^e>)
    colon = _minimalize([monomial_div(m, pv) if m[pivot] >= e else m
                         for m in lts])
    plus = _minimalize(list(lts) + [pv])
    out = list(_series_cached(plus, nvars, upto))
    if e <= upto:
        a = _series_cached(colon, nvars, upto - e)
        for d in range(e, upto + 1):
            out[d] += a[d - e]
    return tuple(out)


def monomial_quotient_series(lts: list[Monomial], nvars: int,
                             upto: int, assume_minimal: bool = False) -> list[int]:
    """Hilbert function of S/(monomial ideal) through degree upto.

    assume_minimal skips the pairwise divisibility sweep; staircases built
    degree by degree are minimal already.
    """
    base = tuple(sorted(lts)) if assume_minimal else _minimalize(lts)
    return list(_series_cached(base, nvars, upto))


def monomial_quotient_dimension(lts: list[Monomial], nvars: int) -> int:
    """Krull dimension of S/(monomial ideal).

    The dimension is the size of the largest variable subset that misses the
    support of every generator.
    """
    supports = [frozenset(i for i, e in enumerate(m) if e)
                for m in _minimalize(lts)]
    if not supports:
        return nvars
    if frozenset() in supports:
        return -1  # unit ideal
    for size in range(nvars, 0, -1):
        for subset in combinations(range(nvars), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def ideal_dimension(gens: list[Polynomial], nvars: int, order: str = "grevlex",
                    step_budget: int | None = None) -> int:
    """Krull dimension of R/<gens> via a full Groebner basis."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return nvars
    B = buchberger(gens, order, step_budget)
    if not B.generators:
        return nvars
    return monomial_quotient_dimension(B.leading_monomials(), nvars)
