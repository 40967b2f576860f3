"""Vectorized modular Buchberger backend for heavy zero-dimensionality runs.

Monomials are carried as their packed order keys (degree field on top,
complemented exponents below, so integer comparison IS the grevlex order).
The key is affinely additive under monomial multiplication:

    key(m * s) = key(m) + key(s) - key(1),

so shifting a reducer is one vectorized addition.  Working polynomials are
sorted uint64 code arrays with int64 coefficients mod p, accumulated in
binary-counter buckets (a light geobucket); every merge runs at C speed.
Only leading terms leave this module, so results feed the same watcher and
pair logic as the exact engine.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import BudgetError
from .groebner import MODULAR_PRIME, StepCounter
from .poly import Monomial, Polynomial

_FIELD = 7
_MASK = (1 << _FIELD) - 1


class KeyCodec:
    """Packs exponent tuples into the order-respecting key integer."""

    __slots__ = ("nvars", "one")

    def __init__(self, nvars: int):
        if (nvars + 1) * _FIELD > 63:
            raise OverflowError("too many variables for packed keys")
        self.nvars = nvars
        self.one = self.pack((0,) * nvars)

    def pack(self, m: Monomial) -> int:
        k = sum(m)
        for e in reversed(m):
            if e > _MASK:
                raise OverflowError("exponent too large for packed keys")
            k = (k << _FIELD) | (_MASK - e)
        return k

    def unpack(self, key: int) -> Monomial:
        key = int(key)
        out = []
        for _ in range(self.nvars):
            out.append(_MASK - (key & _MASK))
            key >>= _FIELD
        return tuple(out)

    def degree(self, key: int) -> int:
        return int(key) >> (_FIELD * self.nvars)


def _merge_bucket(codes_list, coeffs_list, p):
    codes = np.concatenate(codes_list)
    coeffs = np.concatenate(coeffs_list)
    order = np.argsort(codes, kind="stable")
    codes = codes[order]
    coeffs = coeffs[order]
    if len(codes) == 0:
        return codes, coeffs
    starts = np.flatnonzero(np.concatenate(
        ([True], codes[1:] != codes[:-1])))
    summed = np.add.reduceat(coeffs, starts) % p
    keep = summed != 0
    return codes[starts][keep], summed[keep]


class _Work:
    """Geobucket accumulator over sorted code arrays."""

    __slots__ = ("buckets", "p")

    def __init__(self, codes, coeffs, p):
        self.p = p
        self.buckets = [(codes, coeffs)] if len(codes) else []

    def subtract_shifted(self, codes, coeffs, delta, factor):
        """Subtract factor * x^delta * g."""
        shifted = codes + np.uint64(delta)
        scaled = (-factor * coeffs) % self.p
        self.buckets.append((shifted, scaled))
        # binary-counter discipline keeps total merge work quasi-linear
        while len(self.buckets) >= 2 and \
                len(self.buckets[-1][0]) * 2 >= len(self.buckets[-2][0]):
            b = self.buckets.pop()
            a = self.buckets.pop()
            merged = _merge_bucket([a[0], b[0]], [a[1], b[1]], self.p)
            if len(merged[0]):
                self.buckets.append(merged)

    def lead(self):
        """Largest code with nonzero total coefficient, or None."""
        while self.buckets:
            tops = [int(c[-1]) for c, _ in self.buckets]
            best = max(tops)
            hits = [i for i, t in enumerate(tops) if t == best]
            total = 0
            for i in hits:
                total = (total + int(self.buckets[i][1][-1])) % self.p
            if total and len(hits) == 1:
                return best, total
            if total:
                # several buckets share the top code: consolidate them
                self._consolidate()
                continue
            # cancelled top: strip it everywhere and retry
            for i in sorted(hits, reverse=True):
                codes, coeffs = self.buckets[i]
                if len(codes) == 1:
                    self.buckets.pop(i)
                else:
                    self.buckets[i] = (codes[:-1], coeffs[:-1])
            continue
        return None

    def _consolidate(self):
        codes = [c for c, _ in self.buckets]
        coeffs = [v for _, v in self.buckets]
        merged = _merge_bucket(codes, coeffs, self.p)
        self.buckets = [merged] if len(merged[0]) else []

    def flatten(self):
        self._consolidate()
        if not self.buckets:
            return (np.empty(0, dtype=np.uint64), np.empty(0, dtype=np.int64))
        return self.buckets[0]


def _poly_to_arrays(f: Polynomial, codec: KeyCodec, p: int):
    pairs = []
    for m, c in f.terms.items():
        num = c.numerator % p
        den = pow(c.denominator % p, p - 2, p)
        pairs.append((codec.pack(m), num * den % p))
    pairs.sort()
    codes = np.array([a for a, _ in pairs], dtype=np.uint64)
    coeffs = np.array([b for _, b in pairs], dtype=np.int64)
    if np.any(coeffs == 0):
        return None
    return codes, coeffs


def run_buchberger_mod_np(gens: list[Polynomial], step_budget: int | None = None,
                          degree_cap: int | None = None, watcher=None,
                          pair_skip=None, p: int = MODULAR_PRIME,
                          deadline: float | None = None):
    """Vectorized analogue of run_buchberger_mod (grevlex only).

    Returns (leading exponent tuples, verdict, completed degree), or None if
    an input coefficient vanishes mod p.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return [], None, -1
    nvars = gens[0].nvars
    codec = KeyCodec(nvars)
    counter = StepCounter(step_budget, deadline)
    one = codec.one

    basis_codes: list = []    # per element: sorted code array
    basis_coeffs: list = []
    basis_lt: list[int] = []  # leading key (last entry)
    basis_lt_exps: list = []  # exponent rows for vectorized divisibility

    for f in gens:
        arrays = _poly_to_arrays(f, codec, p)
        if arrays is None:
            return None
        codes, coeffs = arrays
        basis_codes.append(codes)
        basis_coeffs.append(coeffs)
        basis_lt.append(int(codes[-1]))

    order = sorted(range(len(basis_codes)), key=lambda i: basis_lt[i])
    basis_codes = [basis_codes[i] for i in order]
    basis_coeffs = [basis_coeffs[i] for i in order]
    basis_lt = [basis_lt[i] for i in order]
    lt_tuples = [codec.unpack(lt) for lt in basis_lt]
    lt_matrix = np.array(lt_tuples, dtype=np.int16)

    heap: list = []
    processed: set[tuple[int, int]] = set()

    def lcm_key(a: int, b: int) -> int:
        ea, eb = codec.unpack(a), codec.unpack(b)
        return codec.pack(tuple(max(x, y) for x, y in zip(ea, eb)))

    def add_pairs(j: int):
        ltj = basis_lt[j]
        degj = codec.degree(ltj)
        for i in range(j):
            lcm = lcm_key(basis_lt[i], ltj)
            dlcm = codec.degree(lcm)
            if dlcm == codec.degree(basis_lt[i]) + degj:
                processed.add((i, j))
                continue
            if degree_cap is not None and dlcm > degree_cap:
                continue
            heapq.heappush(heap, (lcm, i, j, dlcm))

    for j in range(len(basis_lt)):
        add_pairs(j)

    def chain_skippable(i: int, j: int, lcm_exps) -> bool:
        fits = np.all(lt_matrix <= lcm_exps, axis=1)
        for k in np.nonzero(fits)[0]:
            k = int(k)
            if k in (i, j):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a in processed and b in processed:
                return True
        return False

    def top_reduce(work: _Work):
        while True:
            top = work.lead()
            if top is None:
                return None, None
            lead_key, lead_coeff = top
            lead_exps = np.array(codec.unpack(lead_key), dtype=np.int16)
            fits = np.all(lt_matrix <= lead_exps, axis=1)
            idx = int(np.argmax(fits)) if fits.any() else -1
            if idx < 0:
                return lead_key, lead_coeff
            g_codes = basis_codes[idx]
            g_coeffs = basis_coeffs[idx]
            counter.tick(len(g_codes) + 1)
            delta = lead_key - basis_lt[idx]
            factor = lead_coeff * pow(int(g_coeffs[-1]), p - 2, p) % p
            work.subtract_shifted(g_codes, g_coeffs, delta, factor)

    completed = -1
    while heap:
        lcm, i, j, deg = heapq.heappop(heap)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        if deg > completed + 1:
            completed = deg - 1
        if pair_skip is not None and pair_skip(deg):
            continue
        if chain_skippable(i, j, np.array(codec.unpack(lcm), dtype=np.int16)):
            continue
        # s-polynomial: lcm/lt_i * f_i - (lc_i/lc_j) * lcm/lt_j * f_j, monic-ish
        ci = basis_codes[i]
        cj = basis_codes[j]
        counter.tick(len(ci) + len(cj))
        inv_i = pow(int(basis_coeffs[i][-1]), p - 2, p)
        inv_j = pow(int(basis_coeffs[j][-1]), p - 2, p)
        work = _Work(ci + np.uint64(lcm - basis_lt[i]),
                     basis_coeffs[i] * inv_i % p, p)
        work.subtract_shifted(cj, coeffs=basis_coeffs[j],
                              delta=lcm - basis_lt[j], factor=inv_j)
        lead_key, _ = top_reduce(work)
        if lead_key is None:
            continue
        codes, coeffs = work.flatten()
        basis_codes.append(codes)
        basis_coeffs.append(coeffs)
        basis_lt.append(int(codes[-1]))
        new_exps = codec.unpack(lead_key)
        lt_tuples.append(new_exps)
        lt_matrix = np.vstack([lt_matrix,
                               np.array(new_exps, dtype=np.int16)])
        add_pairs(len(basis_lt) - 1)
        if watcher is not None:
            done_through = completed
            if heap:
                done_through = min(done_through, heap[0][3] - 1)
            verdict = watcher(list(lt_tuples), done_through)
            if verdict is not None:
                return lt_tuples, verdict, done_through
    if watcher is not None:
        horizon = degree_cap if degree_cap is not None else 10 ** 9
        verdict = watcher(list(lt_tuples), horizon)
        if verdict is not None:
            return lt_tuples, verdict, horizon
    return lt_tuples, None, completed
