"""Exact multivariate polynomials over Q, permutation actions, and orbit sums.

Monomials are plain exponent tuples; coefficients are Fractions and never
floats.  The two supported term orders are graded reverse lexicographic
(default everywhere) and lexicographic (used by tests as a cross-check).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import PolyParseError
from .perm import PermGroup, Permutation

Monomial = tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


_grevlex_cache: dict[Monomial, tuple] = {}


def grevlex_key(m: Monomial):
    key = _grevlex_cache.get(m)
    if key is None:
        key = (sum(m), tuple(-e for e in reversed(m)))
        _grevlex_cache[m] = key
    return key


def lex_key(m: Monomial):
    return m


ORDER_KEYS = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order: str):
    try:
        return ORDER_KEYS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def monomials_of_degree(nvars: int, d: int):
    """All degree-d exponent tuples, in a fixed deterministic order."""
    for combo in combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


class Polynomial:
    """Sparse polynomial: map from exponent tuple to nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Fraction] | None = None,
                 _trusted: bool = False):
        self.nvars = nvars
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Polynomial":
        """The variable x_{i} for 1-based i."""
        exps = [0] * nvars
        exps[i - 1] = 1
        return Polynomial(nvars, {tuple(exps): Fraction(1)})

    @staticmethod
    def from_monomial(nvars: int, m: Monomial, c=1) -> "Polynomial":
        return Polynomial(nvars, {m: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial(self.nvars, res, _trusted=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial(self.nvars, res, _trusted=True)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()},
                          _trusted=True)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()},
                          _trusted=True)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        res: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Polynomial(self.nvars, res, _trusted=True)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order: str = "grevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: str = "grevlex") -> list[tuple[Monomial, Fraction]]:
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def power_sum(nvars: int, d: int) -> Polynomial:
    """x1^d + ... + xn^d."""
    terms = {}
    for i in range(nvars):
        exps = [0] * nvars
        exps[i] = d
        terms[tuple(exps)] = Fraction(1)
    return Polynomial(nvars, terms, _trusted=True)


def elementary_symmetric(nvars: int, d: int) -> Polynomial:
    """Sum of all squarefree degree-d monomials."""
    terms = {}
    for combo in combinations_with_replacement(range(nvars), d):
        if len(set(combo)) != d:
            continue
        exps = [0] * nvars
        for i in combo:
            exps[i] = 1
        terms[tuple(exps)] = Fraction(1)
    return Polynomial(nvars, terms, _trusted=True)


def permute_monomial(g: Permutation, m: Monomial) -> Monomial:
    """Image of a monomial under x_i -> x_{g(i)}."""
    out = [0] * len(m)
    images = g.images
    for i, e in enumerate(m):
        if e:
            out[images[i]] = e
    return tuple(out)


def apply_permutation(g: Permutation, f: Polynomial) -> Polynomial:
    """Ring automorphism substituting x_i -> x_{g(i)}; degree preserving."""
    if g.degree != f.nvars:
        raise ValueError(
            f"permutation degree {g.degree} != number of variables {f.nvars}")
    return Polynomial(f.nvars,
                      {permute_monomial(g, m): c for m, c in f.terms.items()},
                      _trusted=True)


def monomial_orbit(gens: list[Permutation], m: Monomial) -> frozenset[Monomial]:
    seen = {m}
    frontier = [m]
    while frontier:
        nxt = []
        for mono in frontier:
            for g in gens:
                im = permute_monomial(g, mono)
                if im not in seen:
                    seen.add(im)
                    nxt.append(im)
        frontier = nxt
    return frozenset(seen)


def orbit_sum(G: PermGroup, m: Monomial) -> Polynomial:
    """Sum of the distinct monomials in the orbit of m, each with coefficient 1."""
    if G.degree != len(m):
        raise ValueError(
            f"group degree {G.degree} != number of variables {len(m)}")
    orbit = monomial_orbit(list(G.generators), m)
    return Polynomial(len(m), {mono: Fraction(1) for mono in orbit}, _trusted=True)


def is_invariant(gens: list[Permutation], f: Polynomial) -> bool:
    """True iff f is fixed by every generator (hence by the whole group)."""
    return all(apply_permutation(g, f) == f for g in gens)


# ---------------------------------------------------------------------------
# text format: sum of terms "c*x1^a1*...*xn^an"; printer and parser round-trip


def format_polynomial(f: Polynomial, order: str = "grevlex") -> str:
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for m, c in f.sorted_terms(order):
        factors = []
        if c.denominator == 1:
            coeff = str(abs(c.numerator))
        else:
            coeff = f"{abs(c.numerator)}/{c.denominator}"
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        if not factors:
            body = coeff
        elif coeff == "1":
            body = "*".join(factors)
        else:
            body = coeff + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse the golden-file polynomial format back into a Polynomial."""
    terms: dict[Monomial, Fraction] = {}
    i, length = 0, len(text)

    def skip_ws(j: int) -> int:
        while j < length and text[j].isspace():
            j += 1
        return j

    i = skip_ws(i)
    if i >= length:
        raise PolyParseError("empty polynomial text", 0)
    first = True
    while i < length:
        sign = 1
        i = skip_ws(i)
        if not first or (i < length and text[i] in "+-"):
            if i >= length or text[i] not in "+-":
                raise PolyParseError("expected '+' or '-' between terms", i)
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
        first = False
        coeff = Fraction(1)
        exps = [0] * nvars
        saw_factor = False
        # optional leading integer or rational coefficient
        if i < length and text[i].isdigit():
            start = i
            while i < length and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            if i < length and text[i] == "/":
                i += 1
                dstart = i
                while i < length and text[i].isdigit():
                    i += 1
                if dstart == i:
                    raise PolyParseError("missing denominator", i)
                coeff = Fraction(num, int(text[dstart:i]))
            else:
                coeff = Fraction(num)
            saw_factor = True
            if i < length and text[i] == "*":
                i += 1
                saw_factor = False
        while i < length and text[i] == "x":
            i += 1
            start = i
            while i < length and text[i].isdigit():
                i += 1
            if start == i:
                raise PolyParseError("missing variable index", i)
            vi = int(text[start:i])
            if not 1 <= vi <= nvars:
                raise PolyParseError(f"variable x{vi} outside x1..x{nvars}", start)
            e = 1
            if i < length and text[i] == "^":
                i += 1
                estart = i
                while i < length and text[i].isdigit():
                    i += 1
                if estart == i:
                    raise PolyParseError("missing exponent", i)
                e = int(text[estart:i])
            exps[vi - 1] += e
            saw_factor = True
            if i < length and text[i] == "*":
                i += 1
                saw_factor = False
        if not saw_factor:
            raise PolyParseError("dangling operator", i)
        m = tuple(exps)
        s = terms.get(m, Fraction(0)) + sign * coeff
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
        i = skip_ws(i)
    return Polynomial(nvars, terms, _trusted=True)
