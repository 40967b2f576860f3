"""Polynomial arithmetic, permutation action, orbit sums, text round-trip."""

import random
from fractions import Fraction

import pytest

from gextbounds.errors import PolyParseError
from gextbounds.perm import PermGroup, parse_cycles
from gextbounds.poly import (Polynomial, apply_permutation,
                             elementary_symmetric, format_polynomial,
                             is_invariant, monomials_of_degree, orbit_sum,
                             parse_polynomial, power_sum)


def P(text, n):
    return parse_polynomial(text, n)


class TestApplyPermutation:
    def test_variable_swap(self):
        g = parse_cycles("(1 2)", 2)
        assert apply_permutation(g, P("x1", 2)) == P("x2", 2)

    def test_symmetric_fixed(self):
        for text in ("(1 2 3)", "(1 2)", "(2 3)"):
            g = parse_cycles(text, 3)
            f = power_sum(3, 1)
            assert apply_permutation(g, f) == f

    def test_monomial_substitution(self):
        g = parse_cycles("(1 2 3)", 3)
        assert apply_permutation(g, P("x1^2*x2", 3)) == P("x2^2*x3", 3)

    def test_is_ring_homomorphism(self):
        rng = random.Random(7)
        g = parse_cycles("(1 3 4)(2 5)", 5)
        for _ in range(10):
            f1 = _random_poly(rng, 5)
            f2 = _random_poly(rng, 5)
            assert apply_permutation(g, f1 * f2) == \
                apply_permutation(g, f1) * apply_permutation(g, f2)
            assert apply_permutation(g, f1 + f2) == \
                apply_permutation(g, f1) + apply_permutation(g, f2)

    def test_composition_order(self):
        rng = random.Random(3)
        g = parse_cycles("(1 2 3 4)", 4)
        h = parse_cycles("(2 4)", 4)
        for _ in range(8):
            f = _random_poly(rng, 4)
            assert apply_permutation(g * h, f) == \
                apply_permutation(g, apply_permutation(h, f))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_permutation(parse_cycles("(1 2)", 2), P("x1", 3))


def _random_poly(rng, n, terms=4, deg=3):
    out = Polynomial.zero(n)
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randrange(deg + 1)):
            exps[rng.randrange(n)] += 1
        out = out + Polynomial(n, {tuple(exps):
                                   Fraction(rng.randrange(-5, 6))})
    return out


class TestOrbitSum:
    def test_s3_linear(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)", "(1 2)"], 3)
        assert orbit_sum(G, (1, 0, 0)) == P("x1 + x2 + x3", 3)

    def test_c3_orbit(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)"], 3)
        assert orbit_sum(G, (2, 1, 0)) == P("x1^2*x2 + x2^2*x3 + x3^2*x1", 3)

    def test_orbit_enumeration_oracle(self):
        # brute force: apply every group element to the monomial
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5)", "(2 3 5 4)"], 5)
        for m in ((1, 1, 0, 0, 0), (2, 0, 1, 0, 0), (3, 1, 0, 0, 0)):
            expected = set()
            for g in G.elements:
                out = [0] * 5
                for i, e in enumerate(m):
                    out[g.images[i]] = e
                expected.add(tuple(out))
            assert set(orbit_sum(G, m).terms) == expected

    def test_invariant_and_divides_order(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        for m in ((1, 1, 1, 0, 0, 0, 0), (2, 1, 0, 0, 0, 0, 0)):
            f = orbit_sum(G, m)
            assert is_invariant(list(G.generators), f)
            assert G.order % len(f.terms) == 0


class TestIsInvariant:
    def test_elementary_symmetric_everywhere(self):
        for gens, n in ((["(1 2 3 4 5)"], 5),
                        (["(1 2 3 4)", "(1 2)"], 4),
                        (["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)):
            G = PermGroup.from_cycle_strings(gens, n)
            assert is_invariant(list(G.generators), elementary_symmetric(n, 2))

    def test_x1_not_invariant(self):
        g = parse_cycles("(1 2)", 2)
        assert not is_invariant([g], P("x1", 2))


class TestTextFormat:
    def test_round_trip_examples(self):
        cases = ["x1 + x2 + x3", "2*x1^2*x3 - x2 + 1", "0",
                 "x1^7 - 3*x2*x3^2 + 5", "1/2*x1 - 7/3"]
        for text in cases:
            f = P(text, 3)
            assert parse_polynomial(format_polynomial(f), 3) == f

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(40):
            f = _random_poly(rng, 4)
            assert parse_polynomial(format_polynomial(f), 4) == f

    def test_canonical_leading_sign(self):
        assert format_polynomial(P("-x1 + x2", 2)).startswith("-")

    def test_bad_variable(self):
        with pytest.raises(PolyParseError):
            P("x9", 3)

    def test_dangling_operator(self):
        with pytest.raises(PolyParseError):
            P("x1 +", 3)

    def test_error_position(self):
        with pytest.raises(PolyParseError) as err:
            P("x1 + x5^2", 3)
        assert err.value.position == 6


class TestHelpers:
    def test_power_sum(self):
        assert power_sum(3, 2) == P("x1^2 + x2^2 + x3^2", 3)

    def test_elementary_symmetric(self):
        assert elementary_symmetric(3, 2) == P("x1*x2 + x1*x3 + x2*x3", 3)
        assert elementary_symmetric(4, 4) == P("x1*x2*x3*x4", 4)

    def test_monomials_of_degree_count(self):
        assert len(list(monomials_of_degree(4, 3))) == 20  # C(6,3)

    def test_homogeneity(self):
        assert P("x1^2 + x2*x3", 3).is_homogeneous()
        assert not P("x1^2 + x2", 3).is_homogeneous()
