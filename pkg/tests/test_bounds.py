"""Exponent arithmetic and report assembly."""

import random
from fractions import Fraction

import pytest

from gextbounds.bounds import (BoundReport, analyze_group,
                               appendix_general_base_exponent, exponent_str,
                               malle_exponent, schmidt_exponent,
                               schmidt_recovery_exponent, theorem_exponent)
from gextbounds.config import RunConfig
from gextbounds.molien import DegreeVector
from gextbounds.perm import PermGroup


def group(gens, n):
    return PermGroup.from_cycle_strings(gens, n)


class TestSchmidt:
    def test_values(self):
        assert schmidt_exponent(7) == Fraction(9, 4)
        assert schmidt_exponent(2) == 1
        assert schmidt_exponent(6) == 2

    def test_degree_too_small(self):
        with pytest.raises(ValueError):
            schmidt_exponent(1)


class TestTheoremExponent:
    def test_psl27(self):
        d = DegreeVector((1, 2, 3, 3, 4, 4, 7))
        assert theorem_exponent(7, 1, d, 1) == Fraction(11, 6)

    def test_c6(self):
        d = DegreeVector((1, 2, 2, 2, 3, 6))
        assert theorem_exponent(6, 3, d, 1) == Fraction(7, 3)

    def test_symmetric_vector_recovers_schmidt_minus_savings(self):
        # with the sieve savings the bound sits 1/(2(n-1)) below (n+2)/4,
        # and dropping the savings recovers it exactly
        d = DegreeVector((1, 2, 3, 4, 5))
        assert theorem_exponent(5, 1, d, 1) == Fraction(13, 8)
        assert schmidt_recovery_exponent(5, 1, d) == Fraction(7, 4)

    def test_singular_t_rejected(self):
        d = DegreeVector((1, 2))
        with pytest.raises(ValueError):
            theorem_exponent(2, 2, d, 1)
        with pytest.raises(ValueError):
            schmidt_recovery_exponent(2, 2, d)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            theorem_exponent(3, 1, DegreeVector((1, 2)), 1)


class TestIdentities:
    def test_savings_identity_random(self):
        # theorem = recovery - 1/(2(n-t)) exactly, over random valid inputs
        rng = random.Random(0)
        for _ in range(2000):
            n = rng.randrange(2, 10)
            t = rng.randrange(1, n)
            degs = [1]
            for i in range(2, n + 1):
                degs.append(rng.randrange(degs[-1], i + 1))
            d = DegreeVector(tuple(degs))
            lhs = theorem_exponent(n, t, d, 1)
            rhs = schmidt_recovery_exponent(n, t, d) - Fraction(1, 2 * (n - t))
            assert lhs == rhs

    def test_recovery_on_full_vector_is_schmidt(self):
        for n in range(2, 12):
            d = DegreeVector(tuple(range(1, n + 1)))
            assert schmidt_recovery_exponent(n, 1, d) == Fraction(n + 2, 4)

    def test_monotone_in_t(self):
        d = DegreeVector((1, 2, 2, 3, 5))
        values = [theorem_exponent(5, t, d, 1) for t in (1, 2, 3, 4)]
        assert values == sorted(values)

    def test_base_degree_enters_once(self):
        d = DegreeVector((1, 2, 3, 3, 4, 4, 7))
        e1 = theorem_exponent(7, 1, d, 1)
        e2 = theorem_exponent(7, 1, d, 2)
        assert e2 - e1 == Fraction(1, 2 * (7 - 1)) * Fraction(1, 2)
        assert appendix_general_base_exponent(e1, 2) == e1 + Fraction(1, 2)


class TestMalleExponent:
    def test_c7(self):
        assert malle_exponent(group(["(1 2 3 4 5 6 7)"], 7)) == Fraction(1, 6)

    def test_symmetric(self):
        assert malle_exponent(group(["(1 2 3 4)", "(1 2)"], 4)) == 1

    def test_at_most_one(self):
        for gens, n in ((["(1 2 3 4 5)"], 5), (["(1 2 3 4 5 6)"], 6),
                        (["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)):
            assert malle_exponent(group(gens, n)) <= 1


class TestAnalyzeGroup:
    def test_a5_in_s6_row(self):
        G = group(["(1 2 3 4 5)", "(1 6)(2 5)"], 6)
        rep = analyze_group(G, "6T12")
        assert rep.t == 1
        assert rep.degrees == DegreeVector((1, 2, 3, 3, 4, 5))
        assert rep.theorem_exponent == Fraction(8, 5)
        assert rep.subfield_degree == "none"
        # product 1*2*3*3*4*5 = 360, order 60 -> 6 secondaries
        assert rep.secondary.count == 6

    def test_s2_recovery_path(self):
        G = group(["(1 2)"], 2)
        rep = analyze_group(G, "S2")
        assert rep.is_full_symmetric
        assert rep.theorem_exponent == 1  # (2+2)/4 via the recovery formula
        assert rep.secondary.count == 1

    def test_intransitive_rejected(self):
        with pytest.raises(ValueError):
            analyze_group(group(["(1 2)"], 3))

    def test_csv_row_round_trips_fractions(self):
        G = group(["(1 2 3 4 5)"], 5)
        rep = analyze_group(G, "5T1")
        import csv
        import io
        row = rep.csv_row()
        fields = next(csv.reader(io.StringIO(row)))
        header = BoundReport.csv_header().split(",")
        parsed = dict(zip(header, fields))
        assert parsed["degrees"] == rep.degrees.render()
        assert Fraction(parsed["result"]) == rep.theorem_exponent
        assert Fraction(parsed["malle_a"]) == rep.malle_a
        assert Fraction(parsed["schmidt"]) == rep.schmidt_exponent

    def test_exponent_str(self):
        assert exponent_str(Fraction(11, 6)) == "X^{11/6}"
        assert exponent_str(Fraction(2)) == "X^2"
        assert exponent_str(None) == "?"
