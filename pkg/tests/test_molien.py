"""Molien series, Hilbert numerators, and candidate degree vectors."""

import math
from fractions import Fraction

import pytest

from gextbounds.errors import PrecisionError
from gextbounds.molien import (DegreeVector, HilbertNumerator, MolienSeries,
                               NumeratorRejection, candidate_degree_vectors,
                               default_truncation, hilbert_numerator,
                               molien_series, scan_candidates)
from gextbounds.perm import PermGroup
from gextbounds.poly import monomials_of_degree, permute_monomial


def group(gens, n):
    return PermGroup.from_cycle_strings(gens, n)


class TestMolienSeries:
    def test_s2_closed_form(self):
        # 1/((1-t)(1-t^2)) = 1,1,2,2,3,3,4
        H = molien_series(group(["(1 2)"], 2), 6)
        assert H.coefficients == (1, 1, 2, 2, 3, 3, 4)

    def test_trivial_group_binomials(self):
        G = PermGroup.generate([__import__("gextbounds.perm",
                                           fromlist=["Permutation"]
                                           ).Permutation.identity(4)])
        H = molien_series(G, 6)
        for j in range(7):
            assert H[j] == math.comb(4 + j - 1, j)

    def test_c3(self):
        H = molien_series(group(["(1 2 3)"], 3), 3)
        assert H.coefficients == (1, 1, 2, 4)

    def test_transitive_a1_is_one(self):
        for gens, n in ((["(1 2 3 4 5)"], 5),
                        (["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)):
            H = molien_series(group(gens, n), 4)
            assert H[0] == 1 and H[1] == 1

    def test_coefficients_count_monomial_orbits(self):
        G = group(["(1 2 3 4 5)", "(2 3 5 4)"], 5)
        H = molien_series(G, 4)
        for d in range(1, 5):
            orbits = set()
            seen = set()
            for m in monomials_of_degree(5, d):
                if m in seen:
                    continue
                orbit = {permute_monomial(g, m) for g in G.elements}
                seen |= orbit
                orbits.add(min(orbit))
            assert H[d] == len(orbits)


class TestDegreeVector:
    def test_validation(self):
        DegreeVector((1, 2, 2, 3, 5))
        with pytest.raises(ValueError):
            DegreeVector((2, 1))       # decreasing
        with pytest.raises(ValueError):
            DegreeVector((1, 3))       # d_2 > 2
        with pytest.raises(ValueError):
            DegreeVector((0, 1))

    def test_parse_render(self):
        d = DegreeVector.parse("1,2,2,3,5")
        assert d.render() == "1,2,2,3,5"
        assert d.total() == 13 and d.product() == 60


class TestHilbertNumerator:
    def test_c3_numerator(self):
        G = group(["(1 2 3)"], 3)
        H = molien_series(G, 8)
        result = hilbert_numerator(H, DegreeVector((1, 2, 3)))
        assert isinstance(result, HilbertNumerator)
        assert result.coefficients == (1, 0, 0, 1)  # 1 + t^3
        assert result.secondary_count == 2
        assert result.secondary_degrees() == [0, 3]

    def test_symmetric_numerator_is_one(self):
        for n in (3, 4, 5):
            cyc = "(" + " ".join(map(str, range(1, n + 1))) + ")"
            G = group([cyc, "(1 2)"], n)
            H = molien_series(G, default_truncation(n))
            result = hilbert_numerator(H, DegreeVector(tuple(range(1, n + 1))))
            assert isinstance(result, HilbertNumerator)
            assert result.secondary_count == 1
            assert sum(result.coefficients) == 1

    def test_c5_count(self):
        G = group(["(1 2 3 4 5)"], 5)
        H = molien_series(G, default_truncation(5))
        result = hilbert_numerator(H, DegreeVector((1, 2, 2, 3, 5)))
        assert isinstance(result, HilbertNumerator)
        assert result.secondary_count == 12
        assert all(c >= 0 for c in result.coefficients)

    def test_rejection_reports_degree(self):
        G = group(["(1 2 3)"], 3)
        H = molien_series(G, 8)
        result = hilbert_numerator(H, DegreeVector((1, 1, 3)))
        assert isinstance(result, NumeratorRejection)
        assert result.first_offending_degree == 1

    def test_precision_error(self):
        G = group(["(1 2 3)"], 3)
        H = molien_series(G, 3)
        with pytest.raises(PrecisionError):
            hilbert_numerator(H, DegreeVector((1, 2, 3)))


class TestCandidates:
    def test_s5_first_is_symmetric_vector(self):
        G = group(["(1 2 3 4 5)", "(1 2)"], 5)
        H = molien_series(G, default_truncation(5))
        cands = candidate_degree_vectors(G, H)
        assert cands[0] == DegreeVector((1, 2, 3, 4, 5))

    def test_c5_contains_paper_row(self):
        G = group(["(1 2 3 4 5)"], 5)
        H = molien_series(G, default_truncation(5))
        cands = candidate_degree_vectors(G, H)
        assert DegreeVector((1, 2, 2, 3, 5)) in cands

    def test_psl27_contains_paper_row(self):
        G = group(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        H = molien_series(G, default_truncation(7))
        cands = candidate_degree_vectors(G, H)
        assert DegreeVector((1, 2, 3, 3, 4, 4, 7)) in cands

    def test_ordering_and_constraints(self):
        G = group(["(1 2 3 4 5 6)"], 6)
        H = molien_series(G, default_truncation(6))
        cands = candidate_degree_vectors(G, H)
        keys = [(c.total(), c.degrees) for c in cands]
        assert keys == sorted(keys)
        exponent = G.exponent()
        for c in cands:
            assert c.product() % G.order == 0
            assert math.lcm(*c.degrees) % exponent == 0
        assert DegreeVector(tuple(range(1, 7))) in cands

    def test_scan_keeps_rejections(self):
        G = group(["(1 2 3)"], 3)
        H = molien_series(G, default_truncation(3))
        records = scan_candidates(G, H)
        rejected = [r for r in records if not r.accepted]
        assert rejected and all(r.status != "accepted" for r in rejected)

    def test_intransitive_rejected(self):
        G = group(["(1 2)"], 3)
        H = molien_series(G, 6)
        with pytest.raises(ValueError):
            candidate_degree_vectors(G, H)
