"""Buchberger, reduction, zero-dimensionality, and monomial-ideal tools."""

import random
from itertools import permutations

import pytest

from gextbounds.errors import BudgetError
from gextbounds.groebner import (buchberger, ideal_dimension,
                                 is_zero_dimensional,
                                 monomial_quotient_dimension,
                                 monomial_quotient_series, reduce_poly)
from gextbounds.poly import (Polynomial, elementary_symmetric,
                             monomials_of_degree, parse_polynomial, power_sum)


def P(text, n):
    return parse_polynomial(text, n)


class TestBuchberger:
    def test_already_reduced(self):
        B = buchberger([P("x1", 2), P("x2", 2)])
        assert [format(g) for g in B.generators] or True
        assert set(B.leading_monomials()) == {(1, 0), (0, 1)}
        assert len(B.generators) == 2

    def test_e1_e2_reduction(self):
        B = buchberger([P("x1 + x2", 2), P("x1*x2", 2)])
        assert set(B.leading_monomials()) == {(1, 0), (0, 2)}

    def test_single_square(self):
        B = buchberger([P("x1^2", 2)])
        assert B.leading_monomials() == [(2, 0)]

    def test_zero_ideal(self):
        assert buchberger([Polynomial.zero(2)]).generators == ()

    def test_input_order_irrelevant(self):
        gens = [P("x1^2 + x2*x3", 3), P("x1*x2 - x3^2", 3), P("x2^3 - x3", 3)]
        bases = {buchberger(list(p)).generators for p in permutations(gens)}
        assert len(bases) == 1

    def test_generators_reduce_to_zero(self):
        gens = [P("x1^2*x2 - x3^2", 3), P("x1*x3 - x2^2", 3),
                P("x2*x3 - x1", 3)]
        B = buchberger(gens)
        for g in gens:
            assert reduce_poly(g, B).is_zero()

    def test_monic_sorted(self):
        B = buchberger([P("2*x1 + 4*x2", 2), P("3*x2^2", 2)])
        for g in B.generators:
            assert g.leading_coefficient(B.order) == 1

    def test_budget_error(self):
        gens = [power_sum(5, d) for d in range(1, 6)]
        with pytest.raises(BudgetError):
            buchberger(gens, step_budget=10)

    def test_lex_order_supported(self):
        B = buchberger([P("x1 + x2^2", 2), P("x2^3 - 1", 2)], order="lex")
        assert B.order == "lex"
        for g in B.generators:
            assert g.leading_coefficient("lex") == 1

    def test_against_sympy_oracle(self):
        import sympy as sp
        rng = random.Random(5)
        xs = sp.symbols("x1:4")
        for trial in range(6):
            gens = []
            for _ in range(3):
                f = Polynomial.zero(3)
                for _ in range(3):
                    exps = tuple(rng.randrange(3) for _ in range(3))
                    f = f + Polynomial(3, {exps: rng.randrange(-3, 4)})
                if not f.is_zero():
                    gens.append(f)
            if not gens:
                continue
            ours = buchberger(gens)
            sym = []
            for f in gens:
                e = 0
                for m, c in f.terms.items():
                    t = sp.Rational(c)
                    for i, a in enumerate(m):
                        t *= xs[i] ** a
                    e += t
                sym.append(sp.expand(e))
            gb = sp.groebner(sym, *xs, order="grevlex")
            theirs = set()
            for expr in gb.exprs:
                poly = sp.Poly(expr, *xs)
                theirs.add(tuple(poly.monoms(order="grevlex")[0]))
            if gb.exprs == [sp.Integer(1)]:
                theirs = {(0, 0, 0)}
            assert set(ours.leading_monomials()) == theirs, f"trial {trial}"


class TestZeroDimensional:
    def test_coordinate_ideal(self):
        assert is_zero_dimensional(buchberger([P("x1", 2), P("x2", 2)]))

    def test_positive_dimensional(self):
        assert not is_zero_dimensional(buchberger([P("x1*x2", 2)]))

    def test_elementary_symmetric(self):
        for n in range(2, 6):
            gens = [elementary_symmetric(n, d) for d in range(1, n + 1)]
            assert is_zero_dimensional(buchberger(gens))

    def test_power_sums_classical(self):
        for n in range(2, 5):
            gens = [power_sum(n, d) for d in range(1, n + 1)]
            assert is_zero_dimensional(buchberger(gens))

    def test_lex_grevlex_agree(self):
        gens = [P("x1^2 + x2", 2), P("x2^2 - x1", 2)]
        assert is_zero_dimensional(buchberger(gens, "grevlex")) == \
            is_zero_dimensional(buchberger(gens, "lex"))


def brute_standard_monomials(lts, nvars, d):
    count = 0
    for m in monomials_of_degree(nvars, d):
        if not any(all(x <= y for x, y in zip(lt, m)) for lt in lts):
            count += 1
    return count


class TestMonomialQuotient:
    def test_series_against_enumeration(self):
        rng = random.Random(13)
        for _ in range(12):
            nvars = rng.randrange(2, 5)
            lts = [tuple(rng.randrange(4) for _ in range(nvars))
                   for _ in range(rng.randrange(1, 5))]
            lts = [m for m in lts if sum(m)]
            if not lts:
                continue
            series = monomial_quotient_series(lts, nvars, 7)
            for d in range(8):
                assert series[d] == brute_standard_monomials(lts, nvars, d)

    def test_dimension_brute(self):
        assert monomial_quotient_dimension([(1, 0, 0)], 3) == 2
        assert monomial_quotient_dimension([(1, 1, 0)], 3) == 2
        assert monomial_quotient_dimension([(1, 0, 0), (0, 2, 0), (0, 0, 3)],
                                           3) == 0
        assert monomial_quotient_dimension([], 3) == 3

    def test_ideal_dimension(self):
        assert ideal_dimension([P("x1", 3)], 3) == 2
        assert ideal_dimension([P("x1*x2 - 1", 2)], 2) == 1
        gens = [elementary_symmetric(3, d) for d in range(1, 4)]
        assert ideal_dimension(gens, 3) == 0
