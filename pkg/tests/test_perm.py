"""Permutations, groups, classes, and the subfield parameter."""

import math

import pytest

from gextbounds.errors import CapacityError, CycleParseError
from gextbounds.perm import (ConjClassSet, PermGroup, Permutation, closure,
                             conjugacy_and_rational_classes, element_index,
                             group_index, malle_b_Q, parse_cycles, t_value)


def perm(text, n):
    return parse_cycles(text, n)


def cycle_sum_index(g: Permutation) -> int:
    """Independent oracle: sum of (cycle length - 1) over the cycles."""
    return sum(len(c) - 1 for c in g.cycles())


class TestParseCycles:
    def test_seven_cycle(self):
        g = perm("(1 2 3 4 5 6 7)", 7)
        assert g.images == (1, 2, 3, 4, 5, 6, 0)

    def test_identity_forms(self):
        assert perm("()", 5).is_identity()
        assert perm("", 5).is_identity()

    def test_disjoint_product(self):
        g = perm("(1 2)(3 6)", 7)
        assert [g.image(p) for p in range(1, 8)] == [2, 1, 6, 4, 5, 3, 7]

    def test_comma_separated_points(self):
        assert perm("(1,2,3)", 3) == perm("(1 2 3)", 3)

    def test_repeated_point(self):
        with pytest.raises(CycleParseError) as err:
            perm("(1 2)(2 3)", 4)
        assert "repeated" in str(err.value)
        assert err.value.position == 6

    def test_point_out_of_range(self):
        with pytest.raises(CycleParseError) as err:
            perm("(1 9)", 5)
        assert "outside" in str(err.value)

    def test_malformed_parentheses(self):
        with pytest.raises(CycleParseError):
            perm("(1 2", 4)
        with pytest.raises(CycleParseError):
            perm("1 2)", 4)

    def test_round_trip(self):
        g = perm("(1 2)(3 6)", 7)
        assert parse_cycles(str(g), 7) == g
        assert str(perm("()", 3)) == "()"


class TestGroupClosure:
    def test_psl27_order(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        assert G.order == 168

    def test_transposition(self):
        G = PermGroup.from_cycle_strings(["(1 2)"], 2)
        assert G.order == 2

    def test_s3(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)", "(1 2)"], 3)
        assert G.order == 6

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7,
                                         cap=100)

    def test_elements_closed(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)", "(1 2)"], 3)
        elems = set(G.elements)
        assert all(a * b in elems for a in elems for b in elems)
        assert all(a.inverse() in elems for a in elems)


class TestTransitivity:
    def test_cycle_transitive(self):
        assert PermGroup.from_cycle_strings(["(1 2 3 4 5)"], 5).is_transitive()

    def test_small_not_transitive(self):
        assert not PermGroup.from_cycle_strings(["(1 2)"], 3).is_transitive()

    def test_psl27_transitive(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        assert G.is_transitive()


class TestElementIndex:
    def test_transposition(self):
        assert element_index(perm("(1 2)", 5)) == 1

    def test_identity(self):
        assert element_index(Permutation.identity(6)) == 0

    def test_two_transpositions(self):
        # orbits {1,2},{3,6},{4},{5},{7}: index 7 - 5
        assert element_index(perm("(1 2)(3 6)", 7)) == 2

    def test_matches_cycle_sum_on_psl27(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        for g in G.elements:
            assert element_index(g) == cycle_sum_index(g)


class TestGroupIndex:
    def test_symmetric(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5)", "(1 2)"], 5)
        assert group_index(G) == 1

    def test_c5(self):
        assert group_index(PermGroup.from_cycle_strings(["(1 2 3 4 5)"], 5)) == 4

    def test_psl27(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        assert group_index(G) == 2

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            group_index(PermGroup.generate([Permutation.identity(3)]))


def brute_force_rational_fusion(G: PermGroup) -> set[frozenset[Permutation]]:
    """Oracle: fuse conjugacy classes through all coprime power maps."""
    classes = []
    seen = set()
    for g in G.elements:
        if g in seen:
            continue
        cls = frozenset(s * g * s.inverse() for s in G.elements)
        seen |= cls
        classes.append(cls)
    fused = []
    used = set()
    for cls in classes:
        if cls in used:
            continue
        block = set(cls)
        rep = next(iter(cls))
        m = rep.order()
        for k in range(1, m + 1):
            if math.gcd(k, m) == 1:
                powered = rep ** k
                for other in classes:
                    if powered in other:
                        block |= other
                        used.add(other)
        fused.append(frozenset(block))
    return set(fused)


class TestConjugacyClasses:
    def test_s3(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)", "(1 2)"], 3)
        ccs = conjugacy_and_rational_classes(G)
        assert len(ccs.classes) == 3
        assert ccs.rational_class_count() == 3

    def test_c5_fusion(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5)"], 5)
        ccs = conjugacy_and_rational_classes(G)
        assert len(ccs.classes) == 5
        assert ccs.rational_class_count() == 2

    def test_c6_fusion_blocks(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6)"], 6)
        ccs = conjugacy_and_rational_classes(G)
        sizes = sorted(sum(len(ccs.classes[i]) for i in part)
                       for part in ccs.fusion)
        assert sizes == [1, 1, 2, 2]  # {e}, {g^3}, {g^2,g^4}, {g,g^5}

    def test_fusion_matches_oracle(self):
        for gens, n in ((["(1 2 3 4 5)"], 5),
                        (["(1 2 3 4 5 6)"], 6),
                        (["(1 2 3)", "(1 2)"], 3),
                        (["(1 2 3 4)", "(1 3)"], 4)):
            G = PermGroup.from_cycle_strings(gens, n)
            ccs = conjugacy_and_rational_classes(G)
            ours = {frozenset(g for i in part for g in ccs.classes[i])
                    for part in ccs.fusion}
            assert ours == brute_force_rational_fusion(G)

    def test_classes_partition_and_divide(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        ccs = conjugacy_and_rational_classes(G)
        total = sum(len(c) for c in ccs.classes)
        assert total == G.order
        assert all(G.order % len(c) == 0 for c in ccs.classes)

    def test_abelian_classes_singletons(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6)"], 6)
        ccs = conjugacy_and_rational_classes(G)
        assert all(len(c) == 1 for c in ccs.classes)


class TestMalleB:
    def test_symmetric_single_class(self):
        for n in (2, 3, 4, 5):
            G = PermGroup.from_cycle_strings(
                ["(" + " ".join(map(str, range(1, n + 1))) + ")", "(1 2)"], n)
            assert malle_b_Q(G) == 1

    def test_c5(self):
        assert malle_b_Q(PermGroup.from_cycle_strings(["(1 2 3 4 5)"], 5)) == 1

    def test_c6(self):
        assert malle_b_Q(PermGroup.from_cycle_strings(["(1 2 3 4 5 6)"], 6)) == 1


class TestPointStabilizer:
    def test_regular_action_trivial(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5)"], 5)
        assert G.point_stabilizer(1).order == 1

    def test_s3_point_3(self):
        G = PermGroup.from_cycle_strings(["(1 2 3)", "(1 2)"], 3)
        stab = G.point_stabilizer(3)
        assert stab.order == 2
        assert perm("(1 2)", 3) in stab

    def test_psl27_orbit_stabilizer(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        assert G.point_stabilizer(1).order == 24
        for p in range(1, 8):
            assert G.point_stabilizer(p).order * 7 == G.order


def t_value_by_subgroup_closures(G: PermGroup) -> int:
    """Oracle: the single-extra-generator characterization, exhaustively."""
    stab = G.point_stabilizer(1)
    best = 1
    for h in G.elements:
        if h in stab:
            continue
        sub = closure(list(stab.elements) + [h], cap=G.order + 1)
        if len(sub) < G.order:
            best = max(best, G.order // len(sub))
    return best


class TestTValue:
    def test_primitive_psl27(self):
        G = PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], 7)
        assert t_value(G) == 1

    def test_c6(self):
        assert t_value(PermGroup.from_cycle_strings(["(1 2 3 4 5 6)"], 6)) == 3

    def test_c8(self):
        assert t_value(
            PermGroup.from_cycle_strings(["(1 2 3 4 5 6 7 8)"], 8)) == 4

    def test_intransitive_rejected(self):
        with pytest.raises(ValueError):
            t_value(PermGroup.from_cycle_strings(["(1 2)"], 3))

    def test_matches_closure_oracle(self):
        samples = [
            (["(1 2 3 4 5 6)"], 6),
            (["(1 2 3 4 5 6)", "(2 6)(3 5)"], 6),
            (["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"], 6),
            (["(1 2)(3 4)", "(1 2)(5 6)", "(1 3 5)(2 4 6)"], 6),
            (["(1 2 3 4 5)", "(2 3 5 4)"], 5),
            (["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"], 7),
            (["(1 2 3 4 5 6 7 8)"], 8),
        ]
        for gens, n in samples:
            G = PermGroup.from_cycle_strings(gens, n)
            assert t_value(G) == t_value_by_subgroup_closures(G)

    def test_invariant_under_conjugation(self):
        G = PermGroup.from_cycle_strings(
            ["(1 2)(3 4)", "(1 2)(5 6)", "(1 3 5)(2 4 6)"], 6)
        sigma = perm("(1 5 3)(2 6)", 6)
        conj = [sigma * g * sigma.inverse() for g in G.generators]
        assert t_value(PermGroup.generate(conj)) == t_value(G)
