#!/usr/bin/env python3
"""Derive, validate, and emit the bundled transitive-group catalog.

The reference tables fix, per label, the order, the largest proper subfield
degree, minimal primary-invariant degrees, and the exponent columns.  This
script rebuilds the underlying permutation groups from scratch:

* degrees 5, 6, 7, 9 and the primitive / regular degree-8 groups come from
  explicit classical constructions (cyclic, dihedral, affine, PSL2, coset
  actions);
* the remaining imprimitive degree-8 groups are found exhaustively: every one
  preserves blocks of size 2 or 4, hence lives in S2 wr S4 or S4 wr S2, and
  both wreaths have order 2^a 3^b, so all their subgroups are soluble and the
  cyclic-extension method enumerates every class; the transitive survivors
  are deduplicated up to S8-conjugacy.

Each class is then matched to its label through invariants (order, subfield
parameter, minimal element index, element-order spectrum, cycle-type census)
and, where reference rows still differ inside a bucket, through the computed
invariant-degree columns.  The result is written as the line-oriented catalog
data file consumed by the package.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gextbounds.bounds import analyze_group
from gextbounds.config import RunConfig
from gextbounds.perm import (PermGroup, Permutation, closure, element_index,
                             group_index, parse_cycles, t_value)

# ---------------------------------------------------------------------------
# reference rows: label -> (order, order_display, isom, subfield, degrees,
#                           result, malle)

S = "*"  # order marked with an asterisk in the source tables


def _row(order, disp, isom, sub, degs, res, malle):
    return {"order": order, "order_display": disp, "isom": isom,
            "subfield": sub, "degrees": degs, "result": Fraction(res),
            "malle": Fraction(malle)}


PAPER_ROWS: dict[str, dict] = {
    "5T1": _row(5, "5*", "C5", 1, "1,2,2,3,5", "11/8", "1/4"),
    "5T2": _row(10, "10", "D5", 1, "1,2,2,3,5", "11/8", "1/2"),
    "5T3": _row(20, "20", "F20", 1, "1,2,3,4,5", "13/8", "1/2"),
    "5T4": _row(60, "60", "A5", 1, "1,2,3,4,5", "13/8", "1/2"),

    "6T1": _row(6, "6*", "C6", 3, "1,2,2,2,3,6", "7/3", "1/3"),
    "6T2": _row(6, "6*", "S3", 3, "1,2,2,2,3,3", "11/6", "1/3"),
    "6T3": _row(12, "12", "S3xC2", 3, "1,2,2,2,3,6", "7/3", "1/2"),
    "6T4": _row(12, "12", "A4", 3, "1,2,2,3,3,4", "2", "1/2"),
    "6T5": _row(18, "18", "F18", 2, "1,2,2,3,3,6", "7/4", "1/2"),
    "6T6": _row(24, "24", "A4xC2", 3, "1,2,2,3,4,6", "8/3", "1"),
    "6T7": _row(24, "24", "S4", 3, "1,2,2,3,3,4", "13/6", "1/2"),
    "6T8": _row(24, "24", "S4", 3, "1,2,2,3,4,6", "8/3", "1/2"),
    "6T9": _row(36, "36", "S3xS3", 2, "1,2,2,3,4,6", "2", "1/2"),
    "6T10": _row(36, "36", "F36", 2, "1,2,3,3,4,6", "17/8", "1/2"),
    "6T11": _row(48, "48", "S4xC2", 3, "1,2,2,3,4,6", "8/3", "1"),
    "6T12": _row(60, "60", "A5", 1, "1,2,3,3,4,5", "8/5", "1/2"),
    "6T13": _row(72, "72", "F36:C2", 2, "1,2,2,3,4,6", "2", "1"),
    "6T14": _row(120, "120", "S5", 1, "1,2,3,4,5,6", "19/10", "1/2"),
    "6T15": _row(360, "360", "A6", 1, "1,2,3,4,5,6", "19/10", "1/2"),

    "7T1": _row(7, "7*", "C7", 1, "1,2,2,2,3,4,7", "19/12", "1/6"),
    "7T2": _row(14, "14", "D7", 1, "1,2,2,2,3,4,7", "19/12", "1/3"),
    "7T3": _row(21, "21", "F21", 1, "1,2,3,3,3,4,7", "7/4", "1/4"),
    "7T4": _row(42, "42", "F42", 1, "1,2,3,3,4,6,7", "2", "1/3"),
    "7T5": _row(168, "168", "PSL(2,7)", 1, "1,2,3,3,4,4,7", "11/6", "1/2"),
    "7T6": _row(2520, "2520", "A7", 1, "1,2,3,4,5,6,7", "13/6", "1/2"),

    "8T1": _row(8, "8*", "C8", 4, "1,2,2,2,2,3,4,8", "11/4", "1/4"),
    "8T2": _row(8, "8*", "C4xC2", 4, "1,2,2,2,2,2,4,4", "17/8", "1/4"),
    "8T3": _row(8, "8*", "E8", 4, "1,2,2,2,2,2,2,2", "13/8", "1/4"),
    "8T4": _row(8, "8*", "D4", 4, "1,2,2,2,2,2,4,4", "17/8", "1/4"),
    "8T5": _row(8, "8*", "Q8", 4, "1,2,2,2,2,4,4,4", "19/8", "1/4"),
    "8T6": _row(16, "16*", "", 4, "1,2,2,2,2,3,4,8", "11/4", "1/3"),
    "8T7": _row(16, "16*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T8": _row(16, "16*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/3"),
    "8T9": _row(16, "16*", "D4:C2", 4, "1,2,2,2,2,2,4,4", "17/8", "1/2"),
    "8T10": _row(16, "16*", "", 4, "1,2,2,2,2,3,4,4", "9/4", "1/2"),
    "8T11": _row(16, "16*", "", 4, "1,2,2,2,2,4,4,4", "19/8", "1/2"),
    "8T12": _row(24, "24", "SL(2,3)", 4, "1,2,2,3,3,4,4,6", "23/8", "1/4"),
    "8T13": _row(24, "24", "A4xC2", 4, "1,2,2,2,3,3,4,6", "21/8", "1/4"),
    "8T14": _row(24, "24", "S4", 4, "1,2,2,2,3,4,4,6", "11/4", "1/4"),
    "8T15": _row(32, "32*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T16": _row(32, "32*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T17": _row(32, "32*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T18": _row(32, "32*", "", 4, "1,2,2,2,2,3,4,4", "9/4", "1/2"),
    "8T19": _row(32, "32*", "", 4, "1,2,2,2,3,4,4,4", "5/2", "1/2"),
    "8T20": _row(32, "32*", "", 4, "1,2,2,2,3,4,4,4", "5/2", "1/2"),
    "8T21": _row(32, "32*", "", 4, "1,2,2,2,2,4,4,4", "19/8", "1/2"),
    "8T22": _row(32, "32*", "", 4, "1,2,2,2,2,4,4,4", "19/8", "1/2"),
    "8T23": _row(48, "48", "GL(2,3)", 4, "1,2,2,3,3,4,6,8", "27/8", "1/3"),
    "8T24": _row(48, "48", "S4xC2", 4, "1,2,2,2,3,4,4,6", "11/4", "1/2"),
    "8T25": _row(56, "56", "F56", 1, "1,2,3,4,4,4,4,7", "27/14", "1/4"),
    "8T26": _row(64, "64*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T27": _row(64, "64*", "", 4, "1,2,2,2,3,4,4,8", "3", "1"),
    "8T28": _row(64, "64*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T29": _row(64, "64*", "", 4, "1,2,2,2,3,4,4,4", "5/2", "1/2"),
    "8T30": _row(64, "64*", "", 4, "1,2,2,2,3,4,4,8", "3", "1/2"),
    "8T31": _row(64, "64*", "", 4, "1,2,2,2,2,4,4,4", "19/8", "1"),
    "8T32": _row(96, "96", "", 4, "1,2,2,3,3,4,4,6", "23/8", "1/2"),
    "8T33": _row(96, "96", "(C2)^2:C6", 2, "1,2,2,3,4,4,4,6", "2", "1/2"),
    "8T34": _row(96, "96", "(E4)^2:D6", 2, "1,2,2,3,4,4,4,6", "2", "1/2"),
    "8T35": _row(128, "128*", "", 4, "1,2,2,2,3,4,4,8", "3", "1"),
    "8T36": _row(168, "168", "(C2)^3:F21", 1, "1,2,3,4,4,5,6,7", "15/7", "1/4"),
    "8T37": _row(168, "168", "PSL(2,7)", 1, "1,2,3,4,4,4,6,7", "29/14", "1/4"),
    "8T38": _row(192, "192", "", 4, "1,2,2,3,3,4,6,8", "27/8", "1"),
    "8T39": _row(192, "192", "", 4, "1,2,2,3,3,4,4,6", "23/8", "1/2"),
    "8T40": _row(192, "192", "", 4, "1,2,2,3,3,4,6,8", "27/8", "1/2"),
    "8T41": _row(192, "192", "(C2)^3:S4", 2, "1,2,2,3,4,4,4,6", "2", "1/2"),
    "8T42": _row(288, "288", "", 2, "1,2,2,3,4,4,6,6", "13/6", "1/2"),
    "8T43": _row(336, "336", "PGL(2,7)", 1, "1,2,3,4,4,6,7,8", "33/14", "1/3"),
    "8T44": _row(384, "384", "", 4, "1,2,2,3,3,4,6,8", "27/8", "1"),
    "8T45": _row(576, "2^6 3^2", "", 2, "1,2,2,3,4,4,6,8", "7/3", "1/2"),
    "8T46": _row(576, "2^6 3^2", "", 2, "1,2,2,3,4,4,6,8", "7/3", "1/2"),
    "8T47": _row(1152, "2^7 3^2", "", 2, "1,2,2,3,4,4,6,8", "7/3", "1"),
    "8T48": _row(1344, "2^6 3 7", "AL(8)", 1, "1,2,3,4,4,5,6,7", "15/7", "1/2"),
    "8T49": _row(20160, "8!/2", "A8", 1, "1,2,3,4,5,6,7,8", "17/7", "1/2"),

    "9T3": _row(18, "18", "D9", 3, "1,2,2,2,2,3,3,5,8", "13/6", "1/4"),
    "9T4": _row(18, "18", "S3xC3", 3, "1,2,2,2,3,3,3,3,6", "23/12", "1/3"),
    "9T5": _row(18, "18*", "(C3)^2:C2", 3, "1,2,2,2,2,3,3,3,3", "19/12", "1/4"),
    "9T8": _row(36, "36", "S3xS3", 3, "1,2,2,2,3,3,3,4,6", "2", "1/3"),
}


# ---------------------------------------------------------------------------
# direct constructions


def coset_action(ambient: PermGroup, subgroup_elems: set[Permutation]) -> list[str]:
    """Generator cycle strings of the ambient group acting on right cosets."""
    elems = list(ambient.elements)
    sub = sorted(subgroup_elems)
    cosets: list[frozenset[Permutation]] = []
    seen: set[Permutation] = set()
    for g in elems:
        if g in seen:
            continue
        coset = frozenset(h * g for h in sub)
        seen |= set(coset)
        cosets.append(coset)
    index = {c: i for i, c in enumerate(cosets)}
    member_of = {}
    for c in cosets:
        for g in c:
            member_of[g] = index[c]
    out = []
    for gen in ambient.generators:
        images = [0] * len(cosets)
        for i, c in enumerate(cosets):
            rep = next(iter(c))
            images[i] = member_of[rep * gen]
        out.append(str(Permutation(tuple(images))))
    return out


def s4_on_cosets_of_c4() -> list[str]:
    s4 = PermGroup.from_cycle_strings(["(1 2 3 4)", "(1 2)"], 4)
    c4 = set(closure([parse_cycles("(1 2 3 4)", 4)]))
    return coset_action(s4, c4)


def s4_on_pairs() -> list[str]:
    s4 = PermGroup.from_cycle_strings(["(1 2 3 4)", "(1 2)"], 4)
    v4 = set(closure([parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)]))
    return coset_action(s4, v4)


DIRECT: dict[str, tuple[int, list[str]]] = {
    "5T1": (5, ["(1 2 3 4 5)"]),
    "5T2": (5, ["(1 2 3 4 5)", "(2 5)(3 4)"]),
    "5T3": (5, ["(1 2 3 4 5)", "(2 3 5 4)"]),
    "5T4": (5, ["(1 2 3 4 5)", "(3 4 5)"]),

    "6T1": (6, ["(1 2 3 4 5 6)"]),
    "6T2": (6, ["(1 2 3)(4 5 6)", "(1 4)(2 6)(3 5)"]),
    "6T3": (6, ["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
    "6T4": (6, ["(1 2)(3 4)", "(1 2)(5 6)", "(1 3 5)(2 4 6)"]),
    "6T5": (6, ["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"]),
    "6T6": (6, ["(1 2)", "(3 4)", "(5 6)", "(1 3 5)(2 4 6)"]),
    # 6T7/6T8 are the two S4 actions; built by coset_action below
    "6T9": (6, ["(1 2 3)", "(4 5 6)", "(1 2)(4 5)", "(1 4)(2 5)(3 6)"]),
    "6T10": (6, ["(1 2 3)", "(4 5 6)", "(1 4)(2 5 3 6)"]),
    "6T11": (6, ["(1 2)", "(3 4)", "(5 6)", "(1 3 5)(2 4 6)", "(1 3)(2 4)"]),
    "6T12": (6, ["(1 2 3 4 5)", "(1 6)(2 5)"]),
    "6T13": (6, ["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)", "(1 4)(2 5)(3 6)"]),
    "6T14": (6, ["(1 2 3 4 5)", "(1 6)(2 5)", "(2 3 5 4)"]),
    "6T15": (6, ["(1 2 3 4 5)", "(4 5 6)"]),

    "7T1": (7, ["(1 2 3 4 5 6 7)"]),
    "7T2": (7, ["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"]),
    "7T3": (7, ["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
    "7T4": (7, ["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]),
    # the conjugate by (5 6 7) of the printed pair: the copy whose invariant
    # file ships with the package (the printed polynomials are fixed by this
    # copy, not by the printed generators)
    "7T5": (7, ["(1 2 3 4 6 7 5)", "(1 2)(3 7)"]),
    "7T6": (7, ["(1 2 3 4 5 6 7)", "(5 6 7)"]),

    # regular representations of the five order-8 groups
    "8T1": (8, ["(1 2 3 4 5 6 7 8)"]),
    "8T2": (8, ["(1 2 3 4)(5 6 7 8)", "(1 5)(2 6)(3 7)(4 8)"]),
    "8T3": (8, ["(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                "(1 5)(2 6)(3 7)(4 8)"]),
    "8T4": (8, ["(1 2 3 4)(5 6 7 8)", "(1 5)(2 8)(3 7)(4 6)"]),
    "8T5": (8, ["(1 2 3 4)(5 8 7 6)", "(1 5 3 7)(2 6 4 8)"]),

    # primitive degree-8 groups: affine over F8 and projective over F7
    "8T25": (8, ["(1 2)(3 5)(4 8)(6 7)", "(2 3 4 5 6 7 8)"]),
    "8T36": (8, ["(1 2)(3 5)(4 8)(6 7)", "(2 3 4 5 6 7 8)", "(3 4 6)(5 8 7)"]),
    "8T37": (8, ["(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)"]),
    "8T43": (8, ["(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)", "(2 4 3 7 5 6)"]),
    "8T48": (8, ["(1 2)(3 5)(4 8)(6 7)", "(2 3 4 5 6 7 8)", "(3 4 6)(5 8 7)",
                 "(3 4)(5 8)"]),
    "8T49": (8, ["(1 2 3 4 5 6 7)", "(6 7 8)"]),

    "9T3": (9, ["(1 2 3 4 5 6 7 8 9)", "(2 9)(3 8)(4 7)(5 6)"]),
    "9T4": (9, ["(1 2 3)(4 5 6)(7 8 9)", "(1 4 7)(2 5 8)(3 6 9)",
                "(1 4)(2 5)(3 6)"]),
    "9T5": (9, ["(1 2 3)(4 5 6)(7 8 9)", "(1 4 7)(2 5 8)(3 6 9)",
                "(2 3)(4 7)(5 9)(6 8)"]),
    "9T8": (9, ["(1 2 3)(4 5 6)(7 8 9)", "(1 4 7)(2 5 8)(3 6 9)",
                "(1 2)(4 5)(7 8)", "(1 4)(2 5)(3 6)"]),
}


# ---------------------------------------------------------------------------
# exhaustive enumeration of imprimitive transitive subgroups of S8


class IntGroup:
    """A finite permutation group with integer-indexed elements and tables."""

    def __init__(self, perms: list[Permutation]):
        self.perms = sorted(perms)
        self.index = {p: i for i, p in enumerate(self.perms)}
        n = len(self.perms)
        self.mul = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.perms):
            for j, b in enumerate(self.perms):
                self.mul[i][j] = self.index[a * b]
        self.inv = [0] * n
        for i, a in enumerate(self.perms):
            self.inv[i] = self.index[a.inverse()]
        self.identity = self.index[Permutation.identity(self.perms[0].degree)]
        self.order_of = [p.order() for p in self.perms]

    def conj(self, w: int, x: int) -> int:
        return self.mul[self.mul[w][x]][self.inv[w]]

    def subgroup_closure(self, gens: list[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for h in frontier:
                for g in gens:
                    p = self.mul[g][h]
                    if p not in elems:
                        elems.add(p)
                        new.append(p)
            frontier = new
        return frozenset(elems)


def enumerate_soluble_subgroups(W: IntGroup, progress: bool = False):
    """All subgroup classes of a soluble ambient group, by cyclic extension.

    Returns a list of (elements frozenset, generators tuple).  Every soluble
    subgroup arises from a normal subgroup of prime index, so layering by
    order and extending inside normalizers is exhaustive; the ambient groups
    used here have order 2^a 3^b, hence only soluble subgroups.
    """
    order = len(W.perms)
    trivial = frozenset({W.identity})
    found: dict[frozenset[int], tuple[int, ...]] = {trivial: ()}
    classes: dict[tuple, list[frozenset[int]]] = defaultdict(list)
    seen_exact: set[frozenset[int]] = set()

    def census_key(elems: frozenset[int]) -> tuple:
        return (len(elems),
                tuple(sorted(Counter(W.order_of[x] for x in elems).items())))

    def canonical_known(elems: frozenset[int], gens) -> bool:
        """True if elems is W-conjugate to an already recorded subgroup."""
        if elems in seen_exact:
            return True
        seen_exact.add(elems)
        key = census_key(elems)
        for other in classes[key]:
            # look for w with w*gens*w^-1 inside other (groups of equal order)
            for w in range(order):
                if all(W.conj(w, g) in other for g in gens):
                    return True
        classes[key].append(elems)
        return False

    canonical_known(trivial, ())
    layer = [(trivial, ())]
    t0 = time.time()
    while layer:
        nxt = []
        for elems, gens in layer:
            glist = list(gens)
            # normalizer of the subgroup in W
            norm = [w for w in range(order)
                    if all(W.conj(w, g) in elems for g in glist)] if glist \
                else list(range(order))
            for p in (2, 3):
                target = len(elems) * p
                if order % target:
                    continue
                built: set[int] = set()
                for g in norm:
                    if g in elems or g in built:
                        continue
                    # g must have p-th power inside and normalize elems
                    gp = g
                    for _ in range(p - 1):
                        gp = W.mul[gp][g]
                    if gp not in elems:
                        continue
                    new_elems = set(elems)
                    coset = [W.mul[g][h] for h in elems]
                    for i in range(1, p):
                        new_elems.update(coset)
                        if i + 1 < p:
                            coset = [W.mul[g][h] for h in coset]
                    if len(new_elems) != target:
                        continue
                    fz = frozenset(new_elems)
                    built |= fz
                    new_gens = tuple(glist + [g])
                    if not canonical_known(fz, new_gens):
                        found[fz] = new_gens
                        nxt.append((fz, new_gens))
        layer = nxt
        if progress and layer:
            print(f"  layer |H|={len(layer[0][0])}: {len(layer)} new classes "
                  f"({time.time() - t0:.0f}s)")
    return [(elems, gens) for elems, gens in found.items()]


def wreath_s2_s4() -> list[Permutation]:
    gens = ["(1 2)", "(3 4)", "(5 6)", "(7 8)", "(1 3)(2 4)",
            "(1 3 5 7)(2 4 6 8)"]
    return sorted(closure([parse_cycles(s, 8) for s in gens], cap=1200))


def wreath_s4_s2() -> list[Permutation]:
    gens = ["(1 2 3 4)", "(1 2)", "(5 6 7 8)", "(5 6)",
            "(1 5)(2 6)(3 7)(4 8)"]
    return sorted(closure([parse_cycles(s, 8) for s in gens], cap=1200))


def transitive_classes_degree8() -> list[PermGroup]:
    """All imprimitive transitive subgroups of S8 up to S8-conjugacy."""
    groups: list[PermGroup] = []
    for builder, name in ((wreath_s2_s4, "S2wrS4"), (wreath_s4_s2, "S4wrS2")):
        perms = builder()
        W = IntGroup(perms)
        print(f"enumerating subgroups of {name} (order {len(perms)}) ...")
        subs = enumerate_soluble_subgroups(W, progress=True)
        print(f"  {len(subs)} classes, filtering transitive ...")
        for elems, gens in subs:
            if len(elems) < 8:
                continue
            gen_perms = [W.perms[g] for g in gens]
            G = PermGroup._from_set(8, tuple(gen_perms),
                                    {W.perms[x] for x in elems})
            if G.is_transitive():
                groups.append(G)
    # dedupe across the two wreaths under S8-conjugacy
    print(f"{len(groups)} transitive candidates; deduplicating under S8 ...")
    s8 = sorted(closure([parse_cycles("(1 2)", 8),
                         parse_cycles("(1 2 3 4 5 6 7 8)", 8)], cap=50000))
    unique: list[PermGroup] = []
    for G in groups:
        if not any(_s8_conjugate(G, H, s8) for H in unique
                   if H.order == G.order):
            unique.append(G)
    print(f"{len(unique)} classes after dedupe")
    return unique


def _s8_conjugate(G: PermGroup, H: PermGroup, s8: list[Permutation]) -> bool:
    if G.order != H.order:
        return False
    if _census(G) != _census(H):
        return False
    gens = list(G.generators)
    for w in s8:
        winv = w.inverse()
        if all((w * g * winv) in H for g in gens):
            return True
    return False


def _census(G: PermGroup):
    return tuple(sorted(Counter(g.cycle_type() for g in G.elements).items()))


# ---------------------------------------------------------------------------
# label assignment


def cheap_invariants(G: PermGroup):
    return {
        "order": G.order,
        "t": t_value(G),
        "ind": group_index(G),
        "spectrum": tuple(sorted(Counter(g.order() for g in G.elements).items())),
        "census": _census(G),
    }


def minimal_generators(G: PermGroup) -> list[Permutation]:
    gens: list[Permutation] = []
    have: set[Permutation] = {Permutation.identity(G.degree)}
    for g in G.elements:
        if g in have:
            continue
        gens.append(g)
        have = closure(gens, cap=G.order + 1)
        if len(have) == G.order:
            break
    return gens


def assign_degree8_labels(classes: list[PermGroup], run_pipeline: bool) -> dict[str, PermGroup]:
    """Match enumerated imprimitive classes to their reference labels."""
    directly_labeled = {label for label in PAPER_ROWS if label.startswith("8T")
                        and label in DIRECT}
    todo_labels = [label for label in PAPER_ROWS if label.startswith("8T")
                   and label not in directly_labeled]
    by_order: dict[int, list[PermGroup]] = defaultdict(list)
    for G in classes:
        by_order[G.order].append(G)

    assignment: dict[str, PermGroup] = {}
    for order in sorted({PAPER_ROWS[l]["order"] for l in todo_labels}):
        labels = [l for l in todo_labels if PAPER_ROWS[l]["order"] == order]
        cands = by_order.get(order, [])
        if len(labels) != len(cands):
            raise RuntimeError(
                f"order {order}: {len(labels)} labels but {len(cands)} classes")
        _assign_bucket(labels, cands, assignment, run_pipeline)
    return assignment


def _assign_bucket(labels: list[str], cands: list[PermGroup],
                   assignment: dict[str, PermGroup], run_pipeline: bool):
    # split by (subfield t, malle index) which the tables pin per label
    def label_key(l):
        row = PAPER_ROWS[l]
        return (row["subfield"], row["malle"])

    def cand_key(G):
        inv = cheap_invariants(G)
        return (inv["t"], Fraction(1, inv["ind"]))

    lab_groups: dict = defaultdict(list)
    for l in labels:
        lab_groups[label_key(l)].append(l)
    cand_groups: dict = defaultdict(list)
    for G in cands:
        cand_groups[cand_key(G)].append(G)
    if set(lab_groups) != set(cand_groups) or any(
            len(lab_groups[k]) != len(cand_groups[k]) for k in lab_groups):
        raise RuntimeError(
            f"bucket mismatch for labels {labels}: "
            f"{ {k: len(v) for k, v in lab_groups.items()} } vs "
            f"{ {k: len(v) for k, v in cand_groups.items()} }")
    for key in sorted(lab_groups, key=str):
        ls = sorted(lab_groups[key])
        gs = sorted(cand_groups[key], key=lambda G: _census(G))
        rows = {PAPER_ROWS[l]["degrees"] for l in ls}
        if len(rows) == 1:
            # reference columns identical: any pairing reproduces the tables
            for l, G in zip(ls, gs):
                assignment[l] = G
            continue
        pairing = _match_by_numerator(ls, gs, resolve_cores=run_pipeline)
        if pairing is None:
            print(f"  WARNING: assigned {ls} by census order only")
            pairing = dict(zip(ls, gs))
        assignment.update(pairing)


def _match_by_numerator(ls: list[str], gs: list[PermGroup],
                        resolve_cores: bool = True):
    """Pair labels to classes via acceptance of the printed degree vector.

    The Hilbert-numerator screen depends only on the Molien series, so this
    is pure series arithmetic.  Uniquely-determined pairs are peeled off; a
    leftover core of distinct rows is settled by testing realizability of
    its smallest distinguishing vector on each remaining class.
    """
    from gextbounds.molien import (DegreeVector, HilbertNumerator,
                                   default_truncation, hilbert_numerator,
                                   molien_series)
    accepts = []
    for G in gs:
        H = molien_series(G, default_truncation(G.degree))
        row = []
        for l in ls:
            dv = DegreeVector.parse(PAPER_ROWS[l]["degrees"])
            row.append(isinstance(hilbert_numerator(H, dv), HilbertNumerator))
        accepts.append(row)
    pairing: dict[str, PermGroup] = {}
    remaining_l = list(range(len(ls)))
    remaining_g = list(range(len(gs)))

    def peel():
        changed = True
        while changed and remaining_l:
            changed = False
            for li in list(remaining_l):
                fits = [gi for gi in remaining_g if accepts[gi][li]]
                if len(fits) == 1:
                    pairing[ls[li]] = gs[fits[0]]
                    remaining_l.remove(li)
                    remaining_g.remove(fits[0])
                    changed = True
            for gi in list(remaining_g):
                fits = [li for li in remaining_l if accepts[gi][li]]
                if len(fits) == 1:
                    pairing[ls[fits[0]]] = gs[gi]
                    remaining_l.remove(fits[0])
                    remaining_g.remove(gi)
                    changed = True
            # a set of identical rows matched by an equal-sized set of
            # classes accepting nothing else pairs off arbitrarily
            by_row: dict[str, list[int]] = defaultdict(list)
            for li in remaining_l:
                by_row[PAPER_ROWS[ls[li]]["degrees"]].append(li)
            for row_key, lis in by_row.items():
                fitting = [gi for gi in remaining_g
                           if accepts[gi][lis[0]]
                           and all(not accepts[gi][lj] for lj in remaining_l
                                   if lj not in lis)]
                if len(fitting) == len(lis):
                    for li, gi in zip(lis, fitting):
                        pairing[ls[li]] = gs[gi]
                        remaining_l.remove(li)
                        remaining_g.remove(gi)
                    changed = True
                    break

    peel()
    if not remaining_l:
        return pairing
    leftover_rows = {PAPER_ROWS[ls[li]]["degrees"] for li in remaining_l}
    if len(leftover_rows) == 1:
        for li, gi in zip(remaining_l, remaining_g):
            pairing[ls[li]] = gs[gi]
        return pairing
    if not resolve_cores:
        return None
    # resolve the core: test the realizability of the smallest leftover row
    from gextbounds.invariants import SearchConfig, find_primary_invariants
    target_li = min(remaining_l,
                    key=lambda li: (sum(DegreeVector.parse(
                        PAPER_ROWS[ls[li]]["degrees"]).degrees)))
    target = DegreeVector.parse(PAPER_ROWS[ls[target_li]]["degrees"])
    print(f"  resolving core {sorted(ls[li] for li in remaining_l)} by "
          f"realizability of {target.render()}")
    cfg = SearchConfig(wall_seconds=900.0)
    realizers = []
    for gi in list(remaining_g):
        if not accepts[gi][target_li]:
            continue
        try:
            found = find_primary_invariants(gs[gi], [target], cfg)
        except Exception as err:
            print(f"    class {gi}: inconclusive ({err})")
            continue
        if found.degrees == target:
            realizers.append(gi)
            print(f"    class {gi}: realizes {target.render()}")
        else:
            print(f"    class {gi}: falls back, does not realize")
    if len(realizers) == 1:
        pairing[ls[target_li]] = gs[realizers[0]]
        remaining_l.remove(target_li)
        remaining_g.remove(realizers[0])
        peel()
        if not remaining_l:
            return pairing
        leftover_rows = {PAPER_ROWS[ls[li]]["degrees"] for li in remaining_l}
        if len(leftover_rows) == 1:
            for li, gi in zip(remaining_l, remaining_g):
                pairing[ls[li]] = gs[gi]
            return pairing
    return None


# ---------------------------------------------------------------------------
# emission and validation


def build_all(run_pipeline: bool) -> dict[str, tuple[int, list[str]]]:
    out: dict[str, tuple[int, list[str]]] = dict(DIRECT)
    out["6T7"] = (6, s4_on_pairs())
    out["6T8"] = (6, s4_on_cosets_of_c4())
    classes = transitive_classes_degree8()
    assignment = assign_degree8_labels(classes, run_pipeline)
    for label, G in assignment.items():
        gens = minimal_generators(G)
        out[label] = (8, [str(g) for g in gens])
    return out


def validate(label: str, n: int, gens: list[str]) -> list[str]:
    problems = []
    row = PAPER_ROWS[label]
    G = PermGroup.from_cycle_strings(gens, n)
    if G.order != row["order"]:
        problems.append(f"{label}: order {G.order} != {row['order']}")
    if not G.is_transitive():
        problems.append(f"{label}: not transitive")
        return problems
    t = t_value(G)
    if t != row["subfield"]:
        problems.append(f"{label}: t {t} != {row['subfield']}")
    a = Fraction(1, group_index(G))
    if a != row["malle"]:
        problems.append(f"{label}: malle {a} != {row['malle']}")
    return problems


def emit(constructions: dict[str, tuple[int, list[str]]], path: Path):
    lines = [
        "# Transitive-group catalog: proper transitive subgroups of S5..S8",
        "# plus four degree-9 rows.  Format per record:",
        "#   label ; n ; gen ; gen ... ; key=value ...",
        "# Expected columns (order/subfield/degrees/result/malle) are the",
        "# reference values the table command checks computations against.",
    ]
    for label in sorted(constructions, key=_label_sort):
        n, gens = constructions[label]
        row = PAPER_ROWS[label]
        fields = [label, str(n)] + gens
        fields.append(f"order={row['order']}")
        fields.append(f"order_display={row['order_display']}")
        fields.append(f"subfield={'none' if row['subfield'] == 1 else 'Deg. %d' % row['subfield']}")
        fields.append(f"degrees={row['degrees']}")
        fields.append(f"result={row['result']}")
        fields.append(f"malle={row['malle']}")
        if row["isom"]:
            fields.append(f"isom={row['isom']}")
        lines.append(" ; ".join(fields))
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(constructions)} records)")


def _label_sort(label: str):
    n, k = label.split("T")
    return (int(n), int(k))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent
                    / "src" / "gextbounds" / "data" / "catalog.txt")
    ap.add_argument("--no-pipeline", action="store_true",
                    help="skip invariant-degree fingerprinting (faster, may "
                         "leave ambiguous labels in census order)")
    args = ap.parse_args()

    constructions = build_all(run_pipeline=not args.no_pipeline)
    missing = set(PAPER_ROWS) - set(constructions)
    if missing:
        raise RuntimeError(f"missing constructions: {sorted(missing)}")
    problems = []
    for label in sorted(constructions, key=_label_sort):
        n, gens = constructions[label]
        problems.extend(validate(label, n, gens))
    for p in problems:
        print("VALIDATION:", p)
    if problems:
        raise SystemExit(1)
    emit(constructions, args.out)


if __name__ == "__main__":
    main()
