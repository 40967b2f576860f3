"""Permutations of {1..n}, element-list groups, classes, and the subfield parameter.

Groups are kept as explicit, fully enumerated element lists: every algorithm
here is exhaustive, which keeps correctness easy to audit.  The default cap of
50,000 elements comfortably covers the largest catalogued group (order 20,160).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import CapacityError, CycleParseError

DEFAULT_ELEMENT_CAP = 50_000


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}, stored as the 0-based image tuple."""

    images: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def image(self, p: int) -> int:
        """Image of the 1-based point p."""
        return self.images[p - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (g * h)(x) = g(h(x))
        im = self.images
        return Permutation(tuple(im[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles on 1-based points, fixed points omitted.

        Each cycle starts at its smallest point; cycles sorted by first point.
        """
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(p + 1 for p in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """All cycle lengths including fixed points, descending."""
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 1
            seen[start] = True
            j = self.images[start]
            while j != start:
                length += 1
                seen[j] = True
                j = self.images[j]
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def __pow__(self, k: int) -> "Permutation":
        n = len(self.images)
        k %= self.order()
        result = Permutation.identity(n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation like "(1 2 3)(4 5)" into a degree-n permutation.

    Points inside a cycle are separated by whitespace or commas; "()" and the
    empty string denote the identity.  Raises CycleParseError with the failing
    character position on malformed input.
    """
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    images = list(range(n))
    used: set[int] = set()
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise CycleParseError(f"expected '(' but found {ch!r}", i)
        i += 1
        points: list[int] = []
        while True:
            while i < length and (text[i].isspace() or text[i] == ","):
                i += 1
            if i >= length:
                raise CycleParseError("unclosed cycle", length)
            if text[i] == ")":
                i += 1
                break
            start = i
            while i < length and text[i].isdigit():
                i += 1
            if i == start:
                raise CycleParseError(f"expected a point but found {text[i]!r}", i)
            p = int(text[start:i])
            if p < 1 or p > n:
                raise CycleParseError(f"point {p} outside 1..{n}", start)
            if p in used:
                raise CycleParseError(f"point {p} repeated", start)
            used.add(p)
            points.append(p)
        for a, b in zip(points, points[1:]):
            images[a - 1] = b - 1
        if points:
            images[points[-1] - 1] = points[0] - 1
    return Permutation(tuple(images))


def closure(gens: list[Permutation], cap: int = DEFAULT_ELEMENT_CAP) -> set[Permutation]:
    """Element set of the subgroup generated by gens, by breadth-first products."""
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have mixed degrees")
    elems: set[Permutation] = {Permutation.identity(degree)}
    frontier = [Permutation.identity(degree)]
    while frontier:
        new: list[Permutation] = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if prod not in elems:
                    if len(elems) >= cap:
                        raise CapacityError(f"closure exceeded cap of {cap} elements")
                    elems.add(prod)
                    new.append(prod)
        frontier = new
    return elems


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group with its full, sorted element list."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    order: int
    _elemset: frozenset = field(repr=False, compare=False, default=frozenset())

    @staticmethod
    def generate(gens: list[Permutation], cap: int = DEFAULT_ELEMENT_CAP) -> "PermGroup":
        elems = closure(gens, cap)
        return PermGroup._from_set(gens[0].degree, tuple(gens), elems)

    @staticmethod
    def from_cycle_strings(gens: list[str], n: int,
                           cap: int = DEFAULT_ELEMENT_CAP) -> "PermGroup":
        return PermGroup.generate([parse_cycles(s, n) for s in gens], cap)

    @staticmethod
    def _from_set(degree: int, gens: tuple[Permutation, ...],
                  elems: set[Permutation]) -> "PermGroup":
        ordered = tuple(sorted(elems))
        return PermGroup(degree, gens, ordered, len(ordered), frozenset(elems))

    def __contains__(self, g: Permutation) -> bool:
        return g in self._elemset

    def __iter__(self):
        return iter(self.elements)

    def orbit(self, p: int) -> frozenset[int]:
        """Orbit of the 1-based point p under the generators."""
        seen = {p - 1}
        frontier = [p - 1]
        while frontier:
            nxt = []
            for q in frontier:
                for g in self.generators:
                    r = g.images[q]
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return frozenset(q + 1 for q in seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def point_stabilizer(self, p: int) -> "PermGroup":
        """Subgroup fixing the 1-based point p, listed exhaustively."""
        if not 1 <= p <= self.degree:
            raise ValueError(f"point {p} outside 1..{self.degree}")
        fixed = {g for g in self.elements if g.images[p - 1] == p - 1}
        gens = tuple(sorted(fixed - {Permutation.identity(self.degree)})) or (
            Permutation.identity(self.degree),)
        return PermGroup._from_set(self.degree, gens, fixed)

    def exponent(self) -> int:
        return math.lcm(*(g.order() for g in self.elements))

    def cycle_type_census(self) -> Counter:
        """Multiset of cycle types over all elements (drives the Molien sum)."""
        return Counter(g.cycle_type() for g in self.elements)

    def is_symmetric(self) -> bool:
        return self.order == math.factorial(self.degree)

    def minimal_block(self, p: int, q: int) -> frozenset[int]:
        """Smallest block of imprimitivity containing the 1-based points p, q.

        Classical merging algorithm over the generator action; requires a
        transitive group.
        """
        n = self.degree
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> int:
            rx, ry = find(x), find(y)
            if rx == ry:
                return rx
            parent[ry] = rx
            return rx

        queue = [(p - 1, q - 1)]
        union(p - 1, q - 1)
        while queue:
            a, b = queue.pop()
            for g in self.generators:
                ga, gb = g.images[a], g.images[b]
                ra, rb = find(ga), find(gb)
                if ra != rb:
                    union(ra, rb)
                    queue.append((ra, rb))
        root = find(p - 1)
        return frozenset(i + 1 for i in range(n) if find(i) == root)


def element_index(g: Permutation) -> int:
    """n minus the number of orbits of <g> on the points, via explicit orbits."""
    seen = [False] * g.degree
    orbits = 0
    for start in range(g.degree):
        if seen[start]:
            continue
        orbits += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = g.images[j]
    return g.degree - orbits


def group_index(G: PermGroup) -> int:
    """Minimal element index over non-identity elements."""
    if G.order < 2:
        raise ValueError("index of the trivial group is undefined")
    return min(element_index(g) for g in G.elements if not g.is_identity())


@dataclass(frozen=True)
class ConjClassSet:
    """Conjugacy classes plus their fusion into rational classes.

    classes[i] is a sorted element list; fusion partitions class indices, each
    part closed under g -> g^k for k coprime to the element order.
    """

    classes: tuple[tuple[Permutation, ...], ...]
    fusion: tuple[tuple[int, ...], ...]

    def rational_class_count(self) -> int:
        return len(self.fusion)


def conjugacy_and_rational_classes(G: PermGroup) -> ConjClassSet:
    """Classes by exhaustive conjugation; rational fusion by power maps."""
    class_of: dict[Permutation, int] = {}
    classes: list[tuple[Permutation, ...]] = []
    for g in G.elements:
        if g in class_of:
            continue
        idx = len(classes)
        members = {g}
        frontier = [g]
        while frontier:
            nxt = []
            for h in frontier:
                for s in G.generators:
                    conj = s * h * s.inverse()
                    if conj not in members:
                        members.add(conj)
                        nxt.append(conj)
            frontier = nxt
        ordered = tuple(sorted(members))
        classes.append(ordered)
        for h in ordered:
            class_of[h] = idx

    # fuse the classes of g and g^k for every k coprime to ord(g)
    parent = list(range(len(classes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, members in enumerate(classes):
        rep = members[0]
        m = rep.order()
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                other = class_of[rep ** k]
                ra, rb = find(idx), find(other)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[int]] = {}
    for idx in range(len(classes)):
        groups.setdefault(find(idx), []).append(idx)
    fusion = tuple(tuple(sorted(v)) for _, v in sorted(groups.items()))
    return ConjClassSet(tuple(classes), fusion)


def malle_b_Q(G: PermGroup) -> int:
    """Number of rational classes (identity excluded) of minimal index."""
    if G.order < 2:
        raise ValueError("b(Q, G) is undefined for the trivial group")
    target = group_index(G)
    ccs = conjugacy_and_rational_classes(G)
    count = 0
    for part in ccs.fusion:
        rep = ccs.classes[part[0]][0]
        if rep.is_identity():
            continue
        if element_index(rep) == target:
            count += 1
    return count


def t_value(G: PermGroup) -> int:
    """Largest index of a proper subgroup strictly between a point stabilizer and G.

    Equivalently the largest degree of a proper subfield of the associated
    field extension.  Subgroups properly containing the stabilizer of a point
    correspond to blocks of imprimitivity through that point, so the maximal
    index is n divided by the smallest nontrivial block size; 1 when G is
    primitive.
    """
    if not G.is_transitive():
        raise ValueError("t is only defined for transitive groups")
    n = G.degree
    best = n + 1  # smallest nontrivial block size found
    for q in range(2, n + 1):
        block = G.minimal_block(1, q)
        if 1 < len(block) < n:
            best = min(best, len(block))
    if best > n:
        return 1
    return n // best
