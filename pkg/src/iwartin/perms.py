"""Finite permutation groups with full element enumeration.

Permutations are stored as tuples of 0-based images: ``a[i]`` is the image
of point ``i``.  The public constructors and the instance-file format use
1-based one-line image arrays; conversion happens at the boundary.

Groups are immutable after construction.  All the groups this package
meets are tiny (the largest is order 1680), so we enumerate elements
outright instead of using a stabilizer chain; a hard cap guards against
accidental blowups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    ElementNotInGroup,
    InvalidPermutation,
    NotAnInvolution,
    OrderCapExceeded,
    POrderViolation,
)

Perm = tuple  # tuple of 0-based images

ORDER_CAP = 10**6


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Perm, b: Perm) -> Perm:
    """(a*b)(i) = a(b(i)): apply b first."""
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def conjugate(g: Perm, x: Perm) -> Perm:
    """g x g^-1."""
    return compose(compose(g, x), inverse(g))


def perm_order(a: Perm) -> int:
    order = 1
    for length in cycle_lengths(a):
        order = math.lcm(order, length)
    return order


def cycle_lengths(a: Perm) -> list[int]:
    seen = [False] * len(a)
    lengths = []
    for start in range(len(a)):
        if seen[start]:
            continue
        n, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = a[j]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def perm_from_one_line(images, degree: int) -> Perm:
    """Validate a 1-based one-line image array and convert to 0-based."""
    if len(images) != degree:
        raise InvalidPermutation(f"expected {degree} images, got {len(images)}")
    if sorted(images) != list(range(1, degree + 1)):
        raise InvalidPermutation(f"not a bijection on 1..{degree}: {images}")
    return tuple(i - 1 for i in images)


def perm_to_one_line(a: Perm) -> list[int]:
    return [x + 1 for x in a]


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    size: int
    element_order: int
    members: frozenset = field(repr=False)


class PermGroup:
    """A finite permutation group, fully enumerated, with conjugacy classes.

    Classes are sorted by (element order, class size, smallest one-line
    image among members) so that irrep and class indices in instance files
    are stable across runs.
    """

    def __init__(self, degree: int, generators: list[Perm]):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InvalidPermutation(f"bad generator {g}")
        self.elements = self._enumerate()
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.classes, self._class_of = self._conjugacy_classes()

    # -- construction ------------------------------------------------

    @classmethod
    def from_generators(cls, degree: int, generators_one_line) -> "PermGroup":
        gens = [perm_from_one_line(g, degree) for g in generators_one_line]
        return cls(degree, gens)

    def _enumerate(self) -> list[Perm]:
        ident = identity_perm(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > ORDER_CAP:
                            raise OrderCapExceeded(
                                f"group order exceeds cap {ORDER_CAP}")
            frontier = nxt
        return sorted(seen)

    def _conjugacy_classes(self):
        remaining = set(self.elements)
        classes = []
        class_of = {}
        while remaining:
            x = min(remaining)
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in self.generators:
                        z = conjugate(g, y)
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            remaining -= orbit
            classes.append(orbit)
        keyed = []
        for orbit in classes:
            rep = min(orbit)
            keyed.append(ConjugacyClass(
                representative=rep,
                size=len(orbit),
                element_order=perm_order(rep),
                members=frozenset(orbit),
            ))
        keyed.sort(key=lambda c: (c.element_order, c.size, c.representative))
        for i, c in enumerate(keyed):
            for y in c.members:
                class_of[y] = i
        return keyed, class_of

    # -- queries -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self._index

    def index(self, perm) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise ElementNotInGroup(f"{perm} not in group") from None

    def class_index(self, perm) -> int:
        try:
            return self._class_of[tuple(perm)]
        except KeyError:
            raise ElementNotInGroup(f"{perm} not in group") from None

    def exponent(self) -> int:
        e = 1
        for c in self.classes:
            e = math.lcm(e, c.element_order)
        return e

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree
                and all(x in other for x in self.elements))

    # -- derived groups -------------------------------------------------

    def subgroup(self, generators: list[Perm]) -> "PermGroup":
        for g in generators:
            if tuple(g) not in self._index:
                raise ElementNotInGroup(f"generator {g} not in group")
        return PermGroup(self.degree, [tuple(g) for g in generators])


class CyclicFactor:
    """The group (Z/pZ)^x realized on the points {1..p-1} by multiplication.

    ``generator`` must be a primitive root mod p; it also fixes the
    discrete-log normalization used by the Teichmueller character.
    """

    def __init__(self, modulus: int, generator: int):
        self.modulus = modulus
        self.generator = generator % modulus
        if math.gcd(self.generator, modulus) != 1:
            raise InvalidPermutation(f"{generator} not a unit mod {modulus}")
        # dlog table; also validates that the generator is primitive
        self.dlog = {}
        x = 1
        for k in range(modulus - 1):
            if x in self.dlog:
                raise InvalidPermutation(
                    f"{generator} is not a primitive root mod {modulus}")
            self.dlog[x] = k
            x = (x * self.generator) % modulus
        if len(self.dlog) != modulus - 1:
            raise InvalidPermutation(
                f"{generator} is not a primitive root mod {modulus}")

    @property
    def order(self) -> int:
        return self.modulus - 1

    def permutation(self) -> Perm:
        """Multiplication by the generator on residues 1..p-1 (0-based)."""
        p = self.modulus
        return tuple((self.generator * (i + 1)) % p - 1 for i in range(p - 1))


class ProductWithCyclic(PermGroup):
    """G x (Z/pZ)^x acting on the disjoint union of both point sets."""

    def __init__(self, left: PermGroup, cyclic: CyclicFactor):
        if left.order % cyclic.modulus == 0:
            raise POrderViolation(
                f"p={cyclic.modulus} divides |G|={left.order}")
        self.left = left
        self.cyclic = cyclic
        n, m = left.degree, cyclic.order
        gens = [g + tuple(range(n, n + m)) for g in left.generators]
        cyc = cyclic.permutation()
        gens.append(identity_perm(n) + tuple(x + n for x in cyc))
        super().__init__(n + m, gens)

    def project_left(self, perm: Perm) -> Perm:
        return tuple(perm[:self.left.degree])

    def cyclic_exponent(self, perm: Perm) -> int:
        """k such that the cyclic component equals generator^k."""
        n = self.left.degree
        image_of_1 = perm[n] - n + 1  # residue hit by residue 1
        return self.cyclic.dlog[image_of_1 % self.cyclic.modulus]


def direct_product_with_cyclic(G: PermGroup, C: CyclicFactor) -> ProductWithCyclic:
    return ProductWithCyclic(G, C)


def is_valid_conjugation(G: PermGroup, c: Perm) -> bool:
    """True iff c models a complex conjugation: a non-trivial involution."""
    c = tuple(c)
    if c not in G:
        raise ElementNotInGroup(f"{c} not in group")
    ident = identity_perm(G.degree)
    return c != ident and compose(c, c) == ident
