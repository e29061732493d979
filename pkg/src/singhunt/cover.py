"""Abelian-cover building data on an intersection lattice.

Finite abelian groups are products of cyclic groups with elements stored as
exponent tuples; characters take values in Q/Z.  A cover of a surface is
described numerically by one branch divisor class per (cyclic subgroup,
generator character) slot plus line-bundle classes L_chi, tied together by
the reduced-building-data congruences and the epsilon carry terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import (
    InconsistentData,
    NegativeH0,
    NonIntegral,
    NotAGenerator,
)
from .lattice import DivisorClass, GramLattice, SurfaceInvariants


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        if any(m < 2 for m in self.orders):
            raise ValueError("cyclic orders must be >= 2")

    @property
    def size(self) -> int:
        n = 1
        for m in self.orders:
            n *= m
        return n

    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for m in self.orders:
            out = [g + (c,) for g in out for c in range(m)]
        return out

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def element_order(self, g: Sequence[int]) -> int:
        return lcm(*(m // gcd(c, m) for c, m in zip(g, self.orders))) if any(g) else 1

    def generated_by(self, g: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        out = [self.identity()]
        cur = tuple(g)
        while cur != self.identity():
            out.append(cur)
            cur = self.add(cur, g)
        return tuple(sorted(out))


@dataclass(frozen=True)
class Character:
    group: AbelianGroup
    exps: tuple[int, ...]

    def value(self, g: Sequence[int]) -> Fraction:
        """chi(g) in Q/Z, represented in [0, 1)."""
        acc = Fraction(0)
        for c, x, m in zip(self.exps, g, self.group.orders):
            acc += Fraction(c * x, m)
        return acc % 1

    def order(self) -> int:
        return lcm(
            *(m // gcd(c, m) for c, m in zip(self.exps, self.group.orders))
        ) if any(self.exps) else 1

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, self.group.add(self.exps, other.exps))

    def __pow__(self, e: int) -> "Character":
        exps = tuple((c * e) % m for c, m in zip(self.exps, self.group.orders))
        return Character(self.group, exps)


def character_group(G: AbelianGroup) -> list[Character]:
    return [Character(G, exps) for exps in G.elements()]


def generate_subgroup(chars: Iterable[Character]) -> set[tuple[int, ...]]:
    chars = list(chars)
    if not chars:
        return set()
    G = chars[0].group
    out = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        new = []
        for g in frontier:
            for c in chars:
                h = G.add(g, c.exps)
                if h not in out:
                    out.add(h)
                    new.append(h)
        frontier = new
    return out


@dataclass(frozen=True)
class CyclicSubgroup:
    group: AbelianGroup
    generator: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.members)


def cyclic_subgroups(G: AbelianGroup) -> list[CyclicSubgroup]:
    """All cyclic subgroups of order >= 2, with deterministic generators.

    The generator is the lexicographically least element of maximal order in
    the subgroup; the list is sorted by (order, generator).
    """
    seen: dict[tuple, tuple] = {}
    for g in G.elements():
        if g == G.identity():
            continue
        members = G.generated_by(g)
        order = len(members)
        best = min(
            (h for h in members if G.element_order(h) == order),
        )
        seen[members] = best
    subs = [
        CyclicSubgroup(G, gen, members) for members, gen in seen.items()
    ]
    subs.sort(key=lambda H: (H.order, H.generator))
    return subs


def char_generator_exponents(H: CyclicSubgroup) -> list[int]:
    """The j with gcd(j, |H|) = 1: psi_j sends the generator to j/|H|."""
    return [j for j in range(1, H.order) if gcd(j, H.order) == 1]


def exponent_from_restriction(chi: Character, H: CyclicSubgroup, j: int) -> int:
    """The unique r in [0, |H|) with chi restricted to H equal to psi_j^r."""
    m = H.order
    if gcd(j, m) != 1:
        raise NotAGenerator(f"psi_{j} does not generate the characters of H")
    val = chi.value(H.generator)
    num = val * m
    if num.denominator != 1:
        raise NonIntegral("character value does not restrict to the subgroup")
    return int(num) * pow(j, -1, m) % m


def reduced_coeff(chi: Character, H: CyclicSubgroup, j: int) -> int:
    """order(chi) * r / |H|, the slot coefficient in the reduced data."""
    r = exponent_from_restriction(chi, H, j)
    num = chi.order() * r
    if num % H.order != 0:
        raise NonIntegral(
            f"{chi.order()} * {r} is not divisible by |H| = {H.order}"
        )
    return num // H.order


def epsilon(chi1: Character, chi2: Character, H: CyclicSubgroup, j: int) -> int:
    """The 0/1 carry in L_chi1 + L_chi2 = L_chi1chi2 + sum eps * D."""
    r1 = exponent_from_restriction(chi1, H, j)
    r2 = exponent_from_restriction(chi2, H, j)
    return 1 if r1 + r2 >= H.order else 0


# ---------------------------------------------------------------------------
# branch data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchSlot:
    subgroup: CyclicSubgroup
    psi: int  # generator exponent j of the slot character
    divisor: DivisorClass | None  # None means the zero divisor


@dataclass
class BranchAssignment:
    slots: list[BranchSlot]

    @classmethod
    def assign(
        cls, G: AbelianGroup, divisors: Sequence[DivisorClass | None]
    ) -> "BranchAssignment":
        """Attach divisors to the canonical slot list of G.

        Slots are ordered by (subgroup order, subgroup generator) and, within
        a subgroup, by the generator exponent j of psi_j; the divisor list
        must match that order."""
        slots = []
        for H in cyclic_subgroups(G):
            for j in char_generator_exponents(H):
                slots.append((H, j))
        if len(divisors) != len(slots):
            raise ValueError(
                f"{len(slots)} slots need {len(slots)} divisors, got {len(divisors)}"
            )
        return cls([BranchSlot(H, j, D) for (H, j), D in zip(slots, divisors)])

    def grouped(self) -> list[list[BranchSlot]]:
        """Slots grouped per subgroup, in canonical order."""
        groups: list[list[BranchSlot]] = []
        last = None
        for slot in self.slots:
            if last is None or slot.subgroup != last:
                groups.append([])
                last = slot.subgroup
            groups[-1].append(slot)
        return groups


def coefficient_table(chi: Character, branch: BranchAssignment) -> list[list[int]]:
    """Reduced coefficients of chi over the slots, grouped per subgroup."""
    return [
        [reduced_coeff(chi, slot.subgroup, slot.psi) for slot in group]
        for group in branch.grouped()
    ]


def reduced_building_data(
    chi: Character,
    branch: BranchAssignment,
    L_chi: DivisorClass,
    lattice: GramLattice,
) -> DivisorClass:
    """The relation vector order(chi)*L_chi - sum coeff * D_{H,psi}.

    The cover data is numerically consistent when this vector lies in the
    lattice radical."""
    acc = L_chi.scale(chi.order())
    for slot in branch.slots:
        if slot.divisor is None:
            continue
        coeff = reduced_coeff(chi, slot.subgroup, slot.psi)
        if coeff:
            acc = acc - slot.divisor.scale(coeff)
    return acc


@dataclass
class CoverData:
    group: AbelianGroup
    branch: BranchAssignment
    lattice: GramLattice
    L: dict[tuple[int, ...], DivisorClass]  # keyed by character exponents

    def verify_reduced_data(self) -> list[tuple[tuple[int, ...], bool]]:
        out = []
        for chi in character_group(self.group):
            if chi.is_trivial():
                continue
            rel = reduced_building_data(
                chi, self.branch, self.L[chi.exps], self.lattice
            )
            out.append((chi.exps, self.lattice.in_radical(rel)))
        return out


def derive_all_L(
    lattice: GramLattice,
    branch: BranchAssignment,
    generators: Mapping[Character, DivisorClass],
) -> dict[tuple[int, ...], DivisorClass]:
    """Propagate L_chi to the whole character group from generator values.

    Uses L_(chi chi') = L_chi + L_chi' - sum eps * D along a deterministic
    order; afterwards every alternative factorization is checked to agree
    modulo the lattice radical (numerical equivalence)."""
    gens = list(generators.items())
    if not gens:
        raise InconsistentData("no generator characters given")
    G = gens[0][0].group
    if len(generate_subgroup([chi for chi, _ in gens])) != G.size:
        raise InconsistentData("the given characters do not generate the dual group")
    zero = DivisorClass(tuple(Fraction(0) for _ in range(lattice.size)))
    known: dict[tuple[int, ...], DivisorClass] = {G.identity(): zero}
    for chi, L in gens:
        known[chi.exps] = L
    # extend along generator products so the stored representatives stay in
    # reduced form; alternative factorizations are reconciled below
    changed = True
    while changed:
        changed = False
        for e1 in sorted(known):
            chi1 = Character(G, e1)
            for chi2, _ in gens:
                prod = chi1 * chi2
                if prod.exps in known:
                    continue
                known[prod.exps] = _product_class(chi1, chi2, known, branch)
                changed = True
    if len(known) != G.size:
        raise InconsistentData("character group not exhausted (unreachable)")
    # path independence: every factorization agrees up to numerical equivalence
    for e1 in sorted(known):
        for e2 in sorted(known):
            chi1, chi2 = Character(G, e1), Character(G, e2)
            candidate = _product_class(chi1, chi2, known, branch)
            target = known[(chi1 * chi2).exps]
            if not lattice.equivalent(candidate, target):
                raise InconsistentData(
                    f"factorization {e1} * {e2} disagrees with the stored class"
                )
    return known


def _product_class(
    chi1: Character,
    chi2: Character,
    known: Mapping[tuple[int, ...], DivisorClass],
    branch: BranchAssignment,
) -> DivisorClass:
    acc = known[chi1.exps] + known[chi2.exps]
    for slot in branch.slots:
        if slot.divisor is None:
            continue
        if epsilon(chi1, chi2, slot.subgroup, slot.psi):
            acc = acc - slot.divisor
    return acc


# ---------------------------------------------------------------------------
# numerical invariants of the cover
# ---------------------------------------------------------------------------

def chi_cover(
    invX: SurfaceInvariants, data: CoverData, k_name: str = "K"
) -> Fraction:
    """|G| * chi(X) + sum over nontrivial chi of (1/2) L (K + L)."""
    K = data.lattice.basis_class(k_name)
    acc = Fraction(data.group.size * invX.chi)
    for chi in character_group(data.group):
        if chi.is_trivial():
            continue
        L = data.L[chi.exps]
        acc += Fraction(1, 2) * data.lattice.pairing(L, K + L)
    if acc.denominator != 1:
        raise NonIntegral(f"holomorphic Euler characteristic {acc} is not integral")
    return acc


def pg_cover(pgX: int, h0_list: Sequence[int]) -> int:
    """p_g of the cover: p_g(X) plus the supplied h^0(K+L_chi) values."""
    if any(h < 0 for h in h0_list):
        raise NegativeH0(f"negative h^0 in {list(h0_list)}")
    return pgX + sum(h0_list)


def cover_canonical_square(order_g: int, k2_base: int) -> int:
    """K^2 of a cover whose canonical class is the pullback of the base's."""
    return order_g * k2_base
