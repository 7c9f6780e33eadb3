"""Ranked lattices of subsets: validation, meet/join, and condition checks.

A ranked lattice is a family of subsets of one ground set that is a lattice
under inclusion (every pair has a greatest lower bound and a least upper
bound inside the family), with an exact rank attached to each member.  Meet
and join are lattice operations of the family; the meet can be strictly
smaller than the set intersection.

``check_conditions`` evaluates, against a measure on the same ground set:

* C1   the bottom element has rank zero
* C2   0 <= rank(Z2) - rank(Z1) <= mu(Z2 - Z1) for nested members
* C*   both bounds of C2, strictly, for strictly nested members
* C3   rank(Z1) + rank(Z2) >= rank(join) + rank(meet) + mu((Z1 & Z2) - meet)
* C4   mu(a) <= rank(Z) whenever a lies in member Z
* C5a  rank(Z) > 0 for every member other than the bottom
* C5b  mu(a) > 0 for every ground element outside the bottom
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .model import GroundSet, GroundSetMismatch, Measure, Rational, bits, to_fraction


class LatticeError(ValueError):
    """Base for family-validation failures."""


class DuplicateElement(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, ground: GroundSet, first: int, second: int, reason: str):
        self.first = first
        self.second = second
        self.reason = reason
        super().__init__(
            f"{reason} for {ground.describe(first)} and {ground.describe(second)}"
        )


class ElementNotInLattice(LatticeError):
    pass


class RankedLattice:
    """A validated family of ranked subsets; build one via ``validate_lattice``.

    Members are stored sorted by (cardinality, bit pattern), so the bottom is
    ``members[0]`` and the top is ``members[-1]``.  Instances are immutable.
    """

    __slots__ = ("ground", "members", "ranks", "_meet", "_join", "_index")

    def __init__(self, ground, members, ranks, meet_table, join_table, index):
        self.ground = ground
        self.members = members
        self.ranks = ranks
        self._meet = meet_table
        self._join = join_table
        self._index = index

    @property
    def bottom(self) -> int:
        return self.members[0]

    @property
    def top(self) -> int:
        return self.members[-1]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return zip(self.members, self.ranks)

    def as_pairs(self) -> frozenset[tuple[int, Fraction]]:
        return frozenset(self.items())

    def _require(self, mask: int) -> int:
        idx = self._index.get(mask)
        if idx is None:
            raise ElementNotInLattice(
                f"{self.ground.describe(mask)} is not in the lattice"
            )
        return idx

    def rank_of(self, mask: int) -> Fraction:
        return self.ranks[self._require(mask)]

    def meet(self, first: int, second: int) -> int:
        return self.members[self._meet[self._require(first)][self._require(second)]]

    def join(self, first: int, second: int) -> int:
        return self.members[self._join[self._require(first)][self._require(second)]]

    def _replace_ranks(self, ranks: tuple[Fraction, ...]) -> "RankedLattice":
        # Same family and tables, new ranks.  Skips validate_lattice on
        # purpose: rank sign is not re-checked here, which lets the pointed
        # normalization stay total even when the bottom is not minimal-ranked.
        return RankedLattice(
            self.ground, self.members, ranks, self._meet, self._join, self._index
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankedLattice):
            return NotImplemented
        return (
            self.ground.names == other.ground.names
            and self.members == other.members
            and self.ranks == other.ranks
        )

    def __hash__(self) -> int:
        return hash((self.ground.names, self.members, self.ranks))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{self.ground.describe(m)}:{r}" for m, r in self.items()
        )
        return f"RankedLattice({body})"


def validate_lattice(
    ground: GroundSet, elements: Iterable[tuple[int, Rational]]
) -> RankedLattice:
    """Check a ranked family and construct its meet/join tables.

    Raises DuplicateElement for repeated subsets and NotALattice (with the
    offending pair and reason) when some pair lacks a unique greatest lower
    bound or least upper bound inside the family.  Ranks must be >= 0.
    """
    raw: dict[int, Fraction] = {}
    for mask, rank in elements:
        ground.check_mask(mask)
        if mask in raw:
            raise DuplicateElement(f"duplicate member {ground.describe(mask)}")
        value = to_fraction(rank)
        if value < 0:
            raise LatticeError(
                f"negative rank {value} for member {ground.describe(mask)}"
            )
        raw[mask] = value
    if not raw:
        raise LatticeError("empty family: a lattice needs at least one member")

    ordered = sorted(raw, key=lambda m: (m.bit_count(), m))
    members = tuple(ordered)
    ranks = tuple(raw[m] for m in members)
    index = {m: i for i, m in enumerate(members)}
    k = len(members)

    meet_table = [[0] * k for _ in range(k)]
    join_table = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            both = members[i] & members[j]
            lower = [m for m in members if m & ~both == 0]
            union_of_lower = 0
            for m in lower:
                union_of_lower |= m
            glb = index.get(union_of_lower)
            if not lower or glb is None:
                raise NotALattice(ground, members[i], members[j], "no unique lower bound")
            meet_table[i][j] = meet_table[j][i] = glb

            either = members[i] | members[j]
            upper = [m for m in members if either & ~m == 0]
            if not upper:
                raise NotALattice(ground, members[i], members[j], "no unique upper bound")
            common = ground.full
            for m in upper:
                common &= m
            lub = index.get(common)
            if lub is None:
                raise NotALattice(ground, members[i], members[j], "no unique upper bound")
            join_table[i][j] = join_table[j][i] = lub

    return RankedLattice(
        ground,
        members,
        ranks,
        tuple(tuple(row) for row in meet_table),
        tuple(tuple(row) for row in join_table),
        index,
    )


def normalize_pointed(lattice: RankedLattice) -> RankedLattice:
    """Shift every rank down by the bottom rank, making the bottom zero.

    The nested-difference and pair conditions (C2, C*, C3) are invariant
    under this shift.  If some member ranked below the bottom, the result
    carries a negative rank, which C2 then flags.
    """
    base = lattice.ranks[0]
    if base == 0:
        return lattice
    return lattice._replace_ranks(tuple(r - base for r in lattice.ranks))


@dataclass(frozen=True)
class Witness:
    """One failed inequality: ``lhs relation rhs`` is what was required.

    ``subsets`` holds the cited member masks, ``element`` the ground element
    index for the per-element conditions.
    """

    condition: str
    subsets: tuple[int, ...]
    lhs: Fraction
    relation: str
    rhs: Fraction
    element: int | None = None

    def describe(self, ground: GroundSet) -> str:
        where = ", ".join(ground.describe(m) for m in self.subsets)
        if self.element is not None:
            named = f"element {ground.names[self.element]}"
            where = f"{where}, {named}" if where else named
        return f"at {where}: needs {self.lhs} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class ConditionReport:
    c1: Verdict
    c2: Verdict
    cstar: Verdict
    c3: Verdict
    c4: Verdict
    c5a: Verdict
    c5b: Verdict

    def named(self) -> tuple[tuple[str, Verdict], ...]:
        return (
            ("C1", self.c1),
            ("C2", self.c2),
            ("C*", self.cstar),
            ("C3", self.c3),
            ("C4", self.c4),
            ("C5a", self.c5a),
            ("C5b", self.c5b),
        )

    def theorem_conditions_pass(self) -> bool:
        """The characterizing set: C1, C*, C3, C4 and both halves of C5."""
        return bool(
            self.c1 and self.cstar and self.c3 and self.c4 and self.c5a and self.c5b
        )

    def all_pass(self) -> bool:
        return all(v.passed for _, v in self.named())

    def lines(self, ground: GroundSet) -> list[str]:
        out = []
        for name, verdict in self.named():
            if verdict.passed:
                out.append(f"{name:<4} pass")
            else:
                out.append(f"{name:<4} FAIL {verdict.witness.describe(ground)}")
        return out


def _check_c1(lattice: RankedLattice) -> Verdict:
    rank0 = lattice.ranks[0]
    if rank0 == 0:
        return Verdict(True)
    return Verdict(
        False,
        Witness("C1", (lattice.bottom,), rank0, "==", Fraction(0)),
    )


def _nested_pairs(lattice: RankedLattice) -> Iterator[tuple[int, int]]:
    k = len(lattice.members)
    for i in range(k):
        for j in range(k):
            if i != j and lattice.members[i] & ~lattice.members[j] == 0:
                yield i, j


def _check_c2(lattice: RankedLattice, mu_table) -> Verdict:
    for i, j in _nested_pairs(lattice):
        z1, z2 = lattice.members[i], lattice.members[j]
        diff = lattice.ranks[j] - lattice.ranks[i]
        if diff < 0:
            return Verdict(False, Witness("C2", (z1, z2), diff, ">=", Fraction(0)))
        gap = mu_table[z2 & ~z1]
        if diff > gap:
            return Verdict(False, Witness("C2", (z1, z2), diff, "<=", gap))
    return Verdict(True)


def _check_cstar(lattice: RankedLattice, mu_table) -> Verdict:
    for i, j in _nested_pairs(lattice):
        z1, z2 = lattice.members[i], lattice.members[j]
        if z1 == z2:
            continue
        diff = lattice.ranks[j] - lattice.ranks[i]
        if diff <= 0:
            return Verdict(False, Witness("C*", (z1, z2), diff, ">", Fraction(0)))
        gap = mu_table[z2 & ~z1]
        if diff >= gap:
            return Verdict(False, Witness("C*", (z1, z2), diff, "<", gap))
    return Verdict(True)


def _check_c3(lattice: RankedLattice, mu_table) -> Verdict:
    # Scanned over every pair, comparable ones included; those hold
    # identically, so a violation citing a nested pair would mean a bug in
    # the tables rather than in the input.
    k = len(lattice.members)
    for i in range(k):
        for j in range(i + 1, k):
            z1, z2 = lattice.members[i], lattice.members[j]
            meet_m = lattice.members[lattice._meet[i][j]]
            join_m = lattice.members[lattice._join[i][j]]
            left = lattice.ranks[i] + lattice.ranks[j]
            right = (
                lattice.rank_of(join_m)
                + lattice.rank_of(meet_m)
                + mu_table[(z1 & z2) & ~meet_m]
            )
            if left < right:
                return Verdict(False, Witness("C3", (z1, z2), left, ">=", right))
    return Verdict(True)


def _check_c4(lattice: RankedLattice, mu: Measure) -> Verdict:
    for i, member in enumerate(lattice.members):
        for a in bits(member):
            if mu.singleton[a] > lattice.ranks[i]:
                return Verdict(
                    False,
                    Witness(
                        "C4", (member,), mu.singleton[a], "<=", lattice.ranks[i],
                        element=a,
                    ),
                )
    return Verdict(True)


def _check_c5a(lattice: RankedLattice) -> Verdict:
    for i in range(1, len(lattice.members)):
        if lattice.ranks[i] <= 0:
            return Verdict(
                False,
                Witness("C5a", (lattice.members[i],), lattice.ranks[i], ">", Fraction(0)),
            )
    return Verdict(True)


def _check_c5b(lattice: RankedLattice, mu: Measure) -> Verdict:
    bottom = lattice.bottom
    for a in range(lattice.ground.n):
        if bottom >> a & 1:
            continue
        if mu.singleton[a] <= 0:
            return Verdict(
                False,
                Witness("C5b", (), mu.singleton[a], ">", Fraction(0), element=a),
            )
    return Verdict(True)


def check_conditions(lattice: RankedLattice, mu: Measure) -> ConditionReport:
    """Evaluate all seven conditions; each failure carries the first witness
    in scan order (members ordered by cardinality then bit pattern)."""
    if mu.ground.names != lattice.ground.names:
        raise GroundSetMismatch("measure and lattice use different ground sets")
    mu_table = mu.table()
    return ConditionReport(
        c1=_check_c1(lattice),
        c2=_check_c2(lattice, mu_table),
        cstar=_check_cstar(lattice, mu_table),
        c3=_check_c3(lattice, mu_table),
        c4=_check_c4(lattice, mu),
        c5a=_check_c5a(lattice),
        c5b=_check_c5b(lattice, mu),
    )
