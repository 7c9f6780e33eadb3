"""Polymatroid axiom checking and the flat / cyclic-flat structure.

A polymatroid here is a set function that is non-negative, monotone and
submodular.  A matroid is an integer polymatroid whose singleton ranks are
all 0 or 1.  Cyclic flats are the flats in which every element is either a
loop or has conditional rank strictly below its singleton rank; for a
polymatroid they always form a lattice under inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import RankedLattice, validate_lattice
from .model import Measure, SetFunction, bits, induced_measure


class NotAFlat(ValueError):
    """Raised when an operation that needs a flat is handed something else."""


@dataclass(frozen=True)
class AxiomWitness:
    """A concrete violation of one polymatroid axiom.

    ``axiom`` is one of ``nonnegative``, ``monotone``, ``submodular``.
    For ``nonnegative`` the cited data is one subset; for ``monotone`` a
    nested pair; for ``submodular`` a base subset plus the two exchanged
    element indices.
    """

    axiom: str
    subsets: tuple[int, ...]
    elements: tuple[int, ...] = ()

    def describe(self, ground) -> str:
        sets = ", ".join(ground.describe(m) for m in self.subsets)
        if self.elements:
            names = ", ".join(ground.names[i] for i in self.elements)
            return f"{self.axiom} fails at {sets} with elements {names}"
        return f"{self.axiom} fails at {sets}"


@dataclass(frozen=True)
class PolymatroidReport:
    nonnegative: bool
    monotone: bool
    submodular: bool
    integer_valued: bool
    is_matroid: bool
    witness: AxiomWitness | None

    @property
    def is_polymatroid(self) -> bool:
        return self.nonnegative and self.monotone and self.submodular


def _nonnegative_witness(f: SetFunction) -> AxiomWitness | None:
    for mask in f.ground.subsets():
        if f.values[mask] < 0:
            return AxiomWitness("nonnegative", (mask,))
    return None


def _monotone_witness(f: SetFunction) -> AxiomWitness | None:
    # Single-element steps suffice: any violating pair A < B yields a
    # violating step somewhere along a chain between them.
    for mask in f.ground.subsets():
        for i in range(f.ground.n):
            bit = 1 << i
            if mask & bit:
                continue
            if f.values[mask] > f.values[mask | bit]:
                return AxiomWitness("monotone", (mask, mask | bit))
    return None


def _submodular_witness(f: SetFunction) -> AxiomWitness | None:
    # Local exchange form: f(A+i) + f(A+j) >= f(A+i+j) + f(A) for i, j not
    # in A.  Equivalent to submodularity on arbitrary pairs.
    n = f.ground.n
    for mask in f.ground.subsets():
        free = [i for i in range(n) if not mask >> i & 1]
        for a in range(len(free)):
            i = free[a]
            for j in free[a + 1:]:
                left = f.values[mask | 1 << i] + f.values[mask | 1 << j]
                right = f.values[mask | 1 << i | 1 << j] + f.values[mask]
                if left < right:
                    return AxiomWitness("submodular", (mask,), (i, j))
    return None


def check_polymatroid(f: SetFunction) -> PolymatroidReport:
    """Check the three axioms plus integrality and matroid-hood.

    The witness, when present, is the first violation found scanning
    non-negativity, then monotonicity, then submodularity, each in subset
    order.
    """
    w_nonneg = _nonnegative_witness(f)
    w_mono = _monotone_witness(f)
    w_sub = _submodular_witness(f)
    integer = f.is_integer_valued()
    is_poly = w_nonneg is None and w_mono is None and w_sub is None
    is_matroid = (
        is_poly and integer and all(v in (0, 1) for v in f.singletons())
    )
    return PolymatroidReport(
        nonnegative=w_nonneg is None,
        monotone=w_mono is None,
        submodular=w_sub is None,
        integer_valued=integer,
        is_matroid=is_matroid,
        witness=w_nonneg or w_mono or w_sub,
    )


def submodular_pairwise_witness(f: SetFunction) -> tuple[int, int] | None:
    """First pair (A, B) with f(A) + f(B) < f(A|B) + f(A&B), if any.

    Quadratic in the table size; kept as the reference form that the local
    exchange scan must agree with.
    """
    for a in f.ground.subsets():
        for b in f.ground.subsets():
            if f.values[a] + f.values[b] < f.values[a | b] + f.values[a & b]:
                return (a, b)
    return None


def loops(f: SetFunction) -> int:
    """Mask of elements with singleton rank zero."""
    out = 0
    for i in range(f.ground.n):
        if f.values[1 << i] == 0:
            out |= 1 << i
    return out


def coloops(f: SetFunction) -> int:
    """Mask of elements whose removal from the full set costs their full rank."""
    full = f.ground.full
    out = 0
    for i in range(f.ground.n):
        bit = 1 << i
        if f.values[full] - f.values[full ^ bit] == f.values[bit]:
            out |= bit
    return out


def closure(f: SetFunction, subset: int) -> int:
    """Smallest superset of ``subset`` that absorbs no further element.

    Repeatedly adds every element whose conditional rank over the current
    set is zero, until nothing changes.
    """
    f.ground.check_mask(subset)
    current = subset
    changed = True
    while changed:
        changed = False
        for i in range(f.ground.n):
            bit = 1 << i
            if current & bit:
                continue
            if f.values[current | bit] == f.values[current]:
                current |= bit
                changed = True
    return current


def is_flat(f: SetFunction, subset: int) -> bool:
    """True when every element outside strictly raises the rank."""
    f.ground.check_mask(subset)
    for i in range(f.ground.n):
        bit = 1 << i
        if subset & bit:
            continue
        if f.values[subset | bit] == f.values[subset]:
            return False
    return True


def flats(f: SetFunction) -> list[int]:
    """All flats, ordered by (cardinality, bit pattern)."""
    out = [m for m in f.ground.subsets() if is_flat(f, m)]
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def is_cyclic_flat(f: SetFunction, subset: int) -> bool:
    """A flat is cyclic when each member is a loop or sits strictly below
    its singleton rank given the rest."""
    if not is_flat(f, subset):
        return False
    for i in bits(subset):
        bit = 1 << i
        single = f.values[bit]
        if single == 0:
            continue
        if f.values[subset] - f.values[subset ^ bit] >= single:
            return False
    return True


def max_cyclic_flat(f: SetFunction, flat: int) -> int:
    """Largest cyclic flat inside ``flat``.

    Repeatedly drops the lowest-index non-loop whose conditional rank over
    the rest equals its singleton rank.  The result does not depend on the
    removal order; lowest-index is just the deterministic choice.
    """
    if not is_flat(f, flat):
        raise NotAFlat(f"{f.ground.describe(flat)} is not a flat")
    current = flat
    while True:
        for i in bits(current):
            bit = 1 << i
            single = f.values[bit]
            if single > 0 and f.values[current] - f.values[current ^ bit] == single:
                current ^= bit
                break
        else:
            return current


def cyclic_flats(f: SetFunction) -> tuple[RankedLattice, Measure]:
    """The ranked lattice of cyclic flats together with the induced measure.

    Assumes ``f`` passes the polymatroid check; for such input the family is
    always a lattice, so a validation failure here signals a bug rather than
    bad data.
    """
    family = [(m, f.values[m]) for m in f.ground.subsets() if is_cyclic_flat(f, m)]
    lattice = validate_lattice(f.ground, family)
    return lattice, induced_measure(f)


def reconstruction_failure(f: SetFunction) -> int | None:
    """First subset where min over cyclic flats C of f(C) + mu(A - C)
    disagrees with f(A); None when the identity holds everywhere."""
    family = [m for m in f.ground.subsets() if is_cyclic_flat(f, m)]
    mu_table = induced_measure(f).table()
    for a in f.ground.subsets():
        best = min(f.values[c] + mu_table[a & ~c] for c in family)
        if best != f.values[a]:
            return a
    return None


def reconstruct_check(f: SetFunction) -> bool:
    """True when the cyclic flats plus singleton ranks rebuild f exactly."""
    return reconstruction_failure(f) is None
