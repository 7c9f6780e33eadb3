"""Ground sets, bitmask subsets, exact values, measures and dense set functions.

A subset of a ground set is a plain ``int``: bit ``i`` set means element ``i``
(in declaration order) belongs to the subset.  Every numeric value is a
``fractions.Fraction``; the strict inequalities used by the lattice condition
checkers would be unsound under floating point, so floats are refused
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

MAX_GROUND_SIZE = 20

Rational = Fraction | int | str


class GroundSetMismatch(ValueError):
    """Raised when two objects that must share a ground set do not."""


def to_fraction(value: Rational) -> Fraction:
    """Coerce ints, strings and Fractions to Fraction; floats are refused."""
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}: the library is exact-only")
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class GroundSet:
    """Ordered collection of distinct element labels, at most 20 of them.

    Element ``i`` is ``names[i]`` and corresponds to bit ``i`` in subset
    masks.  The declaration order is the canonical element order.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) > MAX_GROUND_SIZE:
            raise ValueError(
                f"ground set has {len(self.names)} elements, limit is {MAX_GROUND_SIZE}"
            )
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not name:
                raise ValueError(f"bad element label {name!r}: labels are non-empty strings")
            if name in seen:
                raise ValueError(f"duplicate element label {name!r}")
            seen.add(name)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        """Mask of the whole ground set."""
        return (1 << len(self.names)) - 1

    def subsets(self) -> range:
        """All subset masks, 0 through full."""
        return range(1 << len(self.names))

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise ValueError(f"unknown element {label!r}") from None

    def singleton(self, label: str) -> int:
        return 1 << self.index(label)

    def subset(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels(self, mask: int) -> tuple[str, ...]:
        """Labels of a mask in declaration order."""
        self.check_mask(mask)
        return tuple(self.names[i] for i in bits(mask))

    def sorted_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(sorted(self.labels(mask)))

    def describe(self, mask: int) -> str:
        """Human-readable subset, e.g. ``{x,y}``; the empty set is ``{}``."""
        return "{" + ",".join(self.sorted_labels(mask)) + "}"

    def check_mask(self, mask: int) -> int:
        if not 0 <= mask <= self.full:
            raise ValueError(f"mask {mask} is outside the ground set (n={self.n})")
        return mask


class SetFunction:
    """Dense table of exact values, one per subset of a ground set."""

    __slots__ = ("ground", "values")

    def __init__(self, ground: GroundSet, values: Iterable[Rational]):
        table = tuple(to_fraction(v) for v in values)
        if len(table) != 1 << ground.n:
            raise ValueError(
                f"need {1 << ground.n} values for a ground set of {ground.n} elements, "
                f"got {len(table)}"
            )
        self.ground = ground
        self.values = table

    @classmethod
    def from_callable(cls, ground: GroundSet, fn: Callable[[int], Rational]) -> "SetFunction":
        return cls(ground, (fn(mask) for mask in ground.subsets()))

    def __call__(self, subset: int) -> Fraction:
        return self.values[self.ground.check_mask(subset)]

    def conditional(self, inner: int, given: int) -> Fraction:
        """Rank of ``inner`` on top of ``given``: f(inner | given) - f(given)."""
        self.ground.check_mask(inner)
        self.ground.check_mask(given)
        return self.values[inner | given] - self.values[given]

    def singletons(self) -> tuple[Fraction, ...]:
        return tuple(self.values[1 << i] for i in range(self.ground.n))

    def is_integer_valued(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.ground.names == other.ground.names and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.ground.names, self.values))

    def __repr__(self) -> str:
        return f"SetFunction(n={self.ground.n}, top={self.values[-1]})"


class Measure:
    """Additive set function given by per-element values, all non-negative."""

    __slots__ = ("ground", "singleton", "_table")

    def __init__(self, ground: GroundSet, singleton: Iterable[Rational]):
        values = tuple(to_fraction(v) for v in singleton)
        if len(values) != ground.n:
            raise ValueError(f"need {ground.n} singleton values, got {len(values)}")
        for i, v in enumerate(values):
            if v < 0:
                raise ValueError(f"negative measure {v} for element {ground.names[i]!r}")
        self.ground = ground
        self.singleton = values
        self._table: tuple[Fraction, ...] | None = None

    def table(self) -> tuple[Fraction, ...]:
        """Dense measure of every subset; computed once, then cached."""
        if self._table is None:
            acc = [Fraction(0)] * (1 << self.ground.n)
            for mask in range(1, 1 << self.ground.n):
                low = mask & -mask
                acc[mask] = acc[mask ^ low] + self.singleton[low.bit_length() - 1]
            self._table = tuple(acc)
        return self._table

    def __call__(self, subset: int) -> Fraction:
        return self.table()[self.ground.check_mask(subset)]

    def of_index(self, i: int) -> Fraction:
        return self.singleton[i]

    def is_integer_valued(self) -> bool:
        return all(v.denominator == 1 for v in self.singleton)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.ground.names == other.ground.names and self.singleton == other.singleton

    def __hash__(self) -> int:
        return hash((self.ground.names, self.singleton))

    def __repr__(self) -> str:
        return f"Measure({dict(zip(self.ground.names, self.singleton))!r})"


def induced_measure(f: SetFunction) -> Measure:
    """The measure whose per-element values are f's singleton ranks."""
    for i, v in enumerate(f.singletons()):
        if v < 0:
            raise ValueError(
                f"singleton rank of {f.ground.names[i]!r} is negative ({v}); "
                "no induced measure exists"
            )
    return Measure(f.ground, f.singletons())
