"""Generators for small polymatroids plus two structural constructions.

The generators (uniform, graphic, seeded random) exist to feed the test
corpus and the CLI.  The two constructions are the interesting part:

* ``helgason_expand`` blows each element of an integer polymatroid up into a
  block of unit-rank copies and convolves the block lattice with the 0/1
  measure, producing a matroid whose rank on block unions reproduces the
  original function.

* ``infiltrate`` replaces a distinguished element of one polymatroid by a
  whole second polymatroid of equal total rank, by taking the pointwise
  minimum of the two ways a subset can pay for its part of the guest.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from fractions import Fraction

from .convolution import convolve, convolve_lattices
from .lattice import RankedLattice, validate_lattice
from .model import (
    MAX_GROUND_SIZE,
    GroundSet,
    Measure,
    SetFunction,
    bits,
    submasks,
)
from .polymatroid import check_polymatroid


class BadParameters(ValueError):
    pass


class NotInteger(ValueError):
    """The block expansion needs an integer-valued polymatroid."""


class RankMismatch(ValueError):
    """Host rank of the pivot and guest total rank differ."""


class GroundOverlap(ValueError):
    """Host and guest ground sets share labels."""


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:n])


def _resolve_labels(n: int, labels) -> GroundSet:
    if labels is None:
        return GroundSet(default_labels(n))
    ground = GroundSet(tuple(labels))
    if ground.n != n:
        raise BadParameters(f"need {n} labels, got {ground.n}")
    return ground


def uniform_matroid(k: int, n: int, labels=None) -> SetFunction:
    """Rank min(|A|, k) on an n-element ground set."""
    if not (isinstance(k, int) and isinstance(n, int) and 0 <= k <= n <= MAX_GROUND_SIZE):
        raise BadParameters(f"uniform matroid needs 0 <= k <= n <= {MAX_GROUND_SIZE}")
    ground = _resolve_labels(n, labels)
    return SetFunction.from_callable(ground, lambda a: min(a.bit_count(), k))


def graphic_matroid(vertices: int, edges, labels=None) -> SetFunction:
    """Rank of an edge subset: vertices minus components of its subgraph.

    ``edges`` is a sequence of (u, v) vertex pairs; self-loops are allowed
    and come out as loops of the matroid.
    """
    edge_list = [tuple(e) for e in edges]
    if vertices < 0:
        raise BadParameters("vertex count must be >= 0")
    if len(edge_list) > MAX_GROUND_SIZE:
        raise BadParameters(f"at most {MAX_GROUND_SIZE} edges")
    for e in edge_list:
        if len(e) != 2 or not all(isinstance(v, int) and 0 <= v < vertices for v in e):
            raise BadParameters(f"bad edge {e!r}")
    if labels is None:
        labels = tuple(f"e{i + 1}" for i in range(len(edge_list)))
    ground = _resolve_labels(len(edge_list), labels)

    def rank(a: int) -> int:
        parent = list(range(vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = vertices
        for i in bits(a):
            u, v = find(edge_list[i][0]), find(edge_list[i][1])
            if u != v:
                parent[u] = v
                components -= 1
        return vertices - components

    return SetFunction.from_callable(ground, rank)


def random_polymatroid(
    seed: int,
    n: int,
    *,
    mode: str = "sum",
    terms: int = 4,
    max_rank: int = 4,
    integer: bool = False,
    labels=None,
) -> SetFunction:
    """Seed-deterministic random polymatroid on n elements.

    ``sum`` mode adds weighted uniform ranks over random supports, which is
    a polymatroid by construction.  ``table`` mode (n <= 4) draws random
    monotone integer tables capped at 4 and keeps the first submodular one.
    """
    if not 0 <= n <= 10:
        raise BadParameters("random polymatroids are limited to n <= 10")
    if mode not in ("sum", "table"):
        raise BadParameters(f"unknown mode {mode!r}")
    if mode == "table" and n > 4:
        raise BadParameters("table mode is limited to n <= 4")
    ground = _resolve_labels(n, labels)
    if n == 0:
        return SetFunction(ground, [0])
    rng = random.Random(1_000_003 * seed + 9_176 * n + (1 if mode == "table" else 0))

    if mode == "sum":
        summands = []
        for _ in range(rng.randint(2, max(2, terms))):
            support = rng.randrange(1, 1 << n)
            cap = rng.randint(1, min(support.bit_count(), max_rank))
            if integer:
                weight = Fraction(rng.randint(1, 2))
            else:
                weight = Fraction(rng.randint(1, 4), rng.choice((1, 2, 3)))
            summands.append((support, cap, weight))

        def value(a: int) -> Fraction:
            return sum(
                (w * min((a & s).bit_count(), c) for s, c, w in summands),
                Fraction(0),
            )

        return SetFunction.from_callable(ground, value)

    size = 1 << n
    for _ in range(20_000):
        values = [0] * size
        for mask in range(1, size):
            floor = max(values[mask ^ (1 << i)] for i in bits(mask))
            values[mask] = min(floor + rng.choice((0, 0, 0, 1, 1, 2)), 4)
        candidate = SetFunction(ground, values)
        if check_polymatroid(candidate).is_polymatroid:
            return candidate
    raise RuntimeError("rejection sampling failed to find a table")


@dataclass(frozen=True)
class ExpansionMap:
    """Bookkeeping for the block expansion.

    ``blocks[i]`` is the mask (in the expanded ground set) of the copies of
    original element i; the first copy ``name#1`` stands for the original
    element itself.  Blocks are disjoint and cover the expanded ground set.
    """

    original: GroundSet
    expanded: GroundSet
    blocks: tuple[int, ...]

    def block_union(self, original_mask: int) -> int:
        self.original.check_mask(original_mask)
        out = 0
        for i in bits(original_mask):
            out |= self.blocks[i]
        return out


def helgason_lattice(f: SetFunction) -> tuple[RankedLattice, Measure, ExpansionMap]:
    """Block lattice and 0/1 measure for the expansion of ``f``.

    Members are exactly the unions of whole blocks, ranked by f of the
    underlying original subset; the measure gives each copy min(1, f(i)).
    """
    report = check_polymatroid(f)
    if not report.is_polymatroid:
        raise ValueError("block expansion needs a polymatroid")
    if not report.integer_valued:
        raise NotInteger("block expansion needs an integer-valued polymatroid")

    names = []
    blocks = []
    position = 0
    for i, name in enumerate(f.ground.names):
        width = max(1, int(f.values[1 << i]))
        block = 0
        for copy in range(1, width + 1):
            names.append(f"{name}#{copy}")
            block |= 1 << position
            position += 1
        blocks.append(block)
    if len(set(names)) != len(names):
        raise ValueError("expanded labels collide; rename the original elements")
    expanded = GroundSet(tuple(names))
    emap = ExpansionMap(f.ground, expanded, tuple(blocks))

    members = []
    for a in f.ground.subsets():
        members.append((emap.block_union(a), f.values[a]))
    lattice = validate_lattice(expanded, members)

    singles = []
    for i in range(f.ground.n):
        unit = min(Fraction(1), f.values[1 << i])
        singles.extend([unit] * blocks[i].bit_count())
    return lattice, Measure(expanded, singles), emap


def helgason_expand(f: SetFunction) -> tuple[SetFunction, ExpansionMap]:
    """Matroid factor of an integer polymatroid via block expansion."""
    lattice, mu, emap = helgason_lattice(f)
    return convolve(lattice, mu), emap


@dataclass(frozen=True)
class InfiltrationSpec:
    """Host polymatroid, the pivot element to replace, and the guest.

    Construction validates the contract: the pivot belongs to the host, the
    ground sets are disjoint, both functions pass the polymatroid check and
    the host rank of the pivot equals the guest's total rank.
    """

    host: SetFunction
    pivot: str
    guest: SetFunction

    def __post_init__(self):
        if self.pivot not in self.host.ground.names:
            raise ValueError(f"pivot {self.pivot!r} is not in the host ground set")
        overlap = set(self.host.ground.names) & set(self.guest.ground.names)
        if overlap:
            raise GroundOverlap(f"host and guest share labels {sorted(overlap)}")
        if not check_polymatroid(self.host).is_polymatroid:
            raise ValueError("host fails the polymatroid axioms")
        if not check_polymatroid(self.guest).is_polymatroid:
            raise ValueError("guest fails the polymatroid axioms")
        pivot_rank = self.host.values[self.host.ground.singleton(self.pivot)]
        total = self.guest.values[self.guest.ground.full]
        if pivot_rank != total:
            raise RankMismatch(
                f"host rank of {self.pivot!r} is {pivot_rank}, guest total rank is {total}"
            )

    @property
    def kept_indices(self) -> tuple[int, ...]:
        p = self.host.ground.index(self.pivot)
        return tuple(i for i in range(self.host.ground.n) if i != p)

    def result_ground(self) -> GroundSet:
        kept = tuple(self.host.ground.names[i] for i in self.kept_indices)
        return GroundSet(kept + self.guest.ground.names)


def _split(spec: InfiltrationSpec, mask: int) -> tuple[int, int]:
    """Split a result-ground mask into (host mask, guest mask)."""
    kept = spec.kept_indices
    m_count = len(kept)
    host_mask = 0
    guest_mask = 0
    for pos in bits(mask):
        if pos < m_count:
            host_mask |= 1 << kept[pos]
        else:
            guest_mask |= 1 << (pos - m_count)
    return host_mask, guest_mask


def infiltrate(spec: InfiltrationSpec) -> SetFunction:
    """Replace the pivot by the guest.

    Each subset pays either its guest part at guest prices, or the whole
    pivot at host prices, whichever is cheaper:

        r(A) = min( host(A&M) + guest(A&P),  host((A&M) + pivot) )
    """
    ground = spec.result_ground()
    pivot_bit = spec.host.ground.singleton(spec.pivot)
    values = []
    for a in ground.subsets():
        host_mask, guest_mask = _split(spec, a)
        direct = spec.host.values[host_mask] + spec.guest.values[guest_mask]
        swallow = spec.host.values[host_mask | pivot_bit]
        values.append(min(direct, swallow))
    return SetFunction(ground, values)


def infiltrate_via_lattices(spec: InfiltrationSpec) -> SetFunction:
    """The same function by two-lattice convolution.

    The first lattice holds the host-side subsets, either avoiding the guest
    entirely or swallowing it whole (rank then charged through the pivot);
    the second is the full subset lattice of the guest at guest ranks.  The
    route needs a guest that vanishes on the empty set, otherwise every
    cover would overcharge the swallow branch by guest(empty).
    """
    if spec.guest.values[0] != 0:
        raise ValueError("lattice route needs a guest with zero empty-set rank")
    ground = spec.result_ground()
    m_count = len(spec.kept_indices)
    host_part = (1 << m_count) - 1
    guest_part = ground.full & ~host_part
    pivot_bit = spec.host.ground.singleton(spec.pivot)

    first: dict[int, Fraction] = {}
    for small in submasks(host_part):
        host_mask, _ = _split(spec, small)
        first[small] = spec.host.values[host_mask]
    # With an empty guest the pivot is a loop, so the overwrite is a no-op.
    for small in submasks(host_part):
        host_mask, _ = _split(spec, small)
        first[small | guest_part] = spec.host.values[host_mask | pivot_bit]
    second = [
        (mask, spec.guest.values[mask >> m_count]) for mask in submasks(guest_part)
    ]

    lattice_one = validate_lattice(ground, first.items())
    lattice_two = validate_lattice(ground, second)
    return convolve_lattices(lattice_one, lattice_two)
