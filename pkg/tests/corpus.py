"""Shared test corpus: deterministic polymatroid families and mutations.

Everything here is seeded, so expected values frozen in the tests stay
stable run to run.  Builders are cached because several modules and the
acceptance suite walk the same families.
"""

import functools
import random
from fractions import Fraction

from polyflats import (
    GroundSet,
    InfiltrationSpec,
    Measure,
    RankedLattice,
    SetFunction,
    check_polymatroid,
    cyclic_flats,
    graphic_matroid,
    random_polymatroid,
    uniform_matroid,
    validate_lattice,
)


def named_matroids() -> list[tuple[str, SetFunction]]:
    out = []
    for n in range(0, 6):
        for k in range(0, n + 1):
            out.append((f"uniform-{k}-{n}", uniform_matroid(k, n)))
    out += [
        ("triangle", graphic_matroid(3, [(0, 1), (1, 2), (0, 2)])),
        ("triangle-pendant", graphic_matroid(4, [(0, 1), (1, 2), (0, 2), (2, 3)])),
        ("two-triangles", graphic_matroid(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])),
        ("cycle-4", graphic_matroid(4, [(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("cycle-5", graphic_matroid(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
        ("parallel-pair", graphic_matroid(2, [(0, 1), (0, 1)])),
        ("parallel-triple", graphic_matroid(2, [(0, 1), (0, 1), (0, 1)])),
        ("path-3", graphic_matroid(4, [(0, 1), (1, 2), (2, 3)])),
        ("loop-triangle", graphic_matroid(3, [(0, 0), (0, 1), (1, 2), (0, 2)])),
        ("two-loops", graphic_matroid(3, [(0, 0), (1, 1), (0, 1)])),
    ]
    return out


@functools.lru_cache(maxsize=None)
def full_corpus() -> tuple[SetFunction, ...]:
    fs = [f for _, f in named_matroids()]
    for n in (2, 3, 4, 5):
        for seed in range(105):
            fs.append(random_polymatroid(seed, n))
    for n in (2, 3, 4):
        for seed in range(20):
            fs.append(random_polymatroid(seed, n, mode="table"))
    return tuple(fs)


@functools.lru_cache(maxsize=None)
def harvested() -> tuple[tuple[SetFunction, RankedLattice, Measure], ...]:
    """Every corpus member with its cyclic-flat lattice and measure."""
    return tuple((f, *cyclic_flats(f)) for f in full_corpus())


@functools.lru_cache(maxsize=None)
def matroid_corpus() -> tuple[SetFunction, ...]:
    return tuple(f for f in full_corpus() if check_polymatroid(f).is_matroid)


@functools.lru_cache(maxsize=None)
def integer_corpus() -> tuple[SetFunction, ...]:
    """Small integer polymatroids with total rank at most 3."""
    out = [
        f
        for f in full_corpus()
        if f.ground.n <= 4 and f.is_integer_valued() and f.values[f.ground.full] <= 3
    ]
    seen = {(f.ground.names, f.values) for f in out}
    for n in (2, 3, 4):
        for seed in range(60):
            f = random_polymatroid(seed, n, integer=True, terms=3, max_rank=2)
            key = (f.ground.names, f.values)
            if f.values[f.ground.full] <= 3 and key not in seen:
                seen.add(key)
                out.append(f)
    return tuple(out)


# --- lattice and measure mutations (rank table surgery) ---


def with_ranks(lattice: RankedLattice, ranks) -> RankedLattice:
    pairs = list(zip(lattice.members, ranks))
    return validate_lattice(lattice.ground, pairs)


def shift_up(lattice: RankedLattice, amount=Fraction(1)) -> RankedLattice:
    """Add a constant to every rank: only the zero-bottom condition breaks."""
    return with_ranks(lattice, [r + amount for r in lattice.ranks])


def scale_ranks(lattice: RankedLattice, t) -> RankedLattice:
    return with_ranks(lattice, [r * t for r in lattice.ranks])


def scale_measure(mu: Measure, t) -> Measure:
    return Measure(mu.ground, [v * t for v in mu.singleton])


def set_singleton(mu: Measure, index: int, value) -> Measure:
    values = list(mu.singleton)
    values[index] = Fraction(value)
    return Measure(mu.ground, values)


def scale_function(f: SetFunction, t) -> SetFunction:
    return SetFunction(f.ground, [v * Fraction(t) for v in f.values])


def relabel(f: SetFunction, labels) -> SetFunction:
    return SetFunction(GroundSet(tuple(labels)), f.values)


def closed_random_lattice(seed: int, f: SetFunction) -> tuple[RankedLattice, Measure]:
    """Random family closed under union and intersection, ranked by f.

    Meet and join then coincide with intersection and union, so the
    submodular-exchange condition is inherited from f while the other
    conditions are left to chance.
    """
    rng = random.Random(seed)
    family = {0, f.ground.full}
    for _ in range(rng.randrange(1, 5)):
        family.add(rng.randrange(f.ground.full + 1))
    while True:
        extra = {
            op
            for a in family
            for b in family
            for op in (a | b, a & b)
            if op not in family
        }
        if not extra:
            break
        family |= extra
    pairs = [(m, f.values[m]) for m in sorted(family)]
    lattice = validate_lattice(f.ground, pairs)
    mu = Measure(
        f.ground,
        [Fraction(rng.randrange(0, 5), rng.choice((1, 2))) for _ in f.ground.names],
    )
    return lattice, mu


# --- infiltration pairs ---


@functools.lru_cache(maxsize=None)
def infiltration_specs(count: int = 60) -> tuple[InfiltrationSpec, ...]:
    rng = random.Random(20260822)
    hosts = [f for f in full_corpus() if 2 <= f.ground.n <= 3]
    guests = [f for f in full_corpus() if 1 <= f.ground.n <= 3]
    specs = []
    while len(specs) < count:
        host = rng.choice(hosts)
        pivot = rng.choice(host.ground.names)
        pivot_rank = host(host.ground.singleton(pivot))
        if pivot_rank == 0:
            guest = SetFunction(GroundSet(("p", "q")), [Fraction(0)] * 4)
        else:
            base = rng.choice(guests)
            total = base.values[base.ground.full]
            if total == 0:
                continue
            scaled = scale_function(base, pivot_rank / total)
            guest = relabel(scaled, ("p", "q", "r")[: base.ground.n])
        specs.append(InfiltrationSpec(host, pivot, guest))
    return tuple(specs)
