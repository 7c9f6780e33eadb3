"""Lattice validation, meet/join, and the seven compatibility conditions."""

import random
from fractions import Fraction

import pytest

from polyflats import (
    DuplicateElement,
    ElementNotInLattice,
    GroundSet,
    GroundSetMismatch,
    LatticeError,
    Measure,
    NotALattice,
    check_conditions,
    cyclic_flats,
    graphic_matroid,
    normalize_pointed,
    validate_lattice,
)

import _oracles
import corpus


def ground(labels):
    return GroundSet(tuple(labels))


def chain_lattice(ranks=(0, 3)):
    g = ground("xy")
    return g, validate_lattice(g, [(0, ranks[0]), (0b11, ranks[1])])


def test_validate_chain():
    g, lat = chain_lattice()
    assert len(lat) == 2
    assert lat.bottom == 0
    assert lat.top == 0b11
    assert lat.rank_of(0b11) == 3
    assert 0b11 in lat
    assert 0b01 not in lat


def test_validate_sorts_members_by_size():
    g = ground("ab")
    lat = validate_lattice(g, [(0b11, 2), (0, 0), (0b10, 1), (0b01, 1)])
    assert lat.members == (0, 0b01, 0b10, 0b11)
    assert lat.meet(0b01, 0b10) == 0
    assert lat.join(0b01, 0b10) == 0b11


def test_validate_rejects_duplicates():
    g = ground("xy")
    with pytest.raises(DuplicateElement):
        validate_lattice(g, [(0, 0), (0, 1)])


def test_validate_rejects_negative_rank_and_empty_family():
    g = ground("xy")
    with pytest.raises(LatticeError):
        validate_lattice(g, [(0, -1)])
    with pytest.raises(LatticeError):
        validate_lattice(g, [])


def test_validate_rejects_missing_meet():
    g = ground("xy")
    with pytest.raises(NotALattice) as info:
        validate_lattice(g, [(0b01, 1), (0b10, 1), (0b11, 2)])
    assert info.value.reason == "no unique lower bound"
    assert {info.value.first, info.value.second} == {0b01, 0b10}


def test_validate_rejects_missing_join():
    g = ground("xyz")
    with pytest.raises(NotALattice) as info:
        validate_lattice(g, [(0, 0), (0b001, 1), (0b010, 1)])
    assert info.value.reason == "no unique upper bound"


def test_rank_of_unknown_member():
    _, lat = chain_lattice()
    with pytest.raises(ElementNotInLattice):
        lat.rank_of(0b01)


def test_meet_join_on_two_triangle_lattice():
    # triangles e1,e2,e3 and e3,e4,e5 share the edge e3
    f = graphic_matroid(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
    lat, _ = cyclic_flats(f)
    t1 = f.ground.subset(["e1", "e2", "e3"])
    t2 = f.ground.subset(["e2", "e4", "e5"])
    assert t1 in lat and t2 in lat
    # the shared edge alone is not cyclic, so the meet drops to bottom
    assert lat.meet(t1, t2) == 0
    assert lat.join(t1, t2) == f.ground.full


def test_lattice_laws_on_random_closed_families():
    for seed in range(25):
        f = corpus.full_corpus()[40 + seed]
        lat, _ = corpus.closed_random_lattice(seed, f)
        for a in lat.members:
            for b in lat.members:
                assert lat.meet(a, b) == lat.meet(b, a)
                assert lat.join(a, b) == lat.join(b, a)
                assert lat.meet(a, lat.join(a, b)) == a
                assert lat.join(a, lat.meet(a, b)) == a
            assert lat.meet(a, lat.bottom) == lat.bottom
            assert lat.join(a, lat.top) == lat.top


def mu_from(g, values):
    return Measure(g, [Fraction(v) for v in values])


def test_conditions_all_pass_on_plain_chain():
    g, lat = chain_lattice()
    rep = check_conditions(lat, mu_from(g, [2, 2]))
    assert rep.all_pass()
    assert rep.theorem_conditions_pass()
    for name, verdict in rep.named():
        assert verdict.passed and verdict.witness is None
    assert [line.split()[1] for line in rep.lines(g)] == ["pass"] * 7


def test_conditions_strict_gap_failure():
    # rank jump equals the measure of the gap, so the strict check fails
    g, lat = chain_lattice((0, 4))
    mu = mu_from(g, [2, 2])
    rep = check_conditions(lat, mu)
    assert rep.c2.passed
    assert not rep.cstar.passed
    w = rep.cstar.witness
    assert w.subsets == (0, 0b11)
    assert (w.lhs, w.relation, w.rhs) == (Fraction(4), "<", Fraction(4))
    assert _oracles.condition_witness_violates(lat, mu, w)
    assert rep.c1.passed and rep.c3.passed and rep.c4.passed
    assert rep.c5a.passed and rep.c5b.passed
    assert not rep.theorem_conditions_pass()


def test_conditions_nonzero_bottom_failure():
    g = ground("xy")
    lat = validate_lattice(g, [(0, 1), (0b11, 4)])
    mu = mu_from(g, [2, 2])
    rep = check_conditions(lat, mu)
    assert not rep.c1.passed
    assert rep.c1.witness.lhs == 1
    assert _oracles.condition_witness_violates(lat, mu, rep.c1.witness)
    # everything else is fine for this pair
    assert rep.c2.passed and rep.cstar.passed and rep.c3.passed
    assert rep.c4.passed and rep.c5a.passed and rep.c5b.passed


def test_conditions_measure_above_rank_failure():
    g, lat = chain_lattice((0, 3))
    mu = mu_from(g, [5, 2])
    rep = check_conditions(lat, mu)
    assert not rep.c4.passed
    w = rep.c4.witness
    assert w.element == 0
    assert (w.lhs, w.relation, w.rhs) == (Fraction(5), "<=", Fraction(3))
    assert _oracles.condition_witness_violates(lat, mu, w)


def test_conditions_zero_rank_and_zero_measure_failures():
    g = ground("xyz")
    lat = validate_lattice(g, [(0, 0), (0b011, 0), (0b111, 2)])
    mu = mu_from(g, [1, 1, 0])
    rep = check_conditions(lat, mu)
    assert not rep.c5a.passed
    assert rep.c5a.witness.subsets == (0b011,)
    assert not rep.c5b.passed
    assert rep.c5b.witness.element == 2
    assert _oracles.condition_witness_violates(lat, mu, rep.c5a.witness)
    assert _oracles.condition_witness_violates(lat, mu, rep.c5b.witness)


def test_conditions_monotonicity_failure():
    g = ground("xy")
    lat = validate_lattice(g, [(0, 2), (0b11, 1)])
    rep = check_conditions(lat, mu_from(g, [2, 2]))
    assert not rep.c2.passed
    w = rep.c2.witness
    assert (w.lhs, w.relation, w.rhs) == (Fraction(-1), ">=", Fraction(0))


def test_conditions_exchange_failure():
    # overlapping members whose meet forgets the shared element: the
    # correction term charges for b and the rank sum cannot cover it
    g = ground("abc")
    lat = validate_lattice(g, [(0, 0), (0b011, 1), (0b110, 1), (0b111, 2)])
    mu = mu_from(g, [1, 1, 1])
    rep = check_conditions(lat, mu)
    assert not rep.c3.passed
    w = rep.c3.witness
    assert set(w.subsets) == {0b011, 0b110}
    assert (w.lhs, w.relation, w.rhs) == (Fraction(2), ">=", Fraction(3))
    assert _oracles.condition_witness_violates(lat, mu, w)


def test_conditions_ground_mismatch():
    _, lat = chain_lattice()
    other = Measure(ground("ab"), [Fraction(1), Fraction(1)])
    with pytest.raises(GroundSetMismatch):
        check_conditions(lat, other)


def test_condition_witnesses_recompute_on_random_pairs():
    # stress the witness contract over mutated corpus pairs
    rng = random.Random(99)
    checked = 0
    for f, lat, mu in corpus.harvested()[:120]:
        if len(lat) < 2:
            continue
        move = rng.randrange(5)
        if move == 0:
            lat2, mu2 = corpus.shift_up(lat), mu
        elif move == 1:
            lat2, mu2 = corpus.scale_ranks(lat, Fraction(3)), mu
        elif move == 2:
            lat2, mu2 = lat, corpus.scale_measure(mu, Fraction(1, 3))
        elif move == 3:
            lat2, mu2 = lat, corpus.set_singleton(mu, rng.randrange(f.ground.n), 9)
        else:
            lat2, mu2 = corpus.scale_ranks(lat, Fraction(1, 2)), mu
        rep = check_conditions(lat2, mu2)
        for _, verdict in rep.named():
            if not verdict.passed:
                assert _oracles.condition_witness_violates(lat2, mu2, verdict.witness)
                checked += 1
    assert checked > 50


def test_normalize_pointed():
    g = ground("xy")
    lat = validate_lattice(g, [(0, 1), (0b11, 4)])
    fixed = normalize_pointed(lat)
    assert fixed.rank_of(0) == 0
    assert fixed.rank_of(0b11) == 3
    already = validate_lattice(g, [(0, 0), (0b11, 3)])
    assert normalize_pointed(already) is already


def test_normalize_pointed_keeps_relative_conditions():
    # shifting all ranks down moves only the bottom value, so the nested,
    # strict, and exchange checks are unchanged
    for f, lat, mu in corpus.harvested()[60:100]:
        shifted = corpus.shift_up(lat, Fraction(5, 2))
        rep = check_conditions(shifted, mu)
        assert not rep.c1.passed
        back = normalize_pointed(shifted)
        rep2 = check_conditions(back, mu)
        assert rep2.c1.passed
        assert rep.c2.passed == rep2.c2.passed
        assert rep.cstar.passed == rep2.cstar.passed
        assert rep.c3.passed == rep2.c3.passed


def test_bottom_measure_never_matters_for_nested_checks():
    # bumping the measure on bottom elements can only break the cap rule
    bumped = 0
    for f, lat, mu in corpus.harvested()[:150]:
        if lat.bottom == 0:
            continue
        bumped += 1
        index = next(i for i in range(f.ground.n) if lat.bottom >> i & 1)
        mu2 = corpus.set_singleton(mu, index, Fraction(100))
        rep = check_conditions(lat, mu2)
        assert rep.c2.passed and rep.cstar.passed and rep.c3.passed
        assert not rep.c4.passed
    assert bumped >= 5


def test_zero_bottom_measure_forced_when_conditions_hold():
    for f, lat, mu in corpus.harvested()[:150]:
        rep = check_conditions(lat, mu)
        if rep.c1.passed and rep.c4.passed:
            for i in range(f.ground.n):
                if lat.bottom >> i & 1:
                    assert mu.singleton[i] == 0


def test_strict_condition_implies_nested_and_positive_ranks():
    rng = random.Random(3)
    for f, lat, mu in corpus.harvested()[:150]:
        t = Fraction(rng.randrange(1, 5), rng.choice((1, 2)))
        rep = check_conditions(corpus.scale_ranks(lat, t), corpus.scale_measure(mu, t))
        if rep.cstar.passed and rep.c1.passed:
            assert rep.c2.passed
            assert rep.c5a.passed


def test_matroid_measure_strictness_implies_caps():
    # integer ranks with a zero-or-one measure: strictness forces the
    # cap and positivity conditions
    for f in corpus.matroid_corpus():
        lat, mu = cyclic_flats(f)
        rep = check_conditions(lat, mu)
        if rep.c1.passed and rep.cstar.passed and rep.c3.passed:
            assert rep.c4.passed and rep.c5a.passed and rep.c5b.passed


def test_exchange_witness_pairs_are_incomparable():
    # comparable pairs satisfy the exchange bound whenever the nested
    # bound holds, so a violation there must name an incomparable pair
    for f, lat, mu in corpus.harvested()[:150]:
        rep = check_conditions(lat, corpus.scale_measure(mu, Fraction(1, 2)))
        if not rep.c3.passed:
            z1, z2 = rep.c3.witness.subsets
            assert z1 & ~z2 and z2 & ~z1
