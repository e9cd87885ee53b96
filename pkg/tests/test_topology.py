import itertools

import pytest
from hypothesis import given

from conftest import FIXTURES, cyclic_group, posets, small_categories, small_groupoids
from etendue._verdict import ValidationError
from etendue.bridge import G, L
from etendue.fixtures import arrow, arrow_topology_a, interval, interval_groupoid, interval_topology_0, terminal, z2
from etendue.formats import load
from etendue.topology import (
    EhresmannTopology,
    GrothendieckTopology,
    all_sieves,
    ehresmann_to_grothendieck,
    ehresmann_to_grothendieck_on_G,
    enumerate_ehresmann_topologies,
    enumerate_grothendieck_topologies,
    generated_grothendieck,
    grothendieck_to_ehresmann_on_G,
    grothendieck_to_ehresmann_on_L,
    sieve_closure,
    validate_ehresmann,
    validate_grothendieck,
)


def _subsets(xs):
    xs = sorted(xs)
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def naive_topology_count(C):
    """Count Grothendieck topologies by filtering every family of every arrow subset."""
    sieves = {
        a: [s for s in _subsets(C.arrows_into(a))
            if all(C.comp(f, g) in s for f in s for g in C.arrows_into(C.dom(f)))]
        for a in C.objects
    }

    def pull(s, h):
        return frozenset(g for g in C.arrows_into(C.dom(h)) if C.comp(h, g) in s)

    count = 0
    for choice in itertools.product(*(_subsets(sieves[a]) for a in C.objects)):
        J = dict(zip(C.objects, choice))
        if any(frozenset(C.arrows_into(a)) not in J[a] for a in C.objects):
            continue
        if any(pull(s, h) not in J[C.dom(h)] for a in C.objects for s in J[a] for h in C.arrows_into(a)):
            continue
        if any(
            r not in J[a] and any(all(pull(r, f) in J[C.dom(f)] for f in s) for s in J[a])
            for a in C.objects for r in sieves[a]
        ):
            continue
        count += 1
    return count


def test_topology_counts_by_hand():
    # the arrow: trivial, {a} covers B, empty covers A (and B), and the chaotic one
    assert len(enumerate_grothendieck_topologies(arrow())) == 4
    assert len(enumerate_grothendieck_topologies(z2())) == 2
    assert len(enumerate_grothendieck_topologies(terminal())) == 2
    assert len(enumerate_ehresmann_topologies(interval())) == 4


@given(posets(3))
def test_enumeration_matches_naive_oracle(C):
    assert len(enumerate_grothendieck_topologies(C)) == naive_topology_count(C)


def test_enumeration_matches_naive_oracle_on_groups():
    for n in range(1, 4):
        assert len(enumerate_grothendieck_topologies(cyclic_group(n))) == naive_topology_count(cyclic_group(n))


def test_not_a_topology_fixture():
    with pytest.raises(ValidationError) as e:
        load(FIXTURES / "not-a-topology.topo")
    assert {v.code for v in e.value.violations} == {"maximal", "transitivity"}
    assert any(v.witness == "B" for v in e.value.violations)


def test_fixture_topologies_are_valid():
    assert validate_grothendieck(arrow_topology_a()).ok
    assert validate_ehresmann(interval_topology_0()).ok
    assert load(FIXTURES / "a-covers-B.topo") == arrow_topology_a()


def test_generated_is_smallest():
    C = arrow()
    gen = generated_grothendieck(C, {"B": [["a"]]})
    a_sieve = sieve_closure(C, "B", ["a"])
    containing = [J for J in enumerate_grothendieck_topologies(C) if J.covering(a_sieve)]
    assert gen in containing
    assert all(all(gen.covers[x] <= J.covers[x] for x in C.objects) for J in containing)


@given(small_categories())
def test_grothendieck_round_trip_through_G(C):
    for J in enumerate_grothendieck_topologies(C):
        T = grothendieck_to_ehresmann_on_G(J)
        assert validate_ehresmann(T).ok
        assert ehresmann_to_grothendieck_on_G(T) == J


@given(small_groupoids())
def test_ehresmann_round_trip_through_L(Gp):
    LG_ = L(Gp)
    for T in enumerate_ehresmann_topologies(Gp):
        J = ehresmann_to_grothendieck(T, LG_)
        assert validate_grothendieck(J).ok
        assert grothendieck_to_ehresmann_on_L(J) == T


def test_round_trips_are_bijections():
    # both directions on the fixtures: distinct topologies stay distinct
    for C in (arrow(), z2()):
        GC = G(C)
        tops = enumerate_grothendieck_topologies(C)
        images = [grothendieck_to_ehresmann_on_G(J, GC) for J in tops]
        assert len(images) == len(enumerate_ehresmann_topologies(GC))
        assert all(a != b for a, b in itertools.combinations(images, 2))
    for Gp in (interval(), interval_groupoid()):
        tops = enumerate_ehresmann_topologies(Gp)
        images = [ehresmann_to_grothendieck(T) for T in tops]
        assert all(a != b for a, b in itertools.combinations(images, 2))


def test_sieves_of_arrow():
    assert [sorted(S.arrows) for S in all_sieves(arrow(), "B")] == [[], ["a"], ["1B", "a"]]


def test_trivial_topology_is_trivial():
    assert GrothendieckTopology.trivial(arrow()).is_trivial()
    assert EhresmannTopology.trivial(interval()).is_trivial()
    assert not interval_topology_0().is_trivial()
