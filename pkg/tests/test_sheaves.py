import itertools

from hypothesis import given, strategies as st

from conftest import FIXTURES, small_categories
from etendue.bridge import G, L
from etendue.fixtures import arrow, arrow_topology_a, interval, interval_groupoid, interval_topology_0, terminal, z2
from etendue.formats import load
from etendue.sheaves import (
    DoublePresheaf,
    Presheaf,
    check_after_tilde_iso,
    constant_double_presheaf,
    constant_presheaf,
    enumerate_double_presheaves,
    enumerate_presheaves,
    find_double_presheaf_isomorphism,
    is_presheaf_morphism,
    is_sheaf_ehresmann,
    is_sheaf_grothendieck,
    presheaf_morphisms,
    presheaf_transfer_L,
    presheaf_transfer_L_inverse,
    representable,
    sheaf_universe,
    transfer_check,
    transfer_tilde,
    validate_double_presheaf,
    validate_presheaf,
)
from etendue.topology import (
    enumerate_ehresmann_topologies,
    enumerate_grothendieck_topologies,
    grothendieck_to_ehresmann_on_G,
)


def naive_is_sheaf(P, J):
    """Try every assignment on every covering sieve and count amalgamations."""
    C = P.base
    for a, fam in J.covers.items():
        for S in fam:
            arrows = sorted(S.arrows)
            for choice in itertools.product(*(P.values[C.dom(f)] for f in arrows)):
                s = dict(zip(arrows, choice))
                matching = all(
                    C.comp(f, g) not in s or s[C.comp(f, g)] == P.actions[g][s[f]]
                    for f in arrows for g in C.arrows_into(C.dom(f))
                )
                if not matching:
                    continue
                amalgamations = [x for x in P.values[a] if all(P.actions[f][x] == s[f] for f in arrows)]
                if len(amalgamations) != 1:
                    return False
    return True


def test_presheaf_counts_up_to_iso():
    assert len(enumerate_presheaves(terminal(), 2)) == 3
    assert len(enumerate_presheaves(z2(), 2)) == 4
    # |B| = 0: three; |B| = 1: two; |B| = 2: bijection or constant into two, constant into one
    assert len(enumerate_presheaves(arrow(), 2)) == 8


@given(st.integers(0, 3))
def test_labelled_presheaves_on_arrow(k):
    # a presheaf is a pair of sets with a function P(B) -> P(A)
    want = sum(a ** b for a in range(k + 1) for b in range(k + 1))
    assert len(enumerate_presheaves(arrow(), k, up_to_iso=False)) == want


def test_fixture_presheaves():
    P = load(FIXTURES / "representable-B.psh")
    assert P == representable(arrow(), "B")
    assert validate_presheaf(P).ok
    assert load(FIXTURES / "constant.psh").values["A"] == ("x", "y")


def test_bad_presheaf_reports_composition():
    C = z2()
    P = Presheaf(C, {"*": ("0", "1")}, {"e": {"0": "0", "1": "1"}, "s": {"0": "0", "1": "0"}})
    v = validate_presheaf(P)
    assert not v.ok and v.failures()[0].name == "composition"


@given(small_categories())
def test_yoneda_count(C):
    for P in enumerate_presheaves(C, 2, up_to_iso=False)[:12]:
        for b in C.objects:
            assert len(presheaf_morphisms(representable(C, b), P)) == len(P.values[b])


def test_sheaf_condition_matches_naive_oracle():
    for C in (terminal(), z2(), arrow()):
        for J in enumerate_grothendieck_topologies(C):
            for P in enumerate_presheaves(C, 2, up_to_iso=False):
                assert bool(is_sheaf_grothendieck(P, J)) == naive_is_sheaf(P, J)


def test_sheaf_counts_on_arrow():
    counts = sorted(len(sheaf_universe(J, 2)) for J in enumerate_grothendieck_topologies(arrow()))
    assert counts == [1, 3, 3, 8]
    # {a} covers B: exactly the presheaves with P(a) bijective
    assert len(sheaf_universe(arrow_topology_a(), 2)) == 3


def test_sheaf_witnesses():
    J = arrow_topology_a()
    too_many = Presheaf(arrow(), {"A": ("0",), "B": ("0", "1")}, {"1A": {"0": "0"}, "1B": {"0": "0", "1": "1"},
                                                                  "a": {"0": "0", "1": "0"}})
    chk = is_sheaf_grothendieck(too_many, J).failures()[0]
    assert chk.detail == "more than one amalgamation"
    too_few = Presheaf(arrow(), {"A": ("0",), "B": ()}, {"1A": {"0": "0"}, "1B": {}, "a": {}})
    assert is_sheaf_grothendieck(too_few, J).failures()[0].detail == "no amalgamation"


def test_transfer_L_round_trip():
    for Gp in (interval(), interval_groupoid()):
        for F in enumerate_double_presheaves(Gp, 2):
            assert validate_double_presheaf(F).ok
            P = presheaf_transfer_L(F)
            assert validate_presheaf(P).ok
            assert presheaf_transfer_L_inverse(P) == F


def test_tilde_then_check_is_isomorphic():
    for C in (arrow(), z2()):
        GC = G(C)
        for Phi in enumerate_presheaves(C, 2, up_to_iso=False):
            Psi = transfer_tilde(Phi, GC)
            assert validate_double_presheaf(Psi).ok
            comps = check_after_tilde_iso(Phi, GC)
            back = transfer_check(Psi)
            assert is_presheaf_morphism(back, Phi, comps)
            assert all(len(set(c.values())) == len(c) == len(Phi.values[a]) for a, c in comps.items())


def test_check_then_tilde_is_isomorphic():
    for C in (arrow(), z2()):
        GC = G(C)
        for Phi in enumerate_presheaves(C, 2):
            Psi = transfer_tilde(Phi, GC)
            assert find_double_presheaf_isomorphism(transfer_tilde(transfer_check(Psi), GC), Psi) is not None


def test_sheaf_transfer_both_directions():
    for C in (terminal(), z2(), arrow()):
        GC = G(C)
        for J in enumerate_grothendieck_topologies(C):
            T = grothendieck_to_ehresmann_on_G(J, GC)
            for P in enumerate_presheaves(C, 2):
                assert bool(is_sheaf_grothendieck(P, J)) == bool(is_sheaf_ehresmann(transfer_tilde(P, GC), T))


def test_ehresmann_sheaves_on_interval():
    T = interval_topology_0()
    # a sheaf needs the restriction 1 -> 0 to be bijective
    good = constant_double_presheaf(interval(), ["x", "y"])
    assert is_sheaf_ehresmann(good, T).ok
    bad = DoublePresheaf(interval(), {"0": ("x",), "1": ("x", "y")}, {"i0": {"x": "x"}, "i1": {"x": "x", "y": "y"}},
                         {("0", "0"): {"x": "x"}, ("1", "1"): {"x": "x", "y": "y"}, ("0", "1"): {"x": "x", "y": "x"}})
    assert validate_double_presheaf(bad).ok
    assert not is_sheaf_ehresmann(bad, T).ok


def test_every_presheaf_is_a_sheaf_for_trivial_topology():
    for Gp in (interval(), interval_groupoid()):
        trivial = [T for T in enumerate_ehresmann_topologies(Gp) if T.is_trivial()][0]
        assert all(is_sheaf_ehresmann(F, trivial).ok for F in enumerate_double_presheaves(Gp, 2))


def test_constant_presheaf_valid():
    assert validate_presheaf(constant_presheaf(L(interval()), ["p"])).ok
