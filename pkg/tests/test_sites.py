import pytest
from hypothesis import given, settings

from conftest import posets
from etendue.fincat import enumerate_functors, identity_functor
from etendue.fixtures import (
    arrow,
    arrow_topology_a,
    ehresmann_morphisms,
    grothendieck_morphisms,
    interval,
    z2,
)
from etendue.sheaves import Presheaf, constant_presheaf, representable
from etendue.sites import (
    EMPTY,
    PAIR,
    PARALLEL,
    VERTICAL,
    GrothendieckSiteMorphism,
    NotASheaf,
    NotASiteMorphism,
    Shape,
    canonical_shapes,
    check_es_conditions,
    check_gs_conditions,
    comparison_verdict,
    diagrams,
    enumerate_cones,
    enumerate_hv_cones,
    G_site_morphism,
    induced_sheaf_functor,
    is_covering_flat_e,
    is_covering_flat_g,
    is_covering_preserving_e,
    is_covering_preserving_g,
    oracle_shapes,
)
from etendue.topology import GrothendieckTopology, enumerate_grothendieck_topologies


def _failing(v):
    return [c.name for c in v if not c.ok]


def test_oracle_shape_counts():
    # empty; one node; one node with a loop; two nodes; then the size-3 graphs
    assert [len(oracle_shapes(b)) for b in range(4)] == [1, 2, 4, 8]
    # plus two nodes joined by a vertical edge
    assert len(oracle_shapes(3, "ehresmann")) == 9


def test_canonical_shapes():
    assert canonical_shapes() == [EMPTY, PAIR, PARALLEL]
    assert canonical_shapes("ehresmann")[-1] == VERTICAL


def test_cones_over_pair_in_arrow():
    # a cone over (B, B) is a pair of arrows into B from a common vertex
    D = next(d for d in diagrams(arrow(), PAIR) if d.objects == ("B", "B"))
    assert len(enumerate_cones(arrow(), D)) == 2
    D = next(d for d in diagrams(arrow(), PAIR) if d.objects == ("A", "B"))
    assert [c.vertex for c in enumerate_cones(arrow(), D)] == ["A"]


def test_hv_cones_respect_vertical_edges():
    I = interval()
    D = next(diagrams(I, VERTICAL))
    assert D.objects == ("0", "0") or D.objects == ("0", "1")
    for c in enumerate_hv_cones(I, D):
        assert c.legs[0] == c.legs[1]


def test_covering_preservation():
    ms = grothendieck_morphisms()
    assert is_covering_preserving_g(ms["refine-arrow"]).ok
    C = arrow()
    back = GrothendieckSiteMorphism(identity_functor(C), arrow_topology_a(), GrothendieckTopology.trivial(C))
    chk = is_covering_preserving_g(back)["covering_preserving"]
    assert not chk.ok and chk.witness["object"] == "B"


def test_flatness_of_fixture_morphisms():
    ms = grothendieck_morphisms()
    assert not is_covering_flat_g(ms["pick-A"]).ok
    for name in ("pick-B", "id-arrow", "refine-arrow", "eta-arrow", "eta-Z2"):
        assert is_covering_flat_g(ms[name]).ok, name


def test_flatness_witness_names_a_shape():
    chk = is_covering_flat_g(grothendieck_morphisms()["pick-A"])["covering_flat"]
    assert chk.witness["shape"] in {s.name for s in canonical_shapes()}


def test_oracle_agrees_on_fixtures():
    for m in grothendieck_morphisms().values():
        assert is_covering_flat_g(m, oracle_bound=3)["oracle_agrees"].ok
    for m in ehresmann_morphisms().values():
        assert is_covering_flat_e(m, oracle_bound=3)["oracle_agrees"].ok


def test_gs_failure_patterns():
    ms = grothendieck_morphisms()
    assert _failing(check_gs_conditions(ms["refine-arrow"])) == ["GS4"]
    assert _failing(check_gs_conditions(ms["eta-arrow"])) == []
    assert _failing(check_gs_conditions(ms["pick-A"])) == ["GS3"]


def test_es_failure_patterns():
    ms = ehresmann_morphisms()
    assert _failing(check_es_conditions(ms["one-to-Z2"])) == ["ES1"]
    assert _failing(check_es_conditions(ms["Z2-to-one"])) == ["ES2"]
    assert _failing(check_es_conditions(ms["bottom-of-interval"])) == ["ES3"]
    assert _failing(check_es_conditions(ms["refine-interval"])) == ["ES4"]
    for name in ("id-zinterval", "kappa-interval", "kappa-zinterval"):
        assert _failing(check_es_conditions(ms[name])) == [], name


def test_induced_functor_guards():
    ms = grothendieck_morphisms()
    with pytest.raises(NotASiteMorphism):
        induced_sheaf_functor(ms["pick-A"], constant_presheaf(arrow(), ["x"]))
    not_sheaf = Presheaf(arrow(), {"A": ("0",), "B": ("0", "1")},
                         {"1A": {"0": "0"}, "1B": {"0": "0", "1": "1"}, "a": {"0": "0", "1": "0"}})
    with pytest.raises(NotASheaf):
        induced_sheaf_functor(ms["refine-arrow"], not_sheaf)
    X = induced_sheaf_functor(ms["pick-B"], representable(arrow(), "B"))
    assert X.values == {"*": ("1B",)}


def test_comparison_refine_arrow():
    v = comparison_verdict(grothendieck_morphisms()["refine-arrow"], k=2)
    assert v["fully_faithful_claim"].ok and not v["equivalence_claim"].ok
    assert v["full"].ok and v["faithful"].ok and not v["essentially_surjective"].ok
    assert v["agreement"].ok


def test_comparison_eta():
    v = comparison_verdict(grothendieck_morphisms()["eta-arrow"], k=2)
    assert v["equivalence_claim"].ok and v["essentially_surjective"].ok and v["agreement"].ok


def test_comparison_kappa():
    v = comparison_verdict(ehresmann_morphisms()["kappa-interval"], k=2)
    assert v["equivalence_claim"].ok and v["agreement"].ok
    assert v["full"].ok and v["faithful"].ok and v["essentially_surjective"].ok


@settings(max_examples=10)
@given(posets(2), posets(2))
def test_G_preserves_conditions_and_flatness(C, D):
    for F in enumerate_functors(C, D):
        for J in enumerate_grothendieck_topologies(C):
            for J2 in enumerate_grothendieck_topologies(D):
                m = GrothendieckSiteMorphism(F, J, J2)
                g = G_site_morphism(m)
                assert is_covering_preserving_g(m).ok == is_covering_preserving_e(g).ok
                if is_covering_flat_g(m).ok:
                    assert is_covering_flat_e(g).ok


def test_graph_shape_with_loop_cones():
    # a loop at the single object of Z/2 labelled by the swap: cones are legs fixed by the swap
    loop = Shape(1, ((0, 0),), name="loop")
    D = next(d for d in diagrams(z2(), loop) if d.h_arrows == ("s",))
    assert enumerate_cones(z2(), D) == []
