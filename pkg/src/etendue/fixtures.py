"""The fixture corpus: small categories, ordered groupoids, topologies,
presheaves and site morphisms used by the tests and shipped as JSON files.

``write_fixtures(directory)`` regenerates the JSON corpus.
"""

from __future__ import annotations

from pathlib import Path

from .bridge import G
from .fincat import FiniteCategory, Functor, identity_functor
from .formats import dump
from .ogpd import DoubleFunctor, OrderedGroupoid, identity_double_functor
from .sheaves import constant_presheaf, representable
from .sites import (
    EhresmannSiteMorphism,
    GrothendieckSiteMorphism,
    eta_site_morphism,
    kappa_site_morphism,
)
from .topology import EhresmannTopology, GrothendieckTopology, generated_ehresmann


def terminal() -> FiniteCategory:
    return FiniteCategory.from_tables(["*"], {"1": ("*", "*")}, {"*": "1"}, name="terminal")


def z2() -> FiniteCategory:
    return FiniteCategory.from_tables(
        ["*"], {"e": ("*", "*"), "s": ("*", "*")}, {"*": "e"}, [("s", "s", "e")], name="Z2")


def arrow() -> FiniteCategory:
    return FiniteCategory.from_tables(
        ["A", "B"], {"1A": ("A", "A"), "1B": ("B", "B"), "a": ("A", "B")}, {"A": "1A", "B": "1B"}, name="arrow")


def coequalized_pair() -> FiniteCategory:
    """``f, g: X -> Y`` and ``h: Y -> Z`` with ``h f = h g``: not left-cancellative."""
    arrows = {"1X": ("X", "X"), "1Y": ("Y", "Y"), "1Z": ("Z", "Z"),
              "f": ("X", "Y"), "g": ("X", "Y"), "h": ("Y", "Z"), "k": ("X", "Z")}
    return FiniteCategory.from_tables(
        ["X", "Y", "Z"], arrows, {"X": "1X", "Y": "1Y", "Z": "1Z"},
        [("h", "f", "k"), ("h", "g", "k")], name="coequalized")


def categories() -> dict[str, FiniteCategory]:
    return {"terminal": terminal(), "Z2": z2(), "arrow": arrow()}


def interval() -> OrderedGroupoid:
    return OrderedGroupoid.from_tables(
        ["0", "1"], {"i0": ("0", "0"), "i1": ("1", "1")}, {"0": "i0", "1": "i1"},
        obj_order=[("0", "1")], name="interval")


def interval_groupoid() -> OrderedGroupoid:
    """Two copies of Z/2 with ``0 <= 1`` and ``s0 <= s1``."""
    return OrderedGroupoid.from_tables(
        ["0", "1"],
        {"e0": ("0", "0"), "s0": ("0", "0"), "e1": ("1", "1"), "s1": ("1", "1")},
        {"0": "e0", "1": "e1"},
        [("s0", "s0", "e0"), ("s1", "s1", "e1")],
        obj_order=[("0", "1")], arr_order=[("s0", "s1")], name="zinterval")


def point_groupoid(name="one") -> OrderedGroupoid:
    return OrderedGroupoid.from_tables(["*"], {"e": ("*", "*")}, {"*": "e"}, name=name)


def groupoids() -> dict[str, OrderedGroupoid]:
    """Groupoid fixtures, including the G-images of the category fixtures."""
    out = {"interval": interval(), "zinterval": interval_groupoid(),
           "Z2-discrete": OrderedGroupoid.discrete_order(z2(), "Z2-discrete")}
    for name, C in categories().items():
        out[f"G({name})"] = G(C)
    return out


def arrow_topology_a() -> GrothendieckTopology:
    """On the arrow category: ``{a}`` covers ``B``."""
    return GrothendieckTopology.from_generators(arrow(), {"A": [["1A"]], "B": [["1B"], ["a"]]}, "a-covers-B")


def interval_topology_0() -> EhresmannTopology:
    """On the interval: ``{0}`` covers ``1``."""
    return generated_ehresmann(interval(), {"1": [["0"]]}, "0-covers-1")


def grothendieck_morphisms() -> dict[str, GrothendieckSiteMorphism]:
    T, A = terminal(), arrow()
    JT, JA = GrothendieckTopology.trivial(T), GrothendieckTopology.trivial(A)
    return {
        "pick-A": GrothendieckSiteMorphism(Functor(T, A, {"*": "A"}, {"1": "1A"}, "pick-A"), JT, JA, "pick-A"),
        "pick-B": GrothendieckSiteMorphism(Functor(T, A, {"*": "B"}, {"1": "1B"}, "pick-B"), JT, JA, "pick-B"),
        "id-arrow": GrothendieckSiteMorphism(identity_functor(A), JA, JA, "id-arrow"),
        "refine-arrow": GrothendieckSiteMorphism(identity_functor(A), JA, arrow_topology_a(), "refine-arrow"),
        "eta-arrow": eta_site_morphism(arrow_topology_a()),
        "eta-Z2": eta_site_morphism(GrothendieckTopology.trivial(z2())),
    }


def ehresmann_morphisms() -> dict[str, EhresmannSiteMorphism]:
    """One morphism failing each of ES.1-ES.4, plus identities and kappa."""
    one, pt0 = point_groupoid(), OrderedGroupoid.from_tables(["0"], {"i0": ("0", "0")}, {"0": "i0"}, name="pt0")
    Zg, I = OrderedGroupoid.discrete_order(z2(), "Z2-discrete"), interval()
    triv = EhresmannTopology.trivial
    return {
        "one-to-Z2": EhresmannSiteMorphism(DoubleFunctor(one, Zg, {"*": "*"}, {"e": "e"}), triv(one), triv(Zg), "one-to-Z2"),
        "Z2-to-one": EhresmannSiteMorphism(
            DoubleFunctor(Zg, one, {"*": "*"}, {"e": "e", "s": "e"}), triv(Zg), triv(one), "Z2-to-one"),
        "bottom-of-interval": EhresmannSiteMorphism(
            DoubleFunctor(pt0, I, {"0": "0"}, {"i0": "i0"}), triv(pt0), triv(I), "bottom-of-interval"),
        "refine-interval": EhresmannSiteMorphism(
            identity_double_functor(I), triv(I), interval_topology_0(), "refine-interval"),
        "id-zinterval": EhresmannSiteMorphism(
            identity_double_functor(interval_groupoid()), triv(interval_groupoid()), triv(interval_groupoid()),
            "id-zinterval"),
        "kappa-interval": kappa_site_morphism(interval_topology_0()),
        "kappa-zinterval": kappa_site_morphism(triv(interval_groupoid())),
    }


def write_fixtures(directory) -> list[Path]:
    """Write the JSON corpus; returns the paths written, sorted."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    A = arrow()
    files = {
        "terminal.cat": terminal(),
        "z2.cat": z2(),
        "arrow.cat": A,
        "coequalized.cat": coequalized_pair(),
        "interval.ogpd": interval(),
        "zinterval.ogpd": interval_groupoid(),
        "trivial.topo": GrothendieckTopology.trivial(A),
        "a-covers-B.topo": arrow_topology_a(),
        "interval-0.etopo": interval_topology_0(),
        "constant.psh": constant_presheaf(A, ["x", "y"]),
        "representable-B.psh": representable(A, "B"),
        "eta-site.morph": grothendieck_morphisms()["eta-arrow"],
        "refine-arrow.morph": grothendieck_morphisms()["refine-arrow"],
        "pick-A.morph": grothendieck_morphisms()["pick-A"],
        "bottom-of-interval.morph": ehresmann_morphisms()["bottom-of-interval"],
    }
    for name, obj in files.items():
        dump(obj, d / name)
    return sorted(d / n for n in files)
