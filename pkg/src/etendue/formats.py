"""JSON file formats.

Every file is an object with a ``kind`` tag. Wherever a structure refers to
another one (a topology to its category, a presheaf to its base, a functor to
its endpoints) the reference is either an inline object or a string path,
resolved relative to the referring file. Everything is validated on load.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from ._verdict import ValidationError, Violation
from .fincat import FiniteCategory, Functor, validate_category
from .ogpd import DoubleFunctor, OrderedGroupoid, validate_ordered_groupoid
from .sheaves import DoublePresheaf, Presheaf, validate_double_presheaf, validate_presheaf
from .sites import EhresmannSiteMorphism, GrothendieckSiteMorphism
from .topology import (
    EhresmannTopology,
    GrothendieckTopology,
    sieve_closure,
    validate_ehresmann,
    validate_grothendieck,
    vertical_closure,
)

KINDS = (
    "category",
    "ordered_groupoid",
    "grothendieck_topology",
    "ehresmann_topology",
    "presheaf",
    "double_presheaf",
    "functor",
    "double_functor",
    "site_morphism",
)


class ParseError(ValueError):
    """The file is not JSON, has an unknown kind, or is missing a field."""


class Workspace:
    """Loads files by path, caching each one; references resolve relative to the referrer."""

    def __init__(self):
        self.loaded: dict[Path, Any] = {}

    def load(self, path, expect: tuple[str, ...] | None = None):
        path = Path(path).resolve()
        if path in self.loaded:
            obj = self.loaded[path]
            if expect and kind_of(obj) not in expect:
                raise ParseError(f"{path.name}: expected {' or '.join(expect)}, found {kind_of(obj)}")
            return obj
        try:
            raw = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"{path}: {e}") from None
        obj = self.build(raw, path.parent, expect)
        self.loaded[path] = obj
        return obj

    def ref(self, value, here: Path, expect: tuple[str, ...]):
        if isinstance(value, str):
            return self.load(here / value, expect)
        if isinstance(value, Mapping):
            return self.build(value, here, expect)
        raise ParseError(f"bad reference {value!r}")

    def build(self, raw: Mapping[str, Any], here: Path = Path("."), expect: tuple[str, ...] | None = None):
        if not isinstance(raw, Mapping) or "kind" not in raw:
            raise ParseError("expected an object with a 'kind' field")
        kind = raw["kind"]
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}")
        if expect and kind not in expect:
            raise ParseError(f"expected {' or '.join(expect)}, found {kind}")
        try:
            return getattr(self, "_" + kind)(raw, here)
        except (KeyError, TypeError) as e:
            raise ParseError(f"{kind}: missing or malformed field {e}") from None

    def _category(self, raw, here):
        return validate_category(raw)

    def _ordered_groupoid(self, raw, here):
        return validate_ordered_groupoid(raw)

    def _grothendieck_topology(self, raw, here):
        C = self.ref(raw["category"], here, ("category",))
        J = GrothendieckTopology(
            C, {a: {sieve_closure(C, a, gens) for gens in fams} for a, fams in raw["covers"].items()},
            raw.get("name", ""))
        _require(validate_grothendieck(J), "Grothendieck topology")
        return J

    def _ehresmann_topology(self, raw, here):
        G = self.ref(raw["groupoid"], here, ("ordered_groupoid",))
        T = EhresmannTopology(
            G, {a: {vertical_closure(G, a, gens) for gens in fams} for a, fams in raw["covers"].items()},
            raw.get("name", ""))
        _require(validate_ehresmann(T), "Ehresmann topology")
        return T

    def _presheaf(self, raw, here):
        C = self.ref(raw["base"], here, ("category",))
        values = {a: tuple(v) for a, v in raw["values"].items()}
        actions = {f: dict(m) for f, m in raw["actions"].items()}
        for a, i in C.identities.items():
            actions.setdefault(i, {x: x for x in values.get(a, ())})
        P = Presheaf(C, values, actions, raw.get("name", ""))
        _require(validate_presheaf(P), "presheaf")
        return P

    def _double_presheaf(self, raw, here):
        G = self.ref(raw["base"], here, ("ordered_groupoid",))
        values = {a: tuple(v) for a, v in raw["values"].items()}
        h = {f: dict(m) for f, m in raw["h_actions"].items()}
        v = {(lo, hi): dict(m) for lo, hi, m in raw.get("v_actions", ())}
        for a, i in G.identities.items():
            h.setdefault(i, {x: x for x in values.get(a, ())})
            v.setdefault((a, a), {x: x for x in values.get(a, ())})
        F = DoublePresheaf(G, values, h, v, raw.get("name", ""))
        _require(validate_double_presheaf(F), "double presheaf")
        return F

    def _functor(self, raw, here):
        src = self.ref(raw["source"], here, ("category",))
        tgt = self.ref(raw["target"], here, ("category",))
        return Functor(src, tgt, dict(raw["objects"]), dict(raw["arrows"]), raw.get("name", ""))

    def _double_functor(self, raw, here):
        src = self.ref(raw["source"], here, ("ordered_groupoid",))
        tgt = self.ref(raw["target"], here, ("ordered_groupoid",))
        return DoubleFunctor(src, tgt, dict(raw["objects"]), dict(raw["harrows"]), raw.get("name", ""))

    def _site_morphism(self, raw, here):
        flavor = raw.get("flavor", "grothendieck")
        if flavor == "grothendieck":
            F = self.ref(raw["functor"], here, ("functor",))
            s = self.ref(raw["source_topology"], here, ("grothendieck_topology",))
            t = self.ref(raw["target_topology"], here, ("grothendieck_topology",))
            return GrothendieckSiteMorphism(F, s, t, raw.get("name", ""))
        if flavor == "ehresmann":
            M = self.ref(raw["functor"], here, ("double_functor",))
            s = self.ref(raw["source_topology"], here, ("ehresmann_topology",))
            t = self.ref(raw["target_topology"], here, ("ehresmann_topology",))
            return EhresmannSiteMorphism(M, s, t, raw.get("name", ""))
        raise ParseError(f"unknown site morphism flavor {flavor!r}")


def _require(verdict, what):
    if not verdict.ok:
        raise ValidationError([Violation(c.name, c.witness, c.detail) for c in verdict.failures()], what)


_TYPES = [
    (FiniteCategory, "category"),
    (OrderedGroupoid, "ordered_groupoid"),
    (GrothendieckTopology, "grothendieck_topology"),
    (EhresmannTopology, "ehresmann_topology"),
    (Presheaf, "presheaf"),
    (DoublePresheaf, "double_presheaf"),
    (Functor, "functor"),
    (DoubleFunctor, "double_functor"),
    (GrothendieckSiteMorphism, "site_morphism"),
    (EhresmannSiteMorphism, "site_morphism"),
]


def kind_of(obj) -> str:
    for cls, kind in _TYPES:
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no file kind for {type(obj).__name__}")


def load(path, expect: tuple[str, ...] | None = None):
    return Workspace().load(path, expect)


def loads(text: str, expect: tuple[str, ...] | None = None):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(e)) from None
    return Workspace().build(raw, Path("."), expect)


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), indent=1, sort_keys=True) + "\n"


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj))
