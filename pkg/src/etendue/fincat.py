"""Finite categories given by explicit composition tables.

Objects and arrows are opaque string ids. Wherever a class of arrows has to be
represented by one member, the lexicographically least id is used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

from ._verdict import Check, NotLeftCancellative, TooLarge, ValidationError, Verdict, Violation


def check_category(
    objects: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    identities: Mapping[str, str],
    composition: Mapping[tuple[str, str], str],
) -> list[Violation]:
    """Exhaustively check the category laws; return every violation found."""
    objects = set(objects)
    out: list[Violation] = []
    for f, (d, c) in arrows.items():
        for o in (d, c):
            if o not in objects:
                out.append(Violation("UnknownId", (f, o), "arrow endpoint is not a declared object"))
    for (g, f), gf in composition.items():
        for a in (g, f, gf):
            if a not in arrows:
                out.append(Violation("UnknownId", (g, f, a), "composition table names an undeclared arrow"))
    if out:
        return out

    for a in sorted(objects):
        i = identities.get(a)
        if i is None or i not in arrows or arrows[i] != (a, a):
            out.append(Violation("MissingIdentity", a, "no identity arrow a -> a"))
    for o in identities:
        if o not in objects:
            out.append(Violation("UnknownId", o, "identity given for an undeclared object"))
    if out:
        return out

    for (g, f), gf in sorted(composition.items()):
        if arrows[f][1] != arrows[g][0]:
            out.append(Violation("BadCompositionDomain", (g, f), "composite declared but cod(f) != dom(g)"))
        elif arrows[gf] != (arrows[f][0], arrows[g][1]):
            out.append(Violation("BadCompositionDomain", (g, f, gf), "composite has the wrong domain or codomain"))
    into: dict[str, list[str]] = {}
    for f, (_, c) in arrows.items():
        into.setdefault(c, []).append(f)
    for f in sorted(arrows):
        for g in sorted(a for a, (d, _) in arrows.items() if d == arrows[f][1]):
            if (g, f) not in composition:
                out.append(Violation("MissingComposite", (g, f), "cod(f) = dom(g) but no composite is declared"))
    if out:
        return out

    for f in sorted(arrows):
        d, c = arrows[f]
        if composition[(identities[c], f)] != f or composition[(f, identities[d])] != f:
            out.append(Violation("MissingIdentity", (f,), "identity law fails"))
    for (g, f), gf in sorted(composition.items()):
        for h in sorted(a for a, (d, _) in arrows.items() if d == arrows[g][1]):
            if composition[(h, gf)] != composition[(composition[(h, g)], f)]:
                out.append(Violation("NonAssociative", (h, g, f)))
    return out


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """A finite category: objects, arrows with (dom, cod), identities and a partial composition table.

    ``composition[(g, f)]`` is ``g . f`` and is defined exactly when ``cod(f) == dom(g)``.
    Construction validates every law and raises :class:`ValidationError` on failure.
    """

    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(self, "arrows", {f: tuple(self.arrows[f]) for f in sorted(self.arrows)})
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "composition", dict(self.composition))
        problems = check_category(self.objects, self.arrows, self.identities, self.composition)
        if problems:
            raise ValidationError(problems, "category")

    @classmethod
    def from_tables(cls, objects, arrows, identities, composition=(), name=""):
        """Build a category, filling in every composite that involves an identity."""
        arrows = {f: tuple(dc) for f, dc in dict(arrows).items()}
        comp = dict(composition) if isinstance(composition, Mapping) else {(g, f): gf for g, f, gf in composition}
        for f, (d, c) in arrows.items():
            if c in identities:
                comp.setdefault((identities[c], f), f)
            if d in identities:
                comp.setdefault((f, identities[d]), f)
        return cls(tuple(objects), arrows, dict(identities), comp, name)

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (
            self is other
            or (
                self.objects == other.objects
                and self.arrows == other.arrows
                and self.identities == other.identities
                and self.composition == other.composition
            )
        )

    __hash__ = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteCategory{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    def dom(self, f: str) -> str:
        return self.arrows[f][0]

    def cod(self, f: str) -> str:
        return self.arrows[f][1]

    def id(self, a: str) -> str:
        return self.identities[a]

    def comp(self, g: str, f: str) -> str:
        """``g . f``; raises KeyError when not composable."""
        return self.composition[(g, f)]

    def comp_chain(self, *fs: str) -> str:
        """Compose right to left: ``comp_chain(h, g, f) == h . g . f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.composition[(g, out)]
        return out

    @cached_property
    def _hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        hom: dict[tuple[str, str], list[str]] = {}
        for f, dc in self.arrows.items():
            hom.setdefault(dc, []).append(f)
        return {k: tuple(v) for k, v in hom.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    @cached_property
    def _into(self) -> dict[str, tuple[str, ...]]:
        into: dict[str, list[str]] = {a: [] for a in self.objects}
        for f, (_, c) in self.arrows.items():
            into[c].append(f)
        return {k: tuple(v) for k, v in into.items()}

    @cached_property
    def _out_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for f, (d, _) in self.arrows.items():
            out[d].append(f)
        return {k: tuple(v) for k, v in out.items()}

    def arrows_into(self, b: str) -> tuple[str, ...]:
        return self._into[b]

    def arrows_from(self, a: str) -> tuple[str, ...]:
        return self._out_of[a]

    @cached_property
    def inverses(self) -> dict[str, str]:
        """Two-sided inverse of every invertible arrow."""
        inv = {}
        for f, (d, c) in self.arrows.items():
            for g in self.hom(c, d):
                if self.composition[(g, f)] == self.identities[d] and self.composition[(f, g)] == self.identities[c]:
                    inv[f] = g
                    break
        return inv

    def is_iso(self, f: str) -> bool:
        return f in self.inverses

    def to_json(self) -> dict:
        return {
            "kind": "category",
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [[f, d, c] for f, (d, c) in self.arrows.items()],
            "identities": dict(sorted(self.identities.items())),
            "compose": [[g, f, gf] for (g, f), gf in sorted(self.composition.items())],
        }


def validate_category(raw: Mapping[str, Any]) -> FiniteCategory:
    """Parse a JSON-shaped category table, validating every law.

    Composites involving identities may be omitted; they are filled in.
    Raises :class:`ValidationError` listing each violated law with witnesses.
    """
    arrows = {}
    for entry in raw["arrows"]:
        f, d, c = entry
        arrows[f] = (d, c)
    comp = {}
    bad = []
    for g, f, gf in raw.get("compose", ()):
        if (g, f) in comp and comp[(g, f)] != gf:
            bad.append(Violation("BadCompositionDomain", (g, f), "composite declared twice"))
        comp[(g, f)] = gf
    if bad:
        raise ValidationError(bad, "category")
    return FiniteCategory.from_tables(raw["objects"], arrows, dict(raw["identities"]), comp, raw.get("name", ""))


def is_left_cancellative(C: FiniteCategory) -> Check:
    """Every arrow is monic: ``m.g == m.h`` implies ``g == h``. Witness ``(m, g, h)``."""
    for m in C.arrows:
        seen: dict[str, str] = {}
        for g in C.arrows_into(C.dom(m)):
            mg = C.comp(m, g)
            h = seen.get(mg)
            if h is not None:
                return Check("left_cancellative", False, (m, *sorted((h, g))))
            seen[mg] = g
    return Check("left_cancellative", True)


def isomorphisms_between(C: FiniteCategory, a: str, b: str) -> tuple[str, ...]:
    return tuple(f for f in C.hom(a, b) if f in C.inverses)


def isomorphisms_into(C: FiniteCategory, b: str) -> tuple[str, ...]:
    return tuple(f for f in C.arrows_into(b) if f in C.inverses)


@dataclass(frozen=True)
class SubobjectClass:
    """An isomorphism class of arrows into ``root``, represented by its least member."""

    root: str
    representative: str
    members: frozenset[str]

    def to_json(self):
        return {"root": self.root, "representative": self.representative, "members": sorted(self.members)}


def subobject_members(C: FiniteCategory, m: str) -> frozenset[str]:
    """All ``m.k`` for isomorphisms ``k`` into ``dom(m)``."""
    return frozenset(C.comp(m, k) for k in isomorphisms_into(C, C.dom(m)))


def subobjects_of(C: FiniteCategory, b: str) -> list[SubobjectClass]:
    """Partition the arrows into ``b`` by ``m ~ m'`` iff ``m'.k = m`` for an iso ``k``."""
    lc = is_left_cancellative(C)
    if not lc:
        raise NotLeftCancellative(lc.witness)
    classes = []
    seen: set[str] = set()
    for m in sorted(C.arrows_into(b)):
        if m in seen:
            continue
        members = subobject_members(C, m)
        seen |= members
        classes.append(SubobjectClass(b, min(members), members))
    return classes


@dataclass(frozen=True, eq=False)
class Functor:
    """A functor between finite categories, validated on construction."""

    source: FiniteCategory
    target: FiniteCategory
    obj_map: Mapping[str, str]
    arr_map: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "obj_map", {k: self.obj_map[k] for k in sorted(self.obj_map)})
        object.__setattr__(self, "arr_map", {k: self.arr_map[k] for k in sorted(self.arr_map)})
        problems = check_functor(self.source, self.target, self.obj_map, self.arr_map)
        if problems:
            raise ValidationError(problems, "functor")

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.obj_map == other.obj_map
            and self.arr_map == other.arr_map
            and self.source == other.source
            and self.target == other.target
        )

    __hash__ = None

    def __call__(self, x: str) -> str:
        return self.arr_map[x] if x in self.arr_map else self.obj_map[x]

    def ob(self, a: str) -> str:
        return self.obj_map[a]

    def ar(self, f: str) -> str:
        return self.arr_map[f]

    def to_json(self) -> dict:
        return {
            "kind": "functor",
            "name": self.name,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "objects": dict(self.obj_map),
            "arrows": dict(self.arr_map),
        }


def check_functor(src: FiniteCategory, tgt: FiniteCategory, obj_map, arr_map) -> list[Violation]:
    out = []
    tgt_objects = set(tgt.objects)
    for a in src.objects:
        if obj_map.get(a) not in tgt_objects:
            out.append(Violation("NotTotal", a, "object has no image in the target"))
    for f in src.arrows:
        if arr_map.get(f) not in tgt.arrows:
            out.append(Violation("NotTotal", f, "arrow has no image in the target"))
    if out:
        return out
    for f, (d, c) in src.arrows.items():
        if tgt.arrows[arr_map[f]] != (obj_map[d], obj_map[c]):
            out.append(Violation("DomCodMismatch", f))
    for a, i in src.identities.items():
        if arr_map[i] != tgt.identities[obj_map[a]]:
            out.append(Violation("IdentityNotPreserved", a))
    if out:
        return out
    for (g, f), gf in src.composition.items():
        if tgt.comp(arr_map[g], arr_map[f]) != arr_map[gf]:
            out.append(Violation("CompositionNotPreserved", (g, f)))
    return out


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {f: f for f in C.arrows})


def compose_functors(second: Functor, first: Functor) -> Functor:
    """``second . first``."""
    if not (first.target is second.source or first.target == second.source):
        raise ValueError("functors are not composable")
    return Functor(
        first.source,
        second.target,
        {a: second.ob(b) for a, b in first.obj_map.items()},
        {f: second.ar(g) for f, g in first.arr_map.items()},
    )


def enumerate_functors(C: FiniteCategory, D: FiniteCategory, limit: int = 10**6) -> list[Functor]:
    """Every functor ``C -> D``: objects first, then arrows, checking composites as soon as defined."""
    objs = list(C.objects)
    idents = set(C.identities.values())
    arrows = [f for f in C.arrows if f not in idents]
    out = []
    budget = [limit]

    def consistent(amap, f):
        for (g, h), gh in C.composition.items():
            if f in (g, h, gh) and g in amap and h in amap and gh in amap:
                if D.comp(amap[g], amap[h]) != amap[gh]:
                    return False
        return True

    def go(i, omap, amap):
        if i == len(arrows):
            out.append(Functor(C, D, dict(omap), dict(amap)))
            return
        f = arrows[i]
        for g in D.hom(omap[C.dom(f)], omap[C.cod(f)]):
            budget[0] -= 1
            if budget[0] < 0:
                raise TooLarge(f"more than {limit} candidate functors")
            amap[f] = g
            if consistent(amap, f):
                go(i + 1, omap, amap)
            del amap[f]

    for image in itertools.product(D.objects, repeat=len(objs)):
        omap = dict(zip(objs, image))
        go(0, omap, {C.id(a): D.id(omap[a]) for a in objs})
    return out


def is_isomorphism(F: Functor) -> bool:
    return (
        sorted(F.obj_map.values()) == list(F.target.objects)
        and sorted(F.arr_map.values()) == list(F.target.arrows)
    )


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    """Components ``alpha_X : F X -> G X`` in the target category, natural in ``X``."""

    source: Functor
    target: Functor
    components: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "components", {k: self.components[k] for k in sorted(self.components)})
        problems = check_natural_transformation(self.source, self.target, self.components)
        if problems:
            raise ValidationError(problems, "natural transformation")

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return self.components == other.components and self.source == other.source and self.target == other.target

    __hash__ = None

    def is_iso(self) -> bool:
        D = self.source.target
        return all(D.is_iso(a) for a in self.components.values())

    def to_json(self):
        return {"components": dict(self.components)}


def check_natural_transformation(F: Functor, G: Functor, components) -> list[Violation]:
    if not (F.source == G.source and F.target == G.target):
        return [Violation("EndpointMismatch", None, "functors do not share source and target")]
    C, D = F.source, F.target
    out = []
    for x in C.objects:
        a = components.get(x)
        if a is None or D.arrows.get(a) != (F.ob(x), G.ob(x)):
            out.append(Violation("BadComponent", x))
    if out:
        return out
    for f, (x, y) in C.arrows.items():
        if D.comp(G.ar(f), components[x]) != D.comp(components[y], F.ar(f)):
            out.append(Violation("NotNatural", f))
    return out


def vertical_compose(beta: NaturalTransformation, alpha: NaturalTransformation) -> NaturalTransformation:
    """``beta . alpha`` for ``alpha: F => G``, ``beta: G => H``."""
    D = alpha.source.target
    return NaturalTransformation(
        alpha.source, beta.target, {x: D.comp(beta.components[x], a) for x, a in alpha.components.items()}
    )


def identity_transformation(F: Functor) -> NaturalTransformation:
    D = F.target
    return NaturalTransformation(F, F, {x: D.id(F.ob(x)) for x in F.source.objects})


def find_natural_isomorphism(F: Functor, G: Functor) -> NaturalTransformation | None:
    """Exhaustive search over isomorphism components, pruned by naturality."""
    C, D = F.source, F.target
    order = list(C.objects)
    choice: dict[str, str] = {}

    def consistent(x: str) -> bool:
        for f in C.arrows:
            a, b = C.arrows[f]
            if a in choice and b in choice and (a == x or b == x):
                if D.comp(G.ar(f), choice[a]) != D.comp(choice[b], F.ar(f)):
                    return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for k in isomorphisms_between(D, F.ob(x), G.ob(x)):
            choice[x] = k
            if consistent(x) and go(i + 1):
                return True
            del choice[x]
        return False

    if go(0):
        return NaturalTransformation(F, G, dict(choice))
    return None


def check_weak_equivalence(F: Functor) -> Verdict:
    """Full, faithful and essentially surjective, each with a witness on failure."""
    C, D = F.source, F.target
    full = Check("full", True)
    faithful = Check("faithful", True)
    for x, y in itertools.product(C.objects, repeat=2):
        images: dict[str, str] = {}
        for f in C.hom(x, y):
            g = F.ar(f)
            if g in images and faithful:
                faithful = Check("faithful", False, (x, y, images[g], f))
            images.setdefault(g, f)
        if full:
            missing = [g for g in D.hom(F.ob(x), F.ob(y)) if g not in images]
            if missing:
                full = Check("full", False, (x, y, missing[0]))
    ess = Check("essentially_surjective", True)
    image = set(F.obj_map.values())
    for y in D.objects:
        if not any(isomorphisms_between(D, fx, y) for fx in image):
            ess = Check("essentially_surjective", False, y)
            break
    return Verdict([full, faithful, ess])
