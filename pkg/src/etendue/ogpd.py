"""Ordered groupoids viewed as thin double categories.

Horizontal arrows are the groupoid arrows ("harrows"). A vertical arrow A -> A'
exists exactly when A <= A', and a double cell exists exactly when its two
harrows are order-related, so neither is stored: the two partial orders are the
single source of truth.

Also here: double functors, the ordered groupoid of double functors and
horizontal transformations between two ordered groupoids, and the algebra of
transformations of the form ``F => G' <= G``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

from ._verdict import Check, TooLarge, ValidationError, Verdict, Violation
from .fincat import FiniteCategory, check_category, check_functor


def _closure(elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> dict[str, set[str]]:
    """Reflexive-transitive closure, returned as ``x -> {y : y <= x}``."""
    below = {x: {x} for x in elements}
    for lo, hi in pairs:
        below[hi].add(lo)
    changed = True
    while changed:
        changed = False
        for x, ds in below.items():
            extra = set()
            for d in ds:
                extra |= below[d]
            if not extra <= ds:
                ds |= extra
                changed = True
    return below


def check_ordered_groupoid(objects, harrows, identities, composition, obj_order, arr_order):
    """All violations of the ordered groupoid axioms, plus the derived tables if there are none.

    Returns ``(violations, below_obj, below_arr, inverse, restriction)``.
    """
    objects = tuple(objects)
    out = check_category(objects, harrows, identities, composition)
    if out:
        return out, None, None, None, None
    inverse = {}
    for f, (d, c) in harrows.items():
        for g, dc in harrows.items():
            if dc == (c, d) and composition[(g, f)] == identities[d] and composition[(f, g)] == identities[c]:
                inverse[f] = g
                break
        else:
            out.append(Violation("NotInvertible", f))
    for lo, hi in arr_order:
        if lo not in harrows or hi not in harrows:
            out.append(Violation("UnknownId", (lo, hi), "order names an undeclared harrow"))
    for lo, hi in obj_order:
        if lo not in identities or hi not in identities:
            out.append(Violation("UnknownId", (lo, hi), "order names an undeclared object"))
    if out:
        return out, None, None, None, None

    pairs = list(arr_order) + [(identities[lo], identities[hi]) for lo, hi in obj_order]
    below_arr = _closure(harrows, pairs)
    for hi, los in below_arr.items():
        for lo in los:
            if lo != hi and hi in below_arr[lo]:
                out.append(Violation("OrderNotAntisymmetric", tuple(sorted((lo, hi)))))
    if out:
        return sorted(set(out), key=str), None, None, None, None
    object_of = {i: a for a, i in identities.items()}
    below_obj = {a: {object_of[i] for i in below_arr[identities[a]] if i in object_of} for a in objects}

    for hi, los in sorted(below_arr.items()):
        for lo in sorted(los):
            (d, c), (d2, c2) = harrows[lo], harrows[hi]
            if d not in below_obj[d2] or c not in below_obj[c2]:
                out.append(Violation("FrameViolation", (lo, hi), "f <= g needs dom f <= dom g and cod f <= cod g"))
            if inverse[lo] not in below_arr[inverse[hi]]:
                out.append(Violation("OrderNotPreserved", (lo, hi), "inverses are not monotone"))
    if out:
        return out, None, None, None, None

    by_dom: dict[str, list[tuple[str, str]]] = {}
    for hi, los in below_arr.items():
        for lo in los:
            by_dom.setdefault(harrows[lo][0], []).append((lo, hi))
    for hi, los in sorted(below_arr.items()):
        for lo in sorted(los):
            for a, b in by_dom.get(harrows[lo][1], ()):
                if harrows[b][0] != harrows[hi][1]:
                    continue
                if composition[(a, lo)] not in below_arr[composition[(b, hi)]]:
                    out.append(Violation("OrderNotPreserved", ((lo, hi), (a, b)), "composition is not monotone"))
    if out:
        return out, None, None, None, None

    restriction = {}
    for f in sorted(harrows):
        d = harrows[f][0]
        for a in sorted(below_obj[d]):
            cands = sorted(g for g in below_arr[f] if harrows[g][0] == a)
            if not cands:
                out.append(Violation("RestrictionMissing", (f, a)))
            elif len(cands) > 1:
                out.append(Violation("RestrictionNotUnique", (f, a, cands)))
            else:
                restriction[(f, a)] = cands[0]
    return out, below_obj, below_arr, inverse, restriction


@dataclass(frozen=True, eq=False)
class OrderedGroupoid:
    """A finite groupoid with partial orders on objects and harrows.

    ``obj_order`` and ``arr_order`` may be any generating pairs ``(lower, upper)``;
    the reflexive-transitive closure is taken, object pairs are added as pairs of
    identities, and every axiom is then checked. The restriction table
    ``(f, A') -> f|A'`` is materialized at construction.
    """

    objects: tuple[str, ...]
    harrows: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    obj_order: Any = ()
    arr_order: Any = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(self, "harrows", {f: tuple(self.harrows[f]) for f in sorted(self.harrows)})
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "composition", dict(self.composition))
        problems, below_obj, below_arr, inverse, restriction = check_ordered_groupoid(
            self.objects, self.harrows, self.identities, self.composition, self.obj_order, self.arr_order
        )
        if problems:
            raise ValidationError(problems, "ordered groupoid")
        object.__setattr__(self, "_below_obj", {a: frozenset(v) for a, v in below_obj.items()})
        object.__setattr__(self, "_below_arr", {a: frozenset(v) for a, v in below_arr.items()})
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "restriction", restriction)
        object.__setattr__(self, "obj_order", frozenset((lo, hi) for hi, v in below_obj.items() for lo in v))
        object.__setattr__(self, "arr_order", frozenset((lo, hi) for hi, v in below_arr.items() for lo in v))

    @classmethod
    def from_tables(cls, objects, harrows, identities, composition=(), obj_order=(), arr_order=(), name=""):
        """Build from tables, filling in every composite that involves an identity."""
        harrows = {f: tuple(dc) for f, dc in dict(harrows).items()}
        comp = dict(composition) if isinstance(composition, Mapping) else {(g, f): gf for g, f, gf in composition}
        for f, (d, c) in harrows.items():
            if c in identities:
                comp.setdefault((identities[c], f), f)
            if d in identities:
                comp.setdefault((f, identities[d]), f)
        return cls(tuple(objects), harrows, dict(identities), comp, tuple(obj_order), tuple(arr_order), name)

    @classmethod
    def discrete_order(cls, C: FiniteCategory, name=""):
        """A groupoid with the trivial (equality) order."""
        return cls(C.objects, C.arrows, C.identities, C.composition, (), (), name or C.name)

    def __eq__(self, other):
        if not isinstance(other, OrderedGroupoid):
            return NotImplemented
        return self is other or (
            self.objects == other.objects
            and self.harrows == other.harrows
            and self.identities == other.identities
            and self.composition == other.composition
            and self.arr_order == other.arr_order
        )

    __hash__ = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<OrderedGroupoid{label}: {len(self.objects)} objects, {len(self.harrows)} harrows>"

    @cached_property
    def horizontal(self) -> FiniteCategory:
        """The underlying groupoid as a category."""
        return FiniteCategory(self.objects, self.harrows, self.identities, self.composition, self.name)

    def dom(self, f: str) -> str:
        return self.harrows[f][0]

    def cod(self, f: str) -> str:
        return self.harrows[f][1]

    def id(self, a: str) -> str:
        return self.identities[a]

    def comp(self, g: str, f: str) -> str:
        return self.composition[(g, f)]

    def inv(self, f: str) -> str:
        return self.inverse[f]

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self.horizontal.hom(a, b)

    def le_obj(self, a: str, b: str) -> bool:
        return a in self._below_obj[b]

    def le_arr(self, f: str, g: str) -> bool:
        return f in self._below_arr[g]

    def below_obj(self, a: str) -> frozenset[str]:
        return self._below_obj[a]

    def below_arr(self, f: str) -> frozenset[str]:
        return self._below_arr[f]

    @cached_property
    def _above_obj(self) -> dict[str, frozenset[str]]:
        above: dict[str, set[str]] = {a: set() for a in self.objects}
        for lo, hi in self.obj_order:
            above[lo].add(hi)
        return {a: frozenset(v) for a, v in above.items()}

    def above_obj(self, a: str) -> frozenset[str]:
        return self._above_obj[a]

    def is_trivially_ordered(self) -> bool:
        return all(lo == hi for lo, hi in self.arr_order)

    def to_json(self) -> dict:
        return {
            "kind": "ordered_groupoid",
            "name": self.name,
            "objects": list(self.objects),
            "harrows": [[f, d, c] for f, (d, c) in self.harrows.items()],
            "identities": dict(sorted(self.identities.items())),
            "compose": [[g, f, gf] for (g, f), gf in sorted(self.composition.items())],
            "object_order": sorted([lo, hi] for lo, hi in self.obj_order if lo != hi),
            "harrow_order": sorted([lo, hi] for lo, hi in self.arr_order if lo != hi and lo not in self.identities.values()),
        }


def validate_ordered_groupoid(raw: Mapping[str, Any]) -> OrderedGroupoid:
    """Parse a JSON-shaped ordered groupoid, checking every axiom."""
    harrows = {f: (d, c) for f, d, c in raw["harrows"]}
    return OrderedGroupoid.from_tables(
        raw["objects"],
        harrows,
        dict(raw["identities"]),
        [tuple(t) for t in raw.get("compose", ())],
        [tuple(p) for p in raw.get("object_order", ())],
        [tuple(p) for p in raw.get("harrow_order", ())],
        raw.get("name", ""),
    )


def restrict(G: OrderedGroupoid, f: str, a: str) -> str:
    """The unique ``f' <= f`` with domain ``a``."""
    try:
        return G.restriction[(f, a)]
    except KeyError:
        raise ValidationError([Violation("NotBelowDomain", (f, a))], "restriction") from None


def corestrict(G: OrderedGroupoid, f: str, b: str) -> str:
    """The unique ``f' <= f`` with codomain ``b``, as ``restrict(f^-1, b)^-1``."""
    if (G.inv(f), b) not in G.restriction:
        raise ValidationError([Violation("NotBelowCodomain", (f, b))], "corestriction")
    return G.inv(G.restriction[(G.inv(f), b)])


@dataclass(frozen=True)
class MaxObjectStructure:
    """Each object lies below exactly one maximal object, ``hat[a]``."""

    groupoid: OrderedGroupoid = field(repr=False)
    hat: Mapping[str, str]

    def to_json(self):
        return {"hat": dict(self.hat)}


def maximal_objects(G: OrderedGroupoid) -> list[str]:
    return [a for a in G.objects if G.above_obj(a) == {a}]


def find_max_objects(G: OrderedGroupoid) -> MaxObjectStructure | Check:
    """The hat map if every object has a unique maximal object above it.

    On failure returns a failed :class:`Check` whose witness is the object and
    the maximal objects found above it (zero or several).
    """
    maxima = set(maximal_objects(G))
    hat = {}
    for a in G.objects:
        tops = sorted(G.above_obj(a) & maxima)
        if len(tops) != 1:
            return Check("max_objects", False, (a, tops))
        hat[a] = tops[0]
    return MaxObjectStructure(G, hat)


@dataclass(frozen=True, eq=False)
class DoubleFunctor:
    """An order-preserving functor of ordered groupoids."""

    source: OrderedGroupoid
    target: OrderedGroupoid
    obj_map: Mapping[str, str]
    harr_map: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "obj_map", {k: self.obj_map[k] for k in sorted(self.obj_map)})
        object.__setattr__(self, "harr_map", {k: self.harr_map[k] for k in sorted(self.harr_map)})
        problems = check_double_functor(self.source, self.target, self.obj_map, self.harr_map)
        if problems:
            raise ValidationError(problems, "double functor")

    def __eq__(self, other):
        if not isinstance(other, DoubleFunctor):
            return NotImplemented
        return (
            self.obj_map == other.obj_map
            and self.harr_map == other.harr_map
            and self.source == other.source
            and self.target == other.target
        )

    __hash__ = None

    def ob(self, a: str) -> str:
        return self.obj_map[a]

    def ar(self, f: str) -> str:
        return self.harr_map[f]

    @property
    def key(self) -> tuple:
        return (tuple(self.obj_map.items()), tuple(self.harr_map.items()))

    def to_json(self) -> dict:
        return {
            "kind": "double_functor",
            "name": self.name,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "objects": dict(self.obj_map),
            "harrows": dict(self.harr_map),
        }


def check_double_functor(src: OrderedGroupoid, tgt: OrderedGroupoid, obj_map, harr_map) -> list[Violation]:
    out = check_functor(src.horizontal, tgt.horizontal, obj_map, harr_map)
    if out:
        return out
    for lo, hi in sorted(src.arr_order):
        if not tgt.le_arr(harr_map[lo], harr_map[hi]):
            out.append(Violation("OrderNotPreserved", (lo, hi)))
    return out


def identity_double_functor(G: OrderedGroupoid) -> DoubleFunctor:
    return DoubleFunctor(G, G, {a: a for a in G.objects}, {f: f for f in G.harrows})


def compose_double_functors(second: DoubleFunctor, first: DoubleFunctor) -> DoubleFunctor:
    """``second . first``."""
    if first.target != second.source:
        raise ValidationError([Violation("NotComposable", None)], "double functor composite")
    return DoubleFunctor(
        first.source,
        second.target,
        {a: second.ob(b) for a, b in first.obj_map.items()},
        {f: second.ar(g) for f, g in first.harr_map.items()},
    )


def is_double_isomorphism(F: DoubleFunctor) -> bool:
    if sorted(F.obj_map.values()) != list(F.target.objects) or sorted(F.harr_map.values()) != list(F.target.harrows):
        return False
    back = {v: k for k, v in F.harr_map.items()}
    return all(F.source.le_arr(back[lo], back[hi]) for lo, hi in F.target.arr_order)


@dataclass(frozen=True)
class DescentWitnesses:
    """Preimage hints for the three surjectivity checks.

    ``objects[Y] = (X, h)`` with ``h: F X -> Y``;
    ``vertical[(Y, Y')] = ((X, h), (X', h'))``;
    ``pairs[(Y, Y', Y'')] = ((X, h), (X', h'), (X'', h''))``.
    """

    objects: Mapping[str, tuple[str, str]]
    vertical: Mapping[tuple[str, str], tuple]
    pairs: Mapping[tuple[str, str, str], tuple]


def _comma_ok(F: DoubleFunctor, legs) -> bool:
    S, T = F.source, F.target
    for (x, h) in legs:
        if x not in S.identities or h not in T.harrows or T.dom(h) != F.ob(x):
            return False
    for (x, h), (x2, h2) in zip(legs, legs[1:]):
        if not (S.le_obj(x, x2) and T.le_arr(h, h2)):
            return False
    return True


def check_double_weak_equivalence(F: DoubleFunctor, witnesses: DescentWitnesses | None = None) -> Verdict:
    """Essential surjectivity (three surjections on comma data) and full faithfulness.

    Comma data over a target object ``Y`` is a pair ``(X, h: F X -> Y)``; over
    ``Y <= Y'`` it is a vertical arrow ``X <= X'`` with a cell ``h <= h'``; over
    ``Y <= Y' <= Y''`` it is a composable pair of such. Hinted witnesses are
    verified first; otherwise preimages are searched, preferring identities.

    Full faithfulness: bijection on harrows over every pair of source objects,
    and ``h <= h'`` iff ``F h <= F h'`` whenever ``X <= X'`` and ``Y <= Y'`` frame them.
    """
    S, T = F.source, F.target
    ident = set(T.identities.values())
    over: dict[str, list[tuple[str, str]]] = {y: [] for y in T.objects}
    for x in S.objects:
        for h in T.horizontal.arrows_from(F.ob(x)):
            over[T.cod(h)].append((x, h))
    for y in over:
        over[y].sort(key=lambda xh: (xh[1] not in ident, xh))

    def find(ys):
        hint = None
        if witnesses is not None:
            table = (witnesses.objects, witnesses.vertical, witnesses.pairs)[len(ys) - 1]
            hint = table.get(ys[0] if len(ys) == 1 else tuple(ys))
            if hint is not None:
                legs = [hint] if len(ys) == 1 else list(hint)
                if _comma_ok(F, legs) and all(T.cod(h) == y for (_, h), y in zip(legs, ys)):
                    return hint
        for legs in itertools.product(*(over[y] for y in ys)):
            if _comma_ok(F, list(legs)):
                return legs[0] if len(ys) == 1 else tuple(legs)
        return None

    checks = []
    found_o = {}
    missing = None
    for y in T.objects:
        w = find([y])
        if w is None:
            missing = y
            break
        found_o[y] = w
    checks.append(Check("objects_surjective", missing is None, missing if missing is not None else found_o))

    found_v = {}
    missing = None
    for lo, hi in sorted(T.obj_order):
        w = find([lo, hi])
        if w is None:
            missing = (lo, hi)
            break
        found_v[f"{lo}<={hi}"] = w
    checks.append(Check("vertical_surjective", missing is None, missing if missing is not None else found_v))

    found_p = {}
    missing = None
    for c in T.objects:
        for b in sorted(T.below_obj(c)):
            for a in sorted(T.below_obj(b)):
                w = find([a, b, c])
                if w is None:
                    missing = (a, b, c)
                    break
                found_p[f"{a}<={b}<={c}"] = w
            if missing:
                break
        if missing:
            break
    checks.append(Check("pairs_surjective", missing is None, missing if missing is not None else found_p))

    bij = Check("harrow_bijection", True)
    for x, y in itertools.product(S.objects, repeat=2):
        seen: dict[str, str] = {}
        for h in S.hom(x, y):
            if F.ar(h) in seen:
                bij = Check("harrow_bijection", False, (x, y, seen[F.ar(h)], h))
                break
            seen[F.ar(h)] = h
        if not bij:
            break
        gap = [k for k in T.hom(F.ob(x), F.ob(y)) if k not in seen]
        if gap:
            bij = Check("harrow_bijection", False, (x, y, gap[0]))
            break
    checks.append(bij)

    refl = Check("order_reflecting", True)
    for h, h2 in itertools.product(S.harrows, repeat=2):
        if S.le_obj(S.dom(h), S.dom(h2)) and S.le_obj(S.cod(h), S.cod(h2)):
            if T.le_arr(F.ar(h), F.ar(h2)) and not S.le_arr(h, h2):
                refl = Check("order_reflecting", False, (h, h2))
                break
    checks.append(refl)
    return Verdict(checks)


# ---------------------------------------------------------------------------
# the ordered groupoid of double functors and horizontal transformations


def enumerate_double_functors(G: OrderedGroupoid, H: OrderedGroupoid, limit: int = 10**6) -> list[DoubleFunctor]:
    """Every double functor ``G -> H``, by backtracking over object then harrow images."""
    budget = [limit]

    def spend():
        budget[0] -= 1
        if budget[0] < 0:
            raise TooLarge(f"more than {limit} candidate maps from {G!r} to {H!r}")

    objs = list(G.objects)
    arrs = [f for f in G.harrows if f not in set(G.identities.values())]
    results = []
    omap: dict[str, str] = {}

    def obj_ok(a):
        for b, fb in omap.items():
            if G.le_obj(a, b) and not H.le_obj(omap[a], fb):
                return False
            if G.le_obj(b, a) and not H.le_obj(fb, omap[a]):
                return False
        return True

    def arrows(i, amap):
        if i == len(arrs):
            try:
                results.append(DoubleFunctor(G, H, dict(omap), dict(amap)))
            except ValidationError:
                pass
            return
        f = arrs[i]
        d, c = G.harrows[f]
        for k in H.hom(omap[d], omap[c]):
            spend()
            amap[f] = k
            if _arrow_consistent(G, H, amap, f):
                arrows(i + 1, amap)
            del amap[f]

    def objects(i):
        if i == len(objs):
            amap = {G.id(a): H.id(omap[a]) for a in objs}
            arrows(0, amap)
            return
        for b in H.objects:
            spend()
            omap[objs[i]] = b
            if obj_ok(objs[i]):
                objects(i + 1)
            del omap[objs[i]]

    objects(0)
    return results


def _arrow_consistent(G, H, amap, f) -> bool:
    for g, kg in amap.items():
        for a, b in ((f, g), (g, f)):
            if G.cod(b) == G.dom(a):
                ab = G.comp(a, b)
                if ab in amap and H.comp(amap[a], amap[b]) != amap[ab]:
                    return False
        if G.le_arr(f, g) and not H.le_arr(amap[f], kg):
            return False
        if G.le_arr(g, f) and not H.le_arr(kg, amap[f]):
            return False
    inv = G.inv(f)
    if inv in amap and amap[inv] != H.inv(amap[f]):
        return False
    return True


def horizontal_transformations(F: DoubleFunctor, K: DoubleFunctor) -> list[dict[str, str]]:
    """Component maps ``X -> alpha_X : F X -> K X`` that are natural and vertically functorial."""
    return list(iter_horizontal_transformations(F, K))


def find_horizontal_isomorphism(F: DoubleFunctor, K: DoubleFunctor) -> dict[str, str] | None:
    """First horizontal transformation ``F => K``; in a groupoid every one is invertible."""
    return next(iter_horizontal_transformations(F, K), None)


def iter_horizontal_transformations(F: DoubleFunctor, K: DoubleFunctor):
    G, H = F.source, F.target
    objs = list(G.objects)
    comp: dict[str, str] = {}

    def ok(x):
        for y, ay in comp.items():
            for h in G.hom(x, y):
                if H.comp(K.ar(h), comp[x]) != H.comp(ay, F.ar(h)):
                    return False
            for h in G.hom(y, x):
                if H.comp(K.ar(h), ay) != H.comp(comp[x], F.ar(h)):
                    return False
            if G.le_obj(x, y) and not H.le_arr(comp[x], ay):
                return False
            if G.le_obj(y, x) and not H.le_arr(ay, comp[x]):
                return False
        return True

    def go(i):
        if i == len(objs):
            yield dict(comp)
            return
        x = objs[i]
        for a in H.hom(F.ob(x), K.ob(x)):
            comp[x] = a
            if ok(x):
                yield from go(i + 1)
            del comp[x]

    yield from go(0)


def is_horizontal_transformation(F: DoubleFunctor, K: DoubleFunctor, components: Mapping[str, str]) -> bool:
    G, H = F.source, F.target
    for x in G.objects:
        a = components.get(x)
        if a is None or H.harrows.get(a) != (F.ob(x), K.ob(x)):
            return False
    for h, (x, y) in G.harrows.items():
        if H.comp(K.ar(h), components[x]) != H.comp(components[y], F.ar(h)):
            return False
    return all(H.le_arr(components[lo], components[hi]) for lo, hi in G.obj_order)


def functor_le(F: DoubleFunctor, K: DoubleFunctor) -> bool:
    """Pointwise order on double functors with the same endpoints."""
    H = F.target
    return all(H.le_obj(F.ob(a), K.ob(a)) for a in F.source.objects) and all(
        H.le_arr(F.ar(f), K.ar(f)) for f in F.source.harrows
    )


@dataclass(frozen=True, eq=False, repr=False)
class HomOrderedGroupoid(OrderedGroupoid):
    """Double functors ``G -> H`` as objects, horizontal transformations as harrows.

    ``functors[id]`` and ``transformations[id] = (source id, target id, components)``
    decode the ids; transformations are ordered pointwise.
    """

    functors: Mapping[str, DoubleFunctor] = field(default_factory=dict, repr=False)
    transformations: Mapping[str, tuple[str, str, Mapping[str, str]]] = field(default_factory=dict, repr=False)

    def functor_id(self, F: DoubleFunctor) -> str:
        return self._functor_ids[F.key]

    @cached_property
    def _functor_ids(self):
        return {F.key: i for i, F in self.functors.items()}

    @cached_property
    def _transformation_ids(self):
        return {(s, t, tuple(sorted(c.items()))): i for i, (s, t, c) in self.transformations.items()}

    def transformation_id(self, source: str, target: str, components: Mapping[str, str]) -> str:
        return self._transformation_ids[(source, target, tuple(sorted(components.items())))]


def hom_ordered_groupoid(G: OrderedGroupoid, H: OrderedGroupoid, limit: int = 10**6) -> HomOrderedGroupoid:
    """The ordered groupoid of double functors ``G -> H`` and horizontal transformations."""
    functors = enumerate_double_functors(G, H, limit)
    width = len(str(max(len(functors) - 1, 0)))
    fids = {f"F{i:0{width}d}": F for i, F in enumerate(functors)}
    trans = {}
    harrows = {}
    identities = {}
    for (i, F), (j, K) in itertools.product(fids.items(), repeat=2):
        for n, comps in enumerate(horizontal_transformations(F, K)):
            t = f"{i}>{j}#{n}"
            trans[t] = (i, j, comps)
            harrows[t] = (i, j)
            if i == j and all(c == H.id(F.ob(x)) for x, c in comps.items()):
                identities[i] = t
    lookup = {(s, t, tuple(sorted(c.items()))): k for k, (s, t, c) in trans.items()}
    composition = {}
    for a, (i, j, ca) in trans.items():
        for b, (j2, k, cb) in trans.items():
            if j2 != j:
                continue
            cc = {x: H.comp(cb[x], ca[x]) for x in G.objects}
            composition[(b, a)] = lookup[(i, k, tuple(sorted(cc.items())))]
    le = {(i, j) for (i, F), (j, K) in itertools.product(fids.items(), repeat=2) if functor_le(F, K)}
    obj_order = sorted(p for p in le if p[0] != p[1])
    arr_order = [
        (a, b)
        for (a, (i, j, ca)), (b, (k, l, cb)) in itertools.product(trans.items(), repeat=2)
        if a != b and (i, k) in le and (j, l) in le and all(H.le_arr(ca[x], cb[x]) for x in G.objects)
    ]
    return HomOrderedGroupoid(
        tuple(fids), harrows, identities, composition, tuple(obj_order), tuple(arr_order),
        f"hom({G.name},{H.name})", fids, trans,
    )


def lift_restriction(hom: HomOrderedGroupoid, alpha: str, sub: str) -> str:
    """Restrict a transformation ``alpha: F => K`` to ``F' <= F`` componentwise.

    The components are ``alpha_X | F'X``; the new codomain functor ``K'`` sends
    ``X`` to their codomains and ``h`` to ``K h`` restricted to ``K'X``, which
    completes each naturality square by the lifting property of the target.
    """
    H = hom.functors[sub].target
    i, j, comps = hom.transformations[alpha]
    Fs = hom.functors[sub]
    K = hom.functors[j]
    new = {x: restrict(H, a, Fs.ob(x)) for x, a in comps.items()}
    kobj = {x: H.cod(a) for x, a in new.items()}
    karr = {h: restrict(H, K.ar(h), kobj[Fs.source.dom(h)]) for h in Fs.source.harrows}
    Ks = DoubleFunctor(Fs.source, H, kobj, karr)
    return hom.transformation_id(sub, hom.functor_id(Ks), new)


# ---------------------------------------------------------------------------
# transformations F => G' <= G


@dataclass(frozen=True, eq=False)
class LambdaTransformation:
    """A horizontal transformation ``alpha: F => G'`` followed by ``G' <= G``."""

    source: DoubleFunctor
    target: DoubleFunctor
    mid: DoubleFunctor
    alpha: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "alpha", {k: self.alpha[k] for k in sorted(self.alpha)})
        out = []
        if not (self.source.source == self.target.source == self.mid.source
                and self.source.target == self.target.target == self.mid.target):
            out.append(Violation("EndpointMismatch", None))
        elif not is_horizontal_transformation(self.source, self.mid, self.alpha):
            out.append(Violation("NotHorizontalTransformation", dict(self.alpha)))
        elif not functor_le(self.mid, self.target):
            out.append(Violation("MidNotBelowTarget", None))
        if out:
            raise ValidationError(out, "lambda transformation")

    def __eq__(self, other):
        if not isinstance(other, LambdaTransformation):
            return NotImplemented
        return (self.alpha == other.alpha and self.source == other.source
                and self.mid == other.mid and self.target == other.target)

    __hash__ = None

    def to_json(self):
        return {"alpha": dict(self.alpha), "mid": self.mid.to_json()}


def lambda_identity(F: DoubleFunctor) -> LambdaTransformation:
    H = F.target
    return LambdaTransformation(F, F, F, {x: H.id(F.ob(x)) for x in F.source.objects})


def restricted_functor(K: DoubleFunctor, objects: Mapping[str, str]) -> DoubleFunctor:
    """The functor below ``K`` with the given object values: ``h -> K h | obj(dom h)``."""
    H = K.target
    arr = {h: restrict(H, K.ar(h), objects[K.source.dom(h)]) for h in K.source.harrows}
    return DoubleFunctor(K.source, H, dict(objects), arr)


def lambda_vertical_compose(t2: LambdaTransformation, t1: LambdaTransformation) -> LambdaTransformation:
    """``t2 . t1``: restrict ``t2``'s horizontal part to ``t1``'s mid functor, then compose."""
    if t1.target != t2.source:
        raise ValidationError([Violation("NotComposable", None)], "lambda composite")
    H = t1.source.target
    beta = {x: restrict(H, b, t1.mid.ob(x)) for x, b in t2.alpha.items()}
    mid = restricted_functor(t2.mid, {x: H.cod(b) for x, b in beta.items()})
    comps = {x: H.comp(beta[x], t1.alpha[x]) for x in beta}
    return LambdaTransformation(t1.source, t2.target, mid, comps)


def lambda_whisker_left(K: DoubleFunctor, t: LambdaTransformation) -> LambdaTransformation:
    """``K t = (K alpha, K G' <= K G)``."""
    if t.source.target != K.source:
        raise ValidationError([Violation("NotComposable", None)], "whiskering")
    return LambdaTransformation(
        compose_double_functors(K, t.source),
        compose_double_functors(K, t.target),
        compose_double_functors(K, t.mid),
        {x: K.ar(a) for x, a in t.alpha.items()},
    )


def lambda_whisker_right(t: LambdaTransformation, F: DoubleFunctor) -> LambdaTransformation:
    """``t F = (alpha F, G' F <= G F)``."""
    if F.target != t.source.source:
        raise ValidationError([Violation("NotComposable", None)], "whiskering")
    return LambdaTransformation(
        compose_double_functors(t.source, F),
        compose_double_functors(t.target, F),
        compose_double_functors(t.mid, F),
        {x: t.alpha[F.ob(x)] for x in F.source.objects},
    )


def lambda_horizontal_compose(s: LambdaTransformation, t: LambdaTransformation) -> LambdaTransformation:
    """For ``t: F => G`` and ``s: K => K''``: ``(s G) . (K t)``, a transformation ``K F => K'' G``."""
    return lambda_vertical_compose(lambda_whisker_right(s, t.target), lambda_whisker_left(s.source, t))


def lambda_transformations(F: DoubleFunctor, K: DoubleFunctor, functors: Iterable[DoubleFunctor]) -> list[LambdaTransformation]:
    """Every transformation ``F => G' <= K`` with ``G'`` drawn from ``functors``."""
    out = []
    for mid in functors:
        if functor_le(mid, K):
            for comps in horizontal_transformations(F, mid):
                out.append(LambdaTransformation(F, K, mid, comps))
    return out
