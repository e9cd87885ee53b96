"""Passing between ordered groupoids and left-cancellative categories.

``L`` turns an ordered groupoid into the category of formal composites
"harrow then vertical arrow"; ``G`` turns a left-cancellative category into the
ordered groupoid of subobjects and span classes. ``eta`` and ``kappa`` are the
unit and counit, and the triangle identities are checked as strict equalities.

Generated ids: an arrow of ``L`` is ``"(h|B)"``, an object of ``G`` is ``"[m]"``
and a harrow ``"[m,n]"`` (least representatives), an object of ``gl`` is
``"(B',B)"`` and a harrow ``"(h;B,C)"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from ._verdict import Check, NotLeftCancellative, ValidationError, Verdict, Violation
from .fincat import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    compose_functors,
    find_natural_isomorphism,
    identity_functor,
    is_left_cancellative,
    isomorphisms_into,
    subobjects_of,
)
from .ogpd import (
    DescentWitnesses,
    DoubleFunctor,
    LambdaTransformation,
    OrderedGroupoid,
    compose_double_functors,
    find_horizontal_isomorphism,
    find_max_objects,
    identity_double_functor,
    restrict,
)


def _unique(ids, what):
    if len(set(ids)) != len(ids):
        raise ValueError(f"generated {what} ids collide; rename the input ids")


@dataclass(frozen=True, eq=False, repr=False)
class LCategory(FiniteCategory):
    """``L(G)``, remembering each arrow as a pair ``(harrow, root)``."""

    base: OrderedGroupoid | None = field(default=None, repr=False)
    larrows: Mapping[str, tuple[str, str]] = field(default_factory=dict, repr=False)

    def larrow(self, h: str, root: str) -> str:
        return self._ids[(h, root)]

    @cached_property
    def _ids(self):
        return {v: k for k, v in self.larrows.items()}


def L(G: OrderedGroupoid) -> LCategory:
    """Arrows ``A -> B`` are pairs ``(h: A -> B', B)`` with ``B' <= B``.

    ``(k, C) . (h, B) = (k|cod(h) . h, C)``.
    """
    larrows = {}
    for h, (a, b1) in G.harrows.items():
        for b in G.above_obj(b1):
            larrows[f"({h}|{b})"] = (h, b)
    _unique(list(larrows), "L arrow")
    ids = {v: k for k, v in larrows.items()}
    arrows = {f: (G.dom(h), b) for f, (h, b) in larrows.items()}
    identities = {a: ids[(G.id(a), a)] for a in G.objects}
    composition = {}
    into: dict[str, list[str]] = {}
    for f, (_, b) in arrows.items():
        into.setdefault(b, []).append(f)
    for g, (k, c) in larrows.items():
        for f in into.get(G.dom(k), ()):
            h = larrows[f][0]
            composition[(g, f)] = ids[(G.comp(restrict(G, k, G.cod(h)), h), c)]
    return LCategory(G.objects, arrows, identities, composition, f"L({G.name})", G, larrows)


@dataclass(frozen=True, eq=False, repr=False)
class SubobjectGroupoid(OrderedGroupoid):
    """``G(C)``: subobject classes and span classes of a left-cancellative category.

    ``rep[[m]]`` is the least member ``m``; ``span[[m,n]]`` the least span.
    """

    base: FiniteCategory | None = field(default=None, repr=False)
    rep: Mapping[str, str] = field(default_factory=dict, repr=False)
    class_of: Mapping[str, str] = field(default_factory=dict, repr=False)
    span: Mapping[str, tuple[str, str]] = field(default_factory=dict, repr=False)
    span_class: Mapping[tuple[str, str], str] = field(default_factory=dict, repr=False)

    def sub(self, m: str) -> str:
        """The object ``[m]``."""
        return self.class_of[m]

    def harrow_of(self, m: str, n: str) -> str:
        """The harrow ``[m, n]`` of any span with common domain."""
        return self.span_class[(m, n)]


def G(C: FiniteCategory) -> SubobjectGroupoid:
    lc = is_left_cancellative(C)
    if not lc:
        raise NotLeftCancellative(lc.witness)
    rep, class_of = {}, {}
    for b in C.objects:
        for cls in subobjects_of(C, b):
            oid = f"[{cls.representative}]"
            rep[oid] = cls.representative
            for m in cls.members:
                class_of[m] = oid
    _unique(list(rep), "subobject")

    span, span_class = {}, {}
    for a in C.objects:
        isos = isomorphisms_into(C, a)
        out = C.arrows_from(a)
        for m, n in itertools.product(out, repeat=2):
            if (m, n) in span_class:
                continue
            members = {(C.comp(m, k), C.comp(n, k)) for k in isos}
            least = min(members)
            hid = f"[{least[0]},{least[1]}]"
            span[hid] = least
            for p in members:
                span_class[p] = hid
    _unique(list(span), "span")

    harrows = {h: (class_of[m], class_of[n]) for h, (m, n) in span.items()}
    identities = {o: span_class[(m, m)] for o, m in rep.items()}
    # iso k with m' k = m, for m ~ m'
    reiso = {}
    for m in C.arrows:
        for k in isomorphisms_into(C, C.dom(m)):
            reiso[(C.comp(m, k), m)] = k
    composition = {}
    by_dom: dict[str, list[str]] = {}
    for h, (d, _) in harrows.items():
        by_dom.setdefault(d, []).append(h)
    for f, (k, m) in span.items():
        for g in by_dom[harrows[f][1]]:
            m2, n = span[g]
            h = reiso[(m, m2)]
            composition[(g, f)] = span_class[(k, C.comp(n, h))]

    def factors(n, n2):
        return any(C.comp(n2, h) == n for h in C.hom(C.dom(n), C.dom(n2)))

    obj_order = [(o, o2) for o, o2 in itertools.product(rep, repeat=2) if o != o2 and factors(rep[o], rep[o2])]
    arr_order = []
    for f, g in itertools.product(span, repeat=2):
        (m, n), (m2, n2) = span[f], span[g]
        if f != g and any(
            C.comp(m2, h) == m and C.comp(n2, h) == n for h in C.hom(C.dom(m), C.dom(m2))
        ):
            arr_order.append((f, g))
    return SubobjectGroupoid(
        tuple(rep), harrows, identities, composition, tuple(obj_order), tuple(arr_order),
        f"G({C.name})", C, rep, class_of, span, span_class,
    )


@dataclass(frozen=True, eq=False, repr=False)
class GLGroupoid(OrderedGroupoid):
    """``GL(G)`` in canonical form: objects ``(B', B)`` with ``B' <= B``, harrows ``(h; B, C)``."""

    base: OrderedGroupoid | None = field(default=None, repr=False)
    pair: Mapping[str, tuple[str, str]] = field(default_factory=dict, repr=False)
    triple: Mapping[str, tuple[str, str, str]] = field(default_factory=dict, repr=False)

    def obj(self, lo: str, root: str) -> str:
        return f"({lo},{root})"

    def arr(self, h: str, root_dom: str, root_cod: str) -> str:
        return f"({h};{root_dom},{root_cod})"


def gl(G: OrderedGroupoid) -> GLGroupoid:
    pair = {f"({lo},{b})": (lo, b) for b in G.objects for lo in G.below_obj(b)}
    triple = {}
    for h, (d, c) in G.harrows.items():
        for b, cc in itertools.product(G.above_obj(d), G.above_obj(c)):
            triple[f"({h};{b},{cc})"] = (h, b, cc)
    _unique(list(pair), "gl object")
    _unique(list(triple), "gl harrow")
    harrows = {t: (f"({G.dom(h)},{b})", f"({G.cod(h)},{c})") for t, (h, b, c) in triple.items()}
    identities = {o: f"({G.id(lo)};{b},{b})" for o, (lo, b) in pair.items()}
    by_dom: dict[str, list[str]] = {}
    for t, (d, _) in harrows.items():
        by_dom.setdefault(d, []).append(t)
    composition = {}
    for f, (h, b, c) in triple.items():
        for g in by_dom[harrows[f][1]]:
            k, _, d = triple[g]
            composition[(g, f)] = f"({G.comp(k, h)};{b},{d})"
    obj_order = [(o, o2) for o, o2 in itertools.product(pair, repeat=2)
                 if o != o2 and pair[o][1] == pair[o2][1] and G.le_obj(pair[o][0], pair[o2][0])]
    arr_order = [(f, g) for f, g in itertools.product(triple, repeat=2)
                 if f != g and triple[f][1:] == triple[g][1:] and G.le_arr(triple[f][0], triple[g][0])]
    return GLGroupoid(tuple(pair), harrows, identities, composition, tuple(obj_order), tuple(arr_order),
                      f"GL({G.name})", G, pair, triple)


def rho(Gp: OrderedGroupoid, GLG: SubobjectGroupoid | None = None, target: GLGroupoid | None = None) -> DoubleFunctor:
    """The relabelling ``G(L(G)) -> gl(G)``.

    ``[(h|B)] -> (cod h, B)`` and ``[(h|B), (k|C)] -> (k h^-1; B, C)``.
    It is an isomorphism; that the direct build agrees with ``G . L`` is checked by validation.
    """
    LG_ = GLG.base if GLG is not None else L(Gp)
    GLG = GLG if GLG is not None else G(LG_)
    target = target if target is not None else gl(Gp)
    obj_map = {}
    for o, m in GLG.rep.items():
        h, b = LG_.larrows[m]
        obj_map[o] = target.obj(Gp.cod(h), b)
    harr_map = {}
    for s, (m, n) in GLG.span.items():
        (h, b), (k, c) = LG_.larrows[m], LG_.larrows[n]
        harr_map[s] = target.arr(Gp.comp(k, Gp.inv(h)), b, c)
    return DoubleFunctor(GLG, target, obj_map, harr_map)


def eta(C: FiniteCategory, GC: SubobjectGroupoid | None = None, LGC: LCategory | None = None) -> Functor:
    """``C -> L(G(C))``: ``A -> [1_A]``, ``h: A -> B`` to ``([1_A, h], [1_B])``."""
    GC = GC if GC is not None else G(C)
    LGC = LGC if LGC is not None else L(GC)
    obj_map = {a: GC.sub(C.id(a)) for a in C.objects}
    arr_map = {h: LGC.larrow(GC.harrow_of(C.id(C.dom(h)), h), GC.sub(C.id(C.cod(h)))) for h in C.arrows}
    return Functor(C, LGC, obj_map, arr_map, "eta")


def kappa(Gp: OrderedGroupoid, GL_: GLGroupoid | None = None) -> DoubleFunctor:
    """``gl(G) -> G``: ``(B', B) -> B'``, ``(h; B, C) -> h``."""
    GL_ = GL_ if GL_ is not None else gl(Gp)
    return DoubleFunctor(
        GL_, Gp, {o: lo for o, (lo, _) in GL_.pair.items()}, {t: h for t, (h, _, _) in GL_.triple.items()}, "kappa"
    )


def kappa_descent_witnesses(Gp: OrderedGroupoid) -> DescentWitnesses:
    """Preimages ``(B,B)``, ``(B,C) <= (C,C)`` and ``(B,D) <= (C,D) <= (D,D)``, all with identity harrows."""
    def leg(lo, root):
        return (f"({lo},{root})", Gp.id(lo))

    objects = {b: leg(b, b) for b in Gp.objects}
    vertical = {(b, c): (leg(b, c), leg(c, c)) for c in Gp.objects for b in Gp.below_obj(c)}
    pairs = {
        (b, c, d): (leg(b, d), leg(c, d), leg(d, d))
        for d in Gp.objects for c in Gp.below_obj(d) for b in Gp.below_obj(c)
    }
    return DescentWitnesses(objects, vertical, pairs)


# ---------------------------------------------------------------------------
# morphisms and 2-cells


def L_on_morphisms(F: DoubleFunctor, source: LCategory | None = None, target: LCategory | None = None) -> Functor:
    """``(h, B) -> (F h, F B)``."""
    LS = source if source is not None else L(F.source)
    LT = target if target is not None else L(F.target)
    arr = {f: LT.larrow(F.ar(h), F.ob(b)) for f, (h, b) in LS.larrows.items()}
    return Functor(LS, LT, dict(F.obj_map), arr)


def G_on_morphisms(K: Functor, source: SubobjectGroupoid | None = None, target: SubobjectGroupoid | None = None) -> DoubleFunctor:
    """``[m] -> [K m]``, ``[m, n] -> [K m, K n]``."""
    GS = source if source is not None else G(K.source)
    GT = target if target is not None else G(K.target)
    obj = {o: GT.sub(K.ar(m)) for o, m in GS.rep.items()}
    arr = {s: GT.harrow_of(K.ar(m), K.ar(n)) for s, (m, n) in GS.span.items()}
    return DoubleFunctor(GS, GT, obj, arr)


def gl_on_morphisms(phi: DoubleFunctor, source: GLGroupoid | None = None, target: GLGroupoid | None = None) -> DoubleFunctor:
    """``(B', B) -> (phi B', phi B)``, ``(h; B, C) -> (phi h; phi B, phi C)``."""
    S = source if source is not None else gl(phi.source)
    T = target if target is not None else gl(phi.target)
    obj = {o: T.obj(phi.ob(lo), phi.ob(b)) for o, (lo, b) in S.pair.items()}
    arr = {t: T.arr(phi.ar(h), phi.ob(b), phi.ob(c)) for t, (h, b, c) in S.triple.items()}
    return DoubleFunctor(S, T, obj, arr)


def L_on_2cells(t: LambdaTransformation, source: LCategory | None = None, target: LCategory | None = None) -> NaturalTransformation:
    """Components ``(alpha_X, G X)``."""
    LS = source if source is not None else L(t.source.source)
    LT = target if target is not None else L(t.source.target)
    comps = {x: LT.larrow(a, t.target.ob(x)) for x, a in t.alpha.items()}
    return NaturalTransformation(
        L_on_morphisms(t.source, LS, LT), L_on_morphisms(t.target, LS, LT), comps
    )


def G_on_2cells(theta: NaturalTransformation, source: SubobjectGroupoid | None = None,
                target: SubobjectGroupoid | None = None) -> LambdaTransformation:
    """For ``theta: K => K'``: components ``[K m, K'm . theta_dom m]`` into the mid functor ``[K'm . theta_dom m]``."""
    K, K2 = theta.source, theta.target
    GS = source if source is not None else G(K.source)
    GT = target if target is not None else G(K.target)
    D = K.target

    def tm(m):
        return D.comp(K2.ar(m), theta.components[K.source.dom(m)])

    mid = DoubleFunctor(
        GS, GT,
        {o: GT.sub(tm(m)) for o, m in GS.rep.items()},
        {s: GT.harrow_of(tm(m), tm(n)) for s, (m, n) in GS.span.items()},
    )
    alpha = {o: GT.harrow_of(K.ar(m), tm(m)) for o, m in GS.rep.items()}
    return LambdaTransformation(G_on_morphisms(K, GS, GT), G_on_morphisms(K2, GS, GT), mid, alpha)


# ---------------------------------------------------------------------------
# triangle identities and pseudo-inverses


def _compare(name, got: Mapping[str, str], want: Mapping[str, str]) -> Check:
    for k in sorted(want):
        if got.get(k) != want[k]:
            return Check(name, False, (k, got.get(k), want[k]))
    return Check(name, True)


def check_triangle_identities(X: FiniteCategory | OrderedGroupoid) -> Verdict:
    """For a category ``C``: ``kappa_{G C} . rho . G(eta_C) = 1``.

    For an ordered groupoid ``G``: ``L(kappa_G) . L(rho) . eta_{L G} = 1``.
    Both are compared as exact tables.
    """
    if isinstance(X, OrderedGroupoid):
        LG_ = L(X)
        GLG = G(LG_)
        LGLG = L(GLG)
        e = eta(LG_, GLG, LGLG)
        GL_ = gl(X)
        LGL = L(GL_)
        r = L_on_morphisms(rho(X, GLG, GL_), LGLG, LGL)
        k = L_on_morphisms(kappa(X, GL_), LGL, LG_)
        comp = compose_functors(k, compose_functors(r, e))
        ident = identity_functor(LG_)
        return Verdict([
            _compare("objects", comp.obj_map, ident.obj_map),
            _compare("arrows", comp.arr_map, ident.arr_map),
        ])
    GC = G(X)
    LGC = L(GC)
    e = eta(X, GC, LGC)
    GLGC = G(LGC)
    Ge = G_on_morphisms(e, GC, GLGC)
    GL_ = gl(GC)
    r = rho(GC, GLGC, GL_)
    k = kappa(GC, GL_)
    comp = compose_double_functors(k, compose_double_functors(r, Ge))
    ident = identity_double_functor(GC)
    return Verdict([
        _compare("objects", comp.obj_map, ident.obj_map),
        _compare("harrows", comp.harr_map, ident.harr_map),
    ])


def pseudo_inverse_eta(C: FiniteCategory, GC: SubobjectGroupoid | None = None, LGC: LCategory | None = None) -> Functor:
    """``L(G(C)) -> C``: ``[m] -> dom(m)`` for the least representative ``m``.

    An arrow ``([p, q], [n])`` goes to ``v . mu`` where ``p . mu = m`` is the
    least representative of ``[p]`` and ``q = n v`` for the least representative ``n``.
    """
    GC = GC if GC is not None else G(C)
    LGC = LGC if LGC is not None else L(GC)
    obj = {o: C.dom(m) for o, m in GC.rep.items()}
    arr = {}
    for f, (s, root) in LGC.larrows.items():
        p, q = GC.span[s]
        m = GC.rep[GC.dom(s)]
        n = GC.rep[root]
        mu = next(k for k in C.hom(C.dom(m), C.dom(p)) if C.comp(p, k) == m)
        v = next(k for k in C.hom(C.dom(q), C.dom(n)) if C.comp(n, k) == q)
        arr[f] = C.comp(v, mu)
    return Functor(LGC, C, obj, arr, "eta^-1")


def pseudo_inverse_kappa(Gp: OrderedGroupoid, GL_: GLGroupoid | None = None) -> DoubleFunctor:
    """``G -> gl(G)``: ``B -> (B, hat B)``, ``h -> (h; hat B, hat C)``."""
    mx = find_max_objects(Gp)
    if isinstance(mx, Check):
        raise ValidationError([Violation("NoMaxObjects", mx.witness)], "maximal object structure")
    GL_ = GL_ if GL_ is not None else gl(Gp)
    hat = mx.hat
    return DoubleFunctor(
        Gp, GL_,
        {b: GL_.obj(b, hat[b]) for b in Gp.objects},
        {h: GL_.arr(h, hat[Gp.dom(h)], hat[Gp.cod(h)]) for h in Gp.harrows},
        "kappa^-1",
    )


def check_pseudo_inverse_eta(C: FiniteCategory) -> Verdict:
    """Find natural isomorphisms ``eta^-1 . eta ~ 1`` and ``eta . eta^-1 ~ 1``."""
    GC = G(C)
    LGC = L(GC)
    e = eta(C, GC, LGC)
    ei = pseudo_inverse_eta(C, GC, LGC)
    a = find_natural_isomorphism(compose_functors(ei, e), identity_functor(C))
    b = find_natural_isomorphism(compose_functors(e, ei), identity_functor(LGC))
    return Verdict([
        Check("inverse_after_eta", a is not None, a.components if a else None),
        Check("eta_after_inverse", b is not None, b.components if b else None),
    ])


def check_pseudo_inverse_kappa(Gp: OrderedGroupoid) -> Verdict:
    """``kappa . kappa^-1`` and ``kappa^-1 . kappa`` against identities, by horizontal isomorphism search."""
    GL_ = gl(Gp)
    k = kappa(Gp, GL_)
    ki = pseudo_inverse_kappa(Gp, GL_)
    a = find_horizontal_isomorphism(compose_double_functors(k, ki), identity_double_functor(Gp))
    b = find_horizontal_isomorphism(compose_double_functors(ki, k), identity_double_functor(GL_))
    return Verdict([
        Check("kappa_after_inverse", a is not None, a),
        Check("inverse_after_kappa", b is not None, b),
    ])
