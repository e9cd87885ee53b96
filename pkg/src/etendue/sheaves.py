"""Finite presheaves on categories and on ordered groupoids, and the sheaf condition.

Actions are contravariant: for ``f: A -> B`` the action is a dict from
``values[B]`` to ``values[A]``. A double presheaf additionally has a vertical
action ``values[A] -> values[A']`` for every ``A' <= A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._verdict import Check, TooLarge, Verdict
from .bridge import L, LCategory, SubobjectGroupoid
from .bridge import G as G_of
from .fincat import FiniteCategory
from .ogpd import OrderedGroupoid
from .topology import EhresmannTopology, GrothendieckTopology, Sieve, ehresmann_to_grothendieck


def _freeze_values(values):
    return {a: tuple(values[a]) for a in sorted(values)}


def _freeze_actions(actions):
    return {k: dict(actions[k]) for k in sorted(actions)}


@dataclass(frozen=True, eq=False)
class Presheaf:
    """``values[A]`` is a tuple of element ids; ``actions[f]`` maps ``values[cod f]`` to ``values[dom f]``."""

    base: FiniteCategory = field(repr=False)
    values: Mapping[str, tuple[str, ...]]
    actions: Mapping[str, Mapping[str, str]]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze_values(self.values))
        object.__setattr__(self, "actions", _freeze_actions(self.actions))

    def __eq__(self, other):
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self.values == other.values and self.actions == other.actions and self.base == other.base

    __hash__ = None

    def act(self, f: str, x: str) -> str:
        return self.actions[f][x]

    def to_json(self):
        return {
            "kind": "presheaf",
            "name": self.name,
            "base": self.base.to_json(),
            "values": {a: list(v) for a, v in self.values.items()},
            "actions": {f: dict(sorted(m.items())) for f, m in self.actions.items()},
        }


@dataclass(frozen=True, eq=False)
class DoublePresheaf:
    """Horizontal actions per harrow; vertical actions ``v_actions[(A', A)]: values[A] -> values[A']``."""

    base: OrderedGroupoid = field(repr=False)
    values: Mapping[str, tuple[str, ...]]
    h_actions: Mapping[str, Mapping[str, str]]
    v_actions: Mapping[tuple[str, str], Mapping[str, str]]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze_values(self.values))
        object.__setattr__(self, "h_actions", _freeze_actions(self.h_actions))
        object.__setattr__(self, "v_actions", _freeze_actions(self.v_actions))

    def __eq__(self, other):
        if not isinstance(other, DoublePresheaf):
            return NotImplemented
        return (self.values == other.values and self.h_actions == other.h_actions
                and self.v_actions == other.v_actions and self.base == other.base)

    __hash__ = None

    def to_json(self):
        return {
            "kind": "double_presheaf",
            "name": self.name,
            "base": self.base.to_json(),
            "values": {a: list(v) for a, v in self.values.items()},
            "h_actions": {f: dict(sorted(m.items())) for f, m in self.h_actions.items()},
            "v_actions": [[lo, hi, dict(sorted(m.items()))] for (lo, hi), m in self.v_actions.items()],
        }


def _typed(values, actions, expected) -> Check:
    """Each action is a total function between the right value sets."""
    for key, (src, dst) in expected.items():
        m = actions.get(key)
        if m is None or set(m) != set(values.get(src, ())) or not set(m.values()) <= set(values.get(dst, ())):
            return Check("typed", False, key)
    extra = set(actions) - set(expected)
    if extra:
        return Check("typed", False, sorted(extra)[0], "action for an unknown arrow")
    return Check("typed", True)


def validate_presheaf(P: Presheaf) -> Verdict:
    C = P.base
    if set(P.values) != set(C.objects):
        return Verdict([Check("typed", False, sorted(set(C.objects) ^ set(P.values)), "values per object")])
    typed = _typed(P.values, P.actions, {f: (c, d) for f, (d, c) in C.arrows.items()})
    if not typed:
        return Verdict([typed])
    ident = Check("identity", True)
    for a, i in C.identities.items():
        if any(P.actions[i][x] != x for x in P.values[a]):
            ident = Check("identity", False, a)
            break
    comp = Check("composition", True)
    for (g, f), gf in C.composition.items():
        for x in P.values[C.cod(g)]:
            if P.actions[gf][x] != P.actions[f][P.actions[g][x]]:
                comp = Check("composition", False, (g, f, x))
                break
        if not comp:
            break
    return Verdict([typed, ident, comp])


def validate_double_presheaf(F: DoublePresheaf) -> Verdict:
    G = F.base
    if set(F.values) != set(G.objects):
        return Verdict([Check("typed", False, sorted(set(G.objects) ^ set(F.values)), "values per object")])
    h_typed = _typed(F.values, F.h_actions, {f: (c, d) for f, (d, c) in G.harrows.items()})
    v_typed = _typed(F.values, F.v_actions, {(lo, hi): (hi, lo) for lo, hi in G.obj_order})
    typed = h_typed if not h_typed else v_typed
    if not typed:
        return Verdict([typed])
    h = validate_presheaf(Presheaf(G.horizontal, F.values, F.h_actions))
    hf = Check("h_functorial", h.ok, None if h.ok else h.failures()[0].witness)
    vf = Check("v_functorial", True)
    for lo, hi in sorted(G.obj_order):
        if lo == hi and any(F.v_actions[(lo, hi)][x] != x for x in F.values[lo]):
            vf = Check("v_functorial", False, (lo, hi))
            break
        for mid in G.below_obj(hi) & G.above_obj(lo):
            for x in F.values[hi]:
                if F.v_actions[(lo, mid)][F.v_actions[(mid, hi)][x]] != F.v_actions[(lo, hi)][x]:
                    vf = Check("v_functorial", False, (lo, mid, hi))
                    break
            if not vf:
                break
        if not vf:
            break
    cells = Check("cells", True)
    for h_lo, k in sorted(G.arr_order):
        (a1, b1), (a, b) = G.harrows[h_lo], G.harrows[k]
        for x in F.values[b]:
            left = F.h_actions[h_lo][F.v_actions[(b1, b)][x]]
            right = F.v_actions[(a1, a)][F.h_actions[k][x]]
            if left != right:
                cells = Check("cells", False, (h_lo, k, x))
                break
        if not cells:
            break
    return Verdict([typed, hf, vf, cells])


def constant_presheaf(C: FiniteCategory, elements: Iterable[str], name="constant") -> Presheaf:
    els = tuple(elements)
    return Presheaf(C, {a: els for a in C.objects}, {f: {x: x for x in els} for f in C.arrows}, name)


def constant_double_presheaf(G: OrderedGroupoid, elements: Iterable[str], name="constant") -> DoublePresheaf:
    els = tuple(elements)
    ident = {x: x for x in els}
    return DoublePresheaf(G, {a: els for a in G.objects}, {f: ident for f in G.harrows},
                          {p: ident for p in G.obj_order}, name)


def representable(C: FiniteCategory, b: str) -> Presheaf:
    """``C(-, b)``: elements are arrows into ``b``, acted on by precomposition."""
    values = {a: C.hom(a, b) for a in C.objects}
    actions = {f: {g: C.comp(g, f) for g in values[C.cod(f)]} for f in C.arrows}
    return Presheaf(C, values, actions, f"C(-,{b})")


# ---------------------------------------------------------------------------
# transfers


def presheaf_transfer_L(F: DoublePresheaf, LG: LCategory | None = None) -> Presheaf:
    """On ``L(G)``: the action of ``(h, B)`` with ``cod h = B' <= B`` is ``F(h) . v(B' <= B)``."""
    G = F.base
    LG = LG if LG is not None else L(G)
    actions = {}
    for f, (h, b) in LG.larrows.items():
        v = F.v_actions[(G.cod(h), b)]
        actions[f] = {x: F.h_actions[h][v[x]] for x in F.values[b]}
    return Presheaf(LG, F.values, actions, F.name)


def presheaf_transfer_L_inverse(P: Presheaf) -> DoublePresheaf:
    """Split an ``L(G)`` action into ``F(h) = P(h, cod h)`` and ``v(A' <= A) = P(1_A', A)``."""
    LG = P.base
    if not isinstance(LG, LCategory):
        raise TypeError("expected a presheaf on a category built by L")
    G = LG.base
    h_actions = {h: P.actions[LG.larrow(h, G.cod(h))] for h in G.harrows}
    v_actions = {(lo, hi): P.actions[LG.larrow(G.id(lo), hi)] for lo, hi in G.obj_order}
    return DoublePresheaf(G, P.values, h_actions, v_actions, P.name)


def _mu(C: FiniteCategory, rep: str, m: str) -> str:
    """The unique ``mu`` with ``rep . mu = m`` (an isomorphism when ``m ~ rep``)."""
    return next(k for k in C.hom(C.dom(m), C.dom(rep)) if C.comp(rep, k) == m)


def transfer_tilde(Phi: Presheaf, GC: SubobjectGroupoid | None = None) -> DoublePresheaf:
    """A presheaf on ``C`` to one on ``G(C)``, via least representatives.

    ``[m]`` gets ``Phi(dom m)`` for the representative ``m``. The harrow
    ``[p, q]: [p] -> [q]`` acts by ``Phi(mu_q . mu_p^-1)``, where ``mu_p`` is the
    iso with ``rep . mu_p = p``. The vertical arrow ``[n1] <= [n2]`` acts by
    ``Phi(v)`` for the unique ``v`` with ``n1 = n2 . v`` on representatives.
    """
    C = Phi.base
    GC = GC if GC is not None else G_of(C)
    values = {o: Phi.values[C.dom(m)] for o, m in GC.rep.items()}
    h_actions = {}
    for s, (p, q) in GC.span.items():
        mp = _mu(C, GC.rep[GC.sub(p)], p)
        mq = _mu(C, GC.rep[GC.sub(q)], q)
        g = C.comp(mq, C.inverses[mp])
        h_actions[s] = dict(Phi.actions[g])
    v_actions = {}
    for lo, hi in GC.obj_order:
        v = _mu(C, GC.rep[hi], GC.rep[lo])
        v_actions[(lo, hi)] = dict(Phi.actions[v])
    return DoublePresheaf(GC, values, h_actions, v_actions, Phi.name)


def transfer_check(Psi: DoublePresheaf) -> Presheaf:
    """A presheaf on ``G(C)`` to one on ``C``: ``X -> Psi[1_X]``.

    ``f: X -> Y`` acts by ``Psi[1_X, f] . Psi([f] <= [1_Y])``.
    """
    GC = Psi.base
    if not isinstance(GC, SubobjectGroupoid):
        raise TypeError("expected a double presheaf on an ordered groupoid built by G")
    C = GC.base
    values = {x: Psi.values[GC.sub(C.id(x))] for x in C.objects}
    actions = {}
    for f, (x, y) in C.arrows.items():
        v = Psi.v_actions[(GC.sub(f), GC.sub(C.id(y)))]
        h = Psi.h_actions[GC.harrow_of(C.id(x), f)]
        actions[f] = {e: h[v[e]] for e in values[y]}
    return Presheaf(C, values, actions, Psi.name)


def check_after_tilde_iso(Phi: Presheaf, GC: SubobjectGroupoid | None = None) -> dict[str, dict[str, str]]:
    """Components ``Phi(mu): Phi(dom rep[1_X]) -> Phi(X)`` of the comparison with ``Phi``."""
    C = Phi.base
    GC = GC if GC is not None else G_of(C)
    out = {}
    for x in C.objects:
        rep = GC.rep[GC.sub(C.id(x))]
        mu = C.inverses[rep]
        out[x] = dict(Phi.actions[mu])
    return out


# ---------------------------------------------------------------------------
# morphisms and isomorphisms


def is_presheaf_morphism(P: Presheaf, Q: Presheaf, comps: Mapping[str, Mapping[str, str]]) -> bool:
    C = P.base
    for f, (a, b) in C.arrows.items():
        for x in P.values[b]:
            if comps[a][P.actions[f][x]] != Q.actions[f][comps[b][x]]:
                return False
    return True


def presheaf_morphisms(P: Presheaf, Q: Presheaf, limit: int = 10**6) -> list[dict[str, dict[str, str]]]:
    """Every natural transformation ``P => Q``, by backtracking with propagation along actions."""
    C = P.base
    slots = [(a, x) for a in C.objects for x in P.values[a]]
    assign: dict[tuple[str, str], str] = {}
    out = []
    budget = [limit]

    def propagate(a, x, y, trail):
        stack = [(a, x, y)]
        while stack:
            a, x, y = stack.pop()
            cur = assign.get((a, x))
            if cur is not None:
                if cur != y:
                    return False
                continue
            assign[(a, x)] = y
            trail.append((a, x))
            for f in C.arrows_into(a):
                d = C.dom(f)
                stack.append((d, P.actions[f][x], Q.actions[f][y]))
        return True

    def go(i):
        while i < len(slots) and slots[i] in assign:
            i += 1
        if i == len(slots):
            comps = {a: {} for a in C.objects}
            for (a, x), y in assign.items():
                comps[a][x] = y
            out.append(comps)
            return
        a, x = slots[i]
        for y in Q.values[a]:
            budget[0] -= 1
            if budget[0] < 0:
                raise TooLarge(f"more than {limit} candidate components")
            trail: list = []
            if propagate(a, x, y, trail):
                go(i + 1)
            for k in trail:
                del assign[k]

    go(0)
    return out


def find_presheaf_isomorphism(P: Presheaf, Q: Presheaf) -> dict[str, dict[str, str]] | None:
    """A natural bijection ``P => Q`` if one exists (exhaustive search)."""
    if any(len(P.values[a]) != len(Q.values[a]) for a in P.base.objects):
        return None
    for comps in presheaf_morphisms(P, Q):
        if all(len(set(c.values())) == len(c) for c in comps.values()):
            return comps
    return None


def find_double_presheaf_isomorphism(F: DoublePresheaf, F2: DoublePresheaf) -> dict[str, dict[str, str]] | None:
    """Natural in both directions; equivalently an isomorphism of the transfers to ``L``."""
    LG = L(F.base)
    return find_presheaf_isomorphism(presheaf_transfer_L(F, LG), presheaf_transfer_L(F2, LG))


# ---------------------------------------------------------------------------
# sheaf condition


def matching_families(P: Presheaf, S: Sieve) -> list[dict[str, str]]:
    """Assignments ``s_f`` in ``P(dom f)`` with ``s_{f g} = P(g)(s_f)``."""
    C = P.base
    arrows = sorted(S.arrows)
    fam: dict[str, str] = {}
    out = []

    def propagate(f, x, trail):
        stack = [(f, x)]
        while stack:
            f, x = stack.pop()
            cur = fam.get(f)
            if cur is not None:
                if cur != x:
                    return False
                continue
            fam[f] = x
            trail.append(f)
            for g in C.arrows_into(C.dom(f)):
                stack.append((C.comp(f, g), P.actions[g][x]))
        return True

    def go(i):
        while i < len(arrows) and arrows[i] in fam:
            i += 1
        if i == len(arrows):
            out.append(dict(fam))
            return
        f = arrows[i]
        for x in P.values[C.dom(f)]:
            trail: list = []
            if propagate(f, x, trail):
                go(i + 1)
            for k in trail:
                del fam[k]

    go(0)
    return out


def is_sheaf_grothendieck(P: Presheaf, J: GrothendieckTopology) -> Verdict:
    """Every matching family on every covering sieve has exactly one amalgamation."""
    C = P.base
    for a in C.objects:
        for S in sorted(J.covers[a]):
            restrictions: dict[tuple, str] = {}
            for x in P.values[a]:
                key = tuple(sorted((f, P.actions[f][x]) for f in S.arrows))
                if key in restrictions:
                    return Verdict([Check("sheaf", False, {"object": a, "sieve": S, "amalgamations": [restrictions[key], x]},
                                          "more than one amalgamation")])
                restrictions[key] = x
            for fam in matching_families(P, S):
                if tuple(sorted(fam.items())) not in restrictions:
                    return Verdict([Check("sheaf", False, {"object": a, "sieve": S, "family": fam}, "no amalgamation")])
    return Verdict([Check("sheaf", True)])


def is_sheaf_ehresmann(F: DoublePresheaf, T: EhresmannTopology, LG: LCategory | None = None) -> Verdict:
    """The sheaf condition for the transfer to ``L(G)`` with the translated topology."""
    LG = LG if LG is not None else L(F.base)
    return is_sheaf_grothendieck(presheaf_transfer_L(F, LG), ehresmann_to_grothendieck(T, LG))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_presheaves(C: FiniteCategory, k: int, limit: int = 10**6, up_to_iso: bool = True) -> list[Presheaf]:
    """All presheaves on ``C`` whose value sets have at most ``k`` elements.

    Elements are ``"0"``, ``"1"``, ...; with ``up_to_iso`` one presheaf per
    isomorphism class is kept (least canonical encoding).
    """
    objs = list(C.objects)
    idents = set(C.identities.values())
    arrows = [f for f in C.arrows if f not in idents]
    out = []
    seen = set()
    budget = [limit]

    def spend():
        budget[0] -= 1
        if budget[0] < 0:
            raise TooLarge(f"more than {limit} candidate presheaves")

    for sizes in itertools.product(range(k + 1), repeat=len(objs)):
        values = {a: tuple(str(i) for i in range(n)) for a, n in zip(objs, sizes)}
        actions = {C.id(a): {x: x for x in values[a]} for a in objs}

        def ok(f):
            for (g, h), gh in C.composition.items():
                if f in (g, h, gh) and g in actions and h in actions and gh in actions:
                    for x in values[C.cod(g)]:
                        if actions[gh][x] != actions[h][actions[g][x]]:
                            return False
            return True

        def go(i):
            if i == len(arrows):
                P = Presheaf(C, values, actions)
                if up_to_iso:
                    key = _canonical_key(P)
                    if key in seen:
                        return
                    seen.add(key)
                out.append(P)
                return
            f = arrows[i]
            d, c = C.arrows[f]
            src, dst = values[c], values[d]
            for image in itertools.product(dst, repeat=len(src)):
                spend()
                actions[f] = dict(zip(src, image))
                if ok(f):
                    go(i + 1)
                del actions[f]

        go(0)
    return out


def _canonical_key(P: Presheaf):
    objs = list(P.base.objects)
    best = None
    arrows = sorted(P.actions)
    for perms in itertools.product(*(itertools.permutations(P.values[a]) for a in objs)):
        relabel = {a: dict(zip(P.values[a], perm)) for a, perm in zip(objs, perms)}
        key = tuple(
            tuple(sorted((relabel[P.base.cod(f)][x], relabel[P.base.dom(f)][y]) for x, y in P.actions[f].items()))
            for f in arrows
        )
        if best is None or key < best:
            best = key
    return (tuple(len(P.values[a]) for a in objs), best)


def enumerate_double_presheaves(G: OrderedGroupoid, k: int, limit: int = 10**6) -> list[DoublePresheaf]:
    """All double presheaves up to isomorphism with value sets of size at most ``k``."""
    LG = L(G)
    return [presheaf_transfer_L_inverse(P) for P in enumerate_presheaves(LG, k, limit)]


def sheaf_universe(J: GrothendieckTopology, k: int, limit: int = 10**6) -> list[Presheaf]:
    """Sheaves with value sets of size at most ``k``, one per isomorphism class."""
    return [P for P in enumerate_presheaves(J.category, k, limit) if is_sheaf_grothendieck(P, J)]
