"""Morphisms of sites: covering preservation, covering flatness, the local
conditions GS.1-4 / ES.1-4, the induced functor on sheaves and empirical
Comparison Lemma verdicts.

Diagrams are given by finite graph shapes. A cone over a graph diagram is the
same thing as a cone over the diagram of its free category, so nothing is lost
and loops are allowed. Ehresmann shapes may also carry vertical edges.

Every "there is a cover such that ..." condition below is tested by computing
the largest sieve of good arrows (or good objects) and asking whether it
covers; topologies are upward closed, so this is equivalent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ._verdict import Check, TooLarge, ValidationError, Verdict, Violation
from .bridge import G as G_of
from .bridge import G_on_morphisms, L, L_on_morphisms, eta, kappa, rho
from .fincat import FiniteCategory, Functor, identity_functor
from .ogpd import DoubleFunctor, OrderedGroupoid, identity_double_functor, restrict
from .sheaves import (
    DoublePresheaf,
    Presheaf,
    enumerate_double_presheaves,
    enumerate_presheaves,
    find_double_presheaf_isomorphism,
    find_presheaf_isomorphism,
    is_sheaf_ehresmann,
    is_sheaf_grothendieck,
    presheaf_morphisms,
    presheaf_transfer_L,
)
from .topology import (
    EhresmannTopology,
    GrothendieckTopology,
    Sieve,
    VerticalSieve,
    ehresmann_to_grothendieck,
    grothendieck_to_ehresmann_on_G,
    sieve_closure,
    vertical_closure,
)


class NotASiteMorphism(ValidationError):
    def __init__(self, verdict: Verdict):
        super().__init__([Violation(c.name, c.witness, c.detail) for c in verdict.failures()], "site morphism")


class NotASheaf(ValidationError):
    def __init__(self, verdict: Verdict):
        super().__init__([Violation(c.name, c.witness, c.detail) for c in verdict.failures()], "sheaf")


@dataclass(frozen=True, eq=False)
class GrothendieckSiteMorphism:
    functor: Functor
    source: GrothendieckTopology = field(repr=False)
    target: GrothendieckTopology = field(repr=False)
    name: str = ""

    def __post_init__(self):
        bad = []
        if self.functor.source != self.source.category:
            bad.append(Violation("EndpointMismatch", "source"))
        if self.functor.target != self.target.category:
            bad.append(Violation("EndpointMismatch", "target"))
        if bad:
            raise ValidationError(bad, "site morphism")

    def to_json(self):
        return {
            "kind": "site_morphism",
            "flavor": "grothendieck",
            "name": self.name,
            "functor": self.functor.to_json(),
            "source_topology": self.source.to_json(),
            "target_topology": self.target.to_json(),
        }


@dataclass(frozen=True, eq=False)
class EhresmannSiteMorphism:
    functor: DoubleFunctor
    source: EhresmannTopology = field(repr=False)
    target: EhresmannTopology = field(repr=False)
    name: str = ""

    def __post_init__(self):
        bad = []
        if self.functor.source != self.source.groupoid:
            bad.append(Violation("EndpointMismatch", "source"))
        if self.functor.target != self.target.groupoid:
            bad.append(Violation("EndpointMismatch", "target"))
        if bad:
            raise ValidationError(bad, "site morphism")

    def to_json(self):
        return {
            "kind": "site_morphism",
            "flavor": "ehresmann",
            "name": self.name,
            "functor": self.functor.to_json(),
            "source_topology": self.source.to_json(),
            "target_topology": self.target.to_json(),
        }


SiteMorphism = GrothendieckSiteMorphism | EhresmannSiteMorphism


# ---------------------------------------------------------------------------
# standard morphisms


def identity_site_morphism(top):
    if isinstance(top, GrothendieckTopology):
        return GrothendieckSiteMorphism(identity_functor(top.category), top, top, "id")
    return EhresmannSiteMorphism(identity_double_functor(top.groupoid), top, top, "id")


def eta_site_morphism(J: GrothendieckTopology) -> GrothendieckSiteMorphism:
    """``eta: (C, J) -> (LG(C), J_{T_J})``."""
    C = J.category
    GC = G_of(C)
    LGC = L(GC)
    target = ehresmann_to_grothendieck(grothendieck_to_ehresmann_on_G(J, GC), LGC)
    return GrothendieckSiteMorphism(eta(C, GC, LGC), J, target, f"eta({C.name})")


def L_site_morphism(m: EhresmannSiteMorphism) -> GrothendieckSiteMorphism:
    """``L(M): (L(G), J_T) -> (L(G'), J_T')``."""
    LS, LT = L(m.source.groupoid), L(m.target.groupoid)
    return GrothendieckSiteMorphism(
        L_on_morphisms(m.functor, LS, LT),
        ehresmann_to_grothendieck(m.source, LS),
        ehresmann_to_grothendieck(m.target, LT),
        f"L({m.name})" if m.name else "",
    )


def G_site_morphism(m: GrothendieckSiteMorphism) -> EhresmannSiteMorphism:
    """``G(F): (G(C), T_J) -> (G(C'), T_J')``; both categories must be left-cancellative."""
    GS, GT = G_of(m.source.category), G_of(m.target.category)
    return EhresmannSiteMorphism(
        G_on_morphisms(m.functor, GS, GT),
        grothendieck_to_ehresmann_on_G(m.source, GS),
        grothendieck_to_ehresmann_on_G(m.target, GT),
        f"G({m.name})" if m.name else "",
    )


def GL_site_morphism(m: EhresmannSiteMorphism) -> EhresmannSiteMorphism:
    return G_site_morphism(L_site_morphism(m))


def transport_ehresmann(T: EhresmannTopology, iso: DoubleFunctor) -> EhresmannTopology:
    """Carry a topology along a double isomorphism."""
    covers = {
        iso.ob(a): {VerticalSieve(iso.ob(a), frozenset(iso.ob(x) for x in V.members)) for V in fam}
        for a, fam in T.covers.items()
    }
    return EhresmannTopology(iso.target, covers, T.name)


def kappa_site_morphism(T: EhresmannTopology) -> EhresmannSiteMorphism:
    """``kappa: (gl(G), T_{J_T}) -> (G, T)``, the source topology carried over from ``G(L(G))``."""
    Gp = T.groupoid
    LG = L(Gp)
    GLG = G_of(LG)
    r = rho(Gp, GLG)
    source = transport_ehresmann(grothendieck_to_ehresmann_on_G(ehresmann_to_grothendieck(T, LG), GLG), r)
    return EhresmannSiteMorphism(kappa(Gp, r.target), source, T, f"kappa({Gp.name})")


# ---------------------------------------------------------------------------
# covering preservation


def is_covering_preserving_g(m: GrothendieckSiteMorphism) -> Verdict:
    F, C2 = m.functor, m.target.category
    for a, fam in m.source.covers.items():
        for S in sorted(fam):
            image = sieve_closure(C2, F.ob(a), (F.ar(f) for f in S.arrows))
            if image not in m.target.covers[F.ob(a)]:
                return Verdict([Check("covering_preserving", False, {"object": a, "sieve": S, "image": image})])
    return Verdict([Check("covering_preserving", True)])


def is_covering_preserving_e(m: EhresmannSiteMorphism) -> Verdict:
    """The image of a cover is taken downward closed in the target."""
    M, G2 = m.functor, m.target.groupoid
    for a, fam in m.source.covers.items():
        for V in sorted(fam):
            image = vertical_closure(G2, M.ob(a), (M.ob(x) for x in V.members))
            if image not in m.target.covers[M.ob(a)]:
                return Verdict([Check("covering_preserving", False, {"object": a, "sieve": V, "image": image})])
    return Verdict([Check("covering_preserving", True)])


# ---------------------------------------------------------------------------
# diagrams and cones


@dataclass(frozen=True, order=True)
class Shape:
    """A finite graph: nodes ``0..nodes-1``, horizontal and vertical edges as ``(i, j)``."""

    nodes: int
    h_edges: tuple[tuple[int, int], ...] = ()
    v_edges: tuple[tuple[int, int], ...] = ()
    name: str = ""

    def size(self) -> int:
        return self.nodes + len(self.h_edges) + len(self.v_edges)

    def to_json(self):
        return {"name": self.name, "nodes": self.nodes, "h_edges": [list(e) for e in self.h_edges],
                "v_edges": [list(e) for e in self.v_edges]}


@dataclass(frozen=True)
class Diagram:
    shape: Shape
    objects: tuple[str, ...]
    h_arrows: tuple[str, ...] = ()

    def to_json(self):
        return {"shape": self.shape.name, "objects": list(self.objects), "h_arrows": list(self.h_arrows)}


@dataclass(frozen=True)
class Cone:
    vertex: str
    legs: tuple[str, ...]

    def to_json(self):
        return {"vertex": self.vertex, "legs": list(self.legs)}


@dataclass(frozen=True)
class HvCone:
    """Legs ``xi_i: U -> E_i`` with ``E_i <= D_i``; ``E_i`` is ``cod xi_i``."""

    vertex: str
    legs: tuple[str, ...]

    def to_json(self):
        return {"vertex": self.vertex, "legs": list(self.legs)}


EMPTY = Shape(0, name="empty")
PAIR = Shape(2, name="discrete pair")
PARALLEL = Shape(2, ((0, 1), (0, 1)), name="parallel pair")
VERTICAL = Shape(2, (), ((0, 1),), name="vertical edge")


def canonical_shapes(kind: str = "grothendieck") -> list[Shape]:
    shapes = [EMPTY, PAIR, PARALLEL]
    return shapes + [VERTICAL] if kind == "ehresmann" else shapes


def _shape_key(nodes, h, v):
    best = None
    for perm in itertools.permutations(range(nodes)):
        key = (tuple(sorted((perm[i], perm[j]) for i, j in h)), tuple(sorted((perm[i], perm[j]) for i, j in v)))
        if best is None or key < best:
            best = key
    return best


def oracle_shapes(bound: int, kind: str = "grothendieck") -> list[Shape]:
    """Every graph shape, up to isomorphism, with ``nodes + edges <= bound``.

    Horizontal edges may repeat and may be loops; vertical edges (Ehresmann
    only) are distinct and never loops.
    """
    out = {}
    for n in range(bound + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        vpairs = [(i, j) for i in range(n) for j in range(n) if i != j] if kind == "ehresmann" else []
        for e in range(bound - n + 1):
            for h in itertools.combinations_with_replacement(pairs, e):
                for ve in range(bound - n - e + 1):
                    for v in itertools.combinations(vpairs, ve):
                        h2, v2 = _shape_key(n, h, v)
                        out.setdefault((n, h2, v2), Shape(n, h2, v2, f"n{n}h{len(h2)}v{len(v2)}"))
    return [out[k] for k in sorted(out)]


def diagrams(X, shape: Shape, limit: int = 10**6) -> Iterator[Diagram]:
    """Every diagram of the given shape in a category or ordered groupoid."""
    budget = [limit]
    grpd = isinstance(X, OrderedGroupoid)
    for objs in itertools.product(sorted(X.objects), repeat=shape.nodes):
        if grpd and not all(X.le_obj(objs[i], objs[j]) for i, j in shape.v_edges):
            continue
        for arrs in itertools.product(*(X.hom(objs[i], objs[j]) for i, j in shape.h_edges)):
            budget[0] -= 1
            if budget[0] < 0:
                raise TooLarge(f"more than {limit} diagrams")
            yield Diagram(shape, objs, arrs)


def image_diagram(F, D: Diagram) -> Diagram:
    return Diagram(D.shape, tuple(F.ob(a) for a in D.objects), tuple(F.ar(f) for f in D.h_arrows))


def enumerate_cones(C: FiniteCategory, D: Diagram) -> list[Cone]:
    """Cones ``(U, legs)`` with ``D(e) . leg_i = leg_j`` for every edge ``e: i -> j``."""
    out = []
    edges = list(zip(D.shape.h_edges, D.h_arrows))
    for u in sorted(C.objects):
        for legs in itertools.product(*(C.hom(u, d) for d in D.objects)):
            if all(C.comp(f, legs[i]) == legs[j] for (i, j), f in edges):
                out.append(Cone(u, legs))
    return out


def enumerate_hv_cones(G: OrderedGroupoid, D: Diagram) -> list[HvCone]:
    """hv-cones: ``restrict(D_a, E_i) . xi_i = xi_j`` for horizontal ``a: i -> j``; ``xi_i = xi_j`` for vertical edges."""
    out = []
    edges = list(zip(D.shape.h_edges, D.h_arrows))
    for u in sorted(G.objects):
        out_of = [f for f in G.harrows if G.dom(f) == u]
        options = [[f for f in out_of if G.le_obj(G.cod(f), d)] for d in D.objects]
        for legs in itertools.product(*options):
            if any(legs[i] != legs[j] for i, j in D.shape.v_edges):
                continue
            if all(G.comp(restrict(G, f, G.cod(legs[i])), legs[i]) == legs[j] for (i, j), f in edges):
                out.append(HvCone(u, legs))
    return out


# ---------------------------------------------------------------------------
# covering flatness


def _flat_g(m: GrothendieckSiteMorphism, shapes: Sequence[Shape], limit: int) -> Check:
    F, C, C2 = m.functor, m.source.category, m.target.category
    cache: dict = {}
    for shape in shapes:
        for D in diagrams(C, shape, limit):
            FD = image_diagram(F, D)
            images = [(F.ob(c.vertex), tuple(F.ar(t) for t in c.legs)) for c in enumerate_cones(C, D)]
            if FD not in cache:
                cache[FD] = enumerate_cones(C2, FD)
            for cone in cache[FD]:
                u = cone.vertex
                good = set()
                for h in C2.arrows_into(u):
                    v = C2.dom(h)
                    want = tuple(C2.comp(t, h) for t in cone.legs)
                    if any(
                        all(C2.comp(ft, k) == w for ft, w in zip(flegs, want))
                        for fw, flegs in images
                        for k in C2.hom(v, fw)
                    ):
                        good.add(h)
                S = Sieve(u, frozenset(good))
                if S not in m.target.covers[u]:
                    return Check("covering_flat", False,
                                 {"shape": shape.name, "diagram": D, "cone": cone, "sieve": S})
    return Check("covering_flat", True)


def _flat_e(m: EhresmannSiteMorphism, shapes: Sequence[Shape], limit: int) -> Check:
    M, G, G2 = m.functor, m.source.groupoid, m.target.groupoid
    cache: dict = {}
    for shape in shapes:
        for D in diagrams(G, shape, limit):
            MD = image_diagram(M, D)
            images = [(M.ob(c.vertex), tuple(M.ar(t) for t in c.legs)) for c in enumerate_hv_cones(G, D)]
            if MD not in cache:
                cache[MD] = enumerate_hv_cones(G2, MD)
            for cone in cache[MD]:
                u = cone.vertex
                good = set()
                for u2 in G2.below_obj(u):
                    want = tuple(restrict(G2, x, u2) for x in cone.legs)
                    if any(
                        all(G2.comp(restrict(G2, mt, t2), h) == w for mt, w in zip(mlegs, want))
                        for mt_vertex, mlegs in images
                        for t2 in G2.below_obj(mt_vertex)
                        for h in G2.hom(u2, t2)
                    ):
                        good.add(u2)
                V = VerticalSieve(u, frozenset(good))
                if V not in m.target.covers[u]:
                    return Check("covering_flat", False,
                                 {"shape": shape.name, "diagram": D, "cone": cone, "sieve": V})
    return Check("covering_flat", True)


def is_covering_flat_g(m: GrothendieckSiteMorphism, oracle_bound: int | None = None, limit: int = 10**6) -> Verdict:
    """Checked over the canonical shapes; with ``oracle_bound`` also over every small shape."""
    checks = [_flat_g(m, canonical_shapes("grothendieck"), limit)]
    if oracle_bound is not None:
        o = _flat_g(m, oracle_shapes(oracle_bound, "grothendieck"), limit)
        checks.append(Check("oracle", o.ok, o.witness))
        checks.append(Check("oracle_agrees", checks[0].ok == o.ok))
    return Verdict(checks)


def is_covering_flat_e(m: EhresmannSiteMorphism, oracle_bound: int | None = None, limit: int = 10**6) -> Verdict:
    checks = [_flat_e(m, canonical_shapes("ehresmann"), limit)]
    if oracle_bound is not None:
        o = _flat_e(m, oracle_shapes(oracle_bound, "ehresmann"), limit)
        checks.append(Check("oracle", o.ok, o.witness))
        checks.append(Check("oracle_agrees", checks[0].ok == o.ok))
    return Verdict(checks)


def is_site_morphism(m) -> Verdict:
    if isinstance(m, GrothendieckSiteMorphism):
        return Verdict(list(is_covering_preserving_g(m)) + list(is_covering_flat_g(m)))
    return Verdict(list(is_covering_preserving_e(m)) + list(is_covering_flat_e(m)))


# ---------------------------------------------------------------------------
# local conditions


def check_gs_conditions(m: GrothendieckSiteMorphism) -> Verdict:
    F, C, C2 = m.functor, m.source.category, m.target.category
    J, J2 = m.source.covers, m.target.covers

    def gs1():
        for c, d in itertools.product(sorted(C.objects), repeat=2):
            for g in C2.hom(F.ob(c), F.ob(d)):
                good = {x for x in C.arrows_into(c)
                        if any(C2.comp(g, F.ar(x)) == F.ar(f) for f in C.hom(C.dom(x), d))}
                if Sieve(c, frozenset(good)) not in J[c]:
                    return Check("GS1", False, {"source": c, "target": d, "arrow": g})
        return Check("GS1", True)

    def gs2():
        for f, f2 in itertools.combinations(sorted(C.arrows), 2):
            if C.arrows[f] == C.arrows[f2] and F.ar(f) == F.ar(f2):
                c = C.dom(f)
                good = {x for x in C.arrows_into(c) if C.comp(f, x) == C.comp(f2, x)}
                if Sieve(c, frozenset(good)) not in J[c]:
                    return Check("GS2", False, {"arrows": [f, f2]})
        return Check("GS2", True)

    def gs3():
        image = {F.ob(c) for c in C.objects}
        for c2 in sorted(C2.objects):
            gens = [g for g in C2.arrows_into(c2) if C2.dom(g) in image]
            S = sieve_closure(C2, c2, gens)
            if S not in J2[c2]:
                return Check("GS3", False, {"object": c2, "sieve": S})
        return Check("GS3", True)

    def gs4():
        for c in sorted(C.objects):
            for R in sorted(J2[F.ob(c)]):
                S = Sieve(c, frozenset(f for f in C.arrows_into(c) if F.ar(f) in R.arrows))
                if S not in J[c]:
                    return Check("GS4", False, {"object": c, "cover": R, "sieve": S})
        return Check("GS4", True)

    return Verdict([gs1(), gs2(), gs3(), gs4()])


def check_es_conditions(m: EhresmannSiteMorphism) -> Verdict:
    M, G, G2 = m.functor, m.source.groupoid, m.target.groupoid
    T, T2 = m.source.covers, m.target.covers

    def es1():
        # the arrows f_i: A_i -> B_i are required to land below B
        for a, b in itertools.product(sorted(G.objects), repeat=2):
            for b2 in sorted(G2.below_obj(M.ob(b))):
                for g in G2.hom(M.ob(a), b2):
                    good = {a2 for a2 in G.below_obj(a)
                            if any(M.ar(f) == restrict(G2, g, M.ob(a2))
                                   for b3 in G.below_obj(b) for f in G.hom(a2, b3))}
                    if VerticalSieve(a, frozenset(good)) not in T[a]:
                        return Check("ES1", False, {"source": a, "target": b, "arrow": g})
        return Check("ES1", True)

    def es2():
        for f, g in itertools.combinations(sorted(G.harrows), 2):
            a = G.dom(f)
            if G.dom(g) != a or M.ar(f) != M.ar(g):
                continue
            if not (G.above_obj(G.cod(f)) & G.above_obj(G.cod(g))):
                continue
            good = {a2 for a2 in G.below_obj(a) if restrict(G, f, a2) == restrict(G, g, a2)}
            if VerticalSieve(a, frozenset(good)) not in T[a]:
                return Check("ES2", False, {"arrows": [f, g]})
        return Check("ES2", True)

    def es3():
        image = {M.ob(a) for a in G.objects}
        for a2 in sorted(G2.objects):
            reach = [x for x in G2.below_obj(a2) if any(G2.hom(y, x) for y in image)]
            V = vertical_closure(G2, a2, reach)
            if V not in T2[a2]:
                return Check("ES3", False, {"object": a2, "sieve": V})
        return Check("ES3", True)

    def es4():
        for a in sorted(G.objects):
            for W in sorted(T2[M.ob(a)]):
                V = VerticalSieve(a, frozenset(x for x in G.below_obj(a) if M.ob(x) in W.members))
                if V not in T[a]:
                    return Check("ES4", False, {"object": a, "cover": W, "sieve": V})
        return Check("ES4", True)

    return Verdict([es1(), es2(), es3(), es4()])


def check_conditions(m) -> Verdict:
    if isinstance(m, GrothendieckSiteMorphism):
        return check_gs_conditions(m)
    return check_es_conditions(m)


# ---------------------------------------------------------------------------
# induced functor on sheaves


def _pullback(m, X):
    F = m.functor
    if isinstance(m, GrothendieckSiteMorphism):
        C = F.source
        return Presheaf(C, {a: X.values[F.ob(a)] for a in C.objects},
                        {f: X.actions[F.ar(f)] for f in C.arrows}, X.name)
    G = F.source
    return DoublePresheaf(G, {a: X.values[F.ob(a)] for a in G.objects},
                          {f: X.h_actions[F.ar(f)] for f in G.harrows},
                          {(lo, hi): X.v_actions[(F.ob(lo), F.ob(hi))] for lo, hi in G.obj_order}, X.name)


def _is_sheaf(top, X) -> Verdict:
    if isinstance(top, GrothendieckTopology):
        return is_sheaf_grothendieck(X, top)
    return is_sheaf_ehresmann(X, top)


def induced_sheaf_functor(m, X, verify: bool = True):
    """``M*X = X . M``: precomposition with the underlying (double) functor."""
    if verify:
        v = is_site_morphism(m)
        if not v.ok:
            raise NotASiteMorphism(v)
        s = _is_sheaf(m.target, X)
        if not s.ok:
            raise NotASheaf(s)
    out = _pullback(m, X)
    if verify:
        s = _is_sheaf(m.source, out)
        if not s.ok:
            raise NotASheaf(s)
    return out


def _universe(top, k, limit):
    if isinstance(top, GrothendieckTopology):
        return [P for P in enumerate_presheaves(top.category, k, limit) if is_sheaf_grothendieck(P, top)]
    return [P for P in enumerate_double_presheaves(top.groupoid, k, limit) if is_sheaf_ehresmann(P, top)]


def _freeze_comps(comps):
    return tuple(sorted((a, tuple(sorted(c.items()))) for a, c in comps.items()))


def comparison_verdict(m, k: int = 3, limit: int = 10**6) -> Verdict:
    """Local conditions, the Comparison Lemma claims, and the empirical test of ``M*``.

    ``full``/``faithful`` compare ``Hom(X, Y)`` with ``Hom(M*X, M*Y)`` for all
    target sheaves in the universe; ``essentially_surjective`` asks that every
    source sheaf in the universe be isomorphic to some ``M*X``. ``agreement``
    fails only if a claim made by the conditions is contradicted.
    """
    grot = isinstance(m, GrothendieckSiteMorphism)
    conds = check_conditions(m)
    ff_claim = all(c.ok for c in list(conds)[:3])
    eq_claim = ff_claim and list(conds)[3].ok

    targets = _universe(m.target, k, limit)
    sources = _universe(m.source, k, limit)
    pulled = [_pullback(m, X) for X in targets]

    if grot:
        def homs(X, Y):
            return presheaf_morphisms(X, Y, limit)
        iso = find_presheaf_isomorphism
    else:
        LS, LT = L(m.source.groupoid), L(m.target.groupoid)

        def homs(X, Y):
            LX = presheaf_transfer_L(X, LT if X.base == m.target.groupoid else LS)
            LY = presheaf_transfer_L(Y, LT if Y.base == m.target.groupoid else LS)
            return presheaf_morphisms(LX, LY, limit)
        iso = find_double_presheaf_isomorphism

    objs = list(m.functor.source.objects)
    full = Check("full", True)
    faithful = Check("faithful", True)
    for (i, X), (j, Y) in itertools.product(enumerate(targets), repeat=2):
        restricted = [_freeze_comps({a: alpha[m.functor.ob(a)] for a in objs}) for alpha in homs(X, Y)]
        below = {_freeze_comps(beta) for beta in homs(pulled[i], pulled[j])}
        if faithful and len(set(restricted)) != len(restricted):
            faithful = Check("faithful", False, {"pair": [i, j]})
        if full and not below <= set(restricted):
            full = Check("full", False, {"pair": [i, j]})
    ess = Check("essentially_surjective", True)
    for n, S in enumerate(sources):
        if not any(iso(S, P) is not None for P in pulled):
            ess = Check("essentially_surjective", False, {"sheaf": n, "values": dict(S.values)})
            break
    agree = (not ff_claim or (full.ok and faithful.ok)) and (not eq_claim or ess.ok)
    return Verdict(list(conds) + [
        Check("fully_faithful_claim", ff_claim),
        Check("equivalence_claim", eq_claim),
        full, faithful, ess,
        Check("agreement", agree),
        Check("universe", True, {"k": k, "source_sheaves": len(sources), "target_sheaves": len(targets)}),
    ])
