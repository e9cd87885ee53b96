"""Grothendieck topologies on finite categories and Ehresmann topologies on
finite ordered groupoids, with the translations between them.

A sieve is stored fully closed under precomposition; a vertical sieve is a
downward-closed set of objects below its root. A topology assigns a set of
such sieves to every object; two topologies are equal when these sets agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._verdict import Check, TooLarge, ValidationError, Verdict, Violation
from .bridge import G as G_of, L, LCategory, SubobjectGroupoid
from .fincat import FiniteCategory
from .ogpd import OrderedGroupoid, restrict


@dataclass(frozen=True, order=True)
class Sieve:
    root: str
    arrows: frozenset[str]

    def __contains__(self, f):
        return f in self.arrows

    def to_json(self):
        return {"root": self.root, "arrows": sorted(self.arrows)}


@dataclass(frozen=True, order=True)
class VerticalSieve:
    root: str
    members: frozenset[str]

    def __contains__(self, a):
        return a in self.members

    def to_json(self):
        return {"root": self.root, "members": sorted(self.members)}


# ---------------------------------------------------------------------------
# sieves


def sieve_closure(C: FiniteCategory, root: str, generators: Iterable[str]) -> Sieve:
    """The smallest sieve on ``root`` containing the generators."""
    out = set()
    for f in generators:
        if C.cod(f) != root:
            raise ValidationError([Violation("NotIntoRoot", (f, root))], "sieve")
        for g in C.arrows_into(C.dom(f)):
            out.add(C.comp(f, g))
    return Sieve(root, frozenset(out))


def is_sieve(C: FiniteCategory, S: Sieve) -> bool:
    return all(C.cod(f) == S.root for f in S.arrows) and all(
        C.comp(f, g) in S.arrows for f in S.arrows for g in C.arrows_into(C.dom(f))
    )


def maximal_sieve(C: FiniteCategory, root: str) -> Sieve:
    return Sieve(root, frozenset(C.arrows_into(root)))


def sieve_pullback_grothendieck(C: FiniteCategory, S: Sieve, h: str) -> Sieve:
    """``h*S = {g : cod g = dom h, h g in S}``."""
    if C.cod(h) != S.root:
        raise ValidationError([Violation("NotIntoRoot", (h, S.root))], "sieve pullback")
    b = C.dom(h)
    return Sieve(b, frozenset(g for g in C.arrows_into(b) if C.comp(h, g) in S.arrows))


def all_sieves(C: FiniteCategory, root: str, limit: int = 10**6) -> list[Sieve]:
    """Every sieve on ``root``, generated by adding one arrow at a time."""
    seen = {frozenset()}
    frontier = [frozenset()]
    arrows = C.arrows_into(root)
    while frontier:
        nxt = []
        for s in frontier:
            for f in arrows:
                if f not in s:
                    t = s | sieve_closure(C, root, [f]).arrows
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
                        if len(seen) > limit:
                            raise TooLarge(f"more than {limit} sieves on {root}")
        frontier = nxt
    return sorted(Sieve(root, s) for s in seen)


def vertical_closure(G: OrderedGroupoid, root: str, generators: Iterable[str]) -> VerticalSieve:
    out = set()
    for a in generators:
        if not G.le_obj(a, root):
            raise ValidationError([Violation("NotBelowRoot", (a, root))], "vertical sieve")
        out |= G.below_obj(a)
    return VerticalSieve(root, frozenset(out))


def is_vertical_sieve(G: OrderedGroupoid, V: VerticalSieve) -> bool:
    return all(G.le_obj(a, V.root) and G.below_obj(a) <= V.members for a in V.members)


def trivial_vertical_sieve(G: OrderedGroupoid, root: str) -> VerticalSieve:
    """The whole of the down-set of ``root``."""
    return VerticalSieve(root, G.below_obj(root))


def vertical_sieve_pullback(G: OrderedGroupoid, B: VerticalSieve, f: str) -> VerticalSieve:
    """``f*B = {A' <= dom f : cod(f|A') in B}`` for ``f: A -> B'`` with ``B' <= root(B)``."""
    if not G.le_obj(G.cod(f), B.root):
        raise ValidationError([Violation("NotBelowCodomainRoot", (f, B.root))], "vertical sieve pullback")
    a = G.dom(f)
    return VerticalSieve(a, frozenset(x for x in G.below_obj(a) if G.cod(restrict(G, f, x)) in B.members))


def all_vertical_sieves(G: OrderedGroupoid, root: str) -> list[VerticalSieve]:
    seen = {frozenset()}
    frontier = [frozenset()]
    below = sorted(G.below_obj(root))
    while frontier:
        nxt = []
        for s in frontier:
            for a in below:
                if a not in s:
                    t = s | G.below_obj(a)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(VerticalSieve(root, s) for s in seen)


# ---------------------------------------------------------------------------
# topologies


def _freeze(covers):
    return {a: frozenset(v) for a, v in sorted(covers.items())}


@dataclass(frozen=True, eq=False)
class GrothendieckTopology:
    category: FiniteCategory = field(repr=False)
    covers: Mapping[str, frozenset[Sieve]]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "covers", _freeze({a: self.covers.get(a, ()) for a in self.category.objects}))
        bad = [Violation("NotASieve", S) for a, fam in self.covers.items() for S in fam
               if S.root != a or not is_sieve(self.category, S)]
        if bad:
            raise ValidationError(bad, "Grothendieck topology")

    def __eq__(self, other):
        if not isinstance(other, GrothendieckTopology):
            return NotImplemented
        return self.covers == other.covers and self.category == other.category

    __hash__ = None

    def covering(self, S: Sieve) -> bool:
        return S in self.covers[S.root]

    def is_trivial(self) -> bool:
        C = self.category
        return all(fam == {maximal_sieve(C, a)} for a, fam in self.covers.items())

    @classmethod
    def trivial(cls, C: FiniteCategory) -> "GrothendieckTopology":
        return cls(C, {a: {maximal_sieve(C, a)} for a in C.objects}, "trivial")

    @classmethod
    def from_generators(cls, C: FiniteCategory, covers: Mapping[str, Iterable[Iterable[str]]], name=""):
        """Each listed family of arrows is closed to a sieve; nothing else is added."""
        return cls(C, {a: {sieve_closure(C, a, gens) for gens in fams} for a, fams in covers.items()}, name)

    def to_json(self):
        return {
            "kind": "grothendieck_topology",
            "name": self.name,
            "category": self.category.to_json(),
            "covers": {a: sorted(sorted(S.arrows) for S in fam) for a, fam in self.covers.items()},
        }


@dataclass(frozen=True, eq=False)
class EhresmannTopology:
    groupoid: OrderedGroupoid = field(repr=False)
    covers: Mapping[str, frozenset[VerticalSieve]]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "covers", _freeze({a: self.covers.get(a, ()) for a in self.groupoid.objects}))
        bad = [Violation("NotAVerticalSieve", V) for a, fam in self.covers.items() for V in fam
               if V.root != a or not is_vertical_sieve(self.groupoid, V)]
        if bad:
            raise ValidationError(bad, "Ehresmann topology")

    def __eq__(self, other):
        if not isinstance(other, EhresmannTopology):
            return NotImplemented
        return self.covers == other.covers and self.groupoid == other.groupoid

    __hash__ = None

    def covering(self, V: VerticalSieve) -> bool:
        return V in self.covers[V.root]

    def is_trivial(self) -> bool:
        G = self.groupoid
        return all(fam == {trivial_vertical_sieve(G, a)} for a, fam in self.covers.items())

    @classmethod
    def trivial(cls, G: OrderedGroupoid) -> "EhresmannTopology":
        return cls(G, {a: {trivial_vertical_sieve(G, a)} for a in G.objects}, "trivial")

    @classmethod
    def from_generators(cls, G: OrderedGroupoid, covers: Mapping[str, Iterable[Iterable[str]]], name=""):
        return cls(G, {a: {vertical_closure(G, a, gens) for gens in fams} for a, fams in covers.items()}, name)

    def to_json(self):
        return {
            "kind": "ehresmann_topology",
            "name": self.name,
            "groupoid": self.groupoid.to_json(),
            "covers": {a: sorted(sorted(V.members) for V in fam) for a, fam in self.covers.items()},
        }


def validate_grothendieck(J: GrothendieckTopology) -> Verdict:
    """Maximality, stability under pullback and transitivity, each with a witness."""
    C = J.category
    sieves = {a: all_sieves(C, a) for a in C.objects}
    maxi = Check("maximal", True)
    for a in C.objects:
        if maximal_sieve(C, a) not in J.covers[a]:
            maxi = Check("maximal", False, a)
            break
    stab = Check("stability", True)
    for a, fam in J.covers.items():
        for S in sorted(fam):
            for h in C.arrows_into(a):
                if not J.covering(sieve_pullback_grothendieck(C, S, h)):
                    stab = Check("stability", False, (S, h))
                    break
            if not stab:
                break
        if not stab:
            break
    trans = Check("transitivity", True)
    for a, fam in J.covers.items():
        for R in sieves[a]:
            if J.covering(R):
                continue
            for S in sorted(fam):
                if all(J.covering(sieve_pullback_grothendieck(C, R, f)) for f in S.arrows):
                    trans = Check("transitivity", False, (S, R))
                    break
            if not trans:
                break
        if not trans:
            break
    return Verdict([maxi, stab, trans])


def validate_ehresmann(T: EhresmannTopology) -> Verdict:
    """ET.1 (the whole down-set covers), ET.2 (stable under ``f*``), ET.3 (local character)."""
    G = T.groupoid
    et1 = Check("ET1", True)
    for a in G.objects:
        if trivial_vertical_sieve(G, a) not in T.covers[a]:
            et1 = Check("ET1", False, a)
            break
    et2 = Check("ET2", True)
    for b, fam in T.covers.items():
        for B in sorted(fam):
            for f in G.harrows:
                if G.le_obj(G.cod(f), b) and not T.covering(vertical_sieve_pullback(G, B, f)):
                    et2 = Check("ET2", False, (B, f))
                    break
            if not et2:
                break
        if not et2:
            break
    et3 = Check("ET3", True)
    for a, fam in T.covers.items():
        for B in all_vertical_sieves(G, a):
            if T.covering(B):
                continue
            for A in sorted(fam):
                if all(
                    T.covering(vertical_sieve_pullback(G, B, f))
                    for a1 in A.members
                    for f in G.horizontal.arrows_into(a1)
                ):
                    et3 = Check("ET3", False, (A, B))
                    break
            if not et3:
                break
        if not et3:
            break
    return Verdict([et1, et2, et3])


def _families(options: Mapping[str, list], fixed: Mapping[str, object], limit: int):
    keys = list(options)
    total = 1
    for k in keys:
        total *= 2 ** len(options[k])
        if total > limit:
            raise TooLarge(f"more than {limit} candidate topologies")
    per_key = []
    for k in keys:
        opts = options[k]
        per_key.append([
            frozenset(itertools.compress(opts, mask)) | {fixed[k]}
            for mask in itertools.product((0, 1), repeat=len(opts))
        ])
    for combo in itertools.product(*per_key):
        yield dict(zip(keys, combo))


def enumerate_grothendieck_topologies(C: FiniteCategory, limit: int = 10**6) -> list[GrothendieckTopology]:
    """Every Grothendieck topology on ``C`` (brute force over families of sieves)."""
    options = {a: [S for S in all_sieves(C, a) if S != maximal_sieve(C, a)] for a in C.objects}
    fixed = {a: maximal_sieve(C, a) for a in C.objects}
    out = []
    for covers in _families(options, fixed, limit):
        J = GrothendieckTopology(C, covers)
        if validate_grothendieck(J):
            out.append(J)
    return out


def enumerate_ehresmann_topologies(G: OrderedGroupoid, limit: int = 10**6) -> list[EhresmannTopology]:
    options = {a: [V for V in all_vertical_sieves(G, a) if V != trivial_vertical_sieve(G, a)] for a in G.objects}
    fixed = {a: trivial_vertical_sieve(G, a) for a in G.objects}
    out = []
    for covers in _families(options, fixed, limit):
        T = EhresmannTopology(G, covers)
        if validate_ehresmann(T):
            out.append(T)
    return out


def generated_grothendieck(C: FiniteCategory, covers: Mapping[str, Iterable[Iterable[str]]], name="") -> GrothendieckTopology:
    """The smallest Grothendieck topology in which each listed family covers."""
    fam = {a: {maximal_sieve(C, a)} for a in C.objects}
    for a, gens in covers.items():
        for g in gens:
            fam[a].add(sieve_closure(C, a, g))
    sieves = {a: all_sieves(C, a) for a in C.objects}
    changed = True
    while changed:
        changed = False
        for a in C.objects:
            for S in list(fam[a]):
                for h in C.arrows_into(a):
                    P = sieve_pullback_grothendieck(C, S, h)
                    if P not in fam[P.root]:
                        fam[P.root].add(P)
                        changed = True
            for R in sieves[a]:
                if R in fam[a]:
                    continue
                if any(all(sieve_pullback_grothendieck(C, R, f) in fam[C.dom(f)] for f in S.arrows) for S in list(fam[a])):
                    fam[a].add(R)
                    changed = True
    return GrothendieckTopology(C, fam, name)


def generated_ehresmann(G: OrderedGroupoid, covers: Mapping[str, Iterable[Iterable[str]]], name="") -> EhresmannTopology:
    """The smallest Ehresmann topology in which each listed family covers."""
    fam = {a: {trivial_vertical_sieve(G, a)} for a in G.objects}
    for a, gens in covers.items():
        for g in gens:
            fam[a].add(vertical_closure(G, a, g))
    sieves = {a: all_vertical_sieves(G, a) for a in G.objects}
    changed = True
    while changed:
        changed = False
        for b in G.objects:
            for B in list(fam[b]):
                for f in G.harrows:
                    if G.le_obj(G.cod(f), b):
                        P = vertical_sieve_pullback(G, B, f)
                        if P not in fam[P.root]:
                            fam[P.root].add(P)
                            changed = True
        for a in G.objects:
            for B in sieves[a]:
                if B in fam[a]:
                    continue
                if any(
                    all(vertical_sieve_pullback(G, B, f) in fam[G.dom(f)]
                        for a1 in A.members for f in G.horizontal.arrows_into(a1))
                    for A in list(fam[a])
                ):
                    fam[a].add(B)
                    changed = True
    return EhresmannTopology(G, fam, name)


# ---------------------------------------------------------------------------
# translations


def ehresmann_to_grothendieck(T: EhresmannTopology, LG: LCategory | None = None) -> GrothendieckTopology:
    """On ``L(G)``: a sieve covers iff the down-set of the vertical codomains of its arrows is in ``T``.

    The vertical codomain of ``(h, A)`` is ``cod h``; for a closed sieve this
    set is already downward closed.
    """
    G = T.groupoid
    LG = LG if LG is not None else L(G)
    covers = {}
    for a in LG.objects:
        covers[a] = set()
        for S in all_sieves(LG, a):
            V = vertical_closure(G, a, {G.cod(LG.larrows[f][0]) for f in S.arrows})
            if T.covering(V):
                covers[a].add(S)
    return GrothendieckTopology(LG, covers, f"J_T({T.name})" if T.name else "")


def grothendieck_to_ehresmann_on_L(J: GrothendieckTopology) -> EhresmannTopology:
    """A vertical sieve ``V`` on ``A`` covers iff the sieve generated by ``(1_A', A)``, ``A'`` in ``V``, is in ``J``."""
    LG = J.category
    if not isinstance(LG, LCategory):
        raise TypeError("expected a topology on a category built by L")
    G = LG.base
    covers = {}
    for a in G.objects:
        covers[a] = set()
        for V in all_vertical_sieves(G, a):
            S = sieve_closure(LG, a, [LG.larrow(G.id(x), a) for x in V.members])
            if J.covering(S):
                covers[a].add(V)
    return EhresmannTopology(G, covers, f"T_J({J.name})" if J.name else "")


def grothendieck_to_ehresmann_on_G(J: GrothendieckTopology, GC: SubobjectGroupoid | None = None) -> EhresmannTopology:
    """``T([m: A -> B]) = {[m S] : S in J(A)}`` with ``[m S] = {[m n] : n in S}``."""
    C = J.category
    GC = GC if GC is not None else G_of(C)
    covers = {}
    for o, m in GC.rep.items():
        covers[o] = {
            VerticalSieve(o, frozenset(GC.sub(C.comp(m, n)) for n in S.arrows)) for S in J.covers[C.dom(m)]
        }
    return EhresmannTopology(GC, covers, f"T_J({J.name})" if J.name else "")


def ehresmann_to_grothendieck_on_G(T: EhresmannTopology) -> GrothendieckTopology:
    """``S in J(A)`` iff ``{[m] : m in S}`` is in ``T([1_A])``."""
    GC = T.groupoid
    if not isinstance(GC, SubobjectGroupoid):
        raise TypeError("expected a topology on an ordered groupoid built by G")
    C = GC.base
    covers = {}
    for a in C.objects:
        top = GC.sub(C.id(a))
        covers[a] = {S for S in all_sieves(C, a)
                     if T.covering(VerticalSieve(top, frozenset(GC.sub(m) for m in S.arrows)))}
    return GrothendieckTopology(C, covers, f"J_T({T.name})" if T.name else "")
