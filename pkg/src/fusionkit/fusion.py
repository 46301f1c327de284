"""Fusion systems F_S(G) of permutation groups at desk scale.

Subgroups of S are frozensets of permutations.  A morphism is stored as its
graph, the frozenset of pairs ``(p, p^g)``, so two conjugators inducing the
same map give the same key.  Maps are injective and written on the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from . import finite
from .errors import NotInSylow, NotWeaklyClosed, TooLarge
from .perm import MAX_ENUM, Perm, PermGroup, pconj, pinv, pmul

Map = frozenset  # frozenset of (x, x^phi) pairs
Sub = frozenset

MAX_SUBGROUP_LATTICE = 1 << 8


# ---- maps ------------------------------------------------------------------------------

def conj_map(p: Iterable[Perm], g: Perm) -> Map:
    return frozenset((x, pconj(x, g)) for x in p)


def identity_map(p: Iterable[Perm]) -> Map:
    return frozenset((x, x) for x in p)


def compose(a: Map, b: Map) -> Map:
    """``a`` followed by ``b`` (``b`` must be defined on the image of ``a``)."""
    bd = dict(b)
    return frozenset((x, bd[y]) for x, y in a)


def invert(a: Map) -> Map:
    return frozenset((y, x) for x, y in a)


def restrict(a: Map, q: Iterable[Perm]) -> Map:
    q = set(q)
    return frozenset((x, y) for x, y in a if x in q)


def source(a: Map) -> Sub:
    return frozenset(x for x, _ in a)


def image(a: Map) -> Sub:
    return frozenset(y for _, y in a)


def apply(a: Map, x: Perm) -> Perm:
    for s, t in a:
        if s == x:
            return t
    raise KeyError(x)


def map_key(a: Map):
    return sorted(a)


def sub_key(p: Sub):
    return (len(p), sorted(p))


def conjugate_sub(p: Iterable[Perm], g: Perm) -> Sub:
    return frozenset(pconj(x, g) for x in p)


# ---- Sylow subgroups and subgroup lattices ----------------------------------------------

def sylow2(group: PermGroup, seed: Iterable[Perm] = ()) -> Sub:
    """Sylow 2-subgroup by normalizer climbing in lexicographic element order.

    Starting from ``<seed>`` (a 2-group), the lex-least element outside the
    current P that normalizes P and squares into P is adjoined until the
    index is odd.  Without a seed the first step picks the least involution.
    """
    if group.order > MAX_ENUM:
        raise TooLarge(f"group of order {group.order} is too large to enumerate")
    seed = list(seed)
    sub = finite.sylow_subgroup(group.elements, pmul, pinv, group.identity, 2, seed)
    if (group.order // len(sub)) % 2:
        return sub
    raise RuntimeError("normalizer climbing ended at even index")  # pragma: no cover


def all_subgroups(s: Iterable[Perm], identity: Perm) -> list[Sub]:
    """Every subgroup of the 2-group ``s``, sorted by order then elements.

    A subgroup of order ``2^(k+1)`` is ``H u Hg`` for a subgroup H of index 2
    and any g outside it, with g normalizing H and ``g^2`` in H.
    """
    s = sorted(s)
    if len(s) > MAX_SUBGROUP_LATTICE:
        raise TooLarge(f"subgroup lattice only enumerated for |S| <= {MAX_SUBGROUP_LATTICE}")
    level = {frozenset([identity])}
    out = list(level)
    while level:
        nxt = set()
        for h in level:
            for g in s:
                if g in h or pmul(g, g) not in h:
                    continue
                if all(pconj(x, g) in h for x in h):
                    nxt.add(h | frozenset(pmul(x, g) for x in h))
        out.extend(nxt)
        level = nxt
    return sorted(out, key=sub_key)


def closure_of(gens: Iterable[Perm], identity: Perm) -> Sub:
    return finite.closure(gens, pmul, identity)


def centralizer_in(elements: Iterable[Perm], p: Iterable[Perm]) -> Sub:
    p = list(p)
    return frozenset(g for g in elements if all(pmul(g, x) == pmul(x, g) for x in p))


def normalizer_in(elements: Iterable[Perm], p: Sub) -> Sub:
    return frozenset(g for g in elements if all(pconj(x, g) in p for x in p))


def center(s: Iterable[Perm]) -> Sub:
    s = list(s)
    return centralizer_in(s, s)


# ---- fusion systems -----------------------------------------------------------------------

class FusionSystem:
    """The fusion system of ``group`` over a Sylow 2-subgroup ``sylow``."""

    def __init__(self, group: PermGroup, sylow: Iterable[Perm] | None = None):
        self.group = group
        self.identity = group.identity
        s = frozenset(sylow) if sylow is not None else sylow2(group)
        if group.order % len(s) or (group.order // len(s)) % 2 == 0 or len(s) & (len(s) - 1):
            raise ValueError("sylow is not a Sylow 2-subgroup")
        if not all(x in group for x in s):
            raise ValueError("sylow is not inside the group")
        self.S = s
        self._orbit_cache: dict = {}
        self._aut_cache: dict = {}
        self._hom_cache: dict = {}

    def __repr__(self):
        return f"FusionSystem({self.group.name or 'G'}, |S|={len(self.S)})"

    # ---- basics -------------------------------------------------------------
    def check(self, p: Iterable[Perm]) -> Sub:
        p = frozenset(p)
        if not p <= self.S:
            raise NotInSylow("subgroup is not contained in S")
        return p

    @cached_property
    def subgroups(self) -> list[Sub]:
        return all_subgroups(self.S, self.identity)

    def gen(self, gens: Iterable[Perm]) -> Sub:
        return self.check(closure_of(gens, self.identity))

    def centralizer_S(self, p: Sub) -> Sub:
        return centralizer_in(self.S, p)

    def normalizer_S(self, p: Sub) -> Sub:
        return normalizer_in(self.S, p)

    def product(self, p: Sub, q: Sub) -> Sub:
        return closure_of(list(p) + list(q), self.identity)

    # ---- conjugation machinery ----------------------------------------------
    def _orbit(self, p: Sub):
        """G-orbit of ``p`` with transversal and the Schreier generators of N_G(p)."""
        hit = self._orbit_cache.get(p)
        if hit is not None:
            return hit
        reps = {p: self.identity}
        queue = [p]
        schreier = []
        for q in queue:
            u = reps[q]
            for s in self.group.generators:
                q2 = conjugate_sub(q, s)
                us = pmul(u, s)
                if q2 not in reps:
                    reps[q2] = us
                    queue.append(q2)
                else:
                    n = pmul(us, pinv(reps[q2]))
                    if n != self.identity:
                        schreier.append(n)
        hit = (reps, tuple(dict.fromkeys(schreier)))
        self._orbit_cache[p] = hit
        return hit

    def normalizer_G(self, p: Iterable[Perm]) -> PermGroup:
        p = frozenset(p)
        _reps, schreier = self._orbit(p)
        return PermGroup(self.group.degree, schreier, "N_G(P)")

    def centralizer_G(self, p: Iterable[Perm]) -> Sub:
        p = frozenset(p)
        return centralizer_in(self.normalizer_G(p).elements, p)

    def aut(self, p: Iterable[Perm]) -> frozenset:
        """Aut_F(P), closed from the maps induced by the Schreier generators of N_G(P)."""
        p = self.check(p)
        hit = self._aut_cache.get(p)
        if hit is None:
            _reps, schreier = self._orbit(p)
            gens = [conj_map(p, n) for n in schreier]
            hit = finite.closure(gens, compose, identity_map(p))
            self._aut_cache[p] = hit
        return hit

    def inn(self, p: Iterable[Perm]) -> frozenset:
        p = self.check(p)
        return frozenset(conj_map(p, g) for g in p)

    def hom(self, p: Iterable[Perm], q: Iterable[Perm]) -> frozenset:
        """Hom_F(P, Q) from the G-orbit transversal composed with Aut_F(P)."""
        p, q = self.check(p), self.check(q)
        key = (p, q)
        hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        reps, _ = self._orbit(p)
        auts = self.aut(p)
        out = set()
        for p2, t in reps.items():
            if p2 <= q:
                for a in auts:
                    out.add(frozenset((x, pconj(y, t)) for x, y in a))
        hit = frozenset(out)
        self._hom_cache[key] = hit
        return hit

    def hom_bruteforce(self, p: Iterable[Perm], q: Iterable[Perm]) -> frozenset:
        """Oracle: restrictions of c_g over every g in G with P^g inside Q."""
        p, q = self.check(p), self.check(q)
        out = set()
        plist = list(p)
        for g in self.group.elements:
            imgs = [pconj(x, g) for x in plist]
            if all(y in q for y in imgs):
                out.add(frozenset(zip(plist, imgs)))
        return frozenset(out)

    def conjugacy_class(self, p: Iterable[Perm]) -> list[Sub]:
        """P^F: the G-conjugates of P lying in S, sorted."""
        p = self.check(p)
        reps, _ = self._orbit(p)
        return sorted((q for q in reps if q <= self.S), key=sub_key)

    def subgroup_classes(self) -> list[list[Sub]]:
        seen = set()
        out = []
        for p in self.subgroups:
            if p in seen:
                continue
            cls = self.conjugacy_class(p)
            seen.update(cls)
            out.append(cls)
        return out

    # ---- Definition-level predicates ----------------------------------------
    def is_fully_normalized(self, p: Sub) -> bool:
        n = len(self.normalizer_S(p))
        return all(n >= len(self.normalizer_S(q)) for q in self.conjugacy_class(p))

    def is_fully_centralized(self, p: Sub) -> bool:
        c = len(self.centralizer_S(p))
        return all(c >= len(self.centralizer_S(q)) for q in self.conjugacy_class(p))

    def is_centric(self, p: Sub) -> bool:
        return all(self.centralizer_S(q) <= q for q in self.conjugacy_class(p))

    def is_radical(self, p: Sub) -> bool:
        """O_2(Out_F(P)) = 1, i.e. O_2(Aut_F(P)) = Inn(P)."""
        auts = sorted(self.aut(p), key=map_key)
        o2 = finite.largest_normal_p_subgroup(auts, compose, invert, identity_map(p), 2)
        return len(o2) == len(self.inn(p))

    def is_weakly_closed(self, p: Sub) -> bool:
        return self.conjugacy_class(p) == [self.check(p)]

    def classify(self, p: Iterable[Perm]) -> dict:
        p = self.check(p)
        return {
            "fully_normalized": self.is_fully_normalized(p),
            "fully_centralized": self.is_fully_centralized(p),
            "centric": self.is_centric(p),
            "radical": self.is_radical(p),
            "weakly_closed": self.is_weakly_closed(p),
        }

    def find_fully_normalized_rep(self, p: Iterable[Perm], target: Iterable[Perm] | None = None):
        """``(alpha, P^alpha)`` with alpha defined on N_S(P) and P^alpha fully normalized.

        Conjugators are scanned in lexicographic order, so a fully normalized
        P gets the identity map.  With ``target`` the image must equal it.
        """
        p = self.check(p)
        tgt = None if target is None else self.check(target)
        n = self.normalizer_S(p)
        for g in self.group.elements:
            pg = conjugate_sub(p, g)
            if tgt is not None and pg != tgt:
                continue
            if not pg <= self.S or not self.is_fully_normalized(pg):
                continue
            if all(pconj(x, g) in self.S for x in n):
                return conj_map(n, g), pg
        raise RuntimeError("no fully normalized conjugate reachable")  # pragma: no cover

    # ---- subsystems ---------------------------------------------------------
    def extends(self, phi: Map, p: Sub, kind: str) -> bool:
        """Does phi extend to PQ with P fixed pointwise (centralizer) or setwise (normalizer)?"""
        q = source(phi)
        pq = self.product(p, q)
        if not pq <= self.S:
            return False
        for psi in self.hom(pq, self.S):
            if restrict(psi, q) != phi:
                continue
            on_p = restrict(psi, p)
            if kind == "centralizer" and on_p == identity_map(p):
                return True
            if kind == "normalizer" and image(on_p) == p:
                return True
        return False

    def local_subsystem(self, p: Iterable[Perm], kind: str) -> "SubsystemView":
        p = self.check(p)
        if kind == "centralizer":
            carrier = self.centralizer_S(p)
            ok = self.is_fully_centralized(p)
        elif kind == "normalizer":
            carrier = self.normalizer_S(p)
            ok = self.is_fully_normalized(p)
        else:
            raise ValueError(f"unknown subsystem kind {kind!r}")
        return SubsystemView(self, kind, p, carrier, warning=not ok)

    def is_normal_subsystem_anchor(self, p: Sub, kind: str) -> bool:
        """N_F(P) = F (normalizer) or C_F(P) = F (centralizer), checked on every Hom(Q, S)."""
        if kind == "normalizer" and self.normalizer_S(p) != self.S:
            return False
        if kind == "centralizer" and self.centralizer_S(p) != self.S:
            return False
        for q in self.subgroups:
            for phi in self.hom(q, self.S):
                if not self.extends(phi, p, kind):
                    return False
        return True

    def core_subgroups(self) -> tuple[Sub, Sub]:
        """(O_2(F), Z(F)) by descending scans over subgroups normal in S."""
        normal = [p for p in self.subgroups if self.normalizer_S(p) == self.S]
        o2 = next(p for p in reversed(normal) if self.is_normal_subsystem_anchor(p, "normalizer"))
        zs = center(self.S)
        central = [p for p in normal if p <= zs]
        z = next(p for p in reversed(central) if self.is_normal_subsystem_anchor(p, "centralizer"))
        return o2, z

    def constrained_check(self) -> bool:
        o2, _ = self.core_subgroups()
        return self.is_centric(o2)

    # ---- fusion theorems ----------------------------------------------------
    def all_morphisms(self) -> frozenset:
        out = set()
        for q in self.subgroups:
            out.update(self.hom(q, self.S))
        return frozenset(out)

    def alperin_subgroups(self) -> list[Sub]:
        """S together with the centric, radical, fully normalized subgroups."""
        out = []
        for p in self.subgroups:
            if p == self.S or (self.is_centric(p) and self.is_radical(p) and self.is_fully_normalized(p)):
                out.append(p)
        return out

    def alperin_closure(self) -> frozenset:
        """Morphisms generated by restrictions of Aut_F(R), R in alperin_subgroups."""
        by_source: dict[Sub, set] = {}
        for r in self.alperin_subgroups():
            subs = [q for q in self.subgroups if q <= r]
            for a in self.aut(r):
                for q in subs:
                    by_source.setdefault(q, set()).add(restrict(a, q))
        gens = {q: list(v) for q, v in by_source.items()}
        found = set()
        queue = []
        for q in self.subgroups:
            ident = identity_map(q)
            found.add(ident)
            queue.append(ident)
        for phi in queue:
            for g in gens.get(image(phi), ()):
                psi = compose(phi, g)
                if psi not in found:
                    found.add(psi)
                    queue.append(psi)
        return frozenset(found)

    def alperin_generation_check(self) -> bool:
        return self.alperin_closure() == self.all_morphisms()

    def burnside_control_check(self, w: Iterable[Perm]) -> bool:
        """F-conjugate elements of Z(W) are Aut_F(W)-conjugate (W weakly closed)."""
        w = self.check(w)
        if not self.is_weakly_closed(w):
            raise NotWeaklyClosed("W has F-conjugates other than itself")
        zw = sorted(center(w))
        auts = self.aut(w)
        for z in zw:
            orbit_aut = {dict(a)[z] for a in auts}
            fused = {
                dict(phi)[z]
                for phi in self.hom(closure_of([z], self.identity), self.S)
            }
            if {y for y in fused if y in zw} - orbit_aut:
                return False
        return True

    # ---- saturation witnesses -------------------------------------------------
    def sylow_condition(self, p: Sub) -> dict:
        """For fully normalized (centralized) P, N_S(P) (C_S(P)) has odd index in N_G(P) (C_G(P))."""
        n_g = self.normalizer_G(p)
        c_g = self.centralizer_G(p)
        return {
            "normalizer_odd_index": (n_g.order // len(self.normalizer_S(p))) % 2 == 1,
            "centralizer_odd_index": (len(c_g) // len(self.centralizer_S(p))) % 2 == 1,
        }

    def extension_axiom_instance(self, phi: Map) -> bool:
        """phi: Q -> P with P fully centralized extends to N_phi.

        ``N_phi`` is the set of g in N_S(Q) with ``phi^-1 c_g phi`` in Aut_S(P).
        """
        q = source(phi)
        p = image(phi)
        aut_s = {conj_map(p, s) for s in self.normalizer_S(p)}
        phi_inv = invert(phi)
        n_phi = frozenset(
            g for g in self.normalizer_S(q)
            if compose(compose(phi_inv, conj_map(q, g)), phi) in aut_s
        )
        for psi in self.hom(n_phi, self.S):
            if restrict(psi, q) == phi:
                return True
        return False


@dataclass
class SubsystemView:
    """C_F(P) or N_F(P) as a membership oracle over its carrier."""

    fusion: FusionSystem
    kind: str
    anchor: Sub
    carrier: Sub
    warning: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def contains(self, phi: Map) -> bool:
        if not (source(phi) <= self.carrier and image(phi) <= self.carrier):
            return False
        hit = self._cache.get(phi)
        if hit is None:
            hit = self.fusion.extends(phi, self.anchor, self.kind)
            self._cache[phi] = hit
        return hit

    @cached_property
    def subgroups(self) -> list[Sub]:
        return [q for q in self.fusion.subgroups if q <= self.carrier]

    def hom(self, q: Sub, r: Sub) -> frozenset:
        return frozenset(phi for phi in self.fusion.hom(q, r) if self.contains(phi))

    def group_side(self) -> PermGroup:
        """N_G(P) or C_G(P), the group whose fusion system this view should equal."""
        n_g = self.fusion.normalizer_G(self.anchor)
        if self.kind == "normalizer":
            return n_g
        c = centralizer_in(n_g.elements, self.anchor)
        return PermGroup(n_g.degree, finite.small_generating_set(c, pmul, self.fusion.identity), "C_G(P)")

    def group_hom(self, q: Sub, r: Sub, elements=None) -> frozenset:
        """Hom from conjugation by the group side, restricted to Q with image in R."""
        elts = elements if elements is not None else self.group_side().elements
        out = set()
        qlist = list(q)
        for g in elts:
            imgs = [pconj(x, g) for x in qlist]
            if all(y in r for y in imgs):
                out.add(frozenset(zip(qlist, imgs)))
        return frozenset(out)

    def discrepancies(self) -> list[tuple[Sub, Sub]]:
        """Carrier subgroups Q where Hom(Q, carrier) differs between the two sides."""
        elts = self.group_side().elements
        bad = []
        for q in self.subgroups:
            if self.hom(q, self.carrier) != self.group_hom(q, self.carrier, elts):
                bad.append((q, self.carrier))
        return bad
