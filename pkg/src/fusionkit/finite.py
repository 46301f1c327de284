"""Helpers for finite groups held as explicit element sets.

Everything here takes the group law as callables so the same code serves
pc-group indices, permutation tuples and automorphisms stored as maps.
Subgroups are frozensets of elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

Elt = Hashable
Mul = Callable[[Any, Any], Any]


@dataclass(frozen=True)
class FiniteGroup:
    """An enumerated group: element list, generators and the group law.

    ``elements[0]`` is the identity.  ``index`` maps element to position.
    """

    elements: tuple
    generators: tuple
    mul: Mul = field(compare=False, repr=False)
    index: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(
                self, "index", {g: i for i, g in enumerate(self.elements)}
            )

    @property
    def identity(self):
        return self.elements[0]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def closure(gens: Iterable[Elt], mul: Mul, identity: Elt, limit: int | None = None) -> frozenset:
    """Subgroup generated by ``gens`` (finite, so closing under products suffices).

    Returns None when ``limit`` is given and the closure exceeds it.
    """
    gens = [g for g in dict.fromkeys(gens) if g != identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if limit is not None and len(seen) > limit:
                        return None
        frontier = nxt
    return frozenset(seen)


def bfs_elements(gens: Sequence[Elt], mul: Mul, identity: Elt) -> list:
    """Elements in breadth-first order from the identity (deterministic)."""
    seen = {identity}
    out = [identity]
    i = 0
    while i < len(out):
        a = out[i]
        i += 1
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen.add(b)
                out.append(b)
    return out


def element_order(x: Elt, mul: Mul, identity: Elt) -> int:
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


def conj(x: Elt, g: Elt, mul: Mul, inv: Callable) -> Elt:
    """``x^g = g^-1 x g``."""
    return mul(mul(inv(g), x), g)


def commutator(a: Elt, b: Elt, mul: Mul, inv: Callable) -> Elt:
    """``[a, b] = a^-1 b^-1 a b``."""
    return mul(mul(inv(a), inv(b)), mul(a, b))


def normal_closure(xs: Iterable[Elt], group_gens: Sequence[Elt], mul: Mul, inv: Callable,
                   identity: Elt) -> frozenset:
    """Smallest normal subgroup containing ``xs``: add conjugates until stable."""
    gens = [x for x in xs if x != identity]
    sub = closure(gens, mul, identity)
    i = 0
    while i < len(gens):
        h = gens[i]
        i += 1
        for g in group_gens:
            c = conj(h, g, mul, inv)
            if c not in sub:
                gens.append(c)
                sub = closure(gens, mul, identity)
    return sub


def centralizer(elements: Iterable[Elt], subset: Iterable[Elt], mul: Mul) -> frozenset:
    subset = list(subset)
    return frozenset(
        g for g in elements if all(mul(g, s) == mul(s, g) for s in subset)
    )


def normalizer(elements: Iterable[Elt], h: frozenset, h_gens: Iterable[Elt], mul: Mul, inv: Callable) -> frozenset:
    h_gens = list(h_gens)
    return frozenset(
        g for g in elements if all(conj(s, g, mul, inv) in h for s in h_gens)
    )


def conjugate_set(h: Iterable[Elt], g: Elt, mul: Mul, inv: Callable) -> frozenset:
    gi = inv(g)
    return frozenset(mul(mul(gi, x), g) for x in h)


def small_generating_set(sub: Iterable[Elt], mul: Mul, identity: Elt) -> tuple:
    """Greedy generating set: scan elements in sorted order, keep non-members."""
    sub = sorted(sub)
    target = len(sub)
    gens: list = []
    current = frozenset([identity])
    for g in sub:
        if len(current) == target:
            break
        if g not in current:
            gens.append(g)
            current = closure(gens, mul, identity)
    return tuple(gens)


def p_part(n: int, p: int = 2) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroup(elements: Sequence[Elt], mul: Mul, inv: Callable, identity: Elt, p: int = 2,
                   start: Iterable[Elt] = ()) -> frozenset:
    """A Sylow p-subgroup by normalizer climbing.

    Starting from ``<start>`` (which must be a p-group), repeatedly adjoin the
    first element, in the order of ``elements``, that normalizes the current
    subgroup, lies outside it and has p-th power inside it.
    """
    target = p_part(len(elements), p)
    cur = closure(start, mul, identity)
    gens = list(start)
    while len(cur) < target:
        for g in elements:
            if g in cur:
                continue
            y = g
            for _ in range(p - 1):
                y = mul(y, g)
            if y not in cur:
                continue
            if all(conj(s, g, mul, inv) in cur for s in gens):
                gens.append(g)
                cur = closure(gens, mul, identity)
                break
        else:  # pragma: no cover - impossible by Sylow's theorem
            raise RuntimeError("normalizer climbing stalled")
    return cur


def largest_normal_p_subgroup(elements: Sequence[Elt], mul: Mul, inv: Callable, identity: Elt,
                              p: int = 2) -> frozenset:
    """``O_p``: the intersection of all conjugates of one Sylow p-subgroup."""
    syl = sylow_subgroup(elements, mul, inv, identity, p)
    core = set(syl)
    seen = {syl}
    for g in elements:
        c = conjugate_set(syl, g, mul, inv)
        if c not in seen:
            seen.add(c)
            core &= c
    return frozenset(core)


def elementary_abelian_subgroups(involutions: Sequence[Elt], mul: Mul, identity: Elt) -> list[list[frozenset]]:
    """All elementary abelian 2-subgroups, grouped by rank.

    Built level by level: each rank-k subgroup is extended by every involution
    commuting with it and lying outside it.  Level ``k`` of the returned list
    holds the rank-``k`` subgroups in sorted order.
    """
    invs = sorted(involutions)
    commutes = {
        a: frozenset(b for b in invs if mul(a, b) == mul(b, a)) for a in invs
    }
    levels = [[frozenset([identity])]]
    cents = {frozenset([identity]): frozenset(invs)}
    while True:
        nxt: dict[frozenset, frozenset] = {}
        for e in levels[-1]:
            cand = cents[e]
            for a in sorted(cand):
                if a in e:
                    continue
                new = e | frozenset(mul(x, a) for x in e)
                if new not in nxt:
                    nxt[new] = cand & commutes[a]
        if not nxt:
            break
        cents.update(nxt)
        levels.append(sorted(nxt, key=lambda s: sorted(s)))
    return levels


def orbits(points: Iterable[Elt], maps: Sequence[Callable[[Elt], Elt]]) -> list[frozenset]:
    """Orbit partition of ``points`` under the group generated by ``maps``."""
    points = list(points)
    remaining = set(points)
    out = []
    for pt in points:
        if pt not in remaining:
            continue
        orb = {pt}
        stack = [pt]
        while stack:
            a = stack.pop()
            for f in maps:
                b = f(a)
                if b not in orb:
                    orb.add(b)
                    stack.append(b)
        remaining -= orb
        out.append(frozenset(orb))
    return out
