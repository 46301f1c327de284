"""Permutation groups with a stabilizer chain.

A permutation of ``{0, ..., n-1}`` is a tuple of images.  Products are
composed left to right, ``(p * q)[i] = q[p[i]]``, so ``x^g = g^-1 x g`` is
the usual right-action conjugation.  The stabilizer chain always uses the
full base ``0, 1, ..., n-1``; levels that do not move are simply trivial.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

from . import finite
from .errors import TooLarge

Perm = tuple

MAX_ENUM = 10**6


def pmul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def pconj(x: Perm, g: Perm) -> Perm:
    """``g^-1 x g``: relabel the cycles of ``x`` through ``g``."""
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[g[i]] = g[j]
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


def perm_order(p: Perm) -> int:
    return finite.element_order(p, pmul, identity_perm(len(p)))


def _transversal(point: int, gens: Sequence[Perm], ident: Perm) -> dict:
    trans = {point: ident}
    queue = [point]
    for pt in queue:
        u = trans[pt]
        for g in gens:
            q = g[pt]
            if q not in trans:
                trans[q] = pmul(u, g)
                queue.append(q)
    return trans


class PermGroup:
    """A permutation group given by generators, with a Schreier-Sims chain."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], name: str = ""):
        self.degree = degree
        self.name = name
        ident = identity_perm(degree)
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != degree or sorted(g) != list(ident):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
            if g != ident and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.identity = ident
        self._build_chain()

    # ---- stabilizer chain ---------------------------------------------------
    def _build_chain(self):
        n = self.degree
        ident = self.identity
        strong = [[g for g in self.generators if all(g[b] == b for b in range(i))] for i in range(n)]
        trans = [_transversal(i, strong[i], ident) for i in range(n)]
        self._strong, self._trans = strong, trans
        i = n - 1
        while i >= 0:
            new = self._schreier_pass(i)
            if new is None:
                i -= 1
                continue
            h, j = new
            for level in range(i + 1, j + 1):
                strong[level].append(h)
                trans[level] = _transversal(level, strong[level], ident)
            i = j  # levels below j must be rechecked first

    def _schreier_pass(self, i: int):
        """First Schreier generator at level ``i`` that does not sift, or None."""
        trans = self._trans[i]
        for pt, u in trans.items():
            for s in self._strong[i]:
                sg = pmul(pmul(u, s), pinv(trans[s[pt]]))
                h, j = self._sift(sg, i + 1)
                if h != self.identity:
                    return h, j
        return None

    def _sift(self, g: Perm, start: int = 0):
        for i in range(start, self.degree):
            pt = g[i]
            t = self._trans[i]
            if pt not in t:
                return g, i
            if pt != i:
                g = pmul(g, pinv(t[pt]))
        return g, self.degree

    @cached_property
    def order(self) -> int:
        out = 1
        for t in self._trans:
            out *= len(t)
        return out

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        h, _ = self._sift(g)
        return h == self.identity

    def base_orbit_lengths(self) -> list[int]:
        return [len(t) for t in self._trans]

    # ---- enumeration --------------------------------------------------------
    @cached_property
    def elements(self) -> tuple:
        """All elements in lexicographic order of image tuples."""
        if self.order > MAX_ENUM:
            raise TooLarge(f"group of order {self.order} exceeds {MAX_ENUM}")
        elts = [self.identity]
        for t in reversed(self._trans):
            reps = list(t.values())
            if len(reps) > 1:
                elts = [pmul(e, u) for e in elts for u in reps]
        return tuple(sorted(elts))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    def mul(self, a: Perm, b: Perm) -> Perm:
        return pmul(a, b)

    def inv(self, a: Perm) -> Perm:
        return pinv(a)

    def as_finite_group(self) -> finite.FiniteGroup:
        # FiniteGroup wants the identity first; it is the lex-least element
        return finite.FiniteGroup(self.elements, self.generators, pmul, self.index)

    def subgroup(self, gens: Iterable[Sequence[int]], name: str = "") -> "PermGroup":
        return PermGroup(self.degree, gens, name)

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"{label}(degree={self.degree}, order={self.order})"

    # ---- I/O ----------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [[i + 1 for i in g] for g in self.generators],
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PermGroup":
        n = int(data["degree"])
        gens = [tuple(int(i) - 1 for i in g) for g in data["generators"]]
        return cls(n, gens, data.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "PermGroup":
        return cls.from_dict(json.loads(text))


def load_group(path) -> PermGroup:
    with open(path) as fh:
        return PermGroup.from_json(fh.read())


def group_from_elements(degree: int, elts: Iterable[Perm], name: str = "") -> PermGroup:
    gens = finite.small_generating_set(elts, pmul, identity_perm(degree))
    return PermGroup(degree, gens, name)


# ---- standard small groups ---------------------------------------------------------------

def symmetric(n: int) -> PermGroup:
    gens = [from_cycles(n, [(0, 1)])] if n > 1 else []
    if n > 2:
        gens.append(from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens, f"S{n}")


def alternating(n: int) -> PermGroup:
    gens = [from_cycles(n, [(0, 1, k)]) for k in range(2, n)]
    return PermGroup(n, gens, f"A{n}")


def dihedral8() -> PermGroup:
    return PermGroup(4, [from_cycles(4, [(0, 1, 2, 3)]), from_cycles(4, [(0, 2)])], "D8")


def l32() -> PermGroup:
    """L3(2) on the seven points of the Fano plane (lines ``{i, i+1, i+3}`` mod 7)."""
    return PermGroup(7, [from_cycles(7, [tuple(range(7))]), from_cycles(7, [(1, 2, 4), (3, 6, 5)]),
                         from_cycles(7, [(0, 1), (4, 6)])], "L3(2)")


def wreath_square(k: PermGroup) -> tuple[PermGroup, Perm]:
    """``(K x K)<x>`` on two copies of K's points, with ``x`` swapping the copies."""
    d = k.degree
    gens = []
    for g in k.generators:
        gens.append(tuple(g) + tuple(range(d, 2 * d)))
    x = tuple(range(d, 2 * d)) + tuple(range(d))
    gens.append(x)
    return PermGroup(2 * d, gens, f"({k.name}x{k.name}).2"), x


def diagonal(k: PermGroup, elts: Iterable[Perm]) -> list[Perm]:
    d = k.degree
    return [tuple(g) + tuple(i + d for i in g) for g in elts]
