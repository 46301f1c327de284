"""Finite 2-groups from power-commutator presentations.

Generators ``g_0 < g_1 < ... < g_{n-1}`` give the normal form
``g_0^e_0 g_1^e_1 ... g_{n-1}^e_{n-1}`` with every ``e_i`` in {0, 1}; an
element is stored as the int whose bit ``i`` is ``e_i``.  The relations must
put ``g_k^2`` and every ``[g_k, g_i]`` (``i < k``) in ``<g_0, ..., g_{k-1}>``,
so each prefix subgroup is normal of index 2 in the next.  The group is built
one generator at a time as a cyclic extension, and the extension data is
checked for consistency at each step.

Commutators are ``[a, b] = a^-1 b^-1 a b`` and conjugation is ``a^b = b^-1 a b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import finite, gf2
from .errors import InconsistentPresentation, NotAutomorphism, TooLarge

MAX_GENS = 12


@dataclass(frozen=True)
class PcPresentation:
    """Generators with their squares and commutators as words.

    ``powers[g]`` is the word for ``g^2``; ``commutators[(x, y)]`` is the word
    for ``[x, y]``.  The canonical orientation puts the later generator first,
    but either is accepted and the other is derived as the inverse.  Missing
    entries mean the identity.  Words are tuples of generator names in earlier
    generators and need not be collected.
    """

    generator_names: tuple[str, ...]
    powers: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    commutators: Mapping[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "PcPresentation":
        names = tuple(data["generators"])
        powers = {g: parse_word(w) for g, w in data.get("powers", {}).items()}
        comms = {}
        for key, w in data.get("commutators", {}).items():
            inner = key.strip()
            if not (inner.startswith("[") and inner.endswith("]")):
                raise ValueError(f"bad commutator key {key!r}")
            gj, gi = (s.strip() for s in inner[1:-1].split(","))
            comms[(gj, gi)] = parse_word(w)
        return cls(names, powers, comms)

    @classmethod
    def from_json(cls, text: str) -> "PcPresentation":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generator_names),
            "powers": {g: "*".join(w) for g, w in self.powers.items()},
            "commutators": {
                f"[{gj},{gi}]": "*".join(w) for (gj, gi), w in self.commutators.items()
            },
        }


def parse_word(text: str) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(s.strip() for s in text.split("*"))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Explicit subgroup of a PcGroup; equality is by element set."""

    parent: "PcGroup"
    elements: frozenset
    generators: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if isinstance(other, Subgroup):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __repr__(self):
        names = ",".join(self.parent.format(g) for g in self.generators) or "1"
        return f"<{names}> (order {self.order})"


class PcGroup:
    """A consistent pc-presented 2-group with a full multiplication table."""

    def __init__(self, pres: PcPresentation, table: np.ndarray):
        self.presentation = pres
        self.names = pres.generator_names
        self.ngens = len(self.names)
        self.table = table
        self.order = 1 << self.ngens
        self.inverse = np.argmax(table == 0, axis=1)
        # python lists are much faster than numpy scalar indexing
        self._rows = table.tolist() if self.order <= 1024 else None
        self._inv = self.inverse.tolist()

    # ---- element arithmetic -------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if self._rows is not None:
            return self._rows[a][b]
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, g: int) -> int:
        return self.mul(self.mul(self._inv[g], a), g)

    def comm(self, a: int, b: int) -> int:
        return self.mul(self.mul(self._inv[a], self._inv[b]), self.mul(a, b))

    def gen(self, name: str) -> int:
        return 1 << self.names.index(name)

    def word(self, w: str | Sequence[str]) -> int:
        """Evaluate a word such as ``"t1*a2"`` (empty is the identity)."""
        if isinstance(w, str):
            w = parse_word(w)
        x = 0
        for s in w:
            x = self.mul(x, self.gen(s))
        return x

    def format(self, x: int) -> str:
        parts = [self.names[i] for i in range(self.ngens) if (x >> i) & 1]
        return "*".join(parts) if parts else "1"

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(1 << i for i in range(self.ngens))

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, x: int) -> int:
        return finite.element_order(x, self.mul, 0)

    @cached_property
    def squares(self) -> np.ndarray:
        return self.table[np.arange(self.order), np.arange(self.order)]

    @cached_property
    def involutions(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.nonzero(self.squares == 0)[0] if x != 0)

    def as_finite_group(self) -> finite.FiniteGroup:
        return finite.FiniteGroup(tuple(range(self.order)), self.generators, self.mul)

    # ---- subgroups ----------------------------------------------------------
    def subgroup(self, gens: Iterable[int | str]) -> Subgroup:
        kept: list[int] = []
        elts = frozenset([0])
        for g in gens:
            g = self.word(g) if isinstance(g, str) else int(g)
            if g not in elts:
                kept.append(g)
                elts = finite.closure(kept, self.mul, 0)
        return Subgroup(self, elts, tuple(kept))

    def subgroup_from_elements(self, elts: Iterable[int]) -> Subgroup:
        elts = frozenset(int(x) for x in elts)
        gens = finite.small_generating_set(elts, self.mul, 0)
        sub = Subgroup(self, finite.closure(gens, self.mul, 0), gens)
        if sub.elements != elts:
            raise ValueError("element set is not a subgroup")
        return sub

    def whole(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)), self.generators)

    def trivial(self) -> Subgroup:
        return Subgroup(self, frozenset([0]), ())

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def exponent(self) -> int:
        e = 1
        for x in range(self.order):
            e = max(e, self.element_order(x))
        return e

    def __repr__(self):
        return f"PcGroup({','.join(self.names)}; order {self.order})"


# ---- construction ------------------------------------------------------------

def _extend_homomorphically(images: Sequence[int], mul_rows: np.ndarray, k: int) -> np.ndarray:
    """Map on ``G_k`` sending normal form ``prod g_i^e_i`` to ``prod images[i]^e_i``."""
    out = np.zeros(1 << k, dtype=np.int64)
    for i in range(k):
        lo = 1 << i
        out[lo:2 * lo] = mul_rows[out[:lo], images[i]]
    return out


def _commutator_value(pres, gk, gi, k, table, inv, evaluate) -> int:
    """``[g_k, g_i]`` in the prefix group, from either stored orientation."""
    fwd = pres.commutators.get((gk, gi))
    back = pres.commutators.get((gi, gk))
    if fwd is not None and back is not None:
        x, y = evaluate(fwd, k, table), evaluate(back, k, table)
        if inv[y] != x:
            raise InconsistentPresentation(f"[{gk},{gi}] and [{gi},{gk}] are not mutually inverse")
        return x
    if fwd is not None:
        return evaluate(fwd, k, table)
    if back is not None:
        return int(inv[evaluate(back, k, table)])  # [b, a] = [a, b]^-1
    return 0


def build_presented_group(pres: PcPresentation) -> PcGroup:
    """Build and consistency-check the group of a pc presentation.

    Raises InconsistentPresentation when the relations collapse the group
    below order ``2^n``, and ValueError when a relation is not well ordered.
    """
    names = pres.generator_names
    n = len(names)
    if n > MAX_GENS:
        raise TooLarge(f"{n} generators exceeds the 2^{MAX_GENS} bound")
    if len(set(names)) != n:
        raise ValueError("duplicate generator names")
    pos = {g: i for i, g in enumerate(names)}
    for g in pres.powers:
        if g not in pos:
            raise ValueError(f"unknown generator {g!r}")
    for (gj, gi) in pres.commutators:
        if gj not in pos or gi not in pos:
            raise ValueError(f"unknown generator in [{gj},{gi}]")
        if gi == gj:
            raise ValueError(f"commutator [{gj},{gi}] of a generator with itself")

    def evaluate(word, k, table):
        x = 0
        for s in word:
            if s not in pos:
                raise ValueError(f"unknown generator {s!r}")
            if pos[s] >= k:
                raise ValueError(
                    f"relation for {names[k]} uses {s}, which is not an earlier generator"
                )
            x = int(table[x, 1 << pos[s]])
        return x

    table = np.zeros((1, 1), dtype=np.int64)
    for k in range(n):
        size = 1 << k
        s = evaluate(pres.powers.get(names[k], ()), k, table)
        inv = np.argmax(table == 0, axis=1)
        # psi(h) = g_k^-1 h g_k; on generators psi(g_i) = g_i [g_k, g_i]^-1
        images = []
        for i in range(k):
            c = _commutator_value(pres, names[k], names[i], k, table, inv, evaluate)
            images.append(int(table[1 << i, inv[c]]))
        psi = _extend_homomorphically(images, table, k)
        if len(np.unique(psi)) != size:
            raise InconsistentPresentation(
                f"conjugation by {names[k]} is not injective on the earlier generators"
            )
        if not np.array_equal(psi[table], table[psi[:, None], psi[None, :]]):
            raise InconsistentPresentation(
                f"conjugation by {names[k]} does not respect the earlier relations"
            )
        if psi[s] != s:
            raise InconsistentPresentation(f"{names[k]} does not commute with its square")
        inner_s = table[table[inv[s]], s]  # h -> s^-1 h s
        if not np.array_equal(psi[psi], inner_s):
            raise InconsistentPresentation(
                f"conjugation by {names[k]} squared is not conjugation by its square"
            )
        phi = np.empty(size, dtype=np.int64)
        phi[psi] = np.arange(size)  # h -> g_k h g_k^-1
        # (h1 g^e1)(h2 g^e2) = h1 phi^e1(h2) g^(e1+e2)
        new = np.empty((2 * size, 2 * size), dtype=np.int64)
        new[:size, :size] = table
        new[:size, size:] = table + size
        twisted = table[:, phi]
        new[size:, size:] = table[twisted, s]
        new[size:, :size] = twisted + size
        table = new
    dtype = np.uint16
    return PcGroup(pres, table.astype(dtype))


# ---- the L3(4) family ------------------------------------------------------------

T0_GENERATORS = ("t1", "t2", "a1", "a2", "b1", "b2")

# relations as displayed for T0 and its extensions, pair (x, y) meaning [x, y]
T0_RELATIONS = {
    ("a1", "b1"): "t1",
    ("a2", "b2"): "t1",
    ("a2", "b1"): "t2",
    ("a1", "b2"): "t1*t2",
}
F_RELATIONS = {
    ("a1", "f"): "a1*a2",
    ("a2", "f"): "a1*a2",
    ("b1", "f"): "b1*b2",
    ("b2", "f"): "b1*b2",
    ("t2", "f"): "t1",
}
U_RELATIONS = {
    ("a1", "u"): "a1*b1",
    ("u", "b1"): "a1*b1",
    ("a2", "u"): "a2*b2",
    ("u", "b2"): "a2*b2",
    ("t2", "u"): "t1",
}

SYLOW_KINDS = ("L34", "L34_f", "L34_u", "L34_fu")


def l34_relations(kind: str) -> tuple[tuple[str, ...], dict]:
    """Generator list and ``[x, y]`` relation table for one of the four kinds."""
    if kind not in SYLOW_KINDS:
        raise ValueError(f"unknown Sylow kind {kind!r}; expected one of {SYLOW_KINDS}")
    gens = list(T0_GENERATORS)
    rels = dict(T0_RELATIONS)
    if kind in ("L34_f", "L34_fu"):
        gens.append("f")
        rels.update(F_RELATIONS)
    if kind in ("L34_u", "L34_fu"):
        gens.append("u")
        rels.update(U_RELATIONS)
    return tuple(gens), rels


def l34_presentation(kind: str) -> PcPresentation:
    gens, rels = l34_relations(kind)
    return PcPresentation(gens, {}, {k: parse_word(w) for k, w in rels.items()})


def builtin_sylow(kind: str) -> PcGroup:
    """T0 (``L34``) or its extension by f, u or both; all generators are involutions."""
    return build_presented_group(l34_presentation(kind))


def canonical_presentation(group: PcGroup) -> PcPresentation:
    """Collected relations ``g^2`` and ``[g_j, g_i]`` (i < j) read off the table."""
    names = group.names
    powers = {}
    comms = {}
    for k, g in enumerate(group.generators):
        sq = group.mul(g, g)
        if sq:
            powers[names[k]] = parse_word(group.format(sq))
        for i in range(k):
            c = group.comm(g, 1 << i)
            if c:
                comms[(names[k], names[i])] = parse_word(group.format(c))
    return PcPresentation(names, powers, comms)


# ---- small standard groups ---------------------------------------------------------

def cyclic(order: int, name: str = "c") -> PcGroup:
    """Cyclic 2-group; generator ``{name}0`` has full order, the last is the involution."""
    k = order.bit_length() - 1
    if order != 1 << k:
        raise ValueError("order must be a power of 2")
    gens = [f"{name}{i}" for i in reversed(range(k))]
    powers = {gens[j]: (gens[j - 1],) for j in range(1, k)}
    return build_presented_group(PcPresentation(tuple(gens), powers, {}))


def elementary_abelian(rank: int, name: str = "e") -> PcGroup:
    return build_presented_group(PcPresentation(tuple(f"{name}{i}" for i in range(rank))))


def dihedral(order: int) -> PcGroup:
    """``<r, s | r^(n/2), s^2, r^s = r^-1>`` with pc generators r^(2^i) and s."""
    return _metacyclic(order, lambda m: -1)


def semidihedral(order: int) -> PcGroup:
    """``r^s = r^(n/4 - 1)`` where ``n/2`` is the order of ``r``."""
    return _metacyclic(order, lambda m: m // 2 - 1)


def quaternion(order: int) -> PcGroup:
    """Generalized quaternion: ``r^s = r^-1``, ``s^2 = r^(n/4)``."""
    return _metacyclic(order, lambda m: -1, square_is_central=True)


def _metacyclic(order: int, exponent_of, square_is_central: bool = False) -> PcGroup:
    k = order.bit_length() - 1
    if order != 1 << k or k < 2:
        raise ValueError("order must be a power of 2, at least 4")
    m = order // 2  # order of r
    rk = k - 1
    # r_i = r^(2^i); pc order r_{rk-1} < ... < r_0 < s
    rnames = [f"r{i}" for i in reversed(range(rk))]
    names = tuple(rnames) + ("s",)
    powers = {f"r{i}": (f"r{i + 1}",) for i in range(rk - 1)}
    if square_is_central:
        powers["s"] = (f"r{rk - 1}",)
    e = exponent_of(m) % m

    def r_power_word(n: int) -> tuple[str, ...]:
        n %= m
        return tuple(f"r{i}" for i in reversed(range(rk)) if (n >> i) & 1)

    comms = {}
    for i in range(rk):
        # [s, r_i] = (r_i^-1)^s r_i = r^(2^i (1 - e))
        w = r_power_word((1 << i) * (1 - e))
        if w:
            comms[("s", f"r{i}")] = w
    return build_presented_group(PcPresentation(names, powers, comms))


# ---- structural operations ---------------------------------------------------------

EXHAUSTIVE_BOUND = 1 << MAX_GENS


def _check_size(group: PcGroup) -> None:
    if group.order > EXHAUSTIVE_BOUND:
        raise TooLarge(f"order {group.order} exceeds 2^{MAX_GENS}")


def center(group: PcGroup) -> Subgroup:
    t = group.table
    gens = list(group.generators)
    mask = np.all(t[:, gens] == t[gens, :].T, axis=1)
    return group.subgroup_from_elements(np.nonzero(mask)[0])


def commutator_set(group: PcGroup) -> np.ndarray:
    t = group.table.astype(np.int64)
    inv = group.inverse
    left = t[inv[:, None], inv[None, :]]
    return np.unique(t[left, t])


def derived_subgroup(group: PcGroup) -> Subgroup:
    return group.subgroup(int(c) for c in commutator_set(group))


def agemo1(group: PcGroup) -> Subgroup:
    return group.subgroup(int(x) for x in np.unique(group.squares))


def omega1(group: PcGroup) -> Subgroup:
    return group.subgroup(group.involutions)


def frattini(group: PcGroup) -> Subgroup:
    """Intersection of the maximal subgroups, computed through homomorphisms to C2.

    A map to C2 is ``x -> parity(mask & x)`` for some mask of generator
    values, and it is a homomorphism iff the mask annihilates every defect
    ``(a*b) ^ a ^ b``.  The common kernel of all such maps is the span of the
    defects, read as exponent vectors.
    """
    t = group.table.astype(np.int64)
    idx = np.arange(group.order)
    defects = np.unique(t ^ idx[:, None] ^ idx[None, :])
    basis = gf2.echelon(int(d) for d in defects)
    return group.subgroup_from_elements(gf2.span(basis.values()))


CHARACTERISTIC_KINDS = ("center", "derived", "frattini", "omega1", "agemo1")


def characteristic_subgroup(group: PcGroup, kind: str) -> Subgroup:
    _check_size(group)
    funcs = {
        "center": center,
        "derived": derived_subgroup,
        "frattini": frattini,
        "omega1": omega1,
        "agemo1": agemo1,
    }
    if kind not in funcs:
        raise ValueError(f"unknown kind {kind!r}; expected one of {CHARACTERISTIC_KINDS}")
    return funcs[kind](group)


def elementary_abelian_layers(group: PcGroup) -> list[list[Subgroup]]:
    _check_size(group)
    layers = finite.elementary_abelian_subgroups(group.involutions, group.mul, 0)
    return [[group.subgroup_from_elements(e) for e in level] for level in layers]


def max_elementary_abelians(group: PcGroup) -> list[Subgroup]:
    """The set A(G) of elementary abelian subgroups of largest order.

    Sorted by element set, so the first entry is the lexicographically least.
    """
    return elementary_abelian_layers(group)[-1]


def two_rank(group: PcGroup) -> int:
    return len(elementary_abelian_layers(group)) - 1


def thompson_subgroup(group: PcGroup) -> Subgroup:
    gens = [x for e in max_elementary_abelians(group) for x in e.generators]
    return group.subgroup(gens)


def direct_product(g: PcGroup, h: PcGroup) -> PcGroup:
    """``g x h`` with g's generators first; clashing names in h get a prime."""
    if g.ngens + h.ngens > MAX_GENS:
        raise TooLarge(f"order 2^{g.ngens + h.ngens} exceeds 2^{MAX_GENS}")
    pg, ph = canonical_presentation(g), canonical_presentation(h)
    taken = set(pg.generator_names)
    rename = {}
    for name in ph.generator_names:
        new = name
        while new in taken:
            new += "'"
        taken.add(new)
        rename[name] = new

    def rn(w):
        return tuple(rename[s] for s in w)

    names = pg.generator_names + tuple(rename[n] for n in ph.generator_names)
    powers = dict(pg.powers)
    powers.update({rename[k]: rn(w) for k, w in ph.powers.items()})
    comms = dict(pg.commutators)
    comms.update({(rename[a], rename[b]): rn(w) for (a, b), w in ph.commutators.items()})
    return build_presented_group(PcPresentation(names, powers, comms))


def centralizer(group: PcGroup, sub: Subgroup | Iterable[int]) -> Subgroup:
    _check_size(group)
    gens = list(sub.generators) if isinstance(sub, Subgroup) else list(sub)
    t = group.table
    if not gens:
        return group.whole()
    mask = np.all(t[:, gens] == t[gens, :].T, axis=1)
    return group.subgroup_from_elements(np.nonzero(mask)[0])


def normalizer(group: PcGroup, sub: Subgroup) -> Subgroup:
    _check_size(group)
    if not sub.generators:
        return group.whole()
    t = group.table.astype(np.int64)
    inv = group.inverse
    members = np.zeros(group.order, dtype=bool)
    members[list(sub.elements)] = True
    g = np.arange(group.order)
    ok = np.ones(group.order, dtype=bool)
    for s in sub.generators:
        ok &= members[t[t[inv[g], s], g]]
    return group.subgroup_from_elements(np.nonzero(ok)[0])


def local_subgroup(group: PcGroup, sub: Subgroup, kind: str) -> Subgroup:
    if kind == "centralizer":
        return centralizer(group, sub)
    if kind == "normalizer":
        return normalizer(group, sub)
    raise ValueError(f"unknown kind {kind!r}")


def check_automorphism(group: PcGroup, perm: Sequence[int]) -> None:
    """Raise NotAutomorphism unless ``perm`` (element -> image) is an automorphism.

    Bijectivity is checked globally; the homomorphism law is checked on every
    pair (x, generator), which forces it for all pairs.
    """
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (group.order,) or len(np.unique(perm)) != group.order:
        raise NotAutomorphism("map is not a bijection of the element set")
    t = group.table.astype(np.int64)
    for g in group.generators:
        if not np.array_equal(perm[t[:, g]], t[perm, perm[g]]):
            raise NotAutomorphism(f"map is not multiplicative at generator {group.format(g)}")


def inner_automorphism(group: PcGroup, g: int) -> list[int]:
    return [group.conj(x, g) for x in range(group.order)]


def automorphism_from_images(group: PcGroup, images: Sequence[int]) -> list[int]:
    """Extend generator images along normal forms and check the result."""
    perm = [0] * group.order
    for x in range(1, group.order):
        top = x.bit_length() - 1
        # x = (normal form of the lower bits) * g_top, since g_top is the last letter
        perm[x] = group.mul(perm[x & ~(1 << top)], images[top])
    check_automorphism(group, perm)
    return perm


def involution_classes_under(group: PcGroup, automorphisms: Sequence[Sequence[int]]) -> list[frozenset]:
    """Orbits on the involutions of ``<automorphisms, Inn(G)>``, sorted by least element."""
    for a in automorphisms:
        check_automorphism(group, a)
    maps = [a.__getitem__ for a in (list(map(int, a)) for a in automorphisms)]
    maps += [(lambda x, g=g: group.conj(x, g)) for g in group.generators]
    orbs = finite.orbits(group.involutions, maps)
    return sorted(orbs, key=min)


SMALL_TAGS = ("cyclic", "elementary", "homocyclic", "dihedral", "semidihedral", "quaternion", "other")


def isomorphism_type_small(group: PcGroup) -> str:
    """Fingerprint tag for 2-groups of order at most 16."""
    n = group.order
    if n > 16:
        raise TooLarge("isomorphism_type_small handles order <= 16")
    orders = [group.element_order(x) for x in range(n)]
    exp = max(orders)
    ninv = len(group.involutions)
    if exp == n:
        return "cyclic"
    if exp <= 2:
        return "elementary"
    if group.is_abelian():
        if exp ** ((ninv + 1).bit_length() - 1) == n:
            return "homocyclic"
        return "other"
    if exp == n // 2:
        if ninv == n // 2 + 1:
            return "dihedral"
        if n >= 16 and ninv == n // 4 + 1:
            return "semidihedral"
        if ninv == 1:
            return "quaternion"
    return "other"
