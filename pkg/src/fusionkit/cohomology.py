"""Cohomology over F2 for enumerated groups, extensions and complements.

Right actions throughout: a module vector ``v`` moves to ``v . A(g)``, a
1-cocycle obeys ``d(gh) = d(g) . A(h) + d(h)``, and an extension element is a
pair ``(g, e)`` standing for ``g_hat * e`` with

    (g1, e1)(g2, e2) = (g1 g2, c(g1, g2) + e1 . A(g2) + e2).

Associativity of that product is the 2-cocycle identity

    c(g1 g2, g3) + c(g1, g2) . A(g3) = c(g1, g2 g3) + c(g2, g3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import finite, gf2, modrep
from .errors import NoFpfElement, NotACocycle, ShapeMismatch, TooLarge
from .finite import FiniteGroup

MAX_UNKNOWN_BITS = 10**6
MAX_EXTENSION = 10**6

Action = Callable[[object], tuple]


def _natural(g):
    return g


def _as_finite(group) -> FiniteGroup:
    if isinstance(group, FiniteGroup):
        return group
    return group.as_finite_group()


def _apply_forms(forms: Sequence[int], mat: Sequence[int], m: int) -> list[int]:
    """Linear forms for the coordinates of ``v . mat`` given forms for ``v``."""
    out = [0] * m
    for c in range(m):
        f = forms[c]
        if not f:
            continue
        row = mat[c]
        for c2 in range(m):
            if (row >> c2) & 1:
                out[c2] ^= f
    return out


def _cayley_propagate(group: FiniteGroup, step: Callable, start: list[int], m: int):
    """Walk the Cayley graph breadth first.

    ``step(forms, k)`` returns the forms for ``a * gen_k`` from those of ``a``.
    Tree edges define values; every other edge yields consistency equations.
    """
    index = group.index
    elems = group.elements
    gens = group.generators
    values: list = [None] * len(elems)
    values[0] = start
    order = [0]
    equations: dict[int, int] = {}
    mul = group.mul
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        for k, g in enumerate(gens):
            b = index[mul(elems[a], g)]
            forms = step(values[a], k)
            if values[b] is None:
                values[b] = forms
                order.append(b)
            else:
                for f, h in zip(forms, values[b]):
                    eq = gf2.reduce(f ^ h, equations)
                    if eq:
                        _insert(equations, eq)
    if len(order) != len(elems):
        raise ValueError("generators do not generate the group")
    return values, equations


def _insert(basis: dict[int, int], r: int) -> None:
    p = r & -r
    for k in list(basis):
        if basis[k] & p:
            basis[k] ^= r
    basis[p] = r


# ---- first cohomology ------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle1:
    """A 1-cocycle as a map from group elements to module vectors."""

    values: Mapping

    def __call__(self, g) -> int:
        return self.values[g]


def _h1_system(group: FiniteGroup, action: Action, m: int):
    r = len(group.generators)
    if len(group.elements) * m > MAX_UNKNOWN_BITS:
        raise TooLarge("group order times module dimension exceeds 10^6")
    gen_mats = [action(g) for g in group.generators]

    def step(forms, k):
        out = _apply_forms(forms, gen_mats[k], m)
        for c in range(m):
            out[c] ^= 1 << (k * m + c)
        return out

    values, equations = _cayley_propagate(group, step, [0] * m, m)
    return values, equations, r * m


def cocycle_space(group, action: Action = _natural, dim: int | None = None) -> list[Cocycle1]:
    """Basis of Z^1(G, M) as explicit cocycles."""
    group = _as_finite(group)
    m = dim if dim is not None else len(action(group.identity))
    values, equations, nunk = _h1_system(group, action, m)
    sols = gf2.nullspace(equations.values(), nunk)
    out = []
    for x in sols:
        vals = {}
        for idx, forms in enumerate(values):
            v = 0
            for c, f in enumerate(forms):
                if gf2.parity(f & x):
                    v |= 1 << c
            vals[group.elements[idx]] = v
        out.append(Cocycle1(vals))
    return out


def z1_dimension(group, action: Action = _natural, dim: int | None = None) -> int:
    group = _as_finite(group)
    m = dim if dim is not None else len(action(group.identity))
    _values, equations, nunk = _h1_system(group, action, m)
    return nunk - len(equations)


def fixed_points_dimension(group, action: Action = _natural, dim: int | None = None) -> int:
    group = _as_finite(group)
    m = dim if dim is not None else len(action(group.identity))
    rows = []
    for g in group.generators:
        diff = gf2.matadd(action(g), gf2.identity(m))
        rows.extend(gf2.transpose(diff, m))
    return len(gf2.nullspace(rows, m))


def b1_dimension(group, action: Action = _natural, dim: int | None = None) -> int:
    """Dimension of the coboundaries ``g -> v . A(g) + v``, i.e. of ``M / M^G``."""
    group = _as_finite(group)
    m = dim if dim is not None else len(action(group.identity))
    return m - fixed_points_dimension(group, action, m)


def h1_dimension(group, action: Action = _natural, dim: int | None = None) -> int:
    """``dim H^1(G, M) = dim Z^1 - dim B^1`` over F2."""
    group = _as_finite(group)
    m = dim if dim is not None else len(action(group.identity))
    return z1_dimension(group, action, m) - b1_dimension(group, action, m)


def is_1_cocycle(group, d: Mapping, action: Action = _natural) -> bool:
    group = _as_finite(group)
    mul = group.mul
    for g in group.elements:
        for h in group.elements:
            if d[mul(g, h)] != gf2.vecmat(d[g], action(h)) ^ d[h]:
                return False
    return True


# ---- 2-cocycles and extensions --------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle2:
    """Sparse 2-cocycle on quotient indices plus a constant shift.

    The value at ``(i, j)`` is ``table.get((i, j), 0) ^ shift . A(j)``; the
    shift term is the coboundary of a constant function and is how
    non-normalized input gets normalized.
    """

    table: Mapping[tuple[int, int], int] = field(default_factory=dict)
    shift: int = 0


class ExtensionGroup:
    """Extension of E = F2^m by an enumerated group with a 2-cocycle.

    Elements are pairs ``(i, e)`` with ``i`` an index into ``quotient.elements``.
    """

    def __init__(self, base_dim: int, quotient: FiniteGroup, action: Action, cocycle: Cocycle2):
        self.m = base_dim
        self.quotient = quotient
        self.action = action
        self.cocycle = cocycle
        q = quotient
        self._mats = [tuple(action(g)) for g in q.elements]
        self._table = dict(cocycle.table)
        self._shift = cocycle.shift

    # quotient arithmetic by index
    def qmul(self, i: int, j: int) -> int:
        q = self.quotient
        return q.index[q.mul(q.elements[i], q.elements[j])]

    @cached_property
    def _qinv(self) -> list[int]:
        q = self.quotient
        inv = [0] * q.order
        for i in range(q.order):
            if inv[i]:
                continue
            g = q.elements[i]
            # inverse as the last element before the identity in the cyclic sequence
            y, prev = g, q.identity
            while y != q.identity:
                prev = y
                y = q.mul(y, g)
            j = q.index[prev]
            inv[i], inv[j] = j, i
        return inv

    def qinv(self, i: int) -> int:
        return self._qinv[i]

    def c(self, i: int, j: int) -> int:
        v = self._table.get((i, j), 0)
        if self._shift:
            v ^= gf2.vecmat(self._shift, self._mats[j])
        return v

    def act(self, e: int, i: int) -> int:
        return gf2.vecmat(e, self._mats[i])

    # group law
    @property
    def identity(self) -> tuple[int, int]:
        return (0, 0)

    @property
    def order(self) -> int:
        return self.quotient.order << self.m

    def mul(self, a, b):
        i, e1 = a
        j, e2 = b
        return (self.qmul(i, j), self.c(i, j) ^ gf2.vecmat(e1, self._mats[j]) ^ e2)

    def inv(self, a):
        i, e = a
        j = self.qinv(i)
        return (j, self.c(i, j) ^ gf2.vecmat(e, self._mats[j]))

    def conj(self, a, g):
        return self.mul(self.mul(self.inv(g), a), g)

    def comm(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def base(self, e: int):
        return (0, e)

    def lift(self, g) -> tuple[int, int]:
        return (self.quotient.index[g], 0)

    def elements(self):
        for i in range(self.quotient.order):
            for e in range(1 << self.m):
                yield (i, e)

    def generators(self) -> list:
        return [self.lift(g) for g in self.quotient.generators] + [
            self.base(1 << k) for k in range(self.m)
        ]

    def __repr__(self):
        return f"ExtensionGroup(|E|=2^{self.m}, |quotient|={self.quotient.order})"


def normalize(quotient: FiniteGroup, action: Action, cocycle: Cocycle2) -> Cocycle2:
    """Shift by the coboundary of the constant ``c(1, 1)`` so that ``c(1, 1) = 0``."""
    ident = quotient.index[quotient.identity]
    c11 = cocycle.table.get((ident, ident), 0) ^ gf2.vecmat(cocycle.shift, action(quotient.identity))
    if not c11:
        return cocycle
    return Cocycle2(cocycle.table, cocycle.shift ^ c11)


def check_2_cocycle(quotient: FiniteGroup, action: Action, cocycle: Cocycle2) -> None:
    """Raise NotACocycle unless the identity holds on every triple.

    The shift part is a coboundary, so only the sparse table matters.  A
    triple can only fail if one of its four terms uses a support pair, so
    checking the ``4 |G|`` triples through each support pair is exhaustive.
    """
    q = quotient
    n = q.order
    table = cocycle.table
    if not table:
        return
    elems, index, mul = q.elements, q.index, q.mul
    mats = [tuple(action(g)) for g in elems]

    def qm(i, j):
        return index[mul(elems[i], elems[j])]

    inv = [0] * n
    for i in range(n):
        for j in range(n):
            if qm(i, j) == 0:
                inv[i] = j
                break

    def c(i, j):
        return table.get((i, j), 0)

    def defect(a, b, d):
        return c(qm(a, b), d) ^ gf2.vecmat(c(a, b), mats[d]) ^ c(a, qm(b, d)) ^ c(b, d)

    for (a, b) in table:
        for g in range(n):
            triples = (
                (g, qm(inv[g], a), b),
                (a, b, g),
                (a, g, qm(inv[g], b)),
                (g, a, b),
            )
            for t in triples:
                if defect(*t):
                    raise NotACocycle(f"cocycle identity fails at quotient indices {t}")


def build_extension(base_dim: int, quotient, action: Action = _natural,
                    cocycle: Cocycle2 | Mapping | None = None) -> ExtensionGroup:
    """Validate (after normalizing) a 2-cocycle and return the extension."""
    quotient = _as_finite(quotient)
    if cocycle is None:
        cocycle = Cocycle2()
    elif not isinstance(cocycle, Cocycle2):
        cocycle = Cocycle2(dict(cocycle))
    if quotient.elements[0] != quotient.identity:
        raise ValueError("quotient.elements[0] must be the identity")
    cocycle = normalize(quotient, action, cocycle)
    check_2_cocycle(quotient, action, cocycle)
    return ExtensionGroup(base_dim, quotient, action, cocycle)


def coboundary(quotient, action: Action, t: Mapping) -> Cocycle2:
    """The 2-coboundary ``(g, h) -> t(gh) + t(g) . A(h) + t(h)`` as a sparse table."""
    q = _as_finite(quotient)
    table = {}
    for i, g in enumerate(q.elements):
        for j, h in enumerate(q.elements):
            v = t[q.mul(g, h)] ^ gf2.vecmat(t[g], action(h)) ^ t[h]
            if v:
                table[(i, j)] = v
    return Cocycle2(table)


# ---- complements --------------------------------------------------------------------

@dataclass(frozen=True)
class Complement:
    """A complement ``{(g, s(g))}`` to E, given by its section ``s``."""

    section: tuple  # s(g) for each quotient index

    def elements(self) -> frozenset:
        return frozenset(enumerate(self.section))


def _section_system(h: ExtensionGroup):
    q = h.quotient
    m = h.m
    r = len(q.generators)
    const = 1 << (r * m)
    gen_idx = [q.index[g] for g in q.generators]
    gen_mats = [h._mats[i] for i in gen_idx]

    def step_for(a_index):
        def step(forms, k):
            out = _apply_forms(forms, gen_mats[k], m)
            cv = h.c(a_index, gen_idx[k])
            for cc in range(m):
                out[cc] ^= 1 << (k * m + cc)
                if (cv >> cc) & 1:
                    out[cc] ^= const
            return out
        return step

    # _cayley_propagate passes the source index implicitly via closure below
    index = q.index
    elems = q.elements
    values: list = [None] * len(elems)
    values[0] = [0] * m
    order = [0]
    equations: dict[int, int] = {}
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        step = step_for(a)
        for k, g in enumerate(q.generators):
            b = index[q.mul(elems[a], g)]
            forms = step(values[a], k)
            if values[b] is None:
                values[b] = forms
                order.append(b)
            else:
                for f, hh in zip(forms, values[b]):
                    eq = gf2.reduce(f ^ hh, equations)
                    if eq:
                        _insert(equations, eq)
    return values, equations, r * m


def complement_search(h: ExtensionGroup) -> Complement | None:
    """A complement to E found by solving for a splitting section, or None.

    Unknowns are the section values on the quotient generators; values on the
    rest follow along a Cayley spanning tree, and each non-tree edge gives
    affine equations.  The system is solvable iff the cocycle is a coboundary.
    """
    if h.order > MAX_EXTENSION * 64:
        raise TooLarge("extension too large for complement search")
    values, equations, nunk = _section_system(h)
    const = 1 << nunk
    if const in equations:
        return None
    x = 0
    for p, row in equations.items():
        if row & const:
            x |= p
    return Complement(tuple(_evaluate_affine(forms, x, const) for forms in values))


def _evaluate_affine(forms, x, const) -> int:
    v = 0
    for c, f in enumerate(forms):
        if gf2.parity(f & (x | const)):
            v |= 1 << c
    return v


def all_complements(h: ExtensionGroup, limit: int = 4096) -> list[Complement]:
    """Every complement to E (the solution set of the section system)."""
    values, equations, nunk = _section_system(h)
    const = 1 << nunk
    if const in equations:
        return []
    homog = [row & ~const for row in equations.values()]
    kernel = gf2.nullspace(homog, nunk)
    if (1 << len(kernel)) > limit:
        raise TooLarge(f"{1 << len(kernel)} complements exceed limit {limit}")
    x0 = 0
    for p, row in equations.items():
        if row & const:
            x0 |= p
    return [
        Complement(tuple(_evaluate_affine(f, x0 ^ k, const) for f in values))
        for k in gf2.span(kernel)
    ]


def is_complement(h: ExtensionGroup, elements: frozenset) -> bool:
    """Subgroup check plus ``|C| = |quotient|`` and ``C`` meeting E trivially."""
    if len(elements) != h.quotient.order:
        return False
    if len({i for i, _ in elements}) != h.quotient.order:
        return False
    return all(h.mul(a, b) in elements for a in elements for b in elements)


def complements_bruteforce(h: ExtensionGroup) -> list[frozenset]:
    """Oracle: try every assignment of E-values to the generator lifts."""
    q = h.quotient
    r = len(q.generators)
    if h.order > 1 << 10:
        raise TooLarge("brute-force complement search is for order <= 2^10")
    found = set()
    ident = h.identity
    for code in range(1 << (r * h.m)):
        gens = [
            (q.index[g], (code >> (k * h.m)) & ((1 << h.m) - 1))
            for k, g in enumerate(q.generators)
        ]
        sub = finite.closure(gens, h.mul, ident, limit=q.order)
        if sub is not None and is_complement(h, sub):
            found.add(sub)
    return sorted(found, key=sorted)


def complement_classes(h: ExtensionGroup, complements: Iterable[frozenset]) -> list[list[frozenset]]:
    """Group complements into E-conjugacy classes by explicit conjugation."""
    comps = [frozenset(c) for c in complements]
    remaining = set(comps)
    classes = []
    for c in comps:
        if c not in remaining:
            continue
        cls = {c}
        for e in range(1 << h.m):
            g = h.base(e)
            cls.add(frozenset(h.conj(a, g) for a in c))
        remaining -= cls
        classes.append(sorted(cls, key=sorted))
    return classes


# ---- the hyperplane-stabilizer extensions ---------------------------------------------------

def hyperplane_quotient(g_part: modrep.MatGroupF2, name: str = "") -> modrep.MatGroupF2:
    """``U G`` inside GL(E) for E = V + <x>, x the last coordinate.

    U consists of the maps fixing V pointwise and sending x to x + w; G acts
    on V as given and fixes x.  One U generator suffices when G is
    irreducible on V, but all n are included for generality.
    """
    n = g_part.n
    xbit = 1 << n
    gens = []
    for g in g_part.generators:
        gens.append(tuple(g) + (xbit,))
    ident = gf2.identity(n)
    for k in range(n):
        gens.append(tuple(ident) + (xbit | (1 << k),))
    return modrep.enumerate_group(gens, n + 1, name or f"U.{g_part.name}")


def split_hyperplane_extension(g_part: modrep.MatGroupF2):
    """Semidirect product E . (U G) with the natural action; returns (H, x, V basis, G gens)."""
    n = g_part.n
    quotient = hyperplane_quotient(g_part)
    h = build_extension(n + 1, quotient.as_finite_group())
    x = 1 << n
    v_basis = [1 << k for k in range(n)]
    g_gens = [tuple(g) + (x,) for g in g_part.generators]
    return h, x, v_basis, g_gens


@dataclass
class Lemma32Verdict:
    """Findings of the conclusion check for one extension."""

    order_e: int
    order_u: int
    order_x: int
    x_bar_elementary_abelian: bool
    commutator_map_bijective: bool
    commutator_map_linear: bool
    commutator_map_equivariant: bool
    invariant_complements: int
    complement_found: bool
    y_order: int = 0
    y_type: str = ""
    y_abelian: bool = False
    y_exponent: int = 0
    y_g_invariant: bool = False
    y_meets_x_trivially: bool = False
    omega1_y_equals_v: bool = False

    @property
    def conclusion_holds(self) -> bool:
        n2 = self.order_u * self.order_u  # |V| = |U| = 2^n
        return (
            self.complement_found
            and self.y_order == n2
            and self.y_type in ("elementary abelian", "homocyclic")
            and self.y_g_invariant
            and self.y_meets_x_trivially
        )


def _quotient_u(h: ExtensionGroup, x: int, v_set: frozenset) -> list[int]:
    u = []
    for i, mat in enumerate(h._mats):
        if all(gf2.vecmat(v, mat) == v for v in v_set) and (gf2.vecmat(x, mat) ^ x) in v_set:
            u.append(i)
    return u


def lemma32_conclusion_check(h: ExtensionGroup, x: int, v_basis: Sequence[int],
                             g_part: Sequence) -> Lemma32Verdict:
    """Check the complement conclusion on an explicit extension.

    ``x`` is a vector of E outside ``V = span(v_basis)``; ``g_part`` lists
    quotient elements generating the complement G to U.  X is the preimage
    of U, V is viewed inside E, and Y is sought as the preimage of a
    G-invariant hyperplane of X/V avoiding the image of x.
    """
    m = h.m
    v_set = gf2.subspace_vectors(v_basis)
    n = len(gf2.echelon(v_basis))
    q = h.quotient
    if n != m - 1 or x in v_set or not (0 < x < (1 << m)):
        raise ShapeMismatch("need V a hyperplane of E and x outside V")
    for mat in h._mats:
        if any(gf2.vecmat(v, mat) not in v_set for v in v_basis):
            raise ShapeMismatch("V is not invariant under the quotient")
    g_idx = [q.index[g] for g in g_part]
    if any(gf2.vecmat(x, h._mats[i]) != x for i in g_idx):
        raise ShapeMismatch("G does not fix x")
    u_idx = _quotient_u(h, x, v_set)
    g_group = finite.closure(g_part, q.mul, q.identity)
    if len(u_idx) != 1 << n or len(u_idx) * len(g_group) != q.order:
        raise ShapeMismatch(f"quotient is not U.G (|U| = {len(u_idx)}, |G| = {len(g_group)})")

    x_hat = h.base(x)
    X = [(i, e) for i in u_idx for e in range(1 << m)]
    x_set = frozenset(X)
    in_v = lambda a: a[0] == 0 and a[1] in v_set  # noqa: E731
    # X/V elementary abelian: squares and commutators of generators in V
    x_gens = [(i, 0) for i in u_idx if i] + [h.base(1 << k) for k in range(m)]
    squares_ok = all(in_v(h.mul(a, a)) for a in X)
    comms_ok = all(in_v(h.comm(a, b)) for a in x_gens for b in x_gens)
    xbar_ea = squares_ok and comms_ok

    # commutator map X/E -> V
    cvals = {}
    lift_independent = True
    for a in X:
        cm = h.comm(x_hat, a)
        if not in_v(cm):
            lift_independent = False
            continue
        prev = cvals.setdefault(a[0], cm[1])
        if prev != cm[1]:
            lift_independent = False
    bijective = lift_independent and sorted(cvals.values()) == sorted(v_set)
    linear = lift_independent and all(
        cvals[h.qmul(i, j)] == cvals[i] ^ cvals[j] for i in u_idx for j in u_idx
    )
    equivariant = lift_independent
    for gi in g_idx:
        for i in u_idx:
            conj_i = h.qmul(h.qmul(h.qinv(gi), i), gi)
            if cvals.get(conj_i) != h.act(cvals.get(i, 0), gi):
                equivariant = False

    verdict = Lemma32Verdict(
        order_e=1 << m, order_u=len(u_idx), order_x=len(X),
        x_bar_elementary_abelian=xbar_ea,
        commutator_map_bijective=bijective,
        commutator_map_linear=linear,
        commutator_map_equivariant=equivariant,
        invariant_complements=0, complement_found=False,
    )
    if not xbar_ea:
        return verdict

    # coordinates on X/V with x-bar as the first basis vector
    def coset_key(a):
        return min(h.mul(a, h.base(v)) for v in v_set)

    basis = [x_hat]
    coords = {coset_key(h.identity): 0}
    coords[coset_key(x_hat)] = 1
    for a in X:
        if coset_key(a) in coords:
            continue
        k = len(basis)
        basis.append(a)
        for key, c in list(coords.items()):
            rep = min(b for b in X if coset_key(b) == key)
            coords[coset_key(h.mul(rep, a))] = c | (1 << k)
    dim = len(basis)
    coord = lambda a: coords[coset_key(a)]  # noqa: E731
    # matrices of G on X/V: rows are images of basis vectors
    g_lifts = [(gi, 0) for gi in g_idx]
    rows = []
    for gl in g_lifts:
        mat = tuple(coord(h.conj(b, gl)) for b in basis)
        diff = gf2.matadd(mat, gf2.identity(dim))
        # lambda invariant: lambda(v . M) = lambda(v) for all v, i.e. (M - 1) lambda^T = 0
        rows.extend(diff)
    # functionals with lambda(x-bar) = 1
    eq_rows = list(rows) + [1]
    rhs = [0] * len(rows) + [1]
    lam = gf2.solve(eq_rows, rhs, dim)
    kernel = gf2.nullspace(eq_rows, dim)
    verdict.invariant_complements = 0 if lam is None else 1 << len(kernel)
    if lam is None:
        return verdict
    verdict.complement_found = True
    Y = [a for a in X if not gf2.parity(coord(a) & lam)]
    y_set = frozenset(Y)
    verdict.y_order = len(Y)
    verdict.y_meets_x_trivially = x_hat not in y_set
    verdict.y_g_invariant = all(h.conj(a, gl) in y_set for a in Y for gl in g_lifts)
    y_gens = finite.small_generating_set(Y, h.mul, h.identity)
    verdict.y_abelian = all(h.mul(a, b) == h.mul(b, a) for a in y_gens for b in y_gens)
    verdict.y_exponent = max(finite.element_order(a, h.mul, h.identity) for a in Y)
    omega = frozenset(a for a in Y if h.mul(a, a) == h.identity)
    verdict.omega1_y_equals_v = omega == frozenset(h.base(v) for v in v_set)
    if not verdict.y_abelian:
        verdict.y_type = "nonabelian"
    elif verdict.y_exponent <= 2:
        verdict.y_type = "elementary abelian"
    elif len(omega) ** 2 == len(Y) and verdict.y_exponent == 4:
        verdict.y_type = "homocyclic"
    else:
        verdict.y_type = "abelian"
    del x_set
    return verdict


# ---- lifting to Z/4 -----------------------------------------------------------------------

def _to_int_matrix(m: Sequence[int]) -> np.ndarray:
    n = len(m)
    return np.array([[(row >> c) & 1 for c in range(n)] for row in m], dtype=np.int64)


def _word_product(mats: Sequence[np.ndarray], word: Sequence[int], modulus: int) -> np.ndarray:
    n = mats[0].shape[0]
    out = np.eye(n, dtype=np.int64)
    for k in word:
        out = (out @ mats[k]) % modulus
    return out


def lift_to_z4(gens: Sequence[Sequence[int]], relators: Sequence[Sequence[int]]) -> list[np.ndarray] | None:
    """Lifts ``A_k + 2 B_k`` over Z/4 satisfying every relator, or None.

    ``relators`` are words in generator indices that hold mod 2.  Writing a
    relator product as ``I + 2C`` mod 4, the lift condition is linear in the
    ``B_k`` mod 2: ``C + sum_i prefix_i B_{w_i} suffix_i = 0``.
    """
    base = [_to_int_matrix(g) for g in gens]
    n = base[0].shape[0]
    nunk = len(gens) * n * n
    rows, rhs = [], []
    for word in relators:
        p = _word_product(base, word, 4)
        ident = np.eye(n, dtype=np.int64)
        if np.any((p - ident) % 2):
            raise ValueError(f"relator {word} does not hold mod 2")
        c = ((p - ident) % 4) // 2
        prefixes = [np.eye(n, dtype=np.int64)]
        for k in word:
            prefixes.append((prefixes[-1] @ base[k]) % 2)
        suffixes = [np.eye(n, dtype=np.int64)]
        for k in reversed(word):
            suffixes.append((base[k] @ suffixes[-1]) % 2)
        suffixes.reverse()  # suffixes[i] = product of word[i:]
        coeff = np.zeros((n, n, nunk), dtype=np.int64)
        for pos, k in enumerate(word):
            pre, suf = prefixes[pos], suffixes[pos + 1]
            for r in range(n):
                for col in range(n):
                    # pre @ E_rc @ suf = outer(pre[:, r], suf[col, :])
                    coeff[:, :, k * n * n + r * n + col] ^= np.outer(pre[:, r], suf[col, :]) % 2
        for i in range(n):
            for j in range(n):
                row = 0
                for u in np.nonzero(coeff[i, j])[0]:
                    row |= 1 << int(u)
                rows.append(row)
                rhs.append(int(c[i, j]))
    sol = gf2.solve(rows, rhs, nunk)
    if sol is None:
        return None
    lifts = []
    for k, b in enumerate(base):
        bmat = np.zeros((n, n), dtype=np.int64)
        for r in range(n):
            for col in range(n):
                if (sol >> (k * n * n + r * n + col)) & 1:
                    bmat[r, col] = 1
        lifts.append((b + 2 * bmat) % 4)
    for word in relators:
        if not np.array_equal(_word_product(lifts, word, 4), np.eye(n, dtype=np.int64)):
            raise AssertionError("linearized lift failed to satisfy a relator")
    return lifts


def fixed_points_mod4(m: np.ndarray) -> int:
    """Number of nonzero ``y`` in (Z/4)^n with ``y . m = y``."""
    n = m.shape[0]
    count = 0
    for code in range(1, 4 ** n):
        y = np.array([(code >> (2 * i)) & 3 for i in range(n)], dtype=np.int64)
        if np.array_equal((y @ m) % 4, y):
            count += 1
    return count


def fpf_order3_elements(group: modrep.MatGroupF2) -> list:
    return [
        g for g in sorted(group.elements)
        if modrep.matrix_order(g) == 3 and not modrep.fixed_vectors(g)
    ]


A5_RELATORS = ((0, 0), (1, 1, 1), (0, 1) * 5)


def a5_standard_generators(group: modrep.MatGroupF2):
    """Least (a, b) with a^2 = b^3 = (ab)^5 = 1, b fixed-point-free, generating the group."""
    fpf = fpf_order3_elements(group)
    if not fpf:
        raise NoFpfElement("no element of order 3 acts without fixed points")
    involutions = [g for g in sorted(group.elements) if modrep.matrix_order(g) == 2]
    ident = group.identity
    for b in fpf:
        for a in involutions:
            if modrep.matrix_order(gf2.matmul(a, b)) != 5:
                continue
            if len(finite.closure([a, b], gf2.matmul, ident)) == group.order:
                return a, b
    raise ValueError("group is not generated by a (2, 3, 5) pair")


def locate_sl24(group: modrep.MatGroupF2) -> modrep.MatGroupF2:
    """A conjugate of the standard SL2(4) image lying inside ``group``."""
    std = modrep.build_sl24_in_gl42()
    g = modrep.find_conjugate_inside(std, group)
    if g is None:
        raise NoFpfElement(f"{group.name or 'group'} contains no conjugate of SL2(4)")
    return modrep.conjugate_group(std, g, "SL2(4)")


@dataclass
class HigmanReport:
    no_lift: bool
    generators: tuple = ()
    lift: list | None = None
    fpf_on_y: bool | None = None


def higman_report(sl24: modrep.MatGroupF2, y_exponent: int = 4) -> HigmanReport:
    if y_exponent == 2:
        return HigmanReport(True)
    if y_exponent != 4:
        raise ValueError("only exponent 2 or 4 is supported")
    a, b = a5_standard_generators(sl24)
    lifts = lift_to_z4([a, b], A5_RELATORS)
    if lifts is None:
        return HigmanReport(True, (a, b))
    fpf = fixed_points_mod4(lifts[1]) == 0
    return HigmanReport(not fpf, (a, b), lifts, fpf)


def higman_instance_check(group: modrep.MatGroupF2, sl24: modrep.MatGroupF2 | None = None,
                          y_exponent: int = 4) -> bool:
    """True iff the SL2(4) action on V admits no faithful lift to (Z/4)^n.

    Any such lift would be an action on a homocyclic group of exponent 4 with
    Omega_1 = V; the order-3 generator stays fixed-point-free on it.
    """
    if sl24 is None:
        sl24 = locate_sl24(group)
    elif not sl24.element_set <= group.element_set:
        raise ValueError("designated SL2(4) is not inside the group")
    return higman_report(sl24, y_exponent).no_lift
