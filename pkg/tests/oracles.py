"""Independent models used as test oracles.

T0 is modelled as the unitriangular 3x3 matrices over F4, written as triples
(x, y, z) for [[1, x, z], [0, 1, y], [0, 0, 1]].  The field automorphism acts
entrywise; the graph automorphism is inverse-transpose followed by the flip of
the antidiagonal.  Nothing here touches the pc-presentation code.
"""

from collections import Counter
from itertools import product

F4 = range(4)


def fmul(a, b):
    r = 0
    for i in range(2):
        if (b >> i) & 1:
            r ^= a << i
    if r & 4:
        r ^= 0b111
    return r


def frob(a):
    return fmul(a, a)


def ut_mul(p, q):
    x, y, z = p
    x2, y2, z2 = q
    return (x ^ x2, y ^ y2, z ^ z2 ^ fmul(x, y2))


def ut_elements():
    return [t for t in product(F4, F4, F4)]


def field_aut(p):
    return tuple(frob(a) for a in p)


def graph_aut(p):
    x, y, z = p
    return (y, x, z ^ fmul(x, y))


def semidirect(autos):
    """T0 extended by commuting involutory automorphisms: elements (t, mask)."""
    def act(t, mask):
        for k, a in enumerate(autos):
            if (mask >> k) & 1:
                t = a(t)
        return t

    def mul(g, h):
        (t1, m1), (t2, m2) = g, h
        # (t1 s1)(t2 s2) = t1 t2^(s1^-1) s1 s2 and each s is an involution
        return (ut_mul(t1, act(t2, m1)), m1 ^ m2)

    elts = [(t, m) for t in ut_elements() for m in range(1 << len(autos))]
    return elts, mul, ((0, 0, 0), 0)


def order_statistics(elts, mul, ident):
    stats = Counter()
    for g in elts:
        k, y = 1, g
        while y != ident:
            y = mul(y, g)
            k += 1
        stats[k] += 1
    return dict(sorted(stats.items()))


def center_size(elts, mul):
    return sum(1 for g in elts if all(mul(g, h) == mul(h, g) for h in elts))


def squares_subgroup_size(elts, mul, ident):
    sq = {mul(g, g) for g in elts}
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in sq:
                b = mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)
