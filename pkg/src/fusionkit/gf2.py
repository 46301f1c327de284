"""GF(2) linear algebra on int bitsets.

Vectors are Python ints with bit ``i`` holding coordinate ``i``.  An ``n x n``
matrix is a tuple of ``n`` row ints.  Matrices act on row vectors from the
right, so ``vecmat(v, A)`` is the XOR of the rows of ``A`` selected by ``v``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Mat = tuple  # tuple[int, ...], one int per row


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def identity(n: int) -> Mat:
    return tuple(1 << i for i in range(n))


def vecmat(v: int, a: Sequence[int]) -> int:
    r = 0
    i = 0
    while v:
        if v & 1:
            r ^= a[i]
        v >>= 1
        i += 1
    return r


def matmul(a: Sequence[int], b: Sequence[int]) -> Mat:
    return tuple(vecmat(row, b) for row in a)


def matadd(a: Sequence[int], b: Sequence[int]) -> Mat:
    return tuple(x ^ y for x, y in zip(a, b))


def transpose(a: Sequence[int], ncols: int | None = None) -> Mat:
    n = len(a) if ncols is None else ncols
    return tuple(
        sum(((row >> j) & 1) << i for i, row in enumerate(a)) for j in range(n)
    )


def echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduced basis of the span of ``rows`` keyed by pivot (lowest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        r = reduce(r, basis)
        if r:
            p = r & -r
            for k in list(basis):
                if basis[k] & p:
                    basis[k] ^= r
            basis[p] = r
    return basis


def reduce(r: int, basis: dict[int, int]) -> int:
    # basis is fully reduced: no row carries another row's pivot bit
    for p, b in basis.items():
        if r & p:
            r ^= b
    return r


def rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def span(basis: Iterable[int]) -> list[int]:
    """All vectors in the span, in the order of increasing combination index."""
    vecs = [0]
    for b in basis:
        vecs += [v ^ b for v in vecs]
    return vecs


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of ``{x : parity(row & x) == 0 for every row}``."""
    basis = echelon(rows)
    pivots = {p.bit_length() - 1: r for p, r in basis.items()}
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        x = 1 << f
        for pc, r in pivots.items():
            if (r >> f) & 1:
                x |= 1 << pc
        out.append(x)
    return out


def solve(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> int | None:
    """One ``x`` with ``parity(rows[i] & x) == rhs[i]``, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    flag = 1 << ncols
    aug = [r | (flag if b else 0) for r, b in zip(rows, rhs)]
    basis = echelon(aug)
    if flag in basis:
        return None
    x = 0
    for p, r in basis.items():
        if r & flag:
            x |= p
    return x


def mat_rank(a: Sequence[int]) -> int:
    return rank(a)


def is_invertible(a: Sequence[int]) -> bool:
    return rank(a) == len(a)


def inverse(a: Sequence[int]) -> Mat:
    n = len(a)
    rows = [a[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if (rows[r] >> col) & 1), None)
        if piv is None:
            raise ValueError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(n):
            if r != col and (rows[r] >> col) & 1:
                rows[r] ^= rows[col]
    return tuple(r >> n for r in rows)


def mat_to_key(a: Sequence[int], n: int) -> int:
    key = 0
    for i, row in enumerate(a):
        key |= row << (n * i)
    return key


def key_to_mat(key: int, n: int) -> Mat:
    mask = (1 << n) - 1
    return tuple((key >> (n * i)) & mask for i in range(n))


def subspace_vectors(basis: Iterable[int]) -> frozenset[int]:
    return frozenset(span(basis))
