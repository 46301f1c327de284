import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionkit import gf2


def matrices(n):
    return st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n).map(tuple)


def span_size(rows):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return len(out)


def test_identity_and_vecmat():
    ident = gf2.identity(4)
    assert ident == (1, 2, 4, 8)
    assert all(gf2.vecmat(v, ident) == v for v in range(16))
    # row vector e0 picks the first row
    assert gf2.vecmat(1, (0b0110, 1, 2, 4)) == 0b0110


@given(matrices(4), matrices(4), matrices(4))
def test_matmul_associative(a, b, c):
    assert gf2.matmul(gf2.matmul(a, b), c) == gf2.matmul(a, gf2.matmul(b, c))


@given(st.integers(0, 15), matrices(4), matrices(4))
def test_right_action(v, a, b):
    assert gf2.vecmat(gf2.vecmat(v, a), b) == gf2.vecmat(v, gf2.matmul(a, b))


@given(matrices(5))
def test_rank_matches_span_size(a):
    assert 1 << gf2.rank(a) == span_size(a)


@given(matrices(4))
def test_inverse(a):
    if gf2.is_invertible(a):
        assert gf2.matmul(a, gf2.inverse(a)) == gf2.identity(4)
    else:
        with pytest.raises(ValueError):
            gf2.inverse(a)


@given(st.lists(st.integers(0, 63), max_size=6))
def test_nullspace(rows):
    ns = gf2.nullspace(rows, 6)
    assert len(ns) == 6 - gf2.rank(rows)
    for x in gf2.span(ns):
        assert all(gf2.parity(r & x) == 0 for r in rows)


@given(st.lists(st.integers(0, 31), min_size=1, max_size=6), st.integers(0, 31))
def test_solve(rows, x):
    rhs = [gf2.parity(r & x) for r in rows]
    sol = gf2.solve(rows, rhs, 5)
    assert sol is not None
    assert [gf2.parity(r & sol) for r in rows] == rhs


def test_solve_inconsistent():
    assert gf2.solve([1, 1], [0, 1], 1) is None


@given(matrices(3))
def test_transpose_involution(a):
    assert gf2.transpose(gf2.transpose(a, 3), 3) == a


@given(matrices(4))
@settings(max_examples=30)
def test_key_round_trip(a):
    assert gf2.key_to_mat(gf2.mat_to_key(a, 4), 4) == a


def test_echelon_reduced():
    basis = gf2.echelon([0b110, 0b011, 0b101])
    assert len(basis) == 2
    for p, r in basis.items():
        assert r & p and all(not (other & p) for q, other in basis.items() if q != p)
