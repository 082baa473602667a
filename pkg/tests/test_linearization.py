import random

import pytest
from hypothesis import given, settings, strategies as st

from mibasis.field import PrimeField
from mibasis import jordan, linearization as lin, modmat, oracle, polymat
from mibasis.polymat import PolyMatrix

F97 = PrimeField(97)
F7 = PrimeField(7)

EVALS = [
    [27, 49, 29],
    [50, 58, 0],
    [77, 10, 29],
]


def nilpotent3():
    rep, _ = jordan.normalize(F97, [(0, 3)])
    return rep


def rand_jordan(rng, field, sigma):
    pairs = []
    left = sigma
    while left:
        s = rng.randrange(1, left + 1)
        pairs.append((rng.randrange(min(field.p, 6)), s))
        left -= s
    return jordan.normalize(field, pairs)[0]


def test_priority_uniform_shift_formula():
    prio = lin.build_priority([0, 0, 0], 3, 3)
    for d in range(4):
        for c in range(3):
            assert prio.index_of(c, d) == c + 3 * d


def test_priority_row_order_for_staircase_shift():
    prio = lin.build_priority([0, 3, 6], 3, 3)
    expected = [
        (0, 0), (0, 1), (0, 2), (0, 3),
        (1, 0), (1, 1), (1, 2), (1, 3),
        (2, 0), (2, 1), (2, 2), (2, 3),
    ]
    assert prio.order == expected


def test_priority_single_column():
    prio = lin.build_priority([5], 1, 4)
    assert prio.order == [(0, d) for d in range(5)]


def test_priority_invariants():
    rng = random.Random(1)
    for _ in range(20):
        m = rng.randrange(1, 5)
        delta = rng.randrange(1, 6)
        s = [rng.randrange(5) for _ in range(m)]
        prio = lin.build_priority(s, m, delta)
        keys = [(s[c] + d, c) for c, d in prio.order]
        assert keys == sorted(keys)
        for c in range(m):
            ranks = [prio.index_of(c, d) for d in range(delta + 1)]
            assert ranks == sorted(ranks)


def test_expand_reference_rows():
    prio = lin.build_priority([0, 0, 0], 3, 3)
    p1 = PolyMatrix.from_entries(F97, [[[96], [96], [1]]])
    assert lin.expand(p1, prio) == [[96, 96, 1] + [0] * 9]
    prio_t = lin.build_priority([3, 0, 2], 3, 3)
    p4 = PolyMatrix.from_entries(F97, [[[0, 0, 0, 1], [], []]])
    row = lin.expand(p4, prio_t)[0]
    assert row[-1] == 1 and not any(row[:-1])


def test_expand_compress_round_trip():
    rng = random.Random(2)
    for _ in range(20):
        m = rng.randrange(1, 5)
        delta = rng.randrange(1, 5)
        s = [rng.randrange(4) for _ in range(m)]
        prio = lin.build_priority(s, m, delta)
        mat = PolyMatrix.from_entries(
            F7,
            [
                [[rng.randrange(7) for _ in range(rng.randrange(delta + 2))] for _ in range(m)]
                for _ in range(rng.randrange(1, 4))
            ],
        )
        assert lin.compress(lin.expand(mat, prio), prio, F7) == mat


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_pivot_matches_rightmost_expansion_column(data):
    m = data.draw(st.integers(min_value=1, max_value=4))
    delta = data.draw(st.integers(min_value=1, max_value=4))
    s = data.draw(st.lists(st.integers(min_value=0, max_value=4), min_size=m, max_size=m))
    row = [
        data.draw(st.lists(st.integers(min_value=0, max_value=6), max_size=delta + 1))
        for _ in range(m)
    ]
    mat = PolyMatrix.from_entries(F7, [row])
    if all(not e for e in mat.rows[0]):
        return
    prio = lin.build_priority(s, m, delta)
    vec = lin.expand(mat, prio)[0]
    rightmost = max(i for i, v in enumerate(vec) if v)
    c, d = polymat.pivot(mat.rows[0], s)
    assert prio.index_of(c, d) == rightmost


def test_scalar_rank_profiles():
    assert lin.scalar_row_rank_profile(modmat.identity(3), 7) == (3, [0, 1, 2])
    assert lin.scalar_row_rank_profile([[1, 1], [1, 1], [0, 1]], 7) == (2, [0, 2])
    assert lin.scalar_row_rank_profile([[0, 0], [0, 0]], 7) == (0, [])
    assert lin.scalar_col_rank_profile([[0, 1, 1], [0, 1, 2]], 7) == (2, [1, 2])


def test_krylov_rank_profile_reference_instance():
    j = nilpotent3()
    prof = lin.krylov_rank_profile(EVALS, j, [0, 0, 0], 4, F97)
    assert prof.row_indices == [0, 1, 3]
    assert prof.decoded == [(0, 0), (1, 0), (0, 1)]
    prof_s = lin.krylov_rank_profile(EVALS, j, [0, 3, 6], 4, F97)
    assert prof_s.row_indices == [0, 1, 2]
    assert prof_s.decoded == [(0, 0), (0, 1), (0, 2)]
    prof_t = lin.krylov_rank_profile(EVALS, j, [3, 0, 2], 4, F97)
    assert prof_t.row_indices == [0, 1, 2]
    assert prof_t.decoded == [(1, 0), (1, 1), (1, 2)]


def test_krylov_rank_profile_zero_matrix():
    j = nilpotent3()
    prof = lin.krylov_rank_profile([[0, 0, 0]] * 2, j, [0, 0], 4, F97)
    assert prof.rank == 0 and prof.row_indices == []


def test_krylov_rejects_bad_delta():
    j = nilpotent3()
    with pytest.raises(ValueError):
        lin.krylov_rank_profile(EVALS, j, [0, 0, 0], 3, F97)
    with pytest.raises(ValueError):
        lin.krylov_rank_profile(EVALS, j, [0, 0, 0], 8, F97)


def test_minimal_degree_reference_values():
    j = nilpotent3()
    for shift, expected in (
        ([0, 0, 0], [2, 1, 0]),
        ([0, 3, 6], [3, 0, 0]),
        ([3, 0, 2], [0, 3, 0]),
    ):
        prof = lin.krylov_rank_profile(EVALS, j, shift, 4, F97)
        assert lin.minimal_degree(prof, 3) == expected


def test_minimal_degree_rank_zero():
    j = nilpotent3()
    prof = lin.krylov_rank_profile([[0, 0, 0]], j, [0], 4, F97)
    assert lin.minimal_degree(prof, 1) == [0]


def _dense_rank_profile_reference(e_rows, mulmat, shift, delta, field):
    kry = oracle.striped_krylov(e_rows, mulmat, shift, delta, field)
    return modmat.row_rank_profile(kry, field.p)[1]


def test_krylov_matches_dense_reference_jordan_and_dense():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randrange(1, 5)
        sigma = rng.randrange(1, 13)
        j = rand_jordan(rng, F7, sigma)
        e = [[rng.randrange(7) for _ in range(sigma)] for _ in range(m)]
        s = [rng.randrange(6) for _ in range(m)]
        delta = 1
        while delta < jordan.minpoly_degree(j):
            delta *= 2
        prof = lin.krylov_rank_profile(e, j, s, delta, F7)
        assert prof.row_indices == _dense_rank_profile_reference(e, j, s, delta, F7)
        dense = jordan.to_dense(j)
        prof_d = lin.krylov_rank_profile(e, dense, s, delta, F7)
        assert prof_d.row_indices == prof.row_indices
    for _ in range(15):
        m = rng.randrange(1, 4)
        sigma = rng.randrange(1, 8)
        dense = [[rng.randrange(7) for _ in range(sigma)] for _ in range(sigma)]
        e = [[rng.randrange(7) for _ in range(sigma)] for _ in range(m)]
        s = [rng.randrange(5) for _ in range(m)]
        delta = 1
        while delta < sigma:
            delta *= 2
        prof = lin.krylov_rank_profile(e, dense, s, delta, F7)
        assert prof.row_indices == _dense_rank_profile_reference(e, dense, s, delta, F7)


EXPECTED_POPOV = [
    [[82, 40, 1], [76], []],
    [[13, 3], [57, 1], []],
    [[96], [96], [1]],
]


def test_lin_interp_basis_reference_uniform():
    j = nilpotent3()
    basis, mindeg = lin.lin_interp_basis(EVALS, j, [0, 0, 0], 4, F97)
    assert mindeg == [2, 1, 0]
    assert basis == PolyMatrix.from_entries(F97, EXPECTED_POPOV)
    assert polymat.is_popov(basis, [0, 0, 0])


def test_lin_interp_basis_staircase_shift():
    j = nilpotent3()
    basis, mindeg = lin.lin_interp_basis(EVALS, j, [0, 3, 6], 4, F97)
    assert mindeg == [3, 0, 0]
    assert basis.rows[0][0] == [0, 0, 0, 1]
    assert polymat.is_popov(basis, [0, 3, 6])
    ob, om = oracle.oracle_popov(EVALS, j, [0, 3, 6], F97)
    assert basis == ob and mindeg == om


def test_lin_interp_basis_zero_evals():
    j = nilpotent3()
    basis, mindeg = lin.lin_interp_basis([[0, 0, 0]] * 3, j, [0, 1, 2], 4, F97)
    assert basis == PolyMatrix.identity(F97, 3)
    assert mindeg == [0, 0, 0]


def test_lin_interp_basis_properties_random():
    rng = random.Random(4)
    for _ in range(25):
        m = rng.randrange(1, 5)
        sigma = rng.randrange(1, 10)
        j = rand_jordan(rng, F97, sigma)
        e = [[rng.randrange(97) for _ in range(sigma)] for _ in range(m)]
        s = [rng.randrange(5) for _ in range(m)]
        delta = 1
        while delta < jordan.minpoly_degree(j):
            delta *= 2
        basis, mindeg = lin.lin_interp_basis(e, j, s, delta, F97)
        assert polymat.is_popov(basis, s)
        res = oracle.naive_residual(j, basis, e)
        assert all(not any(row) for row in res)
        assert basis.degree() <= delta
        colsum = sum(
            max((len(basis.rows[i][c]) - 1 for i in range(m) if basis.rows[i][c]), default=0)
            for c in range(m)
        )
        assert colsum <= sigma
        # full dense rank equals the minimal degree sum
        kry = oracle.striped_krylov(e, j, s, max(sigma, 1), F97)
        assert sum(mindeg) == modmat.row_rank_profile(kry, 97)[0]


def test_lin_interp_basis_shift_translation_invariance():
    rng = random.Random(5)
    for _ in range(10):
        m = rng.randrange(1, 4)
        sigma = rng.randrange(1, 8)
        j = rand_jordan(rng, F97, sigma)
        e = [[rng.randrange(97) for _ in range(sigma)] for _ in range(m)]
        s = [rng.randrange(4) for _ in range(m)]
        delta = 1
        while delta < jordan.minpoly_degree(j):
            delta *= 2
        b1, _ = lin.lin_interp_basis(e, j, s, delta, F97)
        b2, _ = lin.lin_interp_basis(e, j, [x + 3 for x in s], delta, F97)
        assert b1 == b2


def test_lin_interp_basis_large_prime_python_fallback():
    # a 61-bit prime forces the pure-Python scalar kernels end to end
    big = PrimeField((1 << 61) - 1)
    rng = random.Random(6)
    j, _ = jordan.normalize(big, [(rng.randrange(big.p), 2), (rng.randrange(big.p), 2)])
    e = [[rng.randrange(big.p) for _ in range(4)] for _ in range(2)]
    s = [1, 0]
    basis, mindeg = lin.lin_interp_basis(e, j, s, 4, big)
    assert polymat.is_popov(basis, s)
    res = oracle.naive_residual(j, basis, e)
    assert all(not any(row) for row in res)
    ob, om = oracle.oracle_popov(e, j, s, big)
    assert ob == basis and om == mindeg


def test_lin_interp_basis_wide_matrix():
    # more rows than columns: constant relations appear explicitly
    j, _ = jordan.normalize(F97, [(5, 1), (9, 1)])
    e = [[1, 1], [2, 3], [3, 4]]
    basis, mindeg = lin.lin_interp_basis(e, j, [0, 0, 0], 2, F97)
    assert sum(mindeg) == 2
    assert polymat.is_popov(basis, [0, 0, 0])
    res = oracle.naive_residual(j, basis, e)
    assert all(not any(row) for row in res)
