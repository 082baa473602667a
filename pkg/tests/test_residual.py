import random

import pytest

from mibasis.field import PrimeField
from mibasis import jordan, oracle, residual
from mibasis.polymat import PolyMatrix

F97 = PrimeField(97)
F7 = PrimeField(7)

EVALS = [
    [27, 49, 29],
    [50, 58, 0],
    [77, 10, 29],
]

REFERENCE_BASIS = [
    [[0, 36, 1], [0, 31], []],
    [[13, 3], [57, 1], []],
    [[96], [96], [1]],
]


def nilpotent3():
    rep, _ = jordan.normalize(F97, [(0, 3)])
    return rep


def rand_jordan(rng, field, sigma, few_eigs=True):
    pool = range(min(field.p, 5)) if few_eigs else range(field.p)
    pairs = []
    left = sigma
    while left:
        s = rng.randrange(1, left + 1)
        pairs.append((rng.choice(list(pool)), s))
        left -= s
    return jordan.normalize(field, pairs)[0]


def rand_pmat(rng, field, rows, cols, deg):
    return PolyMatrix.from_entries(
        field,
        [
            [[rng.randrange(field.p) for _ in range(rng.randrange(deg + 2))] for _ in range(cols)]
            for _ in range(rows)
        ],
    )


def test_reference_basis_residual_is_zero():
    basis = PolyMatrix.from_entries(F97, REFERENCE_BASIS)
    assert residual.compute_residuals(nilpotent3(), basis, EVALS) == [[0, 0, 0]] * 3


def test_identity_residual_returns_evals():
    ident = PolyMatrix.identity(F97, 3)
    assert residual.compute_residuals(nilpotent3(), ident, EVALS) == EVALS


def test_single_row_dependency_vanishes():
    row = PolyMatrix.from_entries(F97, [[[96], [96], [1]]])
    assert residual.compute_residuals(nilpotent3(), row, EVALS) == [[0, 0, 0]]


def test_plan_partitions_all_columns():
    rng = random.Random(1)
    for _ in range(40):
        sigma = rng.randrange(1, 16)
        m = rng.randrange(1, 5)
        j = rand_jordan(rng, F7, sigma)
        plan = residual.build_residual_plan(j, m)
        cols = sorted(
            off + t
            for bucket in plan.buckets
            for (_, s, off) in bucket.entries
            for t in range(s)
        )
        assert cols == list(range(sigma))


def test_shift_strategy_single_eigenvalue_zero():
    # one repeated nilpotent eigenvalue reduces to truncated products
    rng = random.Random(2)
    j, _ = jordan.normalize(F7, [(0, 2)] * 3)
    e = [[rng.randrange(7) for _ in range(6)] for _ in range(2)]
    p = rand_pmat(rng, F7, 2, 2, 2)
    out = [[0] * 6 for _ in range(2)]
    residual.residual_by_shifting([(0, 2, 0), (0, 2, 2), (0, 2, 4)], p, e, out)
    assert out == oracle.naive_residual(j, p, e)


def test_shift_strategy_constant_p():
    rng = random.Random(3)
    j, _ = jordan.normalize(F7, [(3, 2)] * 4)
    e = [[rng.randrange(7) for _ in range(8)] for _ in range(2)]
    p = PolyMatrix.from_entries(F7, [[[2], [1]], [[0], [5]]])
    out = [[0] * 8 for _ in range(2)]
    residual.residual_by_shifting(list(zip([3] * 4, [2] * 4, [0, 2, 4, 6])), p, e, out)
    assert out == oracle.naive_residual(j, p, e)


def test_crt_strategy_distinct_points_constant_p():
    rng = random.Random(4)
    pts = [1, 2, 4, 5]
    j, _ = jordan.normalize(F7, [(x, 1) for x in pts])
    e = [[rng.randrange(7) for _ in range(4)] for _ in range(3)]
    p = PolyMatrix.from_entries(F7, [[[2], [0], [1]], [[3], [1], []], [[], [], [4]]])
    out = [[0] * 4 for _ in range(3)]
    residual.residual_by_crt(
        [(x, 1, i) for i, x in enumerate(j.blocks and [b[0] for b in j.blocks])], p, e, out
    )
    assert out == oracle.naive_residual(j, p, e)


def test_crt_equals_shift_on_single_nilpotent_block():
    rng = random.Random(5)
    j, _ = jordan.normalize(F7, [(0, 5)])
    e = [[rng.randrange(7) for _ in range(5)] for _ in range(2)]
    p = rand_pmat(rng, F7, 2, 2, 3)
    out1 = [[0] * 5 for _ in range(2)]
    out2 = [[0] * 5 for _ in range(2)]
    residual.residual_by_shifting([(0, 5, 0)], p, e, out1)
    residual.residual_by_crt([(0, 5, 0)], p, e, out2)
    assert out1 == out2 == oracle.naive_residual(j, p, e)


def test_crt_strategy_mixed_bucket():
    rng = random.Random(6)
    j, _ = jordan.normalize(F97, [(3, 2), (3, 2), (11, 2), (20, 1)])
    e = [[rng.randrange(97) for _ in range(7)] for _ in range(2)]
    p = rand_pmat(rng, F97, 2, 2, 3)
    got = residual.compute_residuals(j, p, e)
    assert got == oracle.naive_residual(j, p, e)


def test_dispatcher_covers_both_paths_and_matches_naive():
    rng = random.Random(7)
    for trial in range(80):
        m = rng.randrange(1, 4)
        kind = trial % 4
        if kind == 0:  # all size-1 blocks, eigenvalues may repeat a lot
            sigma = rng.randrange(1, 12)
            pairs = [(rng.randrange(3), 1) for _ in range(sigma)]
        elif kind == 1:  # one big block
            sigma = rng.randrange(1, 12)
            pairs = [(rng.randrange(5), sigma)]
        elif kind == 2:  # heavy repetition above the m threshold
            reps = m + 1 + rng.randrange(3)
            size = rng.randrange(1, 3)
            pairs = [(2, size)] * reps + [(4, 1)]
            sigma = reps * size + 1
        else:
            sigma = rng.randrange(1, 14)
            pairs = []
            left = sigma
            while left:
                s = rng.randrange(1, left + 1)
                pairs.append((rng.randrange(4), s))
                left -= s
        j, _ = jordan.normalize(F7, pairs)
        sigma = j.order
        e = [[rng.randrange(7) for _ in range(sigma)] for _ in range(m)]
        p = rand_pmat(rng, F7, m, m, 3)
        assert residual.compute_residuals(j, p, e) == oracle.naive_residual(j, p, e)


def test_linearity_in_p():
    rng = random.Random(8)
    from mibasis.polymat import mat_add

    for _ in range(15):
        m = rng.randrange(1, 4)
        j = rand_jordan(rng, F97, rng.randrange(1, 10))
        sigma = j.order
        e = [[rng.randrange(97) for _ in range(sigma)] for _ in range(m)]
        p1 = rand_pmat(rng, F97, m, m, 2)
        p2 = rand_pmat(rng, F97, m, m, 2)
        r1 = residual.compute_residuals(j, p1, e)
        r2 = residual.compute_residuals(j, p2, e)
        rsum = residual.compute_residuals(j, mat_add(p1, p2), e)
        assert rsum == [
            [(a + b) % 97 for a, b in zip(ra, rb)] for ra, rb in zip(r1, r2)
        ]


def test_dimension_mismatch_rejected():
    p = PolyMatrix.identity(F97, 2)
    with pytest.raises(ValueError):
        residual.compute_residuals(nilpotent3(), p, EVALS)
