"""Interpolation bases through linearization over the scalar field.

Interpolants of degree at most delta correspond to linear relations among
the rows of a striped Krylov matrix (the stack of E, E*M, ..., E*M^delta),
with rows permuted so that relations found among early rows have small
shifted row degree.  The engine computes the row rank profile of that
matrix by degree doubling, never materializing more than about 2*rank
candidate rows, then solves one small linear system for the unique
interpolation basis in shifted Popov form.

Works for an arbitrary dense multiplication matrix; a Jordan representation
enables the fast blockwise row updates.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jordan as _jordan
from . import modmat
from .field import PrimeField
from .polymat import PolyMatrix, check_shift


class PriorityPermutation:
    """Row order of the striped Krylov matrix induced by a shift.

    Pair (c, d) stands for row c of E*M^d.  Pairs are ranked by the priority
    shift[c] + d, ties broken by ascending column index c; for a fixed c the
    rank is strictly increasing in d.
    """

    __slots__ = ("m", "max_degree", "order", "_index")

    def __init__(self, shift: list[int], m: int, max_degree: int):
        check_shift(shift, m)
        if max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        self.m = m
        self.max_degree = max_degree
        pairs = [(c, d) for d in range(max_degree + 1) for c in range(m)]
        pairs.sort(key=lambda cd: (shift[cd[0]] + cd[1], cd[0]))
        self.order = pairs
        self._index = [[0] * (max_degree + 1) for _ in range(m)]
        for i, (c, d) in enumerate(pairs):
            self._index[c][d] = i

    def index_of(self, c: int, d: int) -> int:
        return self._index[c][d]

    def pair_at(self, i: int) -> tuple[int, int]:
        return self.order[i]

    def size(self) -> int:
        return self.m * (self.max_degree + 1)


def build_priority(shift: list[int], m: int, max_degree: int) -> PriorityPermutation:
    return PriorityPermutation(shift, m, max_degree)


def expand(mat: PolyMatrix, prio: PriorityPermutation) -> list[list[int]]:
    """Scalar expansion of a degree-bounded polynomial matrix.

    Column index_of(c, d) of the output holds the degree-d coefficient of
    column c.  Inverse of compress.
    """
    if mat.ncols != prio.m:
        raise ValueError("column count does not match the permutation")
    out = []
    for row in mat.rows:
        line = [0] * prio.size()
        for c, e in enumerate(row):
            if len(e) - 1 > prio.max_degree:
                raise ValueError("degree overflow in expand")
            for d, coeff in enumerate(e):
                if coeff:
                    line[prio.index_of(c, d)] = coeff
        out.append(line)
    return out


def compress(vecs: list[list[int]], prio: PriorityPermutation, field: PrimeField) -> PolyMatrix:
    """Inverse of expand."""
    rows = []
    for vec in vecs:
        if len(vec) != prio.size():
            raise ValueError("vector length does not match the permutation")
        entries = [[0] * (prio.max_degree + 1) for _ in range(prio.m)]
        for i, coeff in enumerate(vec):
            if coeff:
                c, d = prio.pair_at(i)
                entries[c][d] = coeff % field.p
        rows.append([field.normalize(e) for e in entries])
    return PolyMatrix(field, rows)


def scalar_row_rank_profile(mat: list[list[int]], p: int) -> tuple[int, list[int]]:
    """Lexicographically-first maximal independent row set."""
    return modmat.row_rank_profile(mat, p)


def scalar_col_rank_profile(mat: list[list[int]], p: int) -> tuple[int, list[int]]:
    return modmat.col_rank_profile(mat, p)


@dataclass
class RankProfile:
    rank: int
    row_indices: list[int]
    decoded: list[tuple[int, int]]
    pivot_rows: list[list[int]]
    col_indices: list[int]


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _validate_delta(delta: int, sigma: int) -> None:
    if not _is_pow2(delta) or delta > 2 * sigma - 1:
        raise ValueError("delta must be a power of two in {1, ..., 2*sigma-1}")


def _rows_times_power(rows, mulmat, step, field, pow_cache):
    if isinstance(mulmat, _jordan.JordanRep):
        return _jordan.act_power(rows, mulmat, step)
    mp = pow_cache["mat"]
    while pow_cache["exp"] < step:
        mp = modmat.mat_mul(mp, mp, field.p)
        pow_cache["exp"] *= 2
        pow_cache["mat"] = mp
    if pow_cache["exp"] != step:
        raise AssertionError("power cache out of sync")
    return modmat.mat_mul(rows, mp, field.p)


def krylov_rank_profile(
    e_rows: list[list[int]],
    mulmat,
    shift: list[int],
    delta: int,
    field: PrimeField,
) -> RankProfile:
    """Row rank profile of the shifted striped Krylov matrix in degree delta.

    delta must be a power of two bounding the degree of the minimal
    polynomial of the multiplication matrix.  The doubling loop keeps at
    most 2*rank candidate rows per iteration; reported indices refer to the
    degree-delta row ordering.
    """
    m = len(e_rows)
    sigma = len(e_rows[0]) if m else 0
    _validate_delta(delta, sigma)
    check_shift(shift, m)
    p = field.p

    def key(cd):
        return (shift[cd[0]] + cd[1], cd[0])

    # degree-0 rows, processed in priority order
    base = sorted(range(m), key=lambda c: (shift[c], c))
    rank, kept = modmat.row_rank_profile([e_rows[c] for c in base], p)
    pairs = [(base[i], 0) for i in kept]
    rows = [e_rows[c][:] for c, _ in pairs]

    pow_cache = None
    if not isinstance(mulmat, _jordan.JordanRep):
        if len(mulmat) != sigma:
            raise ValueError("multiplication matrix size mismatch")
        pow_cache = {"mat": mulmat, "exp": 1}

    step = 1
    while step < delta and pairs:
        new_pairs = [(c, d + step) for c, d in pairs]
        new_rows = _rows_times_power(rows, mulmat, step, field, pow_cache)
        merged_pairs: list[tuple[int, int]] = []
        merged_rows: list[list[int]] = []
        i = j = 0
        while i < len(pairs) or j < len(new_pairs):
            if j >= len(new_pairs) or (i < len(pairs) and key(pairs[i]) < key(new_pairs[j])):
                merged_pairs.append(pairs[i])
                merged_rows.append(rows[i])
                i += 1
            else:
                merged_pairs.append(new_pairs[j])
                merged_rows.append(new_rows[j])
                j += 1
        rank, kept = modmat.row_rank_profile(merged_rows, p)
        pairs = [merged_pairs[i] for i in kept]
        rows = [merged_rows[i] for i in kept]
        step *= 2

    prio = build_priority(shift, m, delta)
    indices = [prio.index_of(c, d) for c, d in pairs]
    _, col_idx = modmat.col_rank_profile(rows, p)
    return RankProfile(len(pairs), indices, pairs, rows, col_idx)


def minimal_degree(profile: RankProfile, m: int) -> list[int]:
    """Per column, one plus the largest profile degree seen for it."""
    out = [0] * m
    for c, d in profile.decoded:
        if d + 1 > out[c]:
            out[c] = d + 1
    return out


def _target_rows(e_rows, mulmat, mindeg, field):
    if isinstance(mulmat, _jordan.JordanRep):
        return [
            _jordan.act_power([e_rows[c]], mulmat, mindeg[c])[0]
            for c in range(len(e_rows))
        ]
    targets = [None] * len(e_rows)
    cur = [row[:] for row in e_rows]
    top = max(mindeg) if mindeg else 0
    for d in range(top + 1):
        for c, dc in enumerate(mindeg):
            if dc == d:
                targets[c] = cur[c][:]
        if d < top:
            cur = modmat.mat_mul(cur, mulmat, field.p)
    return targets


def _assemble_popov(field, m, mindeg, decoded, relation):
    entries = [[[] for _ in range(m)] for _ in range(m)]
    for c in range(m):
        col = [[0] * (mindeg[ck] + 1) for ck in range(m)]
        for k, (ck, dk) in enumerate(decoded):
            coeff = relation[c][k]
            if coeff:
                col[ck][dk] = (-coeff) % field.p
        col[c][mindeg[c]] = (col[c][mindeg[c]] + 1) % field.p
        entries[c] = [field.normalize(e) for e in col]
    return PolyMatrix(field, entries)


def lin_interp_basis(
    e_rows: list[list[int]],
    mulmat,
    shift: list[int],
    delta: int,
    field: PrimeField,
) -> tuple[PolyMatrix, list[int]]:
    """Unique interpolation basis in shifted Popov form, plus its pivot degrees.

    Every output row r satisfies sum_c r_c acting on row c of E equal zero;
    the diagonal degrees are the minimal degrees of the instance and the sum
    of the output column degrees is at most the column count of E.
    """
    m = len(e_rows)
    profile = krylov_rank_profile(e_rows, mulmat, shift, delta, field)
    mindeg = minimal_degree(profile, m)
    targets = _target_rows(e_rows, mulmat, mindeg, field)
    cols = profile.col_indices
    c_mat = [[row[j] for j in cols] for row in profile.pivot_rows]
    d_mat = [[row[j] for j in cols] for row in targets]
    relation = modmat.solve_right(c_mat, d_mat, field.p)
    basis = _assemble_popov(field, m, mindeg, profile.decoded, relation)
    return basis, mindeg
