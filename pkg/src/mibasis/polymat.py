"""Polynomial matrices, shifts, row degrees, and reducedness predicates.

A PolyMatrix is a dense row-major grid of normalized coefficient lists over
one PrimeField.  Shifts are per-column nonnegative integer weights; row
degree vectors may contain MINUS_INF entries, which mark zero rows.
"""

from __future__ import annotations

from .field import MINUS_INF, PrimeField
from . import modmat

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None


class PolyMatrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: PrimeField, rows: list[list[list[int]]], ncols: int | None = None):
        self.field = field
        self.nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        for row in rows:
            if len(row) != self.ncols:
                raise ValueError("ragged polynomial matrix")
        self.rows = rows

    @classmethod
    def zeros(cls, field: PrimeField, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(field, [[[] for _ in range(ncols)] for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "PolyMatrix":
        return cls(field, [[[1] if i == j else [] for j in range(n)] for i in range(n)])

    @classmethod
    def from_entries(cls, field: PrimeField, entries) -> "PolyMatrix":
        """Build from nested coefficient lists, reducing and normalizing."""
        return cls(field, [[field.poly(e) for e in row] for row in entries])

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and other.field == self.field
            and other.rows == self.rows
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over F_{self.field.p})"

    def copy(self) -> "PolyMatrix":
        return PolyMatrix(self.field, [[e[:] for e in row] for row in self.rows], self.ncols)

    def degree(self):
        """Largest entry degree, MINUS_INF if the matrix is zero."""
        d = MINUS_INF
        for row in self.rows:
            for e in row:
                if e and len(e) - 1 > d:
                    d = len(e) - 1
        return d

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def submatrix(self, rows, cols) -> "PolyMatrix":
        cols = list(cols)
        return PolyMatrix(
            self.field, [[self.rows[i][j][:] for j in cols] for i in rows], len(cols)
        )

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.nrows != self.nrows:
            raise ValueError("row count mismatch in hstack")
        return PolyMatrix(
            self.field,
            [a + b for a, b in zip(self.rows, other.rows)],
            self.ncols + other.ncols,
        )

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch in vstack")
        return PolyMatrix(self.field, self.rows + other.rows, self.ncols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def scale_columns_by_x_power(self, exps: list[int]) -> "PolyMatrix":
        """Multiply column j by X^exps[j]."""
        f = self.field
        return PolyMatrix(
            f,
            [[f.poly_shift_up(e, exps[j]) for j, e in enumerate(row)] for row in self.rows],
            self.ncols,
        )

    def divide_columns_by_x_power(self, exps: list[int]) -> "PolyMatrix":
        """Exactly divide column j by X^exps[j]."""
        out = []
        for row in self.rows:
            new = []
            for j, e in enumerate(row):
                k = exps[j]
                if e and any(c for c in e[:k]):
                    raise ValueError("column not divisible by the requested power of X")
                new.append(e[k:] if e else [])
            out.append(new)
        return PolyMatrix(self.field, out, self.ncols)


def check_shift(shift: list[int], ncols: int) -> None:
    if len(shift) != ncols:
        raise ValueError("shift length does not match column count")
    for s in shift:
        if not isinstance(s, int) or s < 0:
            raise ValueError("shift entries must be nonnegative integers")


def row_degree(row: list[list[int]], shift: list[int]):
    d = MINUS_INF
    for e, s in zip(row, shift):
        if e:
            v = len(e) - 1 + s
            if v > d:
                d = v
    return d


def shifted_row_degree(mat: PolyMatrix, shift: list[int]) -> list:
    """Per-row max of entry degree plus column shift; MINUS_INF on zero rows."""
    check_shift(shift, mat.ncols)
    return [row_degree(row, shift) for row in mat.rows]


def plain_row_degree(mat: PolyMatrix) -> list:
    return shifted_row_degree(mat, [0] * mat.ncols)


def degree_sum(degs) -> int:
    """Sum of the finite entries of a degree vector."""
    return sum(d for d in degs if d != MINUS_INF)


def leading_matrix(mat: PolyMatrix, shift: list[int]) -> list[list[int]]:
    """Coefficient of degree rdeg_i - shift_j in entry (i, j)."""
    check_shift(shift, mat.ncols)
    degs = shifted_row_degree(mat, shift)
    if any(d == MINUS_INF for d in degs):
        raise ValueError("leading matrix undefined on zero rows")
    out = []
    for row, d in zip(mat.rows, degs):
        lead = []
        for e, s in zip(row, shift):
            k = d - s
            lead.append(e[k] if 0 <= k < len(e) else 0)
        out.append(lead)
    return out


def is_reduced(mat: PolyMatrix, shift: list[int]) -> bool:
    """True when the shifted leading matrix has full row rank."""
    lm = leading_matrix(mat, shift)
    rank, _ = modmat.row_rank_profile(lm, mat.field.p)
    return rank == mat.nrows


def pivot(row: list[list[int]], shift: list[int]) -> tuple[int, int]:
    """(pivot index, pivot degree): rightmost column reaching the row degree."""
    d = row_degree(row, shift)
    if d == MINUS_INF:
        raise ValueError("zero row has no pivot")
    for j in range(len(row) - 1, -1, -1):
        e = row[j]
        if e and len(e) - 1 + shift[j] == d:
            return j, len(e) - 1
    raise AssertionError("unreachable")


def is_weak_popov(mat: PolyMatrix, shift: list[int]) -> bool:
    """True when rows are nonzero with pairwise distinct pivot indices."""
    check_shift(shift, mat.ncols)
    seen = set()
    for row in mat.rows:
        if row_degree(row, shift) == MINUS_INF:
            return False
        j, _ = pivot(row, shift)
        if j in seen:
            return False
        seen.add(j)
    return True


def is_popov(mat: PolyMatrix, shift: list[int]) -> bool:
    """Monic diagonal pivots dominating their columns in degree."""
    if mat.nrows != mat.ncols:
        raise ValueError("Popov form is defined for square matrices")
    check_shift(shift, mat.ncols)
    for i, row in enumerate(mat.rows):
        if row_degree(row, shift) == MINUS_INF:
            return False
        j, d = pivot(row, shift)
        if j != i or row[j][-1] != 1:
            return False
    for j in range(mat.ncols):
        piv_deg = len(mat.rows[j][j]) - 1
        for i in range(mat.nrows):
            if i != j and mat.rows[i][j] and len(mat.rows[i][j]) - 1 >= piv_deg:
                return False
    return True


def sorted_degrees(degs) -> list:
    """Degree tuple sorted ascending, for lexicographic minimality checks."""
    return sorted(degs, key=lambda d: (d != MINUS_INF, d))


def naive_mul(b: PolyMatrix, a: PolyMatrix) -> PolyMatrix:
    """Reference product by schoolbook inner products of entries."""
    if b.field != a.field:
        raise ValueError("field mismatch")
    if b.ncols != a.nrows:
        raise ValueError("dimension mismatch in naive_mul")
    f = b.field
    out = []
    for brow in b.rows:
        orow = []
        for j in range(a.ncols):
            acc: list[int] = []
            for e, arow in zip(brow, a.rows):
                if e and arow[j]:
                    acc = f.poly_add(acc, f.poly_mul_schoolbook(e, arow[j]))
            orow.append(acc)
        out.append(orow)
    return PolyMatrix(f, out, a.ncols)


def _coeff_cube(mat: PolyMatrix, n: int):
    arr = _np.zeros((mat.nrows, mat.ncols, n), dtype=_np.int64)
    for i, row in enumerate(mat.rows):
        for j, e in enumerate(row):
            if e:
                arr[i, j, : len(e)] = e
    return arr


def _ntt_batch(arr, n, root, p, invert):
    a = arr % p
    idx = _np.zeros(n, dtype=_np.int64)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        idx[i] = j
    a = a[..., idx]
    w = pow(root, p - 2, p) if invert else root
    length = 2
    while length <= n:
        half = length // 2
        wl = pow(w, n // length, p)
        ws = _np.ones(half, dtype=_np.int64)
        for k in range(1, half):
            ws[k] = ws[k - 1] * wl % p
        shape = a.shape[:-1] + (n // length, length)
        a = a.reshape(shape)
        u = a[..., :half]
        v = a[..., half:] * ws % p
        a = _np.concatenate(((u + v) % p, (u - v) % p), axis=-1)
        a = a.reshape(shape[:-2] + (n,))
        length <<= 1
    if invert:
        a = a * pow(n, p - 2, p) % p
    return a


def _mat_mul_ntt(b: PolyMatrix, a: PolyMatrix, n: int) -> PolyMatrix:
    f = b.field
    p = f.p
    root = pow(f.ntt_root(), f.ntt_capacity() // n, p)
    fb = _ntt_batch(_coeff_cube(b, n), n, root, p, False)
    fa = _ntt_batch(_coeff_cube(a, n), n, root, p, False)
    inner = b.ncols
    chunk = max(1, (1 << 62) // max((p - 1) * (p - 1), 1))
    acc = _np.zeros((b.nrows, a.ncols, n), dtype=_np.int64)
    for lo in range(0, inner, chunk):
        hi = min(inner, lo + chunk)
        acc = (acc + _np.einsum("ijt,jkt->ikt", fb[:, lo:hi], fa[lo:hi])) % p
    cc = _ntt_batch(acc, n, root, p, True)
    rows = [
        [f.normalize(cc[i, j].tolist()) for j in range(a.ncols)]
        for i in range(b.nrows)
    ]
    return PolyMatrix(f, rows, a.ncols)


def mat_mul(b: PolyMatrix, a: PolyMatrix, trunc: int | None = None) -> PolyMatrix:
    """Product b*a, batched NTT evaluation when available, else entrywise."""
    if b.field != a.field:
        raise ValueError("field mismatch")
    if b.ncols != a.nrows:
        raise ValueError("dimension mismatch in mat_mul")
    f = b.field
    db, da = b.degree(), a.degree()
    if db == MINUS_INF or da == MINUS_INF:
        out = PolyMatrix.zeros(f, b.nrows, a.ncols)
        return out
    need = int(db + da) + 1
    n = 1
    while n < need:
        n <<= 1
    if (
        _np is not None
        and f.p < (1 << 31)
        and n <= f.ntt_capacity()
        and n >= 32
        and b.nrows * a.ncols * b.ncols >= 64
    ):
        out = _mat_mul_ntt(b, a, n)
    else:
        rows = []
        for brow in b.rows:
            orow = []
            for j in range(a.ncols):
                acc: list[int] = []
                for e, arow in zip(brow, a.rows):
                    if e and arow[j]:
                        acc = f.poly_add(acc, f.poly_mul(e, arow[j]))
                orow.append(acc)
            rows.append(orow)
        out = PolyMatrix(f, rows, a.ncols)
    if trunc is not None:
        out = PolyMatrix(f, [[f.poly_trunc(e, trunc) for e in row] for row in out.rows], out.ncols)
    return out


def mat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.nrows != b.nrows or a.ncols != b.ncols or a.field != b.field:
        raise ValueError("shape mismatch in mat_add")
    f = a.field
    return PolyMatrix(
        f,
        [
            [f.poly_add(x, y) for x, y in zip(ra, rb)]
            for ra, rb in zip(a.rows, b.rows)
        ],
        a.ncols,
    )
