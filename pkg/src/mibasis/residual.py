"""Residuals P applied to E for a Jordan multiplication matrix.

Per Jordan block of eigenvalue x and size s, the result columns are the
first s coefficients of P(X+x) times the polynomial encoding of the block's
columns, taken mod X^s.  Blocks are dispatched by dyadic size class and by
how often their eigenvalue repeats inside the class: frequently repeating
eigenvalues amortize one truncated shift of P across many blocks, rare ones
are batched through Chinese remaindering so that a single polynomial-matrix
product serves every eigenvalue at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import PrimeField
from .jordan import JordanRep
from .polymat import PolyMatrix, degree_sum, mat_mul, plain_row_degree
from .unbalanced import partial_compress, partial_linearize


@dataclass
class ResidualBucket:
    size_class: object  # dyadic exponent k, or "inf" for the tail class
    strategy: str  # "shift" or "crt"
    entries: list[tuple[int, int, int]]  # (eigenvalue, block size, column offset)


@dataclass
class ResidualPlan:
    buckets: list[ResidualBucket]


def build_residual_plan(j: JordanRep, m: int) -> ResidualPlan:
    """Partition the blocks by size class and eigenvalue repetition count."""
    sigma = j.order
    k_max = (sigma // m).bit_length() - 1 if sigma >= m else -1
    offsets = j.column_offsets()
    classed: dict[object, list[tuple[int, int, int]]] = {}
    for (x, s), off in zip(j.blocks, offsets):
        k = s.bit_length() - 1
        label = k if k <= k_max else "inf"
        classed.setdefault(label, []).append((x, s, off))
    buckets = []
    for k in range(k_max + 1):
        entries = classed.get(k, [])
        if not entries:
            continue
        reps: dict[int, int] = {}
        for x, _, _ in entries:
            reps[x] = reps.get(x, 0) + 1
        frequent = [e for e in entries if reps[e[0]] > m]
        rare = [e for e in entries if reps[e[0]] <= m]
        if frequent:
            buckets.append(ResidualBucket(k, "shift", frequent))
        if rare:
            buckets.append(ResidualBucket(k, "crt", rare))
    tail = classed.get("inf", [])
    if tail:
        buckets.append(ResidualBucket("inf", "crt", tail))
    return ResidualPlan(buckets)


def _group_by_eigenvalue(entries):
    groups: list[tuple[int, list[tuple[int, int]]]] = []
    for x, s, off in entries:
        if groups and groups[-1][0] == x:
            groups[-1][1].append((s, off))
        else:
            groups.append((x, [(s, off)]))
    return groups


def _column_poly(e_rows, field, off, size):
    """Columns [off, off+size) of E as one polynomial per row."""
    return [field.normalize([row[off + t] for t in range(size)]) for row in e_rows]


def _store_coeffs(out, col_polys, off, size):
    for r, e in enumerate(col_polys):
        row = out[r]
        for t in range(size):
            row[off + t] = e[t] if t < len(e) else 0


def _shifted_remainders(field: PrimeField, f, pts_caps):
    """For each (x, s): the first s coefficients of f(X + x), batched.

    Equals f mod (X - x)^s recentered at x.  A single point needs one
    truncated Taylor shift (a plain slice when x is zero); several points go
    through one simultaneous remainder pass.
    """
    if not f:
        return [[] for _ in pts_caps]
    if len(pts_caps) == 1:
        x, s = pts_caps[0]
        if x == 0:
            return [field.poly_trunc(f, s)]
        return [field.poly_trunc(field.taylor_shift(f, x), s)]
    moduli = [field.poly_pow([(-x) % field.p, 1], s) for x, s in pts_caps]
    rems = field.multi_mod(f, moduli)
    return [field.taylor_shift(rem, x) for rem, (x, _) in zip(rems, pts_caps)]


def residual_by_shifting(
    entries: list[tuple[int, int, int]],
    pmat: PolyMatrix,
    e_rows: list[list[int]],
    out: list[list[int]],
) -> None:
    """Handle a bucket by shifting P once per (frequent) eigenvalue."""
    field = pmat.field
    groups = _group_by_eigenvalue(entries)
    pts_caps = [(x, max(s for s, _ in blocks)) for x, blocks in groups]
    shifted = [
        [[None] * pmat.ncols for _ in range(pmat.nrows)] for _ in groups
    ]
    for r, prow in enumerate(pmat.rows):
        for c, e in enumerate(prow):
            for gi, rem in enumerate(_shifted_remainders(field, e, pts_caps)):
                shifted[gi][r][c] = rem
    for gi, (x, blocks) in enumerate(groups):
        cap = pts_caps[gi][1]
        p_shift = PolyMatrix(field, shifted[gi], pmat.ncols)
        rhs = PolyMatrix(
            field,
            [list(col) for col in zip(*[_column_poly(e_rows, field, off, s) for s, off in blocks])],
        )
        prod = mat_mul(p_shift, rhs, trunc=cap)
        for jcol, (s, off) in enumerate(blocks):
            _store_coeffs(out, [prod.rows[r][jcol] for r in range(prod.nrows)], off, s)


def _mul_partially_linearized(pmat: PolyMatrix, rhs: PolyMatrix) -> PolyMatrix:
    """Exact product P*rhs with both sides cut to balanced degree pieces."""
    field = pmat.field
    m = max(pmat.nrows, 1)
    mass = max(
        degree_sum(plain_row_degree(pmat)),
        degree_sum(plain_row_degree(rhs.transpose())),
    )
    cap = max(1, -(-mass // m))
    lin_p = partial_linearize(pmat, cap)
    lin_r = partial_linearize(rhs.transpose(), cap)
    prod = mat_mul(lin_p.expanded, lin_r.expanded.transpose())
    by_cols = partial_compress(prod.transpose(), lin_r).transpose()
    return partial_compress(by_cols, lin_p)


def residual_by_crt(
    entries: list[tuple[int, int, int]],
    pmat: PolyMatrix,
    e_rows: list[list[int]],
    out: list[list[int]],
) -> None:
    """Handle a bucket by Chinese remaindering across (rare) eigenvalues.

    Slot j collects the j-th block of every eigenvalue; missing slots act as
    size-zero padding blocks and are simply skipped.
    """
    field = pmat.field
    groups = _group_by_eigenvalue(entries)
    rho = max(len(blocks) for _, blocks in groups)
    slots = []
    for slot in range(rho):
        parts = [(x, blocks[slot]) for x, blocks in groups if slot < len(blocks)]
        slots.append(parts)
    rhs_cols = []
    for parts in slots:
        residues = []
        moduli = []
        for x, (s, off) in parts:
            chunk = _column_poly(e_rows, field, off, s)
            residues.append([field.taylor_shift(e, (-x) % field.p) for e in chunk])
            moduli.append(field.poly_pow([(-x) % field.p, 1], s))
        if len(parts) == 1:
            rhs_cols.append(residues[0])
        else:
            rhs_cols.append(
                [
                    field.crt([residues[i][r] for i in range(len(parts))], moduli)
                    for r in range(len(e_rows))
                ]
            )
    rhs = PolyMatrix(field, [list(col) for col in zip(*rhs_cols)])
    prod = _mul_partially_linearized(pmat, rhs)
    for slot, parts in enumerate(slots):
        pts_caps = [(x, s) for x, (s, _) in parts]
        for r in range(prod.nrows):
            rems = _shifted_remainders(field, prod.rows[r][slot], pts_caps)
            row = out[r]
            for (x, (s, off)), rem in zip(parts, rems):
                for t in range(s):
                    row[off + t] = rem[t] if t < len(rem) else 0


def compute_residuals(j: JordanRep, pmat: PolyMatrix, e_rows: list[list[int]]) -> list[list[int]]:
    """P applied to E, dispatching blocks to the shifting or CRT strategy."""
    m = len(e_rows)
    if pmat.ncols != m:
        raise ValueError("column count of P must match the row count of E")
    sigma = j.order
    if m and len(e_rows[0]) != sigma:
        raise ValueError("column count of E must match the Jordan order")
    out = [[0] * sigma for _ in range(pmat.nrows)]
    if m == 0:
        return out
    plan = build_residual_plan(j, m)
    for bucket in plan.buckets:
        if bucket.strategy == "shift":
            residual_by_shifting(bucket.entries, pmat, e_rows, out)
        else:
            residual_by_crt(bucket.entries, pmat, e_rows, out)
    return out
