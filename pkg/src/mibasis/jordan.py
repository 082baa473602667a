"""Jordan multiplication matrices in standard representation.

A JordanRep lists (eigenvalue, block size) pairs: blocks are grouped by
eigenvalue, groups ordered by non-increasing block count (ties by ascending
eigenvalue), sizes non-increasing within a group.  Columns of an evaluation
matrix line up with the blocks in this order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import PrimeField


@dataclass(frozen=True)
class JordanRep:
    field: PrimeField
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        groups: dict[int, list[int]] = {}
        order: list[int] = []
        for x, s in self.blocks:
            if s <= 0:
                raise ValueError("block sizes must be positive")
            if x in groups:
                if order[-1] != x:
                    raise ValueError("blocks of one eigenvalue must be contiguous")
                if groups[x][-1] < s:
                    raise ValueError("block sizes must be non-increasing per eigenvalue")
            else:
                order.append(x)
            groups.setdefault(x, []).append(s)
        counts = [len(groups[x]) for x in order]
        for a, b, xa, xb in zip(counts, counts[1:], order, order[1:]):
            if a < b or (a == b and xa > xb):
                raise ValueError("eigenvalue groups not in standard order")

    @property
    def order(self) -> int:
        return sum(s for _, s in self.blocks)

    def column_offsets(self) -> list[int]:
        offs = []
        pos = 0
        for _, s in self.blocks:
            offs.append(pos)
            pos += s
        return offs


def normalize(field: PrimeField, pairs) -> tuple[JordanRep, list[int]]:
    """Standard representation plus the column permutation it induces.

    The permutation maps new column index to the original one: the caller
    reorders evaluation columns as E_new[:, i] = E[:, perm[i]].
    """
    pairs = [(x % field.p, s) for x, s in pairs]
    for _, s in pairs:
        if s <= 0:
            raise ValueError("block sizes must be positive")
    offsets = []
    pos = 0
    for _, s in pairs:
        offsets.append(pos)
        pos += s
    counts: dict[int, int] = {}
    for x, _ in pairs:
        counts[x] = counts.get(x, 0) + 1
    keyed = sorted(
        range(len(pairs)),
        key=lambda i: (-counts[pairs[i][0]], pairs[i][0], -pairs[i][1], i),
    )
    blocks = tuple(pairs[i] for i in keyed)
    perm = []
    for i in keyed:
        x, s = pairs[i]
        perm.extend(range(offsets[i], offsets[i] + s))
    return JordanRep(field, blocks), perm


def to_dense(j: JordanRep) -> list[list[int]]:
    n = j.order
    mat = [[0] * n for _ in range(n)]
    pos = 0
    for x, s in j.blocks:
        for k in range(s):
            mat[pos + k][pos + k] = x
            if k + 1 < s:
                mat[pos + k][pos + k + 1] = 1
        pos += s
    return mat


def act(e_rows: list[list[int]], j: JordanRep) -> list[list[int]]:
    """E * J computed blockwise in O(rows * order) scalar operations."""
    p = j.field.p
    out = []
    for row in e_rows:
        if len(row) != j.order:
            raise ValueError("column count does not match the Jordan order")
        new = [0] * len(row)
        pos = 0
        for x, s in j.blocks:
            new[pos] = x * row[pos] % p
            for k in range(1, s):
                new[pos + k] = (row[pos + k - 1] + x * row[pos + k]) % p
            pos += s
        out.append(new)
    return out


def _act_power_np(e_rows, j: JordanRep, n: int):
    import numpy as _np

    f = j.field
    p = f.p
    arr = _np.asarray(e_rows, dtype=_np.int64) % p
    out = _np.zeros_like(arr)
    pos = 0
    for x, s in j.blocks:
        blk = arr[:, pos : pos + s]
        if x == 0:
            if n < s:
                out[:, pos + n : pos + s] = blk[:, : s - n]
        else:
            xp = pow(x, n, p)
            xinv = pow(x, p - 2, p)
            dest = out[:, pos : pos + s]
            for t in range(min(s - 1, n) + 1):
                w = f.binomial(n, t) * xp % p
                xp = xp * xinv % p
                if w:
                    dest[:, t:] = (dest[:, t:] + w * blk[:, : s - t]) % p
        pos += s
    return out.tolist()


def act_power(e_rows: list[list[int]], j: JordanRep, n: int) -> list[list[int]]:
    """E * J^n via the binomial closed form of Jordan block powers.

    Within a block of eigenvalue x and size s, column k of the result is
    sum_t C(n, t) x^(n-t) times input column k-t.
    """
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return [row[:] for row in e_rows]
    if e_rows and len(e_rows[0]) != j.order:
        raise ValueError("column count does not match the Jordan order")
    f = j.field
    p = f.p
    try:
        import numpy as _np
    except ImportError:  # pragma: no cover
        _np = None
    if (
        _np is not None
        and (p - 1) * (p - 1) < (1 << 62)
        and len(e_rows) * j.order >= 1 << 14
    ):
        return _act_power_np(e_rows, j, n)
    out = [[0] * j.order for _ in e_rows]
    pos = 0
    for x, s in j.blocks:
        if x == 0:
            if n < s:
                for r, row in enumerate(e_rows):
                    orow = out[r]
                    for k in range(n, s):
                        orow[pos + k] = row[pos + k - n]
        else:
            weights = []
            xp = pow(x, n, p) if n else 1
            xinv = pow(x, p - 2, p)
            for t in range(min(s - 1, n) + 1):
                weights.append(f.binomial(n, t) * xp % p)
                xp = xp * xinv % p
            for r, row in enumerate(e_rows):
                orow = out[r]
                for k in range(s):
                    acc = 0
                    for t in range(min(k, len(weights) - 1) + 1):
                        w = weights[t]
                        if w:
                            acc += w * row[pos + k - t]
                    orow[pos + k] = acc % p
        pos += s
    return out


def minpoly_degree(j: JordanRep) -> int:
    """Exact minimal polynomial degree: max block size summed per eigenvalue."""
    best: dict[int, int] = {}
    for x, s in j.blocks:
        if s > best.get(x, 0):
            best[x] = s
    return sum(best.values())


def split(j: JordanRep, k: int):
    """Leading/trailing principal parts covering columns [0,k) and [k,order).

    A block straddling the cut splits into two blocks of the same eigenvalue.
    Both halves are re-normalized; the returned permutations are local to each
    half (new index -> pre-normalization index within the half).
    """
    if not 0 < k < j.order:
        raise ValueError("split point out of range")
    lead: list[tuple[int, int]] = []
    trail: list[tuple[int, int]] = []
    pos = 0
    for x, s in j.blocks:
        if pos + s <= k:
            lead.append((x, s))
        elif pos >= k:
            trail.append((x, s))
        else:
            t = k - pos
            lead.append((x, t))
            trail.append((x, s - t))
        pos += s
    j1, perm1 = normalize(j.field, lead)
    j2, perm2 = normalize(j.field, trail)
    return j1, perm1, j2, perm2
