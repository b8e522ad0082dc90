"""Exact linear algebra and homology over Z, Q, and prime fields.

Everything here is exact: Smith normal form over the integers for
integral homology (free ranks plus torsion), and sparse Gaussian
elimination for ranks over Q and F_p.  Elimination over Q is
fraction-free (integer rows rescaled and gcd-reduced), so intermediate
blowup is impossible rather than unlikely; Python integers absorb any
width.  F_2 gets a dedicated bitset path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .complexes import GeneratedComplex, boundary_matrix
from .matrices import RingSpec, SparseMatrix


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree free ranks and torsion, degrees 0 .. n-1.

    Degree 0 is reported unreduced: a contractible complex reads
    (1, 0, ..., 0).  Torsion lists are empty over a field and are kept
    in divisibility order over the integers.
    """

    ring: RingSpec
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def to_json_obj(self) -> dict:
        return {
            "ring": self.ring.token,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


# ---------------------------------------------------------------------------
# sparse elimination working state
# ---------------------------------------------------------------------------


def _row_major(m: SparseMatrix, convert) -> tuple[dict, dict]:
    """Rows as dicts col->value plus a col->set(rows) index."""
    rows: dict[int, dict[int, int]] = {}
    colidx: dict[int, set[int]] = {}
    for row, col, value in m.entries():
        v = convert(value)
        if v == 0:
            continue
        rows.setdefault(row, {})[col] = v
        colidx.setdefault(col, set()).add(row)
    return rows, colidx


def _pop_sparsest_column(heap, colidx):
    """Deterministic lazy-heap pop of the currently sparsest column."""
    while heap:
        size, c = heapq.heappop(heap)
        live = colidx.get(c)
        if live is not None and len(live) == size:
            return c
    return None


def _detach_pivot_row(r, c, prow, colidx, heap) -> set[int]:
    """Remove the pivot row from the index; return rows still holding c."""
    colidx[c].discard(r)
    for c2 in prow:
        if c2 == c:
            continue
        s2 = colidx[c2]
        s2.discard(r)
        if s2:
            heapq.heappush(heap, (len(s2), c2))
        else:
            del colidx[c2]
    return colidx.pop(c)


def _rank_gf2(m: SparseMatrix) -> int:
    """GF(2) rank via column bitmasks and XOR reduction."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in m.columns:
        mask = 0
        for row, value in col:
            if value % 2:
                mask |= 1 << row
        while mask:
            low = mask & -mask
            seen = pivots.get(low)
            if seen is None:
                pivots[low] = mask
                rank += 1
                break
            mask ^= seen
    return rank


def _rank_fp(m: SparseMatrix, p: int) -> int:
    """Rank over F_p by sparse elimination with sparsest-column pivoting."""
    if p == 2:
        return _rank_gf2(m)
    rows, colidx = _row_major(m, lambda v: v % p)
    heap = [(len(rs), c) for c, rs in colidx.items()]
    heapq.heapify(heap)
    rank = 0
    while True:
        c = _pop_sparsest_column(heap, colidx)
        if c is None:
            return rank
        rank += 1
        r = min(colidx[c], key=lambda rr: (len(rows[rr]), rr))
        prow = rows.pop(r)
        piv = prow.pop(c)
        targets = _detach_pivot_row(r, c, prow, colidx, heap)
        if not targets:
            continue
        inv = pow(piv, -1, p)
        for r2 in targets:
            row2 = rows[r2]
            f = row2.pop(c) * inv % p
            for c2, v in prow.items():
                nv = (row2.get(c2, 0) - f * v) % p
                if nv:
                    if c2 not in row2:
                        s2 = colidx.setdefault(c2, set())
                        s2.add(r2)
                        heapq.heappush(heap, (len(s2), c2))
                    row2[c2] = nv
                elif c2 in row2:
                    del row2[c2]
                    s2 = colidx[c2]
                    s2.discard(r2)
                    if s2:
                        heapq.heappush(heap, (len(s2), c2))
                    else:
                        del colidx[c2]
            if not row2:
                del rows[r2]


def _rank_rationals(m: SparseMatrix) -> int:
    """Rank over Q by fraction-free integer elimination.

    Rows are integer-valued throughout: with a unit pivot the update is
    a plain integer combination; otherwise the target row is scaled by
    the pivot first and gcd-reduced afterwards.  Both moves preserve
    the row space up to nonzero scaling, hence the rank.
    """
    rows, colidx = _row_major(m, int)
    heap = [(len(rs), c) for c, rs in colidx.items()]
    heapq.heapify(heap)
    rank = 0
    while True:
        c = _pop_sparsest_column(heap, colidx)
        if c is None:
            return rank
        rank += 1
        r = min(
            colidx[c],
            key=lambda rr: (abs(rows[rr][c]) != 1, len(rows[rr]), rr),
        )
        prow = rows.pop(r)
        piv = prow.pop(c)
        targets = _detach_pivot_row(r, c, prow, colidx, heap)
        for r2 in targets:
            row2 = rows[r2]
            a = row2.pop(c)
            if piv == 1:
                factor = a
            elif piv == -1:
                factor = -a
            else:
                factor = a
                for c2 in row2:
                    row2[c2] *= piv
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - factor * v
                if nv:
                    if c2 not in row2:
                        s2 = colidx.setdefault(c2, set())
                        s2.add(r2)
                        heapq.heappush(heap, (len(s2), c2))
                    row2[c2] = nv
                elif c2 in row2:
                    del row2[c2]
                    s2 = colidx[c2]
                    s2.discard(r2)
                    if s2:
                        heapq.heappush(heap, (len(s2), c2))
                    else:
                        del colidx[c2]
            if not row2:
                del rows[r2]
                continue
            if abs(piv) != 1:
                g = 0
                for v in row2.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for c2 in row2:
                        row2[c2] //= g


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def _row_axpy(rows, colidx, target, source_row, q):
    """rows[target] -= q * source_row, maintaining the column index."""
    row2 = rows.setdefault(target, {})
    for c2, v in source_row.items():
        nv = row2.get(c2, 0) - q * v
        if nv:
            if c2 not in row2:
                colidx.setdefault(c2, set()).add(target)
            row2[c2] = nv
        elif c2 in row2:
            del row2[c2]
            s2 = colidx[c2]
            s2.discard(target)
            if not s2:
                del colidx[c2]
    if not row2:
        del rows[target]


def _col_axpy(rows, colidx, target, source_col, q):
    """column[target] -= q * column[source_col], via the row dicts."""
    for r in list(colidx.get(source_col, ())):
        v = rows[r][source_col]
        row = rows[r]
        nv = row.get(target, 0) - q * v
        if nv:
            if target not in row:
                colidx.setdefault(target, set()).add(r)
            row[target] = nv
        elif target in row:
            del row[target]
            s2 = colidx[target]
            s2.discard(r)
            if not s2:
                del colidx[target]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) > 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _gcd_rows(rows, colidx, r, r2, c):
    """Unimodular 2x2 transform making rows[r][c] = gcd and rows[r2][c] = 0."""
    a, b = rows[r][c], rows[r2][c]
    g, x, y = _xgcd(a, b)
    u, v = a // g, b // g
    row_a = rows.get(r, {})
    row_b = rows.get(r2, {})
    for cc in set(row_a) | set(row_b):
        va, vb = row_a.get(cc, 0), row_b.get(cc, 0)
        na = x * va + y * vb
        nb = u * vb - v * va
        _set_entry(rows, colidx, r, cc, na)
        _set_entry(rows, colidx, r2, cc, nb)


def _gcd_cols(rows, colidx, c, c2, r):
    """Unimodular 2x2 transform making rows[r][c] = gcd and rows[r][c2] = 0."""
    a, b = rows[r][c], rows[r][c2]
    g, x, y = _xgcd(a, b)
    u, v = a // g, b // g
    for rr in list(colidx.get(c, set()) | colidx.get(c2, set())):
        row = rows.get(rr, {})
        va, vb = row.get(c, 0), row.get(c2, 0)
        na = x * va + y * vb
        nb = u * vb - v * va
        _set_entry(rows, colidx, rr, c, na)
        _set_entry(rows, colidx, rr, c2, nb)


def _set_entry(rows, colidx, r, c, value):
    row = rows.get(r)
    if value:
        if row is None:
            row = rows[r] = {}
        if c not in row:
            colidx.setdefault(c, set()).add(r)
        row[c] = value
    elif row is not None and c in row:
        del row[c]
        if not row:
            del rows[r]
        s = colidx[c]
        s.discard(r)
        if not s:
            del colidx[c]


def _choose_pivot(rows, colidx):
    """Sparsest column holding a unit if possible, else global min |value|.

    Boundary matrices keep unit pivots essentially to the end, so the
    expensive global scan only ever runs on small leftovers.
    """
    best = None
    for c, rs in colidx.items():
        size = len(rs)
        if best is not None and size >= best[0] and best[1]:
            continue
        for r in rs:
            if abs(rows[r][c]) == 1:
                cand = (size, True, len(rows[r]), c, r)
                if best is None or not best[1] or cand < best:
                    best = cand
                break
        else:
            if best is None:
                best = (size, False, 0, c, next(iter(rs)))
    if best[1]:
        return best[4], best[3]
    # no unit entry anywhere: take the globally smallest |value|
    pick = None
    for c, rs in colidx.items():
        for r in rs:
            key = (abs(rows[r][c]), len(rs) * len(rows[r]), c, r)
            if pick is None or key < pick:
                pick = key
    return pick[3], pick[2]


def _diagonalize(m: SparseMatrix) -> list[int]:
    """Reduce to an equivalent diagonal by unimodular row/column moves.

    Non-dividing entries are absorbed with extended-gcd 2x2 transforms,
    which drop the pivot to the gcd in one move instead of a quotient
    cascade, keeping intermediate entries tame.
    """
    rows, colidx = _row_major(m, int)
    diag: list[int] = []
    while colidx:
        r, c = _choose_pivot(rows, colidx)
        while True:
            piv = rows[r][c]
            col_rows = [r2 for r2 in colidx[c] if r2 != r]
            bad = next((r2 for r2 in col_rows if rows[r2][c] % piv), None)
            if bad is not None:
                _gcd_rows(rows, colidx, r, bad, c)
                continue
            for r2 in col_rows:
                _row_axpy(rows, colidx, r2, rows[r], rows[r2][c] // piv)
            # The column now holds the pivot alone, so column moves below
            # touch row r only.
            row_cols = [c2 for c2 in rows[r] if c2 != c]
            bad = next((c2 for c2 in row_cols if rows[r][c2] % piv), None)
            if bad is not None:
                _gcd_cols(rows, colidx, c, bad, r)
                continue
            for c2 in row_cols:
                _col_axpy(rows, colidx, c2, c, rows[r][c2] // piv)
            break
        diag.append(abs(rows[r][c]))
        del rows[r]
        s = colidx[c]
        s.discard(r)
        if not s:
            del colidx[c]
    return diag


def _invariant_chain(diag: list[int]) -> tuple[int, ...]:
    """Convert a diagonal to invariant factors d1 | d2 | ... | dr."""
    ones = sum(1 for d in diag if d == 1)
    rest = sorted(d for d in diag if d != 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a * b // g
                    changed = True
        if changed:
            rest.sort()
    ones += sum(1 for d in rest if d == 1)
    rest = [d for d in rest if d != 1]
    return (1,) * ones + tuple(rest)


def smith_normal_form(m: SparseMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix.

    The length of the result is the rank; zero rows and columns are
    dropped.
    """
    if m.ring.kind != "Z":
        raise ValueError(f"Smith normal form needs the integer ring, got {m.ring}")
    return _invariant_chain(_diagonalize(m))


def rank_nullity(m: SparseMatrix, ring: RingSpec | None = None) -> tuple[int, int]:
    """(rank, nullity) of a matrix over Q or F_p.

    *ring* defaults to the matrix's own ring; passing one reinterprets
    integer entries in the given field.  The integer ring is rejected:
    use :func:`smith_normal_form` there.
    """
    ring = ring if ring is not None else m.ring
    if not ring.is_field:
        raise ValueError("rank/nullity needs a field; use smith_normal_form over Z")
    if ring.kind == "Q":
        rank = _rank_rationals(m)
    else:
        rank = _rank_fp(m, ring.modulus)
    return rank, m.cols - rank


# ---------------------------------------------------------------------------
# homology of generated complexes
# ---------------------------------------------------------------------------


def _boundary_or_none(c: GeneratedComplex, level: int, ring: RingSpec):
    sizes = c.level_sizes()
    if level < 2 or level > c.n or sizes[level - 1] == 0:
        return None
    return boundary_matrix(c, level, ring)


def homology(c: GeneratedComplex, ring: RingSpec) -> HomologySummary:
    """Homology of the complex in degrees 0 .. n-1 over *ring*.

    Degree 0 is unreduced.  Over Z the free rank and torsion in degree
    d come from the Smith normal forms of the boundary maps at levels
    d+1 and d+2; over a field the betti numbers come from exact ranks.
    """
    n = c.n
    sizes = c.level_sizes()
    ranks = [0] * (n + 2)  # ranks[level] = rank of the level boundary map
    torsion_at: dict[int, tuple[int, ...]] = {}
    for level in range(2, n + 1):
        m = _boundary_or_none(c, level, ring)
        if m is None:
            continue
        if ring.kind == "Z":
            factors = smith_normal_form(m)
            ranks[level] = len(factors)
            torsion_at[level] = tuple(f for f in factors if f > 1)
        else:
            ranks[level], _ = rank_nullity(m)
    betti = []
    torsion = []
    for degree in range(n):
        betti.append(sizes[degree] - ranks[degree + 1] - ranks[degree + 2])
        torsion.append(torsion_at.get(degree + 2, ()))
    return HomologySummary(ring=ring, betti=tuple(betti), torsion=tuple(torsion))


def top_cycle_dimension(c: GeneratedComplex, ring: RingSpec) -> int:
    """Dimension over a field of the cycle space at the top level.

    This is the nullity of the level-n boundary map; a value of zero
    means no nonzero top-degree cycles exist at all.
    """
    if not ring.is_field:
        raise ValueError(f"top cycle dimension needs a field, got {ring}")
    sizes = c.level_sizes()
    if sizes[c.n - 1] == 0:
        raise ValueError("top level is empty")
    m = boundary_matrix(c, c.n, ring)
    _, nullity = rank_nullity(m)
    return nullity
