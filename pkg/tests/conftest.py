"""Shared test helpers: oracles and randomized corpora.

Oracles here are deliberately independent of the library's own code
paths (position masks instead of letter combinations, dense fractions
instead of sparse elimination, minor gcds instead of diagonalization).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

import injwords as iw


def W(text: str, n: int) -> iw.InjWord:
    return iw.InjWord.parse(text, n)


def all_words(n: int, length: int) -> list[iw.InjWord]:
    """Brute-force enumeration of every injective word of one length."""
    return [
        iw.InjWord(n, p) for p in itertools.permutations(range(1, n + 1), length)
    ]


def brute_subword_tuples(letters: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All non-empty subsequences via position masks."""
    k = len(letters)
    out = set()
    for mask in range(1, 1 << k):
        out.add(tuple(letters[i] for i in range(k) if mask >> i & 1))
    return out


def brute_derangement_tuples(n: int) -> list[tuple[int, ...]]:
    return [
        p
        for p in itertools.permutations(range(1, n + 1))
        if all(a != j for j, a in enumerate(p, start=1))
    ]


def random_generator_sets(n: int, count: int, seed: int) -> list[list[iw.InjWord]]:
    """Seeded corpus of generator sets with mixed word lengths."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(count):
        size = rng.randint(1, 2 * n)
        gens = []
        for _ in range(size):
            length = rng.randint(1, n)
            letters = tuple(rng.sample(range(1, n + 1), length))
            gens.append(iw.InjWord(n, letters))
        corpus.append(gens)
    return corpus


# ---------------------------------------------------------------------------
# dense linear-algebra oracles
# ---------------------------------------------------------------------------


def dense_from_sparse(m: iw.SparseMatrix) -> list[list[int]]:
    return m.to_dense()


def sparse_from_dense(dense, ring: iw.RingSpec) -> iw.SparseMatrix:
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    columns = []
    for j in range(cols):
        entries = []
        for i in range(rows):
            v = ring.normalize(dense[i][j])
            if v:
                entries.append((i + 1, v))
        columns.append(tuple(entries))
    return iw.SparseMatrix(rows=rows, cols=cols, columns=tuple(columns), ring=ring)


def matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik:
                for j in range(cols):
                    out[i][j] += aik * b[k][j]
    return out


def dense_rank_rationals(dense) -> int:
    m = [[Fraction(x) for x in row] for row in dense]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1) / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(rows):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def dense_rank_mod(dense, p: int) -> int:
    m = [[x % p for x in row] for row in dense]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(rows):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def int_det(mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in mat]
    k = len(m)
    prev = 1
    sign = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[-1][-1] if k else 1


def minors_snf(dense) -> tuple[int, ...]:
    """Invariant factors straight from the definition: gcds of k-minors.

    Exponential, so callers keep matrices tiny; the payoff is an oracle
    sharing no machinery with the implementation.
    """
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    deltas = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                sub = [[dense[i][j] for j in cs] for i in rs]
                g = gcd(g, abs(int_det(sub)))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        deltas.append(g)
    return tuple(deltas[i + 1] // deltas[i] for i in range(len(deltas) - 1))


def dense_snf(dense) -> tuple[int, ...]:
    """Textbook dense Smith reduction; a second, order-different route."""
    m = [row[:] for row in dense]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(m[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        if bj != t:
            for row in m:
                row[t], row[bj] = row[bj], row[t]
        while True:
            piv = m[t][t]
            moved = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // piv
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // piv
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if not moved:
                break
        diag.append(abs(m[t][t]))
        t += 1
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                if b % a:
                    diag[i], diag[j] = gcd(a, b), a * b // gcd(a, b)
                    changed = True
        if changed:
            diag.sort()
    return tuple(diag)
