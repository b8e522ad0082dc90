"""Complexes of injective words generated by downward closure.

A generator set S of injective words determines the set X(S) of all
non-empty subwords of members of S.  Stored level by level (level =
word length), X(S) is a cell complex with one (k-1)-cell per length-k
word; the boundary operator is the alternating sum of deletions.
"""

from __future__ import annotations

from typing import Iterable

from .matrices import RingSpec, SparseMatrix
from .words import InjWord, is_subword


class GeneratedComplex:
    """Level sets X_1..X_n with face/coface incidence.

    Immutable after construction; build instances with
    :func:`generate_complex` or :func:`complex_from_cells`.  Levels are
    sorted lexicographically and ordinals within a level are 1-indexed
    lexicographic ranks, which makes every derived matrix layout
    reproducible bit for bit.
    """

    __slots__ = ("n", "_levels", "_pos", "_coface_counts")

    def __init__(
        self,
        n: int,
        levels: tuple[tuple[InjWord, ...], ...],
        pos: dict[tuple[int, ...], tuple[int, int]],
        coface_counts: dict[tuple[int, ...], int],
    ):
        self.n = n
        self._levels = levels
        self._pos = pos
        self._coface_counts = coface_counts

    @property
    def levels(self) -> tuple[tuple[InjWord, ...], ...]:
        """All levels; ``levels[k-1]`` lists the words of length k."""
        return self._levels

    def level(self, length: int) -> tuple[InjWord, ...]:
        if not 1 <= length <= self.n:
            raise ValueError(f"level {length} out of range [1, {self.n}]")
        return self._levels[length - 1]

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self._levels)

    @property
    def total_cells(self) -> int:
        return sum(len(lv) for lv in self._levels)

    def __contains__(self, w: InjWord) -> bool:
        return w.n == self.n and w.letters in self._pos

    def position(self, w: InjWord) -> tuple[int, int]:
        """(level, ordinal) of a stored word; ordinals are 1-indexed."""
        try:
            return self._pos[w.letters]
        except KeyError:
            raise KeyError(f"word {w} is not in the complex") from None

    def coface_count(self, w: InjWord) -> int:
        """Number of stored words of length len(w)+1 covering *w*."""
        if w.letters not in self._pos:
            raise KeyError(f"word {w} is not in the complex")
        return self._coface_counts.get(w.letters, 0)

    def cells(self):
        """Iterate all stored words, by level then lexicographically."""
        for lv in self._levels:
            yield from lv

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratedComplex):
            return NotImplemented
        return self.n == other.n and self._levels == other._levels

    def __repr__(self) -> str:
        return f"GeneratedComplex(n={self.n}, sizes={self.level_sizes()})"


def generate_complex(generators: Iterable[InjWord], n: int) -> GeneratedComplex:
    """Downward closure of *generators* under subwords, as a leveled complex.

    Closure runs by breadth-first deletion with deduplication, so sparse
    generator sets never touch the full word poset.
    """
    buckets: list[set[tuple[int, ...]]] = [set() for _ in range(n + 1)]
    for g in generators:
        if g.n != n:
            raise ValueError(f"generator {g} has alphabet size {g.n}, expected {n}")
        buckets[len(g.letters)].add(g.letters)
    for length in range(n, 1, -1):
        below = buckets[length - 1]
        for letters in buckets[length]:
            for i in range(length):
                below.add(letters[:i] + letters[i + 1 :])
    return _from_letter_sets(n, buckets)


def complex_from_cells(n: int, cells: Iterable[InjWord]) -> GeneratedComplex:
    """Build a complex from an already subword-closed cell set.

    Raises ValueError if the set is not downward closed.
    """
    buckets: list[set[tuple[int, ...]]] = [set() for _ in range(n + 1)]
    for w in cells:
        if w.n != n:
            raise ValueError(f"cell {w} has alphabet size {w.n}, expected {n}")
        buckets[len(w.letters)].add(w.letters)
    return _from_letter_sets(n, buckets, check_closure=True)


def _from_letter_sets(
    n: int, buckets: list[set[tuple[int, ...]]], check_closure: bool = False
) -> GeneratedComplex:
    levels = []
    pos: dict[tuple[int, ...], tuple[int, int]] = {}
    for length in range(1, n + 1):
        ordered = sorted(buckets[length])
        levels.append(tuple(InjWord._raw(n, letters) for letters in ordered))
        for ordinal, letters in enumerate(ordered, start=1):
            pos[letters] = (length, ordinal)
    coface_counts: dict[tuple[int, ...], int] = {}
    for length in range(2, n + 1):
        for letters in buckets[length]:
            for i in range(length):
                face = letters[:i] + letters[i + 1 :]
                if check_closure and face not in pos:
                    raise ValueError(
                        f"cell set is not downward closed: missing face of {letters}"
                    )
                coface_counts[face] = coface_counts.get(face, 0) + 1
    return GeneratedComplex(n, tuple(levels), pos, coface_counts)


def boundary_matrix(c: GeneratedComplex, level: int, ring: RingSpec) -> SparseMatrix:
    """The boundary operator from level words to their faces.

    Rows are indexed by the words of length ``level - 1``, columns by
    the words of length ``level``; the entry for (face, word) is
    (-1)**(j-1) where j is the deleted position.  Every column has
    exactly ``level`` entries because the faces of an injective word
    are pairwise distinct.
    """
    if not 2 <= level <= c.n:
        raise ValueError(f"level must be in [2, {c.n}], got {level}")
    col_words = c.level(level)
    if not col_words:
        raise ValueError(f"level {level} is empty")
    pos = c._pos
    p = ring.modulus
    columns = []
    for s in col_words:
        letters = s.letters
        entries = []
        for i in range(level):
            face = letters[:i] + letters[i + 1 :]
            value = 1 if i % 2 == 0 else -1
            if p is not None:
                value %= p
            entries.append((pos[face][1], value))
        entries.sort()
        columns.append(tuple(entries))
    return SparseMatrix(
        rows=len(c.level(level - 1)), cols=len(col_words), columns=tuple(columns), ring=ring
    )


def euler_characteristic(c: GeneratedComplex) -> int:
    """Alternating sum of level sizes, sum of (-1)**(length-1) |X_length|."""
    if c.total_cells == 0:
        raise ValueError("empty complex has no Euler characteristic")
    return sum((-1) ** (length - 1) * size for length, size in enumerate(c.level_sizes(), start=1))


def coface_list(c: GeneratedComplex, t: InjWord) -> list[tuple[InjWord, int]]:
    """All stored covers of *t* with their unique insertion position.

    Each returned pair (s, i) satisfies delete(s, i) == t; results are
    sorted by the cover word.
    """
    if t not in c:
        raise KeyError(f"word {t} is not in the complex")
    length = len(t.letters)
    if length == c.n:
        return []
    present = 0
    for a in t.letters:
        present |= 1 << a
    out = []
    for x in range(1, c.n + 1):
        if present & (1 << x):
            continue
        for i in range(1, length + 2):
            cand = t.letters[: i - 1] + (x,) + t.letters[i - 1 :]
            hit = c._pos.get(cand)
            if hit is not None:
                lv, ordinal = hit
                out.append((c.level(lv)[ordinal - 1], i))
    out.sort(key=lambda pair: pair[0].letters)
    return out


def validate_complex(c: GeneratedComplex) -> None:
    """Brute-force invariant check: closure, sorted levels, coface counts.

    Quadratic per level (coface counts are recomputed via subword
    tests); intended for tests and collapse-engine audits.
    """
    for length in range(1, c.n + 1):
        lv = c.level(length)
        for w in lv:
            if w.n != c.n or len(w.letters) != length:
                raise AssertionError(f"misplaced word {w} at level {length}")
        for a, b in zip(lv, lv[1:]):
            if not a.letters < b.letters:
                raise AssertionError(f"level {length} not strictly sorted")
        for ordinal, w in enumerate(lv, start=1):
            if c.position(w) != (length, ordinal):
                raise AssertionError(f"ordinal mismatch for {w}")
    for length in range(2, c.n + 1):
        for w in c.level(length):
            for i in range(length):
                face = InjWord._raw(c.n, w.letters[:i] + w.letters[i + 1 :])
                if face not in c:
                    raise AssertionError(f"closure violated: {face} missing under {w}")
    for length in range(1, c.n + 1):
        above = c.level(length + 1) if length < c.n else ()
        for w in c.level(length):
            brute = sum(1 for s in above if is_subword(w, s))
            if brute != c.coface_count(w):
                raise AssertionError(
                    f"coface count of {w}: stored {c.coface_count(w)}, brute {brute}"
                )
