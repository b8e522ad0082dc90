"""Injective words over a fixed alphabet [1, n].

An injective word is a non-empty sequence of distinct letters from
{1, ..., n}, written [3,1,2].  Words of length n are permutations in
one-line notation.  Positions and letters are 1-indexed everywhere;
the canonical text form is comma-separated decimal letters inside
square brackets, with no whitespace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

MIN_N = 2
MAX_N = 12        # enumeration bound: n! is the real cost, 12 is far past desk scale
MAX_COUNT_N = 20  # counting derangements uses exact integers, no enumeration


@dataclass(frozen=True, slots=True)
class InjWord:
    """One injective word over the alphabet [1, n].

    >>> w = InjWord(3, (3, 1, 2))
    >>> str(w)
    '[3,1,2]'
    >>> len(w)
    3
    >>> InjWord.parse("[3,1,2]", 3) == w
    True
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        if not MIN_N <= self.n <= MAX_N:
            raise ValueError(f"alphabet size must be in [{MIN_N}, {MAX_N}], got {self.n}")
        if not 1 <= len(self.letters) <= self.n:
            raise ValueError(
                f"word length must be in [1, {self.n}], got {len(self.letters)}"
            )
        seen = 0
        for a in self.letters:
            if not isinstance(a, int) or not 1 <= a <= self.n:
                raise ValueError(f"letter {a!r} outside [1, {self.n}]")
            bit = 1 << a
            if seen & bit:
                raise ValueError(f"duplicate letter {a} in {self.letters}")
            seen |= bit

    @classmethod
    def _raw(cls, n: int, letters: tuple[int, ...]) -> "InjWord":
        # Trusted fast path for internal construction; skips validation.
        w = object.__new__(cls)
        object.__setattr__(w, "n", n)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def parse(cls, text: str, n: int) -> "InjWord":
        """Parse the canonical text form, e.g. "[3,1,2]"."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"word must be bracketed like [1,2]: {text!r}")
        body = s[1:-1]
        if not body:
            raise ValueError(f"empty word is not allowed: {text!r}")
        letters = []
        for tok in body.split(","):
            if not tok.isdigit():
                raise ValueError(f"bad letter {tok!r} in {text!r}")
            letters.append(int(tok))
        return cls(n, tuple(letters))

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.letters) + "]"

    def __len__(self) -> int:
        return len(self.letters)


def delete(w: InjWord, position: int) -> InjWord:
    """Drop the letter at *position* (1-indexed); one face map of the word.

    >>> str(delete(InjWord(3, (1, 3, 2)), 2))
    '[1,2]'
    """
    k = len(w.letters)
    if k < 2:
        raise ValueError("cannot delete from a length-1 word")
    if not 1 <= position <= k:
        raise ValueError(f"position {position} out of range [1, {k}]")
    return InjWord._raw(w.n, w.letters[: position - 1] + w.letters[position:])


def subwords(w: InjWord) -> frozenset[InjWord]:
    """All non-empty subsequences of *w*; there are 2**len(w) - 1 of them."""
    out = []
    for r in range(1, len(w.letters) + 1):
        for combo in itertools.combinations(w.letters, r):
            out.append(InjWord._raw(w.n, combo))
    return frozenset(out)


def is_subword(v: InjWord, w: InjWord) -> bool:
    """True iff *v* is a subsequence of *w*.

    For injective words the embedding is unique, so a simple greedy
    scan is exact.
    """
    if v.n != w.n:
        raise ValueError(f"alphabet size mismatch: {v.n} vs {w.n}")
    it = iter(w.letters)
    return all(a in it for a in v.letters)


def missing_letter(t: InjWord) -> int:
    """The unique letter of [1, n] absent from a length-(n-1) word."""
    if len(t.letters) != t.n - 1:
        raise ValueError(f"word must have length n-1 = {t.n - 1}, got {len(t.letters)}")
    return t.n * (t.n + 1) // 2 - sum(t.letters)


def insert_missing(t: InjWord, position: int) -> InjWord:
    """Insert the missing letter of *t* at *position*, producing a permutation.

    This is the unique length-n word s with t as a subword and the
    missing letter at position i.

    >>> str(insert_missing(InjWord(3, (3, 1)), 2))
    '[3,2,1]'
    """
    k = missing_letter(t)
    if not 1 <= position <= t.n:
        raise ValueError(f"position {position} out of range [1, {t.n}]")
    letters = t.letters[: position - 1] + (k,) + t.letters[position - 1 :]
    return InjWord._raw(t.n, letters)


def is_permutation(w: InjWord) -> bool:
    return len(w.letters) == w.n


def has_fixed_point(s: InjWord) -> bool:
    """True iff the permutation fixes some letter (s_j = j)."""
    if not is_permutation(s):
        raise ValueError(f"expected a permutation of length {s.n}, got {s}")
    return any(a == j for j, a in enumerate(s.letters, start=1))


def permutations(n: int) -> list[InjWord]:
    """All length-n injective words (one-line permutations), in lex order."""
    _check_enumeration_n(n)
    return [InjWord._raw(n, p) for p in itertools.permutations(range(1, n + 1))]


def derangements(n: int) -> list[InjWord]:
    """All fixed-point-free permutations of [1, n], in lex order.

    Enumerated by backtracking, so only derangements are ever built.
    """
    _check_enumeration_n(n)
    out: list[InjWord] = []
    prefix: list[int] = []

    def extend(used: int) -> None:
        pos = len(prefix) + 1
        if pos > n:
            out.append(InjWord._raw(n, tuple(prefix)))
            return
        for a in range(1, n + 1):
            bit = 1 << a
            if a != pos and not used & bit:
                prefix.append(a)
                extend(used | bit)
                prefix.pop()

    extend(0)
    return out


def nonderangements(n: int) -> list[InjWord]:
    """All permutations of [1, n] with at least one fixed point, in lex order."""
    return [w for w in permutations(n) if has_fixed_point(w)]


def derangement_count(n: int) -> int:
    """Number of derangements of [1, n], by the recurrence
    D_n = n * D_{n-1} + (-1)**n with D_1 = 0.  Exact for n up to 20.
    """
    if not MIN_N <= n <= MAX_COUNT_N:
        raise ValueError(f"n must be in [{MIN_N}, {MAX_COUNT_N}], got {n}")
    d = 0
    for m in range(2, n + 1):
        d = m * d + (-1) ** m
    return d


def _check_enumeration_n(n: int) -> None:
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"n must be in [{MIN_N}, {MAX_N}] for enumeration, got {n}")
