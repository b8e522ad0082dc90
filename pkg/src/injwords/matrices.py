"""Coefficient rings and column-major sparse matrices.

Supported rings: the integers, the rationals, and prime fields F_p
with p < 2**31.  Matrices store one sorted (row, value) list per
column; all row and column ordinals are 1-indexed, matching the
plain-text coordinate export format.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

MAX_MODULUS = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f <= isqrt(p):
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, slots=True)
class RingSpec:
    """Coefficient ring tag: integers, rationals, or a prime field."""

    kind: str  # "Z" | "Q" | "FP"
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "FP"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "FP":
            p = self.modulus
            if p is None or not 2 <= p < MAX_MODULUS or not _is_prime(p):
                raise ValueError(f"modulus must be a prime below 2**31, got {p}")
        elif self.modulus is not None:
            raise ValueError("modulus is only meaningful for prime fields")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls("Z")

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> "RingSpec":
        return cls("FP", p)

    @classmethod
    def parse(cls, token: str) -> "RingSpec":
        """Parse a ring token: "z", "q", or "fp:P" with P prime."""
        t = token.strip().lower()
        if t == "z":
            return cls.integers()
        if t == "q":
            return cls.rationals()
        if t.startswith("fp:"):
            body = t[3:]
            if not body.isdigit():
                raise ValueError(f"bad prime field token {token!r}")
            return cls.prime_field(int(body))
        raise ValueError(f"unknown ring token {token!r} (expected z, q, or fp:P)")

    @property
    def token(self) -> str:
        if self.kind == "Z":
            return "z"
        if self.kind == "Q":
            return "q"
        return f"fp:{self.modulus}"

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "FP")

    def normalize(self, value: int) -> int:
        """Reduce an integer into the ring's canonical representative."""
        if self.kind == "FP":
            return value % self.modulus
        return value

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True, slots=True)
class SparseMatrix:
    """Column-major sparse matrix over a RingSpec.

    ``columns[j-1]`` holds the nonzero entries of column j as a tuple
    of (row, value) pairs with strictly increasing 1-indexed rows.
    """

    rows: int
    cols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]
    ring: RingSpec

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.columns) != self.cols:
            raise ValueError(f"expected {self.cols} columns, got {len(self.columns)}")
        p = self.modulus
        for entries in self.columns:
            prev = 0
            for row, value in entries:
                if not prev < row <= self.rows:
                    raise ValueError(f"row ordinal {row} out of order or range")
                if value == 0 or (p is not None and not 0 < value < p):
                    raise ValueError(f"bad coefficient {value} for ring {self.ring}")
                prev = row

    @property
    def modulus(self) -> int | None:
        return self.ring.modulus

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def column(self, j: int) -> tuple[tuple[int, int], ...]:
        """Entries of column j (1-indexed)."""
        if not 1 <= j <= self.cols:
            raise ValueError(f"column {j} out of range [1, {self.cols}]")
        return self.columns[j - 1]

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Yield (row, col, value) triples, column-major, 1-indexed."""
        for j, col in enumerate(self.columns, start=1):
            for row, value in col:
                yield row, j, value

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for row, col, value in self.entries():
            dense[row - 1][col - 1] = value
        return dense


def coordinate_text(m: SparseMatrix, level: int) -> str:
    """Render the plain-text coordinate form.

    First line is ``level rows cols ring``; each following line is one
    ``row col value`` entry, 1-indexed, in column-major order.
    """
    lines = [f"{level} {m.rows} {m.cols} {m.ring.token}"]
    for row, col, value in m.entries():
        lines.append(f"{row} {col} {value}")
    return "\n".join(lines) + "\n"


def legend_text(words) -> str:
    """One canonical word per line, in ordinal order."""
    return "".join(f"{w}\n" for w in words)
