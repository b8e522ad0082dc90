"""Free faces and elementary collapses.

A face is free when exactly one stored word strictly contains it; in a
downward-closed complex that word necessarily covers it (one letter
longer) and is itself maximal, so removing the pair is an elementary
collapse and preserves both downward closure and homotopy type.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .complexes import GeneratedComplex, coface_list, complex_from_cells
from .words import InjWord

POLICIES = ("lex", "topdim")


@dataclass(frozen=True, slots=True)
class CollapsePair:
    """A free face together with the unique cell containing it."""

    face: InjWord
    coface: InjWord

    def to_json_obj(self) -> dict:
        return {"face": str(self.face), "coface": str(self.coface)}


@dataclass(frozen=True)
class CollapseTrace:
    """An ordered run of elementary collapses and what remains."""

    pairs: tuple[CollapsePair, ...]
    residual: GeneratedComplex
    success: bool  # residual is a single vertex

    def to_json_obj(self) -> dict:
        return {
            "pairs": [p.to_json_obj() for p in self.pairs],
            "success": self.success,
            "residual_sizes": list(self.residual.level_sizes()),
        }


@dataclass(frozen=True)
class TopCollapseReport:
    """Outcome of collapsing only free faces of top-dimensional cells."""

    n: int
    policy: str
    success: bool  # no length-n cells remain
    steps: int
    remaining_top_cells: int

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "policy": self.policy,
            "success": self.success,
            "steps": self.steps,
            "remaining_top_cells": self.remaining_top_cells,
        }


def free_faces(c: GeneratedComplex) -> list[CollapsePair]:
    """All currently free pairs, sorted by face.

    A pair (t, s) qualifies when s is the one and only stored word
    strictly containing t; by downward closure this is equivalent to t
    having exactly one cover.
    """
    out = []
    for t in c.cells():
        if c.coface_count(t) == 1:
            (s, _pos), = coface_list(c, t)
            out.append(CollapsePair(t, s))
    out.sort(key=lambda p: p.face.letters)
    return out


def collapse_step(c: GeneratedComplex, pair: CollapsePair) -> GeneratedComplex:
    """Remove one free pair, returning the smaller complex.

    Raises ValueError when the pair is not free in *c* (e.g. a stale
    pair carried over from before an earlier step).
    """
    t, s = pair.face, pair.coface
    if t not in c or s not in c:
        raise ValueError(f"pair ({t}, {s}) is not present in the complex")
    if len(s.letters) != len(t.letters) + 1 or c.coface_count(t) != 1:
        raise ValueError(f"pair ({t}, {s}) is not free")
    (cover, _pos), = coface_list(c, t)
    if cover != s:
        raise ValueError(f"face {t} is covered by {cover}, not {s}")
    removed = {t.letters, s.letters}
    survivors = [w for w in c.cells() if w.letters not in removed]
    return complex_from_cells(c.n, survivors)


def _policy_key(policy: str):
    if policy == "lex":
        return lambda letters: letters
    if policy == "topdim":
        return lambda letters: (-len(letters), letters)
    raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")


class _GreedyState:
    """Mutable cover bookkeeping shared by the two collapse drivers.

    ``covers`` maps each tracked word to the set of live words covering
    it; candidates enter the heap exactly when their cover set shrinks
    to one, and are re-validated on pop.
    """

    def __init__(self, c: GeneratedComplex, policy: str, top_only: bool):
        self.n = c.n
        self.key = _policy_key(policy)
        self.live: set[tuple[int, ...]] = {w.letters for w in c.cells()}
        self.covers: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        lengths = (c.n,) if top_only else range(2, c.n + 1)
        for length in lengths:
            for s in c.level(length):
                letters = s.letters
                for i in range(length):
                    face = letters[:i] + letters[i + 1 :]
                    self.covers.setdefault(face, set()).add(letters)
        self.heap: list = []
        for face, cvs in self.covers.items():
            if len(cvs) == 1:
                heapq.heappush(self.heap, (self.key(face), face))

    def _drop_cover(self, face: tuple[int, ...], cover: tuple[int, ...]) -> None:
        cvs = self.covers.get(face)
        if cvs is None:
            return
        cvs.discard(cover)
        if len(cvs) == 1 and face in self.live:
            heapq.heappush(self.heap, (self.key(face), face))

    def pop_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        while self.heap:
            _, face = heapq.heappop(self.heap)
            if face not in self.live:
                continue
            cvs = self.covers.get(face)
            if cvs is None or len(cvs) != 1:
                continue
            (cover,) = cvs
            return face, cover
        return None

    def remove_pair(self, face: tuple[int, ...], cover: tuple[int, ...]) -> None:
        self.live.discard(face)
        self.live.discard(cover)
        for i in range(len(cover)):
            sub = cover[:i] + cover[i + 1 :]
            if sub != face:
                self._drop_cover(sub, cover)
        if len(face) >= 2:
            for i in range(len(face)):
                self._drop_cover(face[:i] + face[i + 1 :], face)


def greedy_collapse(c: GeneratedComplex, policy: str = "lex") -> CollapseTrace:
    """Collapse free pairs until none remain.

    Deterministic given the policy: "lex" prefers the lexicographically
    smallest free face, "topdim" the highest-dimensional one.  A stuck
    complex is a report (success=False), never an error.
    """
    state = _GreedyState(c, policy, top_only=False)
    pairs = []
    while True:
        hit = state.pop_pair()
        if hit is None:
            break
        face, cover = hit
        pairs.append(
            CollapsePair(InjWord._raw(c.n, face), InjWord._raw(c.n, cover))
        )
        state.remove_pair(face, cover)
    residual = complex_from_cells(
        c.n, (InjWord._raw(c.n, letters) for letters in state.live)
    )
    success = residual.total_cells == 1 and len(residual.level(1)) == 1
    return CollapseTrace(pairs=tuple(pairs), residual=residual, success=success)


def top_collapse_experiment(
    n: int, policy: str = "lex", generators=None
) -> TopCollapseReport:
    """Repeatedly collapse exposed faces of top-dimensional cells only.

    Runs on the complex generated by the non-derangement permutations
    of [1, n] (or on *generators* when given) and reports whether the
    restricted process eliminates every length-n cell.  For n beyond 4
    the outcome is an observation, not an asserted value.
    """
    from .complexes import generate_complex
    from .words import nonderangements

    if not 3 <= n <= 8:
        raise ValueError(f"n must be in [3, 8], got {n}")
    c = generate_complex(nonderangements(n) if generators is None else generators, n)
    state = _GreedyState(c, policy, top_only=True)
    steps = 0
    while True:
        hit = state.pop_pair()
        if hit is None:
            break
        face, cover = hit
        state.remove_pair(face, cover)
        steps += 1
    remaining_top = sum(1 for letters in state.live if len(letters) == n)
    return TopCollapseReport(
        n=n,
        policy=policy,
        success=remaining_top == 0,
        steps=steps,
        remaining_top_cells=remaining_top,
    )
