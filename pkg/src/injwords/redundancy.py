"""Redundancy certificates for top cells of the non-derangement complex.

Every length-(n-1) word t gets a profile: the positions its letters
fix (t_j = j) or shift (t_j = j+1), the extremes of those sets, their
difference (the excess), and a pair of gap words.  For each insertion
position i that keeps a fixed point, a witness names a nearby face t'
whose profile strictly progresses: the excess drops, or it ties and
the gap pair strictly rises in the product of two lexicographic
orders.  Chaining witnesses over all n! faces yields a finite, acyclic
certificate that no top-degree cycle can carry any cell, which is the
combinatorial core of the contractibility proof.

Builder and checker are deliberately separate: records are constructed
from the closed-form position formulas and then re-verified from first
principles (explicit insertions, deletions, and profile rescans).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator

from .words import InjWord, delete, has_fixed_point, insert_missing, is_subword, missing_letter

GapWord = tuple[int, ...]


class CertificateError(RuntimeError):
    """A witness record or certificate failed verification."""


@dataclass(frozen=True)
class Profile:
    """Fixed/shifted position data of a length-(n-1) word."""

    word: InjWord
    missing: int
    fixed: frozenset[int]  # positions j with t_j = j
    shifted: frozenset[int]  # positions j with t_j = j + 1
    last_shifted: int  # max of shifted, 0 when none
    first_fixed: int  # min of fixed, n when none
    excess: int  # last_shifted - first_fixed
    gap_pair: tuple[GapWord, GapWord]


def face_profile(t: InjWord) -> Profile:
    """Scan a length-(n-1) word into its profile."""
    n = t.n
    if len(t.letters) != n - 1:
        raise ValueError(f"profile needs a length-{n - 1} word, got {t}")
    fixed = frozenset(j for j, a in enumerate(t.letters, start=1) if a == j)
    shifted = frozenset(j for j, a in enumerate(t.letters, start=1) if a == j + 1)
    last_shifted = max(shifted, default=0)
    first_fixed = min(fixed, default=n)
    return Profile(
        word=t,
        missing=missing_letter(t),
        fixed=fixed,
        shifted=shifted,
        last_shifted=last_shifted,
        first_fixed=first_fixed,
        excess=last_shifted - first_fixed,
        gap_pair=(descending_gaps(shifted), ascending_gaps(fixed, n)),
    )


def fixed_point_insertions(t: InjWord) -> frozenset[int]:
    """Positions i whose insertion produces a permutation with a fixed point.

    Computed by the closed interval form [1, last_shifted] union
    [first_fixed + 1, n] union {missing letter}; tests check it against
    brute force over all n insertions.
    """
    p = face_profile(t)
    positions = set(range(1, p.last_shifted + 1))
    positions.update(range(p.first_fixed + 1, t.n + 1))
    positions.add(p.missing)
    return frozenset(positions)


def descending_gaps(positions) -> GapWord:
    """Differences of a position set listed downward, ending against 0.

    For {1,2} the descent 2,1,0 gives (1,1); the empty set gives ().
    """
    ordered = sorted(positions, reverse=True)
    if any(j < 1 for j in ordered):
        raise ValueError(f"positions must be >= 1: {sorted(positions)}")
    return tuple(a - b for a, b in zip(ordered, ordered[1:] + [0]))


def ascending_gaps(positions, n: int) -> GapWord:
    """Differences of a position set listed upward, ending against n.

    For {2,3} with n=4 the ascent 2,3,4 gives (1,1); the empty set
    gives ().
    """
    ordered = sorted(positions)
    if any(not 1 <= j <= n - 1 for j in ordered):
        raise ValueError(f"positions must lie in [1, {n - 1}]: {ordered}")
    return tuple(b - a for a, b in zip(ordered, ordered[1:] + [n]))


def compare_gap_pairs(a: tuple[GapWord, GapWord], b: tuple[GapWord, GapWord]) -> str:
    """Compare two gap-word pairs in the product of lexicographic orders.

    Returns "less", "greater", "equal", or "incomparable".
    """
    if a == b:
        return "equal"
    if a[0] <= b[0] and a[1] <= b[1]:
        return "less"
    if a[0] >= b[0] and a[1] >= b[1]:
        return "greater"
    return "incomparable"


@dataclass(frozen=True)
class WitnessRecord:
    """One discharge step: inserting at i is dominated by the face t_prime.

    Field names match the JSON-lines wire format.
    """

    t: InjWord
    i: int
    case: str  # "L" (i <= last_shifted) or "R" (i >= first_fixed + 1)
    b: int  # pivot position used to pick the deleted letter
    t_prime: InjWord
    progress: str  # "excess" or "omega"

    def to_json_obj(self) -> dict:
        return {
            "t": str(self.t),
            "i": self.i,
            "case": self.case,
            "b": self.b,
            "t_prime": str(self.t_prime),
            "progress": self.progress,
        }


def build_witness(t: InjWord, i: int) -> WitnessRecord:
    """Construct the witness for inserting at position i (i != missing).

    When i qualifies for both cases the left case wins, keeping
    certificates deterministic.
    """
    p = face_profile(t)
    if i == p.missing:
        raise ValueError(f"position {i} is the missing letter of {t}; no witness needed")
    if i not in fixed_point_insertions(t):
        raise ValueError(f"position {i} does not keep a fixed point for {t}")
    s = insert_missing(t, i)
    if i <= p.last_shifted:
        case = "L"
        b = min(j for j in p.shifted if j >= i)
        t_prime = delete(s, b + 1)
    else:
        case = "R"
        b = max(j for j in p.fixed if j <= i - 1)
        t_prime = delete(s, b)
    p2 = face_profile(t_prime)
    if p2.excess < p.excess:
        progress = "excess"
    elif p2.excess == p.excess and compare_gap_pairs(p.gap_pair, p2.gap_pair) == "less":
        progress = "omega"
    else:
        raise CertificateError(
            f"no progress from {t} via i={i}: excess {p.excess}->{p2.excess}, "
            f"gaps {p.gap_pair}->{p2.gap_pair}"
        )
    return WitnessRecord(t=t, i=i, case=case, b=b, t_prime=t_prime, progress=progress)


def verify_witness(rec: WitnessRecord) -> None:
    """Re-derive every claim of a record from first principles.

    Recomputes the insertion, the deletion, both profiles, the pivot,
    the two-interval position formulas, and the progress measure;
    raises CertificateError on the first discrepancy.
    """
    t, i = rec.t, rec.i
    n = t.n
    p = face_profile(t)
    k = p.missing
    if i == k or not 1 <= i <= n:
        raise CertificateError(f"bad insertion position {i} for {t}")
    s = insert_missing(t, i)
    if not has_fixed_point(s):
        raise CertificateError(f"{s} has no fixed point; i={i} is not eligible for {t}")
    lam, rho = p.last_shifted, p.first_fixed
    if rec.case == "L":
        if not i <= lam:
            raise CertificateError(f"case L needs i <= {lam}, got i={i} for {t}")
        candidates = [j for j in p.shifted if i <= j <= n - 1]
        if not candidates or rec.b != min(candidates):
            raise CertificateError(f"pivot {rec.b} is not min of {sorted(candidates)}")
        if not i <= rec.b <= lam:
            raise CertificateError(f"pivot {rec.b} outside [{i}, {lam}]")
        expected = delete(s, rec.b + 1)
        expected_missing = rec.b + 1
    elif rec.case == "R":
        if not rho + 1 <= i:
            raise CertificateError(f"case R needs i >= {rho + 1}, got i={i} for {t}")
        candidates = [j for j in p.fixed if 1 <= j <= i - 1]
        if not candidates or rec.b != max(candidates):
            raise CertificateError(f"pivot {rec.b} is not max of {sorted(candidates)}")
        if not rho <= rec.b <= i - 1:
            raise CertificateError(f"pivot {rec.b} outside [{rho}, {i - 1}]")
        expected = delete(s, rec.b)
        expected_missing = rec.b
    else:
        raise CertificateError(f"unknown case {rec.case!r}")
    if rec.t_prime != expected:
        raise CertificateError(f"t_prime {rec.t_prime} != recomputed {expected}")
    if not is_subword(rec.t_prime, s):
        raise CertificateError(f"{rec.t_prime} is not a face of {s}")
    if missing_letter(rec.t_prime) != expected_missing:
        raise CertificateError(
            f"{rec.t_prime} misses {missing_letter(rec.t_prime)}, expected {expected_missing}"
        )
    p2 = face_profile(rec.t_prime)
    b = rec.b
    if rec.case == "L":
        window = set(range(rho, i)) | set(range(max(rho, b + 1), n))
        if p2.fixed != p.fixed & window:
            raise CertificateError(f"fixed-position formula fails for {rec}")
        if b == lam:
            if not p2.last_shifted < lam:
                raise CertificateError(f"expected last_shifted drop in {rec}")
        else:
            if p2.last_shifted != lam or not p.gap_pair[0] < p2.gap_pair[0]:
                raise CertificateError(f"expected shifted-gap increase in {rec}")
    else:
        window = set(range(1, min(lam, b - 1) + 1)) | set(range(i, lam + 1))
        if p2.shifted != p.shifted & window:
            raise CertificateError(f"shifted-position formula fails for {rec}")
        if b == rho:
            if not p2.first_fixed > rho:
                raise CertificateError(f"expected first_fixed rise in {rec}")
        else:
            if p2.first_fixed != rho or not p.gap_pair[1] < p2.gap_pair[1]:
                raise CertificateError(f"expected fixed-gap increase in {rec}")
    if p2.excess < p.excess:
        progress = "excess"
    elif p2.excess == p.excess and compare_gap_pairs(p.gap_pair, p2.gap_pair) == "less":
        progress = "omega"
    else:
        raise CertificateError(f"no measurable progress in {rec}")
    if progress != rec.progress:
        raise CertificateError(f"progress {rec.progress!r} should be {progress!r}")


@dataclass(frozen=True)
class Certificate:
    """Verified witnesses for all n! faces plus an explicit induction order.

    ``face_records`` lists every face (lexicographically) with its
    witness tuple; faces whose only eligible insertion is the missing
    letter carry an empty tuple and seed the induction.  ``topo_order``
    is a linear extension in which every witness edge points backward.
    """

    n: int
    face_records: tuple[tuple[InjWord, tuple[WitnessRecord, ...]], ...]
    topo_order: tuple[InjWord, ...]
    acyclic: bool

    @property
    def faces(self) -> int:
        return len(self.face_records)

    @property
    def record_count(self) -> int:
        return sum(len(recs) for _, recs in self.face_records)

    def to_jsonl(self) -> str:
        lines = []
        for _, recs in self.face_records:
            for rec in recs:
                lines.append(json.dumps(rec.to_json_obj()))
        footer = {"n": self.n, "faces": self.faces, "acyclic": self.acyclic}
        lines.append(json.dumps(footer))
        return "\n".join(lines) + "\n"


def _all_faces(n: int) -> Iterator[InjWord]:
    """All n! words of length n-1, in lexicographic order."""
    for letters in itertools.permutations(range(1, n + 1), n - 1):
        yield InjWord._raw(n, letters)


def _induction_sort_key_cmp(profiles):
    """Order faces by excess ascending, then gap pair descending.

    Descending lexicographic order on each gap word extends the product
    order, so within an excess class every strict gap increase points
    backward.
    """
    import functools

    def cmp(ta, tb):
        pa, pb = profiles[ta], profiles[tb]
        if pa.excess != pb.excess:
            return -1 if pa.excess < pb.excess else 1
        for wa, wb in zip(pa.gap_pair, pb.gap_pair):
            if wa != wb:
                return -1 if wa > wb else 1
        if ta.letters != tb.letters:
            return -1 if ta.letters < tb.letters else 1
        return 0

    return functools.cmp_to_key(cmp)


def build_certificate(n: int) -> Certificate:
    """Build and fully verify the redundancy certificate for all n! faces.

    Any failing record aborts loudly: a verification error here would
    falsify the progress argument, so it must never be skipped.
    """
    if not 3 <= n <= 8:
        raise ValueError(f"n must be in [3, 8], got {n}")
    face_records = []
    profiles: dict[InjWord, Profile] = {}
    for t in _all_faces(n):
        p = face_profile(t)
        profiles[t] = p
        eligible = sorted(fixed_point_insertions(t) - {p.missing})
        records = tuple(build_witness(t, i) for i in eligible)
        for rec in records:
            verify_witness(rec)
        face_records.append((t, records))
    expected_faces = 1
    for m in range(2, n + 1):
        expected_faces *= m
    if len(face_records) != expected_faces:
        raise CertificateError(
            f"coverage failure: {len(face_records)} faces, expected {expected_faces}"
        )
    order = sorted(profiles, key=_induction_sort_key_cmp(profiles))
    position = {t: idx for idx, t in enumerate(order)}
    for t, records in face_records:
        for rec in records:
            if position[rec.t_prime] >= position[t]:
                raise CertificateError(
                    f"edge {t} -> {rec.t_prime} does not point backward"
                )
    return Certificate(
        n=n,
        face_records=tuple(face_records),
        topo_order=tuple(order),
        acyclic=True,
    )


@dataclass(frozen=True)
class FixedPointReport:
    """Result of the iterative marking run."""

    n: int
    rounds: int
    marked: frozenset[InjWord]
    faces: int

    @property
    def complete(self) -> bool:
        return len(self.marked) == self.faces

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "rounds": self.rounds,
            "marked": len(self.marked),
            "faces": self.faces,
            "complete": self.complete,
        }


def redundancy_fixed_point(n: int) -> FixedPointReport:
    """Mark faces by rounds until nothing changes.

    A face is markable when at most one of its fixed-point-keeping
    insertions yields a permutation with no already-marked face; the
    spared insertion may be any of them, not only the missing letter,
    which makes this strictly independent of the certificate route.
    Marking all n! faces is the certified outcome; a proper subset is
    reported, not raised.
    """
    if not 3 <= n <= 8:
        raise ValueError(f"n must be in [3, 8], got {n}")
    faces = list(_all_faces(n))
    cofaces: dict[InjWord, tuple[tuple[int, ...], ...]] = {}
    for t in faces:
        cofaces[t] = tuple(
            insert_missing(t, i).letters for i in sorted(fixed_point_insertions(t))
        )
    discharged: set[tuple[int, ...]] = set()
    marked: set[InjWord] = set()
    rounds = 0
    while True:
        newly = [
            t
            for t in faces
            if t not in marked
            and sum(1 for s in cofaces[t] if s not in discharged) <= 1
        ]
        if not newly:
            break
        rounds += 1
        for t in newly:
            marked.add(t)
            discharged.update(cofaces[t])
    return FixedPointReport(
        n=n, rounds=rounds, marked=frozenset(marked), faces=len(faces)
    )
