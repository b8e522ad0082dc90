"""Smith normal form, field ranks, and homology summaries."""

from __future__ import annotations

import random

import pytest

import injwords as iw
from injwords import RingSpec

from conftest import (
    W,
    dense_rank_mod,
    dense_rank_rationals,
    dense_snf,
    minors_snf,
    random_generator_sets,
    sparse_from_dense,
)

Z = RingSpec.integers()
Q = RingSpec.rationals()
F2 = RingSpec.prime_field(2)
F3 = RingSpec.prime_field(3)
FBIG = RingSpec.prime_field(1000003)


def complex_p(n):
    return iw.generate_complex(iw.nonderangements(n), n)


def complex_s(n):
    return iw.generate_complex(iw.permutations(n), n)


def random_dense(rng, rows, cols, density=1.0, span=9):
    return [
        [
            rng.randint(-span, span) if rng.random() < density else 0
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def test_snf_diagonal_2_3():
    m = sparse_from_dense([[2, 0], [0, 3]], Z)
    assert iw.smith_normal_form(m) == (1, 6)


def test_snf_zero_matrix():
    m = sparse_from_dense([[0, 0, 0], [0, 0, 0]], Z)
    assert iw.smith_normal_form(m) == ()


def test_snf_identity():
    m = sparse_from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Z)
    assert iw.smith_normal_form(m) == (1, 1, 1)


def test_snf_requires_integer_ring():
    with pytest.raises(ValueError):
        iw.smith_normal_form(sparse_from_dense([[1]], Q))


def test_snf_against_minor_gcds():
    # Invariant factors straight from the definition (gcds of k-minors)
    # on tiny matrices; completely disjoint machinery.
    rng = random.Random(20240)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        dense = random_dense(rng, rows, cols, density=0.8, span=6)
        got = iw.smith_normal_form(sparse_from_dense(dense, Z))
        assert got == minors_snf(dense)


def test_snf_against_naive_dense_reduction():
    rng = random.Random(5150)
    cases = [(8, 8, 1.0, 9), (12, 7, 0.5, 20), (40, 60, 0.08, 3), (120, 100, 0.03, 5)]
    for rows, cols, density, span in cases:
        dense = random_dense(rng, rows, cols, density, span)
        got = iw.smith_normal_form(sparse_from_dense(dense, Z))
        assert got == dense_snf(dense)


def test_snf_invariant_under_transpose():
    rng = random.Random(99)
    for _ in range(20):
        dense = random_dense(rng, rng.randint(1, 7), rng.randint(1, 7), 0.7, 8)
        transpose = [list(col) for col in zip(*dense)] if dense else []
        a = iw.smith_normal_form(sparse_from_dense(dense, Z))
        b = iw.smith_normal_form(sparse_from_dense(transpose, Z))
        assert a == b


def test_snf_divisibility_chain():
    rng = random.Random(4096)
    for _ in range(30):
        dense = random_dense(rng, rng.randint(2, 8), rng.randint(2, 8), 0.9, 30)
        factors = iw.smith_normal_form(sparse_from_dense(dense, Z))
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


def test_snf_with_wide_entries():
    # Entries far beyond machine width must be no different.
    big = 10**40
    m = sparse_from_dense([[2 * big, 0], [0, 3 * big]], Z)
    assert iw.smith_normal_form(m) == (big, 6 * big)


# ---------------------------------------------------------------------------
# rank / nullity over fields
# ---------------------------------------------------------------------------


def test_rank_nullity_zero_matrix():
    m = sparse_from_dense([[0] * 5 for _ in range(3)], Q)
    assert iw.rank_nullity(m) == (0, 5)


def test_rank_nullity_edge_boundary():
    cx = iw.generate_complex([W("[1,2]", 2)], 2)
    m = iw.boundary_matrix(cx, 2, Q)
    assert iw.rank_nullity(m) == (1, 0)


def test_rank_of_top_boundary_full_n3_mod_2():
    m = iw.boundary_matrix(complex_s(3), 3, F2)
    rank, nullity = iw.rank_nullity(m)
    assert rank == 4
    assert nullity == 2


def test_rank_nullity_rejects_integers():
    m = sparse_from_dense([[1]], Z)
    with pytest.raises(ValueError):
        iw.rank_nullity(m)


def test_rank_nullity_ring_override():
    m = sparse_from_dense([[2]], Z)
    assert iw.rank_nullity(m, Q) == (1, 0)
    assert iw.rank_nullity(m, F2) == (0, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 97, 1000003])
def test_field_ranks_against_dense_elimination(p):
    rng = random.Random(p)
    ring = RingSpec.prime_field(p)
    for _ in range(25):
        dense = random_dense(rng, rng.randint(1, 12), rng.randint(1, 12), 0.5, p + 3)
        got, _ = iw.rank_nullity(sparse_from_dense(dense, ring))
        assert got == dense_rank_mod(dense, p)


def test_rational_ranks_against_dense_fractions():
    rng = random.Random(271828)
    for _ in range(40):
        dense = random_dense(rng, rng.randint(1, 12), rng.randint(1, 12), 0.6, 12)
        got, _ = iw.rank_nullity(sparse_from_dense(dense, Q))
        assert got == dense_rank_rationals(dense)


# ---------------------------------------------------------------------------
# homology of the paper's complexes
# ---------------------------------------------------------------------------


def test_circle_homology():
    summary = iw.homology(complex_s(2), Z)
    assert summary.betti == (1, 1)
    assert summary.torsion == ((), ())


def test_full_n3_homology():
    for ring in (Z, Q, F2, F3, FBIG):
        summary = iw.homology(complex_s(3), ring)
        assert summary.betti == (1, 0, 2)
        assert all(t == () for t in summary.torsion)


def test_nonderangement_n3_homology():
    for ring in (Z, Q, F2):
        assert iw.homology(complex_p(3), ring).betti == (1, 0, 0)


def test_nonderangement_n4_integral_homology():
    summary = iw.homology(complex_p(4), Z)
    assert summary.betti == (1, 0, 0, 0)
    assert all(t == () for t in summary.torsion)


def test_wedge_betti_small():
    for n in (2, 3, 4, 5):
        d_n = iw.derangement_count(n)
        expected = (1,) + (0,) * (n - 2) + (d_n,)
        for ring in (Q, F2, F3):
            assert iw.homology(complex_s(n), ring).betti == expected
        integral = iw.homology(complex_s(n), Z)
        assert integral.betti == expected
        assert all(t == () for t in integral.torsion)


def test_single_simplex_homology():
    cx = iw.generate_complex([W("[1,2,3]", 3)], 3)
    assert iw.homology(cx, Z).betti == (1, 0, 0)


def test_homology_of_low_dimensional_generators():
    # Generators shorter than n leave the upper levels empty.
    cx = iw.generate_complex([W("[1,2]", 4), W("[3]", 4)], 4)
    summary = iw.homology(cx, Z)
    assert summary.betti == (2, 0, 0, 0)


def test_top_cycle_dimension_examples():
    assert iw.top_cycle_dimension(complex_p(3), Q) == 0
    assert iw.top_cycle_dimension(complex_s(3), Q) == 2
    assert iw.top_cycle_dimension(complex_p(4), F2) == 0


def test_top_cycle_dimension_needs_field():
    with pytest.raises(ValueError):
        iw.top_cycle_dimension(complex_p(3), Z)


def test_euler_poincare_on_random_corpus():
    for gens in random_generator_sets(4, 15, seed=31):
        cx = iw.generate_complex(gens, 4)
        chi = iw.euler_characteristic(cx)
        for ring in (Q, F2):
            betti = iw.homology(cx, ring).betti
            assert sum((-1) ** d * b for d, b in enumerate(betti)) == chi


def test_codimension_one_rank_equality():
    # rank H_{n-2} == rank H_{n-1} for the non-derangement complex.
    for n in (3, 4, 5):
        for ring in (Z, F2, FBIG):
            betti = iw.homology(complex_p(n), ring).betti
            assert betti[n - 2] == betti[n - 1]


def test_low_degrees_vanish_for_both_complexes():
    for n in (4, 5):
        for cx in (complex_p(n), complex_s(n)):
            betti = iw.homology(cx, Z).betti
            assert betti[0] == 1
            assert all(betti[k] == 0 for k in range(1, n - 2))


def test_summary_json_shape():
    obj = iw.homology(complex_s(3), Z).to_json_obj()
    assert obj == {"ring": "z", "betti": [1, 0, 2], "torsion": [[], [], []]}


def test_homology_deterministic():
    a = iw.homology(complex_p(4), Z)
    b = iw.homology(complex_p(4), Z)
    assert a == b
