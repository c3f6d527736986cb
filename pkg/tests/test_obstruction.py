"""Span dimensions, the commuting-pair sweep, and the counterexample."""

import itertools
import random

import pytest

from commsum import obstruction, rings
from commsum.matrices import trace
from commsum.obstruction import (BudgetError, counterexample_matrix,
                                 custom_counterexample_certificate,
                                 not_commutator_certificate, span_dimension,
                                 span_lemma_certificate,
                                 standard_counterexample_ring)
from commsum.rings import PreconditionError, commutator, prime_field


F2 = prime_field(2)
M2F2 = rings.matrix_ring(F2, 2)
F3 = prime_field(3)
M2F3 = rings.matrix_ring(F3, 2)


def _all_matrices(ring):
    p = ring.base.m
    for entries in itertools.product(range(p), repeat=4):
        yield ring.from_rows([[entries[0], entries[1]],
                              [entries[2], entries[3]]])


def _naive_span_size(A0, B0):
    """|{[A0,C] + [B0,D]}| by full enumeration; the size is p^dimension."""
    ring = A0.ring
    seen = set()
    for C in _all_matrices(ring):
        for D in _all_matrices(ring):
            seen.add((commutator(A0, C) + commutator(B0, D)).value)
    return len(seen)


def test_span_dimension_trivial_pairs():
    assert span_dimension(M2F2.zero, M2F2.zero).dimension == 0
    assert span_dimension(M2F2.one, M2F2.one).dimension == 0
    rep = span_dimension(M2F3.scalar(2), M2F3.one)
    assert rep.dimension == 0 and rep.commutes


def test_span_dimension_nilpotent_example():
    rep = span_dimension(M2F3.unit(0, 1), M2F3.zero)
    assert rep.dimension == 2 and rep.commutes
    assert [str(b) for b in rep.basis] == ["[[1, 0], [0, 2]]",
                                           "[[0, 1], [0, 0]]"]


def test_span_dimension_matches_naive_enumeration_over_gf2():
    rng = random.Random(17)
    cases = [(M2F2.zero, M2F2.zero), (M2F2.unit(0, 1), M2F2.zero),
             (M2F2.one, M2F2.unit(0, 1))]
    cases += [(M2F2.random_element(rng), M2F2.random_element(rng))
              for _ in range(6)]
    for A0, B0 in cases:
        rep = span_dimension(A0, B0)
        assert 2 ** rep.dimension == _naive_span_size(A0, B0)


def test_noncommuting_pairs_exceed_the_commuting_bound():
    # commutators are traceless, so the span can never leave the
    # 3-dimensional trace-zero subspace; dimension 3 must occur for
    # non-commuting pairs, showing the <= 2 bound is special to them
    seen = set()
    rng = random.Random(3)
    for _ in range(200):
        A0 = M2F3.random_element(rng)
        B0 = M2F3.random_element(rng)
        rep = span_dimension(A0, B0)
        assert rep.dimension <= 3
        if not rep.commutes:
            seen.add(rep.dimension)
    assert 3 in seen


def test_targets_span_dimension_three():
    # E11 - E22, E12, E21 are independent for every p
    for p in (2, 3):
        rows = [(1, 0, 0, p - 1), (0, 1, 0, 0), (0, 0, 1, 0)]
        rref, _ = obstruction._rref(rows, p)
        assert len(rref) == 3


@pytest.mark.parametrize("p", [2, 3])
def test_lemma_exhaustive(p):
    cert = span_lemma_certificate(p)
    assert cert.passed
    assert int(cert.evidence["max-dimension"]) <= 2
    assert cert.evidence["matrix-pairs"] == str(p ** 8)
    # commuting-pair count agrees with summing centralizer sizes: the
    # p scalars commute with everything, the rest have centralizers of
    # size p^2
    expected = p * p ** 4 + (p ** 4 - p) * p ** 2
    assert cert.evidence["commuting-pairs"] == str(expected)


def test_lemma_exhaustive_agrees_with_brute_force_p2():
    cert = span_lemma_certificate(2)
    count = 0
    top = 0
    for A0 in _all_matrices(M2F2):
        for B0 in _all_matrices(M2F2):
            if commutator(A0, B0).is_zero:
                count += 1
                top = max(top, span_dimension(A0, B0).dimension)
    assert cert.evidence["commuting-pairs"] == str(count)
    assert int(cert.evidence["max-dimension"]) == top


def test_lemma_refuses_large_exhaustive_runs():
    with pytest.raises(BudgetError) as exc:
        span_lemma_certificate(5)
    assert "sampling" in str(exc.value)


@pytest.mark.parametrize("p", [5, 7])
def test_lemma_sampled(p):
    cert = span_lemma_certificate(p, "sample", samples=120, seed=0)
    assert cert.passed
    assert int(cert.evidence["max-dimension"]) <= 2


def test_sampled_mode_is_seed_deterministic():
    a = span_lemma_certificate(5, "sample", samples=50, seed=1)
    b = span_lemma_certificate(5, "sample", samples=50, seed=1)
    c = span_lemma_certificate(5, "sample", samples=50, seed=2)
    assert a.render() == b.render()
    assert a.parameters != c.parameters


# ---------------------------------------------------------------------------
# the counterexample matrix


def test_counterexample_matrix_shape_and_trace():
    R = standard_counterexample_ring(3)
    mat = counterexample_matrix(R, R.gen("x11"), R.gen("x12"), R.gen("x21"))
    assert str(mat) == "[[x11, x12], [x21, 2*x11]]"
    assert trace(mat).is_zero


def test_counterexample_matrix_accepts_independent_combinations():
    R = standard_counterexample_ring(2)
    x = R.gen("x11") + R.gen("x12")
    mat = counterexample_matrix(R, x, R.gen("x12"), R.gen("x21"))
    assert trace(mat).is_zero


def test_counterexample_matrix_over_a_rational_base():
    R = rings.square_zero_quotient(rings.rationals(), ("u", "v", "w"))
    mat = counterexample_matrix(R, R.gen("u"), R.gen("v") + R.gen("u"),
                                R.gen("w"))
    assert trace(mat).is_zero
    with pytest.raises(PreconditionError):
        counterexample_matrix(R, R.gen("u"), R.gen("u"), R.gen("w"))


def test_counterexample_matrix_rejects_dependence():
    R = standard_counterexample_ring(2)
    with pytest.raises(PreconditionError) as exc:
        counterexample_matrix(R, R.gen("x11"), R.gen("x11"), R.gen("x21"))
    assert "dependent" in str(exc.value)
    with pytest.raises(PreconditionError):
        counterexample_matrix(R, R.one, R.gen("x12"), R.gen("x21"))


@pytest.mark.parametrize("p", [2, 3])
def test_not_commutator_certificate(p):
    cert = not_commutator_certificate(p)
    assert cert.passed
    assert cert.evidence["trace"] == "0"
    assert int(cert.evidence["max-span-dimension"]) <= 2
    assert cert.evidence["target-span-dimension"] == "3"


def test_cross_check_agrees_with_lemma_argument():
    cert = not_commutator_certificate(2, cross_check=True)
    assert cert.passed
    assert cert.evidence["cross-check-systems"] == "65536"
    assert cert.evidence["cross-check-solvable"] == "0"


def test_cross_check_restricted_to_p2():
    with pytest.raises(BudgetError):
        not_commutator_certificate(3, cross_check=True)


def test_linear_solve_finds_solutions_when_they_exist():
    # sanity for the oracle machinery: over the plain field, E11 - E22 IS
    # a commutator, so the analogous 2x2 linear system is solvable; the
    # sqz target differs precisely in its nilpotent coordinates
    A = M2F2.unit(0, 1)
    B = M2F2.unit(1, 0)
    target = commutator(A, B)
    found = False
    for Bc in _all_matrices(M2F2):
        if commutator(A, Bc) == target:
            found = True
            break
    assert found


def test_custom_counterexample_certificate():
    R = standard_counterexample_ring(2)
    x = R.gen("x11") + R.gen("x12")
    cert = custom_counterexample_certificate(R, x, R.gen("x12"), R.gen("x21"))
    assert cert.passed
    assert cert.evidence["phi-x11"] == "x11 + x12"
    assert cert.evidence["phi-x12"] == "x12"


def test_custom_counterexample_with_extra_generators():
    R = rings.square_zero_quotient(F2, ("a", "b", "c", "d"))
    cert = custom_counterexample_certificate(
        R, R.gen("a"), R.gen("b") + R.gen("d"), R.gen("c"))
    assert cert.passed
