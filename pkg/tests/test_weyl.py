"""Weyl normal forms against a step-rewrite oracle, witnesses, and char p."""

import random

import pytest

from commsum import matrices, rings, weyl
from commsum.rings import (PreconditionError, commutator, prime_field,
                           rationals, weyl_algebra)
from commsum.weyl import (char_p_generator_images, char_p_image,
                          char_p_obstruction_certificate,
                          fresh_variable_witness, scaled_antiderivative,
                          x_antiderivative)


Z = rings.integers()
W = weyl_algebra(Z)


# ---------------------------------------------------------------------------
# an independent oracle: normalize words one adjacent swap at a time


def _word_normalize(weighted_words):
    """Normal form from letter-by-letter rewriting.

    A word is a tuple of ('x'|'y', index) letters.  Adjacent letters of
    distinct indices swap freely; an adjacent (y_i, x_i) rewrites to
    (x_i, y_i) minus the word with the pair deleted.  Deliberately naive,
    to stay independent of the library's closed-form exponent rule.
    """
    done = {}
    todo = list(weighted_words)
    while todo:
        coeff, word = todo.pop()
        for k in range(len(word) - 1):
            (s1, i1), (s2, i2) = word[k], word[k + 1]
            out_of_order = i1 > i2 or (i1 == i2 and s1 == "y" and s2 == "x")
            if not out_of_order:
                continue
            swapped = word[:k] + (word[k + 1], word[k]) + word[k + 2:]
            todo.append((coeff, swapped))
            if i1 == i2 and s1 == "y" and s2 == "x":
                todo.append((-coeff, word[:k] + word[k + 2:]))
            break
        else:
            done[word] = done.get(word, 0) + coeff
    return {w: c for w, c in done.items() if c}


def _word_to_element(word, coeff, ring):
    e = ring.from_int(coeff)
    for sort, i in word:
        e = e * (ring.x(i) if sort == "x" else ring.y(i))
    return e


def _element_from_words(weighted_words, ring):
    acc = ring.zero
    for coeff, word in weighted_words:
        acc = acc + _word_to_element(word, coeff, ring)
    return acc


def _random_words(rng, n_words=2, max_len=5, max_index=2):
    out = []
    for _ in range(rng.randint(1, n_words)):
        word = tuple((rng.choice("xy"), rng.randrange(max_index))
                     for _ in range(rng.randint(0, max_len)))
        out.append((rng.randint(-4, 4), word))
    return out


def test_normal_form_matches_step_rewrite_oracle():
    rng = random.Random(42)
    for _ in range(60):
        words = _random_words(rng)
        via_ring = _element_from_words(words, W)
        normalized = _word_normalize(words)
        # rebuild through already-normal words: multiplying sorted letters
        # never triggers a rewrite, so this reads the oracle's answer back
        rebuilt = W.zero
        for word, coeff in sorted(normalized.items()):
            ordered = tuple(sorted(word, key=lambda l: (l[1], l[0])))
            assert ordered == word
            rebuilt = rebuilt + _word_to_element(word, coeff, W)
        assert rebuilt == via_ring


def test_y2x2_frozen_value():
    q = W.y(0) ** 2 * W.x(0) ** 2
    assert str(q) == "x0^2*y0^2 - 4*x0*y0 + 2"
    oracle = _word_normalize([(1, (("y", 0), ("y", 0), ("x", 0), ("x", 0)))])
    assert oracle == {(("x", 0), ("x", 0), ("y", 0), ("y", 0)): 1,
                      (("x", 0), ("y", 0)): -4, (): 2}


def test_defining_relation_and_trivial_products():
    assert str(W.y(0) * W.x(0)) == "x0*y0 - 1"
    assert str(W.x(0) * W.y(0)) == "x0*y0"
    assert commutator(W.x(0), W.y(0)) == W.one


def test_weyl_associativity_distributivity_random():
    rng = random.Random(9)
    for _ in range(120):
        u = W.random_element(rng)
        v = W.random_element(rng)
        w = W.random_element(rng)
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w


# ---------------------------------------------------------------------------
# fresh-variable witnesses


def test_fresh_witness_spec_cases():
    n, t = fresh_variable_witness(W.zero)
    assert n == 0 and t.is_zero and commutator(W.x(0), t).is_zero

    s = W.y(0)
    n, t = fresh_variable_witness(s)
    assert n == 1 and t == W.y(1) * W.y(0)
    assert commutator(W.x(1), t) == s

    s = W.x(0) * W.y(0) + 3
    n, t = fresh_variable_witness(s)
    assert n == 1 and t == W.y(1) * s
    assert commutator(W.x(n), t) == s


def test_fresh_witness_skips_used_y_indices():
    s = W.y(0) * W.y(1) + W.y(3)
    n, t = fresh_variable_witness(s)
    assert n == 2
    assert commutator(W.x(2), t) == s
    # x-only usage does not burn an index
    s = W.x(0) ** 3
    n, _ = fresh_variable_witness(s)
    assert n == 0


def test_fresh_witness_randomized(rng):
    for _ in range(100):
        s = W.random_element(rng, max_terms=4, max_degree=3, max_index=3)
        n, t = fresh_variable_witness(s)
        assert commutator(W.x(n), t) == s
        assert n not in set(W.y_indices_used(s.value))


def test_fresh_witness_needs_unbounded_indices():
    with pytest.raises(PreconditionError):
        fresh_variable_witness(weyl_algebra(Z, 1).one)


# ---------------------------------------------------------------------------
# the antiderivative construction


Q1 = weyl_algebra(rationals(), 1)


def test_antiderivative_spec_cases():
    assert x_antiderivative(Q1.zero).is_zero
    assert x_antiderivative(Q1.one) == Q1.y()
    g = x_antiderivative(Q1.x() * Q1.y())
    assert str(g) == "1/2*x0*y0^2"
    assert commutator(Q1.x(), g) == Q1.x() * Q1.y()


def test_antiderivative_randomized_over_rationals(rng):
    for _ in range(80):
        f = Q1.random_element(rng, max_terms=4, max_degree=3)
        g = x_antiderivative(f)
        assert commutator(Q1.x(), g) == f


def test_antiderivative_divisibility_safe_integers(rng):
    A1 = weyl_algebra(Z, 1)
    for _ in range(40):
        # manufacture divisibility: multiply each coefficient by (b+1)
        raw = A1.random_element(rng, max_terms=3, max_degree=3)
        terms = {}
        for mono, c in raw.value:
            b = mono[0][2] if mono else 0
            terms[mono] = c * (b + 1)
        f = A1.element(terms)
        g = x_antiderivative(f)
        assert commutator(A1.x(), g) == f


def test_antiderivative_names_the_failing_divisor():
    A1 = weyl_algebra(Z, 1)
    with pytest.raises(PreconditionError) as exc:
        x_antiderivative(A1.x() * A1.y())
    assert "divisible by 2" in str(exc.value)
    F3 = weyl_algebra(prime_field(3), 1)
    with pytest.raises(PreconditionError) as exc:
        x_antiderivative(F3.y() ** 2)
    assert "divisible by 3" in str(exc.value)


def test_scaled_antiderivative_over_integers(rng):
    A1 = weyl_algebra(Z, 1)
    for _ in range(40):
        f = A1.random_element(rng, max_terms=3, max_degree=3)
        scale, g = scaled_antiderivative(f)
        assert commutator(A1.x(), g) == scale * f


# ---------------------------------------------------------------------------
# characteristic p


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_char_p_commutator_and_trace(p):
    F = prime_field(p)
    X, Y = char_p_generator_images(F, p)
    assert commutator(X, Y) == X.ring.one
    assert matrices.trace((X * Y) ** (p - 1)) == F.from_int(p - 1)


def test_char_p_p2_frozen_matrices():
    F2 = prime_field(2)
    X, Y = char_p_generator_images(F2, 2)
    assert str(X) == "[[0, 1], [0, 0]]"
    assert str(Y) == "[[0, 0], [1, 0]]"
    A = weyl_algebra(F2, 1)
    img = char_p_image(A.x() * A.y(), 2)
    assert matrices.trace(img) == F2.one


def test_char_p_image_is_a_homomorphism(rng):
    F5 = prime_field(5)
    A = weyl_algebra(F5, 1)
    one = char_p_image(A.one, 5)
    assert one == one.ring.one
    img = char_p_image(commutator(A.x(), A.y()), 5)
    assert img == img.ring.one
    for _ in range(30):
        u = A.random_element(rng, max_terms=3, max_degree=2)
        v = A.random_element(rng, max_terms=3, max_degree=2)
        assert char_p_image(u * v, 5) == char_p_image(u, 5) * char_p_image(v, 5)
        assert char_p_image(u + v, 5) == char_p_image(u, 5) + char_p_image(v, 5)


def test_char_p_checks_characteristic():
    with pytest.raises(PreconditionError):
        char_p_generator_images(prime_field(3), 5)
    with pytest.raises(PreconditionError):
        char_p_generator_images(Z, 5)


def test_obstruction_certificate_examples():
    for p, r in ((2, 1), (3, 1), (5, 2)):
        F = prime_field(p)
        cert = char_p_obstruction_certificate(F, F.from_int(r), p)
        assert cert.passed
        assert cert.evidence["image-trace"] == str(r)


def test_obstruction_rejects_zero_and_wrong_characteristic():
    F2 = prime_field(2)
    with pytest.raises(PreconditionError):
        char_p_obstruction_certificate(F2, F2.zero, 2)
    with pytest.raises(PreconditionError):
        char_p_obstruction_certificate(F2, F2.one, 3)
    W2 = weyl_algebra(F2, 1)
    with pytest.raises(PreconditionError):
        char_p_obstruction_certificate(W2, W2.one, 2)


def test_obstruction_over_modular_algebra():
    # any commutative algebra of characteristic p works, e.g. gf(p)[t]
    P = rings.polynomial(prime_field(3), ("t",))
    cert = char_p_obstruction_certificate(P, P.var("t") + 1, 3)
    assert cert.passed
    assert cert.evidence["image-trace"] == "t + 1"
