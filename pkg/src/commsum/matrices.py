"""Commutator structure of matrix rings over arbitrary base rings.

The centerpiece splits any trace-zero square matrix into exactly two
commutators, entirely constructively.  Around it sit the trace transfer
in both directions (a matrix commutator's trace is a short base-ring
commutator sum, and any such sum arises as a trace), composition across
orthogonal idempotents, and the bounded decomposition that combines the
two: a matrix whose trace is a sum of m base commutators is a sum of
ceil(m/n^2) + 2 matrix commutators.

All indices here are 0-based; the classical matrix-unit formulas are
transcribed accordingly (the lower shift has its ones at (i+1, i), the
upper shift at (i, i+1), and the distinguished corner is (n-1, n-1)).
"""

from . import certificates, grammar
from .certificates import Certificate, register_replayer
from .rings import (CommutatorSum, Element, MatrixRing, PreconditionError,
                    RingMismatchError, commutator, matrix_ring)


def _need_matrix(A, op):
    if not isinstance(A.ring, MatrixRing):
        raise PreconditionError(f"{op} needs a matrix-ring element, got "
                                f"{A.ring.descriptor()}")
    return A.ring


def trace(A):
    """Sum of diagonal entries, as an element of the base ring."""
    ring = _need_matrix(A, "trace")
    base = ring.base
    acc = base._zero
    for i in range(ring.n):
        acc = base._add(acc, A.value[i][i])
    return Element(base, acc)


def lower_shift(ring):
    """Ones on the subdiagonal: sends basis column i to column i+1."""
    zero, one = ring.base._zero, ring.base._one
    return Element(ring, tuple(
        tuple(one if r == c + 1 else zero for c in range(ring.n))
        for r in range(ring.n)))


def upper_shift(ring):
    """Ones on the superdiagonal; the left inverse of the lower shift
    away from the last corner."""
    zero, one = ring.base._zero, ring.base._one
    return Element(ring, tuple(
        tuple(one if c == r + 1 else zero for c in range(ring.n))
        for r in range(ring.n)))


# ---------------------------------------------------------------------------
# trace transfer


def trace_commutator_terms(A, B):
    """The n^2 base-ring pairs (a_ij, b_ji) whose commutators sum to
    trace(AB - BA)."""
    ring = _need_matrix(A, "trace_commutator_terms")
    if B.ring != ring:
        raise RingMismatchError("both matrices must share one matrix ring")
    base = ring.base
    terms = []
    for i in range(ring.n):
        for j in range(ring.n):
            terms.append((Element(base, A.value[i][j]),
                          Element(base, B.value[j][i])))
    return CommutatorSum(base, terms)


def trace_witness(s, n=None):
    """Matrices (A, B) with trace([A, B]) equal to the sum's value.

    Term k lands at the row-major position (i, j) with k = i*n + j: the
    left factor goes to A[i][j] and the right factor to B[j][i].  All
    other entries stay zero.  With n omitted, the smallest size whose
    n^2 positions fit the sum is used.
    """
    m = len(s)
    if n is None:
        n = 1
        while n * n < m:
            n += 1
    if m > n * n:
        raise PreconditionError(
            f"a sum of {m} terms does not fit the {n * n} positions of a "
            f"{n}x{n} witness")
    base = s.ring
    ring = matrix_ring(base, n)
    a_rows = [[base._zero] * n for _ in range(n)]
    b_rows = [[base._zero] * n for _ in range(n)]
    for k, (left, right) in enumerate(s):
        i, j = divmod(k, n)
        a_rows[i][j] = left.value
        b_rows[j][i] = right.value
    A = Element(ring, tuple(tuple(r) for r in a_rows))
    B = Element(ring, tuple(tuple(r) for r in b_rows))
    return A, B


# ---------------------------------------------------------------------------
# the two-commutator split


def two_commutator_decomposition(A):
    """Split a trace-zero matrix into exactly two commutators.

    Returns ((P1, Q1), (P2, Q2)) with A == [P1, Q1] + [P2, Q2], where
    Q1 is the lower shift and Q2 the last diagonal unit.  The 1x1 case
    only admits A == 0 and returns two zero pairs.
    """
    ring = _need_matrix(A, "two_commutator_decomposition")
    tr = trace(A)
    if not tr.is_zero:
        raise PreconditionError(f"matrix trace is {tr}, expected 0")
    n = ring.n
    if n == 1:
        z = ring.zero
        return ((z, z), (z, z))
    X = lower_shift(ring)
    Z = upper_shift(ring)
    C = A
    T = A
    for _ in range(n - 1):
        T = X * T * Z
        C = C + T
    E = ring.unit(n - 1, n - 1)
    return ((C * Z, X), (C * E, E))


# ---------------------------------------------------------------------------
# idempotent corners


class IdempotentSplit:
    """Orthogonal idempotents summing to 1, checked at construction."""

    __slots__ = ("ring", "idempotents")

    def __init__(self, ring, idempotents):
        idempotents = tuple(idempotents)
        if not idempotents:
            raise PreconditionError("an idempotent split needs at least one part")
        for i, e in enumerate(idempotents):
            if e.ring != ring:
                raise RingMismatchError("idempotents must live in the split's ring")
            if e * e != e:
                raise PreconditionError(f"part {i + 1} is not idempotent: {e}")
        for i, e in enumerate(idempotents):
            for j, f in enumerate(idempotents):
                if i != j and not (e * f).is_zero:
                    raise PreconditionError(
                        f"parts {i + 1} and {j + 1} are not orthogonal")
        total = ring.zero
        for e in idempotents:
            total = total + e
        if total != ring.one:
            raise PreconditionError("idempotents do not sum to 1")
        self.ring = ring
        self.idempotents = idempotents

    def __len__(self):
        return len(self.idempotents)


def diagonal_split(ring, sizes):
    """Split a matrix ring by consecutive diagonal blocks of the given sizes."""
    if sum(sizes) != ring.n or any(s < 1 for s in sizes):
        raise PreconditionError(
            f"block sizes {sizes} do not tile a {ring.n}x{ring.n} matrix")
    idems = []
    start = 0
    for s in sizes:
        zero, one = ring.base._zero, ring.base._one
        idems.append(Element(ring, tuple(
            tuple(one if r == c and start <= r < start + s else zero
                  for c in range(ring.n))
            for r in range(ring.n))))
        start += s
    return IdempotentSplit(ring, idems)


def corner_combine(r, split, corner_sums):
    """Assemble a commutator sum for r from sums inside each corner.

    corner_sums[i] must evaluate to e_i*r*e_i with every term element
    fixed by the corner (e*t*e == t).  One fold per idempotent glues the
    first corner to the rest: the off-corner part of r costs the single
    extra term (f*r*e - e*r*f, e), and the two corner sums merge termwise
    after zero-padding to a common length.  The result has at most
    max(len(corner_sums)) + len(split) - 1 terms.
    """
    ring = r.ring
    if split.ring != ring:
        raise RingMismatchError("split and element must share a ring")
    if len(corner_sums) != len(split):
        raise PreconditionError(
            f"expected {len(split)} corner sums, got {len(corner_sums)}")
    for i, (e, s) in enumerate(zip(split.idempotents, corner_sums)):
        if s.ring != ring:
            raise RingMismatchError("corner sums must live in the full ring")
        for left, right in s:
            for t in (left, right):
                if e * t * e != t:
                    raise PreconditionError(
                        f"term element {t} of corner sum {i + 1} is not "
                        f"inside its corner")
        if s.evaluate() != e * r * e:
            raise PreconditionError(
                f"corner sum {i + 1} does not evaluate to its corner of r")

    def fold(idems, sums, rr):
        if len(idems) == 1:
            return sums[0]
        e = idems[0]
        f = idems[1]
        for extra in idems[2:]:
            f = f + extra
        inner = fold(idems[1:], sums[1:], f * rr * f)
        glue = (f * rr * e - e * rr * f, e)
        width = max(len(sums[0]), len(inner))
        zero = ring.zero
        first = list(sums[0]) + [(zero, zero)] * (width - len(sums[0]))
        second = list(inner) + [(zero, zero)] * (width - len(inner))
        merged = [(a + c, b + d) for (a, b), (c, d) in zip(first, second)]
        return CommutatorSum(ring, [glue] + merged)

    return fold(split.idempotents, list(corner_sums), r)


# ---------------------------------------------------------------------------
# bounded decomposition


def bounded_decomposition(A, trace_terms):
    """Express A as at most ceil(m/n^2) + 2 matrix commutators, given a
    base-ring commutator sum of length m for trace(A).

    The terms are chunked left to right into witness commutators, their
    sum is subtracted from A, and the trace-zero remainder goes through
    the two-commutator split.
    """
    ring = _need_matrix(A, "bounded_decomposition")
    base = ring.base
    if trace_terms.ring != base:
        raise RingMismatchError("the trace sum must live in the base ring")
    if trace_terms.evaluate() != trace(A):
        raise PreconditionError(
            f"trace sum evaluates to {trace_terms.evaluate()}, but "
            f"trace(A) = {trace(A)}")
    n = ring.n
    chunk = n * n
    pairs = []
    removed = ring.zero
    terms = trace_terms.terms
    for k in range(0, len(terms), chunk):
        W, V = trace_witness(CommutatorSum(base, terms[k:k + chunk]), n)
        pairs.append((W, V))
        removed = removed + commutator(W, V)
    pairs.extend(two_commutator_decomposition(A - removed))
    return CommutatorSum(ring, pairs)


# ---------------------------------------------------------------------------
# certificates


def _sum_evidence(evidence, s, prefix="term"):
    for i, (left, right) in enumerate(s):
        evidence[f"{prefix}-{i + 1}"] = grammar.pair_text(left, right)


def decomposition_certificate(A):
    ring = A.ring
    params = {"ring": ring.descriptor(), "matrix": str(A)}
    pairs = two_commutator_decomposition(A)
    s = CommutatorSum(ring, pairs)
    ok = s.evaluate() == A
    evidence = {}
    _sum_evidence(evidence, s, "pair")
    evidence["recomposition"] = certificates.PASS if ok else certificates.FAIL
    return Certificate("two-commutator-decomposition", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("two-commutator-decomposition")
def _replay_decomposition(params):
    ring = grammar.parse_ring(params["ring"])
    return decomposition_certificate(grammar.parse_element(params["matrix"], ring))


def trace_transfer_certificate(A, B):
    ring = A.ring
    params = {"ring": ring.descriptor(), "a": str(A), "b": str(B)}
    s = trace_commutator_terms(A, B)
    expected = trace(commutator(A, B))
    got = s.evaluate()
    ok = got == expected
    evidence = {
        "terms": grammar.commutator_sum_text(s),
        "sum-value": str(got),
        "trace-of-commutator": str(expected),
        "agreement": certificates.PASS if ok else certificates.FAIL,
    }
    return Certificate("trace-commutator-transfer", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("trace-commutator-transfer")
def _replay_trace_transfer(params):
    ring = grammar.parse_ring(params["ring"])
    return trace_transfer_certificate(grammar.parse_element(params["a"], ring),
                                      grammar.parse_element(params["b"], ring))


def trace_witness_certificate(s, n=None):
    params = {"ring": s.ring.descriptor(),
              "terms": grammar.commutator_sum_text(s)}
    if n is not None:
        params["n"] = str(n)
    A, B = trace_witness(s, n)
    got = trace(commutator(A, B))
    want = s.evaluate()
    ok = got == want
    evidence = {
        "witness-size": str(A.ring.n),
        "witness-a": str(A),
        "witness-b": str(B),
        "trace-of-commutator": str(got),
        "sum-value": str(want),
        "agreement": certificates.PASS if ok else certificates.FAIL,
    }
    return Certificate("trace-witness", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("trace-witness")
def _replay_trace_witness(params):
    ring = grammar.parse_ring(params["ring"])
    s = grammar.parse_commutator_sum(params["terms"], ring)
    n = int(params["n"]) if "n" in params else None
    return trace_witness_certificate(s, n)


def bounded_certificate(A, trace_terms):
    ring = A.ring
    params = {"ring": ring.descriptor(), "matrix": str(A),
              "terms": grammar.commutator_sum_text(trace_terms)}
    s = bounded_decomposition(A, trace_terms)
    m, n = len(trace_terms), ring.n
    bound = -(-m // (n * n)) + 2
    ok = s.evaluate() == A and len(s) <= bound
    evidence = {"length": str(len(s)), "length-bound": str(bound)}
    _sum_evidence(evidence, s, "pair")
    evidence["recomposition"] = certificates.PASS if s.evaluate() == A \
        else certificates.FAIL
    return Certificate("bounded-decomposition", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("bounded-decomposition")
def _replay_bounded(params):
    ring = grammar.parse_ring(params["ring"])
    A = grammar.parse_element(params["matrix"], ring)
    s = grammar.parse_commutator_sum(params["terms"], ring.base)
    return bounded_certificate(A, s)


def corner_certificate(r, sizes, corner_sums):
    ring = r.ring
    params = {"ring": ring.descriptor(), "matrix": str(r),
              "blocks": ", ".join(str(s) for s in sizes)}
    for i, s in enumerate(corner_sums):
        if len(s):
            params[f"corner-terms-{i + 1}"] = grammar.commutator_sum_text(s)
    split = diagonal_split(ring, sizes)
    s = corner_combine(r, split, corner_sums)
    bound = max((len(cs) for cs in corner_sums), default=0) + len(sizes) - 1
    ok = s.evaluate() == r and len(s) <= bound
    evidence = {"length": str(len(s)), "length-bound": str(bound)}
    _sum_evidence(evidence, s)
    evidence["recomposition"] = certificates.PASS if s.evaluate() == r \
        else certificates.FAIL
    return Certificate("corner-composition", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("corner-composition")
def _replay_corner(params):
    ring = grammar.parse_ring(params["ring"])
    r = grammar.parse_element(params["matrix"], ring)
    sizes = [int(p) for p in params["blocks"].split(",")]
    sums = [grammar.parse_commutator_sum(
                params.get(f"corner-terms-{i + 1}", ""), ring)
            for i in range(len(sizes))]
    return corner_certificate(r, sizes, sums)


def sum_iff_trace_certificate(A, matrix_terms=None, trace_terms=None):
    """Certify either direction of: A is a commutator sum iff trace(A) is.

    With matrix_terms (a matrix-ring sum for A), derives a base-ring sum
    for trace(A) by transferring each term.  With trace_terms (a base-ring
    sum for trace(A)), builds a bounded matrix decomposition of A.
    """
    ring = _need_matrix(A, "sum_iff_trace_certificate")
    if matrix_terms is None and trace_terms is None:
        raise PreconditionError(
            "supply a matrix-ring sum or a base-ring trace sum")
    params = {"ring": ring.descriptor(), "matrix": str(A)}
    evidence = {}
    if matrix_terms is not None:
        params["direction"] = "matrix-sum-to-trace-sum"
        params["terms"] = grammar.commutator_sum_text(matrix_terms)
        if matrix_terms.evaluate() != A:
            raise PreconditionError("the matrix sum does not evaluate to A")
        base_terms = []
        for P, Q in matrix_terms:
            base_terms.extend(trace_commutator_terms(P, Q).terms)
        s = CommutatorSum(ring.base, base_terms)
        ok = s.evaluate() == trace(A)
        evidence["trace-sum"] = grammar.commutator_sum_text(s)
        evidence["trace-sum-length"] = str(len(s))
        evidence["sum-value"] = str(s.evaluate())
        evidence["trace"] = str(trace(A))
    else:
        params["direction"] = "trace-sum-to-matrix-sum"
        params["terms"] = grammar.commutator_sum_text(trace_terms)
        s = bounded_decomposition(A, trace_terms)
        ok = s.evaluate() == A
        evidence["matrix-sum"] = grammar.commutator_sum_text(s)
        evidence["matrix-sum-length"] = str(len(s))
        n = ring.n
        evidence["length-bound"] = str(-(-len(trace_terms) // (n * n)) + 2)
    evidence["recomposition"] = certificates.PASS if ok else certificates.FAIL
    return Certificate("matrix-sum-iff-trace", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("matrix-sum-iff-trace")
def _replay_sum_iff_trace(params):
    ring = grammar.parse_ring(params["ring"])
    A = grammar.parse_element(params["matrix"], ring)
    if params["direction"] == "matrix-sum-to-trace-sum":
        s = grammar.parse_commutator_sum(params["terms"], ring)
        return sum_iff_trace_certificate(A, matrix_terms=s)
    s = grammar.parse_commutator_sum(params["terms"], ring.base)
    return sum_iff_trace_certificate(A, trace_terms=s)
