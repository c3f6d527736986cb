"""Finite-field certificates that some trace-zero matrices are not commutators.

The engine is small exact linear algebra over GF(p): 2x2 matrices are
flat 4-vectors, row reduction uses the first nonzero pivot so replays
are stable, and enumeration orders are fixed.  The headline certificate
takes the 2x2 matrix of nilpotent generators over the square-zero
quotient ring and shows no single commutator equals it: every commuting
degree-0 pair confines the generator coefficients of a commutator to a
subspace of dimension at most 2, while the three coefficient targets
span dimension 3.  An independent oracle re-proves the p = 2 instance by
solving all 65536 linear systems [A, B] = target directly.
"""

from dataclasses import dataclass

from . import certificates, grammar
from .certificates import Certificate, register_replayer
from .rings import (Element, MatrixRing, PreconditionError, PrimeFieldRing,
                    matrix_ring, prime_field, square_zero_quotient)

ENUMERATION_BUDGET = 10 ** 7

_UNITS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


class BudgetError(PreconditionError):
    """An exhaustive run would exceed the evaluation budget."""


def _m2mul(a, b, p):
    a11, a12, a21, a22 = a
    b11, b12, b21, b22 = b
    return ((a11 * b11 + a12 * b21) % p, (a11 * b12 + a12 * b22) % p,
            (a21 * b11 + a22 * b21) % p, (a21 * b12 + a22 * b22) % p)


def _m2comm(a, b, p):
    u = _m2mul(a, b, p)
    v = _m2mul(b, a, p)
    return tuple((x - y) % p for x, y in zip(u, v))


def _rref(rows, p):
    """Reduced row echelon form over GF(p); first-nonzero pivot choice."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


def _nullspace(columns, p):
    """Basis of {v : sum v_j * columns[j] = 0}, echelon-ordered."""
    ncols = len(columns)
    rows = [[col[i] for col in columns] for i in range(len(columns[0]))]
    rref, pivots = _rref(rows, p)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * ncols
        v[j] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rref[r][j]) % p
        basis.append(tuple(v))
    return basis


def _span_rows(a0, b0, p):
    rows = [_m2comm(a0, e, p) for e in _UNITS]
    rows += [_m2comm(b0, e, p) for e in _UNITS]
    return rows


def _span_data(a0, b0, p):
    basis, _ = _rref(_span_rows(a0, b0, p), p)
    return len(basis), basis


def _commuting_partners(a0, p):
    """All b0 with [a0, b0] = 0, in lexicographic combination order."""
    columns = [_m2comm(a0, e, p) for e in _UNITS]
    basis = _nullspace(columns, p)
    partners = []
    coeffs = [0] * len(basis)
    total = p ** len(basis)
    for k in range(total):
        v = [0, 0, 0, 0]
        kk = k
        for b in reversed(basis):
            t = kk % p
            kk //= p
            if t:
                v = [(x + t * y) % p for x, y in zip(v, b)]
        partners.append(tuple(v))
    return partners


def _int_to_mat(k, p):
    entries = []
    for _ in range(4):
        entries.append(k % p)
        k //= p
    return tuple(entries)


@dataclass
class SpanReport:
    """Dimension data for the set {[A0, C] + [B0, D]} inside 2x2 matrices."""

    pair: tuple
    dimension: int
    basis: list
    commutes: bool


def span_dimension(A0, B0):
    """Exact dimension of {[A0, C] + [B0, D] : C, D 2x2} over a prime field."""
    ring = A0.ring
    if (not isinstance(ring, MatrixRing) or ring.n != 2
            or not isinstance(ring.base, PrimeFieldRing)):
        raise PreconditionError(
            "span_dimension works on 2x2 matrices over a prime field")
    if B0.ring != ring:
        raise PreconditionError("both matrices must share one ring")
    p = ring.base.p
    a0 = tuple(x for row in A0.value for x in row)
    b0 = tuple(x for row in B0.value for x in row)
    dim, basis = _span_data(a0, b0, p)
    mats = [ring.from_rows([[v[0], v[1]], [v[2], v[3]]]) for v in basis]
    return SpanReport(pair=(A0, B0), dimension=dim, basis=mats,
                      commutes=_m2comm(a0, b0, p) == (0, 0, 0, 0))


def _sweep_commuting_pairs(p, budget=ENUMERATION_BUDGET):
    """Span dimensions over every commuting pair; returns (count, histogram)."""
    histogram = {}
    count = 0
    evaluations = 0
    for k in range(p ** 4):
        a0 = _int_to_mat(k, p)
        for b0 in _commuting_partners(a0, p):
            evaluations += 1
            if evaluations > budget:
                raise BudgetError(
                    f"enumeration exceeded the {budget} evaluation budget")
            dim, _ = _span_data(a0, b0, p)
            histogram[dim] = histogram.get(dim, 0) + 1
            count += 1
    return count, histogram


def _histogram_text(histogram):
    return "; ".join(f"{d}:{histogram[d]}" for d in sorted(histogram))


def span_lemma_certificate(p, mode="exhaustive", samples=200, seed=0):
    """Certify that commuting 2x2 pairs over GF(p) span dimension <= 2.

    Exhaustive mode sweeps every commuting pair and is restricted to
    p in {2, 3}; beyond that the evaluation budget bites and sampling
    mode (seeded) is offered instead.
    """
    if mode == "exhaustive":
        if p > 3:
            raise BudgetError(
                f"exhaustive enumeration over gf {p} exceeds the evaluation "
                "budget; rerun in sampling mode")
        params = {"p": str(p), "mode": "exhaustive"}
        count, histogram = _sweep_commuting_pairs(p)
        max_dim = max(histogram)
        ok = max_dim <= 2
        evidence = {
            "matrix-pairs": str(p ** 8),
            "naive-quadruple-space": str(p ** 16),
            "commuting-pairs": str(count),
            "dimension-histogram": _histogram_text(histogram),
            "max-dimension": str(max_dim),
        }
        return Certificate("span-lemma-exhaustive", params, evidence,
                           certificates.PASS if ok else certificates.FAIL)
    if mode != "sample":
        raise PreconditionError(f"unknown mode {mode!r}")
    import random
    rng = random.Random(seed)
    params = {"p": str(p), "mode": "sample", "samples": str(samples),
              "seed": str(seed)}
    histogram = {}
    for _ in range(samples):
        a0 = tuple(rng.randrange(p) for _ in range(4))
        partners = _commuting_partners(a0, p)
        b0 = partners[rng.randrange(len(partners))]
        dim, _ = _span_data(a0, b0, p)
        histogram[dim] = histogram.get(dim, 0) + 1
    max_dim = max(histogram)
    ok = max_dim <= 2
    evidence = {
        "dimension-histogram": _histogram_text(histogram),
        "max-dimension": str(max_dim),
    }
    return Certificate("span-lemma-sampled", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("span-lemma-exhaustive")
def _replay_span_lemma(params):
    return span_lemma_certificate(int(params["p"]), "exhaustive")


@register_replayer("span-lemma-sampled")
def _replay_span_lemma_sampled(params):
    return span_lemma_certificate(int(params["p"]), "sample",
                                  int(params["samples"]), int(params["seed"]))


# ---------------------------------------------------------------------------
# the square-zero counterexample


def standard_counterexample_ring(p):
    return square_zero_quotient(prime_field(p), ("x11", "x12", "x21"))


def counterexample_matrix(R, x, y, z):
    """The trace-zero matrix [[x, y], [z, -x]] of independent nilpotents.

    x, y, z must lie in the generator ideal (zero constant part) and have
    linearly independent coordinate images; a dependency is reported with
    its coefficients.
    """
    if R.kind != "square-zero-quotient":
        raise PreconditionError(
            f"counterexample matrices live over square-zero quotients, got "
            f"{R.descriptor()}")
    for name, e in (("x", x), ("y", y), ("z", z)):
        if e.ring != R:
            raise PreconditionError(f"{name} must be an element of {R.descriptor()}")
        if R.constant_part(e.value) != R.field._zero:
            raise PreconditionError(
                f"{name} = {e} has a nonzero constant part, so it is not in "
                "the generator ideal")
    field = R.field
    if isinstance(field, PrimeFieldRing):
        p = field.p
        coords = [[int(c) for c in R.generator_coords(e.value)]
                  for e in (x, y, z)]
        rref, pivots = _rref(coords, p)
        if len(rref) < 3:
            combo = _nullspace([tuple(c) for c in coords], p)[0]
            relation = " + ".join(f"{combo[i]}*{n}"
                                  for i, n in enumerate(("x", "y", "z")) if combo[i])
            raise PreconditionError(
                f"the images of x, y, z are dependent: {relation} = 0 in the "
                "generator quotient")
    else:
        # rationals: exact rank via Fraction elimination
        rows = [[c for c in R.generator_coords(e.value)] for e in (x, y, z)]
        rank = 0
        for c in range(len(R.names)):
            piv = next((i for i in range(rank, 3) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = rows[rank][c]
            rows[rank] = [v / inv for v in rows[rank]]
            for i in range(3):
                if i != rank and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [v - f * w for v, w in zip(rows[i], rows[rank])]
            rank += 1
        if rank < 3:
            raise PreconditionError("the images of x, y, z are dependent")
    ring = matrix_ring(R, 2)
    return ring.from_rows([[x, y], [z, -x]])


def _phi_generator_images(R, x, y, z):
    """Generator images of the reduction onto the standard 3-generator ring.

    Solves M*N = I for the 3xk coordinate matrix M of (x, y, z), so the
    j-th generator of R maps to the combination N[j] of the standard
    generators; any right inverse works and the pivot-column one is
    deterministic.
    """
    p = R.field.p
    coords = [[int(c) for c in R.generator_coords(e.value)]
              for e in (x, y, z)]
    k = len(R.names)
    # invert the pivot 3x3 block of M
    _, pivots = _rref(coords, p)
    block = [[coords[i][j] for j in pivots] for i in range(3)]
    aug = [block[i] + [1 if i == j else 0 for j in range(3)] for i in range(3)]
    reduced, _ = _rref(aug, p)
    inv = [row[3:] for row in reduced]
    images = {}
    standard = ("x11", "x12", "x21")
    for j, name in enumerate(R.names):
        if j in pivots:
            r = pivots.index(j)
            combo = [inv[r][t] for t in range(3)]
        else:
            combo = [0, 0, 0]
        text = " + ".join(f"{c}*{standard[t]}" if c != 1 else standard[t]
                          for t, c in enumerate(combo) if c)
        images[name] = text if text else "0"
    return images


def _cross_check_p2():
    """Solve [A, B] = target for every A over the 16-element quotient ring.

    Unknowns are the 16 GF(2) coordinates of B; rows pack the 16 equation
    coefficients plus the right-hand side into single integers, and A
    walks a Gray code so each step updates one basis contribution.
    Returns (systems checked, solvable count).
    """
    p = 2
    R = standard_counterexample_ring(p)
    ring = matrix_ring(R, 2)
    basis_elements = []
    for pos in range(4):
        i, j = divmod(pos, 2)
        for t in range(4):
            vec = [0, 0, 0, 0]
            vec[t] = 1
            value = Element(R, tuple(R.field._coerce(v) for v in vec))
            basis_elements.append(ring.unit(i, j, value))

    def coords(mat):
        out = []
        for row in mat.value:
            for entry in row:
                out.extend(int(v) for v in entry)
        return out

    # contribution of each A-basis element: 16 rows of unknown-coefficient bits
    contribution = []
    for a in basis_elements:
        rows = [0] * 16
        for u, b in enumerate(basis_elements):
            vec = coords(a * b - b * a)
            for r in range(16):
                if vec[r]:
                    rows[r] |= 1 << u
        contribution.append(rows)

    xhat = counterexample_matrix(R, R.gen("x11"), R.gen("x12"), R.gen("x21"))
    rhs = coords(xhat)
    base_rows = [rhs[r] << 16 for r in range(16)]

    rows = list(base_rows)
    solvable = 0
    checked = 0
    gray = 0
    for k in range(2 ** 16):
        if k:
            bit = (k & -k).bit_length() - 1
            gray ^= 1 << bit
            src = contribution[bit]
            for r in range(16):
                rows[r] ^= src[r]
        work = list(rows)
        rank = 0
        for c in range(16):
            mask = 1 << c
            piv = next((i for i in range(rank, 16) if work[i] & mask), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            prow = work[rank]
            for i in range(16):
                if i != rank and work[i] & mask:
                    work[i] ^= prow
            rank += 1
        checked += 1
        if all(row != 1 << 16 for row in work[rank:]):
            solvable += 1
    return checked, solvable


def not_commutator_certificate(p, cross_check=False):
    """Certify that the nilpotent-generator matrix is no single commutator.

    Sweeps every commuting degree-0 pair and verifies its span stays at
    dimension <= 2, while the three generator-coefficient targets of the
    matrix span dimension 3; a commutator equal to the matrix would force
    those targets into the small span.  The optional p = 2 cross-check
    solves every linear system [A, B] = matrix outright.
    """
    R = standard_counterexample_ring(p)
    ring = matrix_ring(R, 2)
    xhat = counterexample_matrix(R, R.gen("x11"), R.gen("x12"), R.gen("x21"))
    from .matrices import trace
    params = {"p": str(p), "ring": R.descriptor(),
              "cross-check": "yes" if cross_check else "no"}
    trace_ok = trace(xhat).is_zero
    count, histogram = _sweep_commuting_pairs(p)
    max_dim = max(histogram)
    # sign flip D -> -D identifies the two orientations of the second slot
    targets = ((1, 0, 0, p - 1), (0, 1, 0, 0), (0, 0, 1, 0))
    target_rank = len(_rref(list(targets), p)[0])
    ok = trace_ok and max_dim <= 2 and target_rank == 3
    evidence = {
        "matrix": str(xhat),
        "trace": str(trace(xhat)),
        "commuting-pairs": str(count),
        "dimension-histogram": _histogram_text(histogram),
        "max-span-dimension": str(max_dim),
        "coefficient-targets": "[[1, 0], [0, -1]]; [[0, 1], [0, 0]]; "
                               "[[0, 0], [1, 0]]",
        "target-span-dimension": str(target_rank),
        "conclusion": "the targets cannot fit inside any commuting pair's "
                      "span, so no single commutator equals the matrix",
    }
    if cross_check:
        if p != 2:
            raise BudgetError(
                "the exhaustive linear-solve cross-check is only within "
                "budget at p = 2")
        checked, solvable = _cross_check_p2()
        evidence["cross-check-systems"] = str(checked)
        evidence["cross-check-solvable"] = str(solvable)
        ok = ok and solvable == 0
    return Certificate("not-commutator", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("not-commutator")
def _replay_not_commutator(params):
    return not_commutator_certificate(int(params["p"]),
                                      params.get("cross-check") == "yes")


def custom_counterexample_certificate(R, x, y, z):
    """Counterexample certificate for user-chosen independent nilpotents.

    Builds [[x, y], [z, -x]], checks trace and independence, exhibits the
    reduction onto the standard three-generator instance, and runs that
    instance's sweep.
    """
    p = R.field.p if isinstance(R.field, PrimeFieldRing) else None
    if p is None:
        raise PreconditionError(
            "custom counterexample certificates need a prime-field base")
    mat = counterexample_matrix(R, x, y, z)
    from .matrices import trace
    params = {"p": str(p), "ring": R.descriptor(),
              "x": str(x), "y": str(y), "z": str(z)}
    instance = not_commutator_certificate(p)
    evidence = {
        "matrix": str(mat),
        "trace": str(trace(mat)),
        "independence": "pass",
    }
    for name, text in _phi_generator_images(R, x, y, z).items():
        evidence[f"phi-{name}"] = text
    evidence["instance-max-span-dimension"] = \
        instance.evidence["max-span-dimension"]
    evidence["instance-target-span-dimension"] = \
        instance.evidence["target-span-dimension"]
    evidence["conclusion"] = ("the reduction maps the matrix onto the "
                              "standard instance, which is no commutator")
    ok = trace(mat).is_zero and instance.passed
    return Certificate("not-commutator-custom", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("not-commutator-custom")
def _replay_custom_counterexample(params):
    R = grammar.parse_ring(params["ring"])
    return custom_counterexample_certificate(
        R, grammar.parse_element(params["x"], R),
        grammar.parse_element(params["y"], R),
        grammar.parse_element(params["z"], R))
