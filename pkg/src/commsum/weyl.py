"""Witness constructions in Weyl algebras and the characteristic-p obstruction.

Three constructions live here.  With unboundedly many generator pairs,
any element s is the single commutator [x_n, y_n*s] for a fresh index n.
Over a base with exact division, bracketing with x acts as the formal
y-derivative, so any element has a termwise y-antiderivative g with
[x, g] = f.  And over a base of characteristic p, sending x and y to a
pair of p-by-p shift-like matrices is a ring homomorphism whose trace
exposes elements that cannot be sums of commutators at all.
"""

from . import certificates, grammar, matrices
from .certificates import Certificate, register_replayer
import math

from .rings import (Element, NotDivisibleError, PreconditionError,
                    _is_prime, _sorted_terms, commutator, matrix_ring,
                    prime_field, weyl_algebra)


def _need_weyl(e, op):
    ring = e.ring
    if ring.kind != "weyl":
        raise PreconditionError(f"{op} needs a weyl-algebra element, got "
                                f"{ring.descriptor()}")
    return ring


def fresh_variable_witness(s):
    """The smallest fresh index n and t = y_n*s with [x_n, t] == s.

    Fresh means y_n does not occur in s; x_n then commutes with s, so
    [x_n, y_n*s] = [x_n, y_n]*s = s.  Needs an unbounded index set.
    """
    ring = _need_weyl(s, "fresh_variable_witness")
    if ring.index_bound is not None:
        raise PreconditionError(
            "fresh-variable witnesses need an unbounded index set; "
            f"{ring.descriptor()} is bounded")
    used = set(ring.y_indices_used(s.value))
    n = 0
    while n in used:
        n += 1
    return n, ring.y(n) * s


def x_antiderivative(f):
    """g with [x, g] == f, by integrating each monomial in y.

    A term c*x^a*y^b integrates to (c/(b+1))*x^a*y^(b+1); each division
    must be exact in the base ring and the offending divisor is reported
    when it is not.  Only index-0 generators may occur.
    """
    ring = _need_weyl(f, "x_antiderivative")
    if any(i != 0 for i in ring.indices_used(f.value)):
        raise PreconditionError(
            "the antiderivative construction works in the single-pair "
            "algebra; the input uses higher generator indices")
    base = ring.base
    acc = {}
    for mono, c in f.value:
        a, b = (mono[0][1], mono[0][2]) if mono else (0, 0)
        try:
            coeff = base._div_int(c, b + 1)
        except NotDivisibleError:
            raise PreconditionError(
                f"coefficient {base._format(c)} of a y-degree-{b} term is "
                f"not exactly divisible by {b + 1} in {base.descriptor()}"
            ) from None
        acc[((0, a, b + 1),)] = coeff
    return Element(ring, _sorted_terms(acc, base))


def scaled_antiderivative(f):
    """(scale, g) with [x, g] == scale*f, avoiding division entirely.

    scale is the least common multiple of the needed divisors b+1, so
    each scaled coefficient divides exactly over any base ring.
    """
    ring = _need_weyl(f, "scaled_antiderivative")
    if any(i != 0 for i in ring.indices_used(f.value)):
        raise PreconditionError(
            "the antiderivative construction works in the single-pair "
            "algebra; the input uses higher generator indices")
    scale = 1
    for mono, _ in f.value:
        b = mono[0][2] if mono else 0
        scale = math.lcm(scale, b + 1)
    base = ring.base
    acc = {}
    for mono, c in f.value:
        a, b = (mono[0][1], mono[0][2]) if mono else (0, 0)
        coeff = base._mul(c, base._from_int(scale // (b + 1)))
        if coeff != base._zero:
            acc[((0, a, b + 1),)] = coeff
    return scale, Element(ring, _sorted_terms(acc, base))


# ---------------------------------------------------------------------------
# characteristic p


def _check_char_p(base, p):
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if base._from_int(p) != base._zero:
        raise PreconditionError(
            f"{base.descriptor()} does not have characteristic {p}")


def char_p_generator_images(base, p):
    """The p-by-p matrices (X, Y) with [X, Y] = I over a characteristic-p base.

    X has ones on the superdiagonal; Y carries the weight i at position
    (i+1, i) in 1-based terms, so their commutator telescopes to the
    identity once p vanishes.
    """
    _check_char_p(base, p)
    ring = matrix_ring(base, p)
    X = ring.zero
    Y = ring.zero
    for i in range(1, p):
        X = X + ring.unit(i - 1, i)
        Y = Y + ring.unit(i, i - 1, base.from_int(i))
    return X, Y


def char_p_image(u, p):
    """Apply the homomorphism x -> X, y -> Y to a normal-ordered element.

    Each monomial c*x^a*y^b maps to c*X^a*Y^b; only index-0 generators
    may occur, and the base must have characteristic p.
    """
    ring = _need_weyl(u, "char_p_image")
    base = ring.base
    if any(i != 0 for i in ring.indices_used(u.value)):
        raise PreconditionError(
            "the matrix representation is defined on the single-pair algebra")
    X, Y = char_p_generator_images(base, p)
    target = X.ring
    powers_x = {0: target.one}
    powers_y = {0: target.one}

    def power(cache, gen, k):
        while k not in cache:
            top = max(cache)
            cache[top + 1] = cache[top] * gen
        return cache[k]

    image = target.zero
    for mono, c in u.value:
        a, b = (mono[0][1], mono[0][2]) if mono else (0, 0)
        image = image + target.scalar(Element(base, c)) \
            * power(powers_x, X, a) * power(powers_y, Y, b)
    return image


def char_p_homomorphism_certificate(p, base=None, element_text=None):
    """Certify [X, Y] = I and trace((XY)^(p-1)) = p-1 over the given base."""
    base = base if base is not None else prime_field(p)
    params = {"p": str(p), "base": base.descriptor()}
    if element_text is not None:
        params["element"] = element_text
    X, Y = char_p_generator_images(base, p)
    comm_ok = commutator(X, Y) == X.ring.one
    power = (X * Y) ** (p - 1)
    tr = matrices.trace(power)
    trace_ok = tr == base.from_int(p - 1)
    evidence = {
        "x-image": str(X),
        "y-image": str(Y),
        "commutator-is-identity": certificates.PASS if comm_ok
            else certificates.FAIL,
        "trace-of-xy-power": str(tr),
        "expected-trace": base._format(base._from_int(p - 1)),
    }
    if element_text is not None:
        ring = weyl_algebra(base, 1)
        u = grammar.parse_element(element_text, ring)
        evidence["element-image"] = str(char_p_image(u, p))
    ok = comm_ok and trace_ok
    return Certificate("char-p-homomorphism", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("char-p-homomorphism")
def _replay_char_p_hom(params):
    base = grammar.parse_ring(params["base"])
    return char_p_homomorphism_certificate(int(params["p"]), base,
                                           params.get("element"))


def char_p_obstruction_certificate(base, r, p):
    """Certify that -r*(xy)^(p-1) is not a sum of commutators.

    Over a commutative base the only base element that is a sum of base
    commutators is 0, while the matrix image of -r*(xy)^(p-1) has trace
    r.  A matrix that is a sum of matrix commutators has trace equal to
    a sum of base commutators, so nonzero r rules every such sum out,
    and the homomorphism carries the conclusion back to the algebra.
    """
    if not base.commutative:
        raise PreconditionError(
            f"the obstruction argument needs a commutative base, got "
            f"{base.descriptor()}")
    _check_char_p(base, p)
    if r.ring != base:
        raise PreconditionError("r must be an element of the base ring")
    if r.is_zero:
        raise PreconditionError("r = 0 carries no obstruction")
    params = {"p": str(p), "base": base.descriptor(), "r": str(r)}
    ring = weyl_algebra(base, 1)
    u = -Element(ring, ring.embed_base(r.value)) * (ring.x() * ring.y()) ** (p - 1)
    X, Y = char_p_generator_images(base, p)
    comm_ok = commutator(X, Y) == X.ring.one
    image = char_p_image(u, p)
    tr = matrices.trace(image)
    trace_ok = tr == r
    evidence = {
        "element": str(u),
        "commutator-is-identity": certificates.PASS if comm_ok
            else certificates.FAIL,
        "matrix-image": str(image),
        "image-trace": str(tr),
        "trace-equals-r": certificates.PASS if trace_ok
            else certificates.FAIL,
        "base-commutators-vanish": "yes (commutative base)",
        "conclusion": "no commutator sum in the single-pair algebra "
                      "evaluates to the element",
    }
    ok = comm_ok and trace_ok
    return Certificate("char-p-obstruction", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("char-p-obstruction")
def _replay_char_p_obstruction(params):
    base = grammar.parse_ring(params["base"])
    r = grammar.parse_element(params["r"], base)
    return char_p_obstruction_certificate(base, r, int(params["p"]))


# ---------------------------------------------------------------------------
# certificates for the witness constructions


def normal_form_certificate(ring, text):
    params = {"ring": ring.descriptor(), "element": text}
    e = grammar.parse_element(text, ring)
    canonical = str(e)
    round_trip = grammar.parse_element(canonical, ring) == e
    evidence = {
        "normal-form": canonical,
        "round-trip": certificates.PASS if round_trip else certificates.FAIL,
    }
    return Certificate("weyl-normal-form", params, evidence,
                       certificates.PASS if round_trip else certificates.FAIL)


@register_replayer("weyl-normal-form")
def _replay_normal_form(params):
    return normal_form_certificate(grammar.parse_ring(params["ring"]),
                                   params["element"])


def fresh_witness_certificate(s):
    ring = s.ring
    params = {"ring": ring.descriptor(), "element": str(s)}
    n, t = fresh_variable_witness(s)
    ok = commutator(ring.x(n), t) == s
    evidence = {
        "fresh-index": str(n),
        "witness": str(t),
        "identity": f"[x{n}, {t}] == {s}",
        "recomposition": certificates.PASS if ok else certificates.FAIL,
    }
    return Certificate("fresh-variable-witness", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("fresh-variable-witness")
def _replay_fresh_witness(params):
    ring = grammar.parse_ring(params["ring"])
    return fresh_witness_certificate(grammar.parse_element(params["element"], ring))


def antiderivative_certificate(f, mode="exact"):
    ring = f.ring
    params = {"ring": ring.descriptor(), "element": str(f), "mode": mode}
    if mode == "scaled":
        scale, g = scaled_antiderivative(f)
        ok = commutator(ring.x(), g) == scale * f
        evidence = {"scale": str(scale), "antiderivative": str(g),
                    "identity": f"[x0, g] == {scale}*f"}
    else:
        g = x_antiderivative(f)
        ok = commutator(ring.x(), g) == f
        evidence = {"antiderivative": str(g), "identity": "[x0, g] == f"}
    evidence["recomposition"] = certificates.PASS if ok else certificates.FAIL
    return Certificate("x-antiderivative", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("x-antiderivative")
def _replay_antiderivative(params):
    ring = grammar.parse_ring(params["ring"])
    f = grammar.parse_element(params["element"], ring)
    return antiderivative_certificate(f, params.get("mode", "exact"))
