import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest  # noqa: E402

from commsum import rings  # noqa: E402


def ring_menu():
    """One representative of every ring kind, plus a few nestings."""
    Z = rings.integers()
    return [
        Z,
        rings.rationals(),
        rings.modular(6),
        rings.prime_field(7),
        rings.polynomial(Z, ("t",)),
        rings.polynomial(rings.modular(4), ("t", "u")),
        rings.polynomial(Z, ("a", "b"), commutative=False),
        rings.square_zero_quotient(rings.prime_field(2), ("x11", "x12", "x21")),
        rings.square_zero_quotient(rings.rationals(), ("u", "v", "w")),
        rings.matrix_ring(Z, 2),
        rings.matrix_ring(rings.modular(4), 2),
        rings.matrix_ring(rings.matrix_ring(rings.prime_field(2), 2), 2),
        rings.matrix_ring(rings.weyl_algebra(Z, 1), 2),
        rings.weyl_algebra(Z, 1),
        rings.weyl_algebra(rings.prime_field(5)),
        rings.weyl_algebra(rings.rationals(), 2),
    ]


@pytest.fixture
def rng():
    return random.Random(0)


def random_trace_zero(ring, rng, **opts):
    """A random matrix with its last diagonal entry fixed to kill the trace."""
    base = ring.base
    A = ring.random_element(rng, **opts)
    rows = [list(r) for r in A.value]
    acc = base._zero
    for i in range(ring.n - 1):
        acc = base._add(acc, rows[i][i])
    rows[ring.n - 1][ring.n - 1] = base._neg(acc)
    return rings.Element(ring, tuple(tuple(r) for r in rows))
