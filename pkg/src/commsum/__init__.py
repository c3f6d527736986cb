"""Exact commutator-sum decompositions, witnesses, and certificates.

The library decomposes trace-zero matrices over arbitrary exact rings
into sums of two commutators, transfers commutator sums through traces,
builds single-commutator witnesses in Weyl algebras, certifies the
characteristic-p and square-zero obstructions, and models the shift
construction on a countable coordinate tower.  Importing the package
registers every certificate claim for replay.
"""

from . import matrices, obstruction, shift, weyl
from .certificates import Certificate, parse_certificate, replay
from .grammar import ParseError, parse_element, parse_ring
from .rings import (CommutatorSum, Element, NotDivisibleError,
                    PreconditionError, Ring, RingError, RingMismatchError,
                    commutator, integers, lift_through_centralizing,
                    make_ring, matrix_ring, modular, polynomial, prime_field,
                    rationals, square_zero_quotient, weyl_algebra)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CommutatorSum", "Element", "NotDivisibleError",
    "ParseError", "PreconditionError", "Ring", "RingError",
    "RingMismatchError", "commutator", "integers",
    "lift_through_centralizing", "make_ring", "matrices", "matrix_ring",
    "modular", "obstruction", "parse_certificate", "parse_element",
    "parse_ring", "polynomial", "prime_field", "rationals", "replay",
    "shift", "square_zero_quotient", "weyl", "weyl_algebra",
]
