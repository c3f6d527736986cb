"""Exact arithmetic for a small menu of rings.

Every ring is described by a `Ring` instance (the descriptor) and every
value is an `Element` pairing a descriptor with a canonical raw value:

  integers             -> Python int
  rationals            -> fractions.Fraction
  mod m / gf p         -> int residue in [0, m)
  poly / freepoly      -> tuple of (monomial, coefficient), graded order
  sqz  F[g..]/(g..)^2  -> tuple (constant, coefficient per generator)
  matrix               -> tuple of row tuples of base raw values
  weyl                 -> tuple of (monomial, coefficient), normal ordered

Raw values are immutable and always canonical (residues reduced, zero
coefficients pruned, Weyl monomials normal ordered), so `==` on elements
is semantic equality and certificates can replay them byte for byte.
Descriptors compare equal iff structurally identical; mixing elements of
unequal descriptors raises `RingMismatchError`.

All values are immutable after construction and all operations are pure,
so everything here is safe to use concurrently.
"""

from fractions import Fraction


class RingError(Exception):
    """Base class for all ring-arithmetic failures."""


class RingMismatchError(RingError):
    """Operands belong to different rings."""


class NotDivisibleError(RingError):
    """An exact division was requested that the ring cannot perform."""


class PreconditionError(RingError):
    """An operation's input contract was violated."""


_RING_CACHE = {}


def _intern(ring):
    return _RING_CACHE.setdefault(ring._key(), ring)


class Ring:
    """A ring descriptor plus arithmetic on that ring's raw values."""

    kind = "abstract"
    commutative = False

    # --- raw-value arithmetic, implemented by each concrete ring ---

    _zero = None
    _one = None

    def _add(self, u, v):
        raise NotImplementedError

    def _neg(self, u):
        raise NotImplementedError

    def _mul(self, u, v):
        raise NotImplementedError

    def _sub(self, u, v):
        return self._add(u, self._neg(v))

    def _from_int(self, k):
        raise NotImplementedError

    def _div_int(self, u, k):
        """Exact division of u by a positive integer k, or NotDivisibleError."""
        raise NotImplementedError

    def _coerce(self, v):
        raise NotImplementedError

    def _format(self, u):
        raise NotImplementedError

    def _sign_split(self, u):
        # (is_negative, magnitude); only ordered rings ever report negatives
        return False, u

    def _key(self):
        raise NotImplementedError

    # --- descriptor surface ---

    def descriptor(self):
        """Canonical text of this descriptor (re-parsable by the grammar)."""
        raise NotImplementedError

    def characteristic(self):
        raise NotImplementedError

    def symbol(self, name):
        raise KeyError(name)

    def random_element(self, rng, **opts):
        raise NotImplementedError

    # --- element construction ---

    def element(self, v):
        return Element(self, self._coerce(v))

    @property
    def zero(self):
        return Element(self, self._zero)

    @property
    def one(self):
        return Element(self, self._one)

    def from_int(self, k):
        return Element(self, self._from_int(k))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<ring {self.descriptor()}>"


class Element:
    """A value of exactly one ring; the operand of all arithmetic here."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _coerced(self, other):
        if isinstance(other, Element):
            if other.ring is self.ring or other.ring == self.ring:
                return other.value
            raise RingMismatchError(
                f"operands live in different rings: {self.ring.descriptor()} "
                f"vs {other.ring.descriptor()}")
        if isinstance(other, int):
            return self.ring._from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._sub(v, self.value))

    def __mul__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._mul(self.value, v))

    def __rmul__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._mul(v, self.value))

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.value))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponents must be nonnegative integers")
        acc = self.ring._one
        for _ in range(k):
            acc = self.ring._mul(acc, self.value)
        return Element(self.ring, acc)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring._key(), self.value))

    def __bool__(self):
        return self.value != self.ring._zero

    @property
    def is_zero(self):
        return self.value == self.ring._zero

    def __str__(self):
        return self.ring._format(self.value)

    def __repr__(self):
        return f"<{self.ring.descriptor()}: {self}>"


def commutator(a, b):
    """The commutator a*b - b*a."""
    return a * b - b * a


class CommutatorSum:
    """An ordered list of (left, right) pairs standing for sum of [l, r].

    The number of terms witnesses how many commutators the represented
    element needs; the empty sum stands for 0.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=()):
        checked = []
        for left, right in terms:
            if left.ring != ring or right.ring != ring:
                raise RingMismatchError(
                    "all commutator-sum terms must share the sum's ring")
            checked.append((left, right))
        self.ring = ring
        self.terms = tuple(checked)

    def evaluate(self):
        acc = self.ring.zero
        for left, right in self.terms:
            acc = acc + (left * right - right * left)
        return acc

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return (isinstance(other, CommutatorSum)
                and self.ring == other.ring and self.terms == other.terms)

    def __repr__(self):
        return f"<commutator sum of {len(self.terms)} terms over {self.ring.descriptor()}>"


def lift_through_centralizing(r_sum, s):
    """Turn a sum for r into a sum for r*s when s commutes with each right factor.

    Each term (x, y) becomes (x, y*s); this is only sound when s commutes
    with that term's y, which is checked per term.
    """
    if s.ring != r_sum.ring:
        raise RingMismatchError("the multiplier must live in the sum's ring")
    lifted = []
    for i, (left, right) in enumerate(r_sum.terms):
        if not commutator(s, right).is_zero:
            raise PreconditionError(
                f"multiplier does not commute with the right factor of term "
                f"{i + 1}: ({left}, {right})")
        lifted.append((left, right * s))
    return CommutatorSum(r_sum.ring, lifted)


# ---------------------------------------------------------------------------
# scalar rings


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class IntegerRing(Ring):
    kind = "integers"
    commutative = True
    _zero = 0
    _one = 1

    def _add(self, u, v):
        return u + v

    def _neg(self, u):
        return -u

    def _mul(self, u, v):
        return u * v

    def _from_int(self, k):
        return k

    def _div_int(self, u, k):
        q, r = divmod(u, k)
        if r:
            raise NotDivisibleError(f"{u} is not divisible by {k} in integers")
        return q

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return v
        raise TypeError(f"cannot make an integer from {v!r}")

    def _format(self, u):
        return str(u)

    def _sign_split(self, u):
        return u < 0, abs(u)

    def _key(self):
        return ("integers",)

    def descriptor(self):
        return "integers"

    def characteristic(self):
        return 0

    def random_element(self, rng, bound=9, **_):
        return Element(self, rng.randint(-bound, bound))


class RationalRing(Ring):
    kind = "rationals"
    commutative = True
    _zero = Fraction(0)
    _one = Fraction(1)

    def _add(self, u, v):
        return u + v

    def _neg(self, u):
        return -u

    def _mul(self, u, v):
        return u * v

    def _from_int(self, k):
        return Fraction(k)

    def _div_int(self, u, k):
        return u / k

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise TypeError(f"cannot make a rational from {v!r}")

    def _format(self, u):
        return str(u)

    def _sign_split(self, u):
        return u < 0, -u if u < 0 else u

    def _key(self):
        return ("rationals",)

    def descriptor(self):
        return "rationals"

    def characteristic(self):
        return 0

    def random_element(self, rng, bound=9, **_):
        return Element(self, Fraction(rng.randint(-bound, bound),
                                      rng.randint(1, bound)))


class ModularRing(Ring):
    """Integers mod m, residues kept in [0, m)."""

    kind = "modular"
    commutative = True

    def __init__(self, m):
        if not isinstance(m, int) or m < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {m}")
        self.m = m
        self._zero = 0
        self._one = 1 % m

    def _add(self, u, v):
        w = u + v
        return w - self.m if w >= self.m else w

    def _neg(self, u):
        return (self.m - u) % self.m

    def _mul(self, u, v):
        return (u * v) % self.m

    def _from_int(self, k):
        return k % self.m

    def _div_int(self, u, k):
        k = k % self.m
        g, x = self._xgcd(k, self.m)
        if g != 1:
            raise NotDivisibleError(
                f"{k} is not invertible mod {self.m}, cannot divide exactly")
        return (u * x) % self.m

    @staticmethod
    def _xgcd(a, b):
        x0, x1 = 1, 0
        while b:
            q, r = divmod(a, b)
            a, b = b, r
            x0, x1 = x1, x0 - q * x1
        return a, x0

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return v % self.m
        raise TypeError(f"cannot make a residue mod {self.m} from {v!r}")

    def _format(self, u):
        return str(u)

    def _key(self):
        return ("modular", self.m)

    def descriptor(self):
        return f"mod {self.m}"

    def characteristic(self):
        return self.m

    def random_element(self, rng, **_):
        return Element(self, rng.randrange(self.m))


class PrimeFieldRing(ModularRing):
    kind = "prime-field"

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"prime field order must be prime, got {p}")
        super().__init__(p)

    @property
    def p(self):
        return self.m

    def _key(self):
        return ("prime-field", self.m)

    def descriptor(self):
        return f"gf {self.m}"


# ---------------------------------------------------------------------------
# polynomial-shaped rings (shared term plumbing)


def _sorted_terms(acc, base, words=False):
    """Canonicalize a {monomial: coeff} dict: prune zeros, graded order.

    Exponent-style monomials sort descending within a degree (t^2 before
    t*u); words sort alphabetically instead.
    """
    zero = base._zero
    terms = [(m, c) for m, c in acc.items() if c != zero]
    if words:
        terms.sort(key=lambda t: (-_degree(t[0]), t[0]))
    else:
        terms.sort(key=lambda t: (_degree(t[0]), t[0]), reverse=True)
    return tuple(terms)


def _degree(mono):
    # commutative monomials are exponent tuples, words are letter tuples,
    # weyl monomials are ((index, xexp, yexp), ...) tuples
    if mono and isinstance(mono[0], tuple):
        return sum(a + b for _, a, b in mono)
    if mono and isinstance(mono[0], str):
        return len(mono)
    return sum(mono)


def _format_terms(parts):
    """Join (negative, text) term parts with sign-aware separators."""
    if not parts:
        return "0"
    out = []
    for i, (neg, text) in enumerate(parts):
        if i == 0:
            out.append("-" + text if neg else text)
        else:
            out.append(" - " + text if neg else " + " + text)
    return "".join(out)


def _coeff_term(base, coeff, mono_text):
    """Render one term, pulling a leading sign out of the coefficient.

    A leading '-' may be stripped from a single-product coefficient text
    (negating one product negates the term); multi-term coefficients are
    parenthesized instead, which keeps the sign inside.
    """
    neg, mag = base._sign_split(coeff)
    text = base._format(mag)
    if text.startswith("-") and " " not in text:
        neg, text = not neg, text[1:]
    if " " in text:
        text = "(" + text + ")"
    if not mono_text:
        return neg, text
    if text == "1":
        return neg, mono_text
    return neg, f"{text}*{mono_text}"


class PolynomialRing(Ring):
    """Polynomials over a base ring; the variables centralize the base.

    With commutative=False the variables do not commute with each other
    and monomials are words in the variables.
    """

    def __init__(self, base, names, commutative=True):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.base = base
        self.names = names
        self.vars_commute = commutative
        self.kind = "polynomial" if commutative else "free-polynomial"
        self.commutative = commutative and base.commutative
        self._unit_mono = (0,) * len(names) if commutative else ()
        self._zero = ()
        self._one = ((self._unit_mono, base._one),)

    def _mono_mul(self, m1, m2):
        if self.vars_commute:
            return tuple(a + b for a, b in zip(m1, m2))
        return m1 + m2

    def _add(self, u, v):
        acc = dict(u)
        badd = self.base._add
        for m, c in v:
            prev = acc.get(m)
            acc[m] = c if prev is None else badd(prev, c)
        return _sorted_terms(acc, self.base, words=not self.vars_commute)

    def _neg(self, u):
        bneg = self.base._neg
        return tuple((m, bneg(c)) for m, c in u)

    def _mul(self, u, v):
        acc = {}
        badd, bmul = self.base._add, self.base._mul
        for m1, c1 in u:
            for m2, c2 in v:
                m = self._mono_mul(m1, m2)
                c = bmul(c1, c2)
                prev = acc.get(m)
                acc[m] = c if prev is None else badd(prev, c)
        return _sorted_terms(acc, self.base, words=not self.vars_commute)

    def _from_int(self, k):
        c = self.base._from_int(k)
        if c == self.base._zero:
            return ()
        return ((self._unit_mono, c),)

    def _div_int(self, u, k):
        bdiv = self.base._div_int
        return tuple((m, bdiv(c, k)) for m, c in u)

    def embed_base(self, raw):
        if raw == self.base._zero:
            return ()
        return ((self._unit_mono, raw),)

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return self._from_int(v)
        if isinstance(v, dict):
            acc = {}
            for m, c in v.items():
                acc[tuple(m)] = self.base._coerce(c)
            return _sorted_terms(acc, self.base, words=not self.vars_commute)
        raise TypeError(f"cannot coerce {v!r} into {self.descriptor()}")

    def var(self, name):
        i = self.names.index(name)
        if self.vars_commute:
            mono = tuple(1 if j == i else 0 for j in range(len(self.names)))
        else:
            mono = (i,)
        return Element(self, ((mono, self.base._one),))

    def symbol(self, name):
        if name in self.names:
            return self.var(name)
        return Element(self, self.embed_base(self.base.symbol(name).value))

    def _mono_text(self, mono):
        if self.vars_commute:
            pieces = []
            for name, e in zip(self.names, mono):
                if e == 1:
                    pieces.append(name)
                elif e > 1:
                    pieces.append(f"{name}^{e}")
            return "*".join(pieces)
        return "*".join(self.names[i] for i in mono)

    def _format(self, u):
        return _format_terms(
            [_coeff_term(self.base, c, self._mono_text(m)) for m, c in u])

    def _key(self):
        return ("poly" if self.vars_commute else "freepoly",
                self.base._key(), self.names)

    def descriptor(self):
        head = "poly" if self.vars_commute else "freepoly"
        return f"{head}({self.base.descriptor()}; {', '.join(self.names)})"

    def characteristic(self):
        return self.base.characteristic()

    def random_element(self, rng, max_terms=3, max_degree=2, **opts):
        acc = {}
        for _ in range(rng.randint(0, max_terms)):
            if self.vars_commute:
                mono = [0] * len(self.names)
                for _ in range(rng.randint(0, max_degree)):
                    mono[rng.randrange(len(self.names))] += 1
                mono = tuple(mono)
            else:
                mono = tuple(rng.randrange(len(self.names))
                             for _ in range(rng.randint(0, max_degree)))
            c = self.base.random_element(rng, **opts).value
            if c != self.base._zero:
                acc[mono] = c
        return Element(self, _sorted_terms(acc, self.base, words=not self.vars_commute))


class SquareZeroQuotientRing(Ring):
    """A field with nilpotent generators whose pairwise products vanish.

    Values are tuples (constant, coefficient per generator); the ideal
    spanned by the generators squares to zero, so multiplication never
    produces a quadratic generator term.
    """

    kind = "square-zero-quotient"
    commutative = True

    def __init__(self, field, names):
        if not isinstance(field, (PrimeFieldRing, RationalRing)):
            raise ValueError(
                "square-zero quotients take a prime field or the rationals "
                f"as base, got {field.descriptor()}")
        names = tuple(names)
        if not names:
            raise ValueError("a square-zero quotient needs generators")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.field = field
        self.names = names
        self._zero = (field._zero,) * (len(names) + 1)
        self._one = (field._one,) + (field._zero,) * len(names)

    def _add(self, u, v):
        fadd = self.field._add
        return tuple(fadd(a, b) for a, b in zip(u, v))

    def _neg(self, u):
        fneg = self.field._neg
        return tuple(fneg(a) for a in u)

    def _mul(self, u, v):
        fadd, fmul = self.field._add, self.field._mul
        c, d = u[0], v[0]
        head = (fmul(c, d),)
        return head + tuple(fadd(fmul(c, b), fmul(d, a))
                            for a, b in zip(u[1:], v[1:]))

    def _from_int(self, k):
        return (self.field._from_int(k),) + (self.field._zero,) * len(self.names)

    def _div_int(self, u, k):
        fdiv = self.field._div_int
        return tuple(fdiv(a, k) for a in u)

    def embed_base(self, raw):
        return (raw,) + (self.field._zero,) * len(self.names)

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return self._from_int(v)
        if isinstance(v, (tuple, list)) and len(v) == len(self.names) + 1:
            return tuple(a.value if isinstance(a, Element)
                         else self.field._coerce(a) for a in v)
        raise TypeError(f"cannot coerce {v!r} into {self.descriptor()}")

    def gen(self, name):
        i = self.names.index(name)
        vec = [self.field._zero] * (len(self.names) + 1)
        vec[i + 1] = self.field._one
        return Element(self, tuple(vec))

    def symbol(self, name):
        if name in self.names:
            return self.gen(name)
        return Element(self, self.embed_base(self.field.symbol(name).value))

    def constant_part(self, u):
        return u[0]

    def generator_coords(self, u):
        return u[1:]

    def _format(self, u):
        parts = []
        for name, c in zip(self.names, u[1:]):
            if c != self.field._zero:
                parts.append(_coeff_term(self.field, c, name))
        if u[0] != self.field._zero or not parts:
            parts.append(_coeff_term(self.field, u[0], ""))
        return _format_terms(parts)

    def _key(self):
        return ("sqz", self.field._key(), self.names)

    def descriptor(self):
        return f"sqz({self.field.descriptor()}; {', '.join(self.names)})"

    def characteristic(self):
        return self.field.characteristic()

    def random_element(self, rng, **opts):
        return Element(self, tuple(
            self.field.random_element(rng, **opts).value
            for _ in range(len(self.names) + 1)))


# ---------------------------------------------------------------------------
# matrices


class MatrixRing(Ring):
    """n-by-n matrices over any base ring, stored as tuples of row tuples."""

    kind = "matrix"

    def __init__(self, base, n):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"matrix size must be a positive integer, got {n}")
        self.base = base
        self.n = n
        self.commutative = n == 1 and base.commutative
        self._zero = tuple((base._zero,) * n for _ in range(n))
        self._one = tuple(
            tuple(base._one if i == j else base._zero for j in range(n))
            for i in range(n))

    def _add(self, u, v):
        badd = self.base._add
        return tuple(tuple(badd(a, b) for a, b in zip(ru, rv))
                     for ru, rv in zip(u, v))

    def _neg(self, u):
        bneg = self.base._neg
        return tuple(tuple(bneg(a) for a in row) for row in u)

    def _mul(self, u, v):
        n = self.n
        badd, bmul = self.base._add, self.base._mul
        zero = self.base._zero
        cols = tuple(zip(*v))
        out = []
        for row in u:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a == zero or b == zero:
                        continue
                    acc = badd(acc, bmul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return tuple(out)

    def _from_int(self, k):
        c = self.base._from_int(k)
        zero = self.base._zero
        return tuple(tuple(c if i == j else zero for j in range(self.n))
                     for i in range(self.n))

    def _div_int(self, u, k):
        bdiv = self.base._div_int
        return tuple(tuple(bdiv(a, k) for a in row) for row in u)

    def embed_base(self, raw):
        zero = self.base._zero
        return tuple(tuple(raw if i == j else zero for j in range(self.n))
                     for i in range(self.n))

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return self._from_int(v)
        if isinstance(v, (tuple, list)):
            return self.from_rows(v).value
        raise TypeError(f"cannot coerce {v!r} into {self.descriptor()}")

    def from_rows(self, rows):
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"expected {self.n}x{self.n} rows")
        out = []
        for row in rows:
            out_row = []
            for a in row:
                if isinstance(a, Element):
                    if a.ring != self.base:
                        raise RingMismatchError(
                            f"entry {a!r} does not live in {self.base.descriptor()}")
                    out_row.append(a.value)
                else:
                    out_row.append(self.base._coerce(a))
            out.append(tuple(out_row))
        return Element(self, tuple(out))

    def unit(self, i, j, value=1):
        """Matrix with one nonzero entry at 0-based position (i, j)."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError(f"unit position ({i}, {j}) out of range")
        v = value.value if isinstance(value, Element) else self.base._coerce(value)
        zero = self.base._zero
        return Element(self, tuple(
            tuple(v if (r, c) == (i, j) else zero for c in range(self.n))
            for r in range(self.n)))

    def scalar(self, value):
        v = value.value if isinstance(value, Element) else self.base._coerce(value)
        return Element(self, self.embed_base(v))

    def entry(self, mat, i, j):
        return Element(self.base, mat.value[i][j])

    def symbol(self, name):
        return self.scalar(self.base.symbol(name))

    def _format(self, u):
        rows = ("[" + ", ".join(self.base._format(a) for a in row) + "]"
                for row in u)
        return "[" + ", ".join(rows) + "]"

    def _key(self):
        return ("matrix", self.base._key(), self.n)

    def descriptor(self):
        return f"matrix({self.base.descriptor()}, {self.n})"

    def characteristic(self):
        return self.base.characteristic()

    def random_element(self, rng, **opts):
        return Element(self, tuple(
            tuple(self.base.random_element(rng, **opts).value
                  for _ in range(self.n))
            for _ in range(self.n)))


# ---------------------------------------------------------------------------
# Weyl algebras


_YX_CACHE = {}
_MONO_MUL_CACHE = {}


def _y_past_x(b, a):
    """Normal form of y^b x^a as ((xexp, yexp), integer coefficient) terms.

    Uses the rewrite y^b x = x y^b - b y^(b-1) once per x factor; the
    coefficients stay plain integers and are mapped into the base ring by
    the caller, so one table serves every base.
    """
    key = (b, a)
    hit = _YX_CACHE.get(key)
    if hit is not None:
        return hit
    state = {(0, b): 1}
    for _ in range(a):
        nxt = {}
        for (i, j), c in state.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) + c
            if j:
                nxt[(i, j - 1)] = nxt.get((i, j - 1), 0) - c * j
        state = nxt
    result = tuple(sorted((k, v) for k, v in state.items() if v))
    _YX_CACHE[key] = result
    return result


def _weyl_mono_mul(m1, m2):
    """Product of two normal-ordered monomials as ((monomial, int), ...)."""
    key = (m1, m2)
    hit = _MONO_MUL_CACHE.get(key)
    if hit is not None:
        return hit
    d1 = {i: (a, b) for i, a, b in m1}
    d2 = {i: (a, b) for i, a, b in m2}
    partial = [((), 1)]
    for idx in sorted(set(d1) | set(d2)):
        a1, b1 = d1.get(idx, (0, 0))
        a2, b2 = d2.get(idx, (0, 0))
        options = []
        for (i, j), c in _y_past_x(b1, a2):
            xe, ye = a1 + i, j + b2
            entry = ((idx, xe, ye),) if xe or ye else ()
            options.append((entry, c))
        partial = [(mono + entry, c0 * c)
                   for mono, c0 in partial for entry, c in options]
    result = tuple(partial)
    _MONO_MUL_CACHE[key] = result
    return result


class WeylAlgebraRing(Ring):
    """Pairs of generators x_i, y_i with [x_i, y_i] = 1 over a commutative base.

    Distinct indices commute; values are kept normal ordered (all x factors
    before y factors within each index, indices ascending).  index_bound
    of None allows every natural index, an integer n restricts to 0..n-1.
    """

    kind = "weyl"
    commutative = False

    def __init__(self, base, index_bound=None):
        if not base.commutative:
            raise ValueError(
                f"weyl algebras need a commutative base, got {base.descriptor()}")
        if index_bound is not None and (not isinstance(index_bound, int)
                                        or index_bound < 1):
            raise ValueError(f"index bound must be None or >= 1, got {index_bound}")
        self.base = base
        self.index_bound = index_bound
        self._zero = ()
        self._one = (((), base._one),)

    def _add(self, u, v):
        acc = dict(u)
        badd = self.base._add
        for m, c in v:
            prev = acc.get(m)
            acc[m] = c if prev is None else badd(prev, c)
        return _sorted_terms(acc, self.base)

    def _neg(self, u):
        bneg = self.base._neg
        return tuple((m, bneg(c)) for m, c in u)

    def _mul(self, u, v):
        acc = {}
        badd, bmul = self.base._add, self.base._mul
        bint = self.base._from_int
        for m1, c1 in u:
            for m2, c2 in v:
                c12 = bmul(c1, c2)
                for mono, cint in _weyl_mono_mul(m1, m2):
                    c = c12 if cint == 1 else bmul(c12, bint(cint))
                    prev = acc.get(mono)
                    acc[mono] = c if prev is None else badd(prev, c)
        return _sorted_terms(acc, self.base)

    def _from_int(self, k):
        c = self.base._from_int(k)
        if c == self.base._zero:
            return ()
        return (((), c),)

    def _div_int(self, u, k):
        bdiv = self.base._div_int
        return tuple((m, bdiv(c, k)) for m, c in u)

    def embed_base(self, raw):
        if raw == self.base._zero:
            return ()
        return (((), raw),)

    def _coerce(self, v):
        if isinstance(v, Element) and v.ring == self:
            return v.value
        if isinstance(v, int):
            return self._from_int(v)
        if isinstance(v, dict):
            acc = {}
            for m, c in v.items():
                acc[tuple(m)] = self.base._coerce(c)
            return _sorted_terms(acc, self.base)
        raise TypeError(f"cannot coerce {v!r} into {self.descriptor()}")

    def _check_index(self, i):
        if i < 0 or (self.index_bound is not None and i >= self.index_bound):
            raise ValueError(
                f"generator index {i} outside this algebra's bound "
                f"{self.index_bound}")

    def x(self, i=0):
        self._check_index(i)
        return Element(self, ((((i, 1, 0),), self.base._one),))

    def y(self, i=0):
        self._check_index(i)
        return Element(self, ((((i, 0, 1),), self.base._one),))

    def symbol(self, name):
        head, tail = name[:1], name[1:]
        if head in ("x", "y") and (tail == "" or tail.isdigit()):
            i = int(tail) if tail else 0
            try:
                self._check_index(i)
            except ValueError as exc:
                raise KeyError(str(exc)) from None
            return self.x(i) if head == "x" else self.y(i)
        return Element(self, self.embed_base(self.base.symbol(name).value))

    def indices_used(self, u):
        return sorted({i for mono, _ in u for i, _, _ in mono})

    def y_indices_used(self, u):
        return sorted({i for mono, _ in u for i, _, b in mono if b})

    def max_y_degree(self, u):
        degs = [b for mono, _ in u for _, _, b in mono]
        return max(degs, default=0)

    def _mono_text(self, mono):
        pieces = []
        for i, a, b in mono:
            if a == 1:
                pieces.append(f"x{i}")
            elif a > 1:
                pieces.append(f"x{i}^{a}")
            if b == 1:
                pieces.append(f"y{i}")
            elif b > 1:
                pieces.append(f"y{i}^{b}")
        return "*".join(pieces)

    def _format(self, u):
        return _format_terms(
            [_coeff_term(self.base, c, self._mono_text(m)) for m, c in u])

    def _key(self):
        return ("weyl", self.base._key(), self.index_bound)

    def descriptor(self):
        if self.index_bound is None:
            return f"weyl({self.base.descriptor()})"
        return f"weyl({self.base.descriptor()}, {self.index_bound})"

    def characteristic(self):
        return self.base.characteristic()

    def random_element(self, rng, max_terms=3, max_degree=2, max_index=2, **opts):
        top = self.index_bound if self.index_bound is not None else max_index
        acc = {}
        for _ in range(rng.randint(0, max_terms)):
            mono = []
            for i in sorted(rng.sample(range(top), rng.randint(0, min(2, top)))):
                a = rng.randint(0, max_degree)
                b = rng.randint(0, max_degree)
                if a or b:
                    mono.append((i, a, b))
            c = self.base.random_element(rng, **opts).value
            if c != self.base._zero:
                acc[tuple(mono)] = c
        return Element(self, _sorted_terms(acc, self.base))


# ---------------------------------------------------------------------------
# constructors (interned so identical descriptors are the same object)


def integers():
    return _intern(IntegerRing())


def rationals():
    return _intern(RationalRing())


def modular(m):
    return _intern(ModularRing(m))


def prime_field(p):
    return _intern(PrimeFieldRing(p))


def polynomial(base, names, commutative=True):
    return _intern(PolynomialRing(base, names, commutative))


def square_zero_quotient(field, names):
    return _intern(SquareZeroQuotientRing(field, names))


def matrix_ring(base, n):
    return _intern(MatrixRing(base, n))


def weyl_algebra(base, index_bound=None):
    return _intern(WeylAlgebraRing(base, index_bound))


_MAKERS = {
    "integers": lambda: integers(),
    "rationals": lambda: rationals(),
    "modular": modular,
    "prime-field": prime_field,
    "polynomial": polynomial,
    "square-zero-quotient": square_zero_quotient,
    "matrix": matrix_ring,
    "weyl": weyl_algebra,
}


def make_ring(kind, *args, **kwargs):
    """Build a ring descriptor by kind name; see the module docstring."""
    try:
        maker = _MAKERS[kind]
    except KeyError:
        raise ValueError(f"unknown ring kind {kind!r}") from None
    return maker(*args, **kwargs)
