"""Text grammar for ring descriptors, elements, and commutator sums.

Elements use ASCII infix notation with `+ - * / ^`, integer literals,
parentheses, and names resolved against the ring (polynomial variables,
square-zero generators, weyl generators x<i>/y<i>).  Matrices are nested
bracket lists whose entries are parsed in the base ring.  Division is
only allowed by integer literals and must be exact in the ring.

Printing always emits canonical text, and parse(print(e)) == e holds for
every ring whose base chain keeps matrix rings outermost.

Ring descriptors:

  integers | rationals | mod 6 | gf 7
  poly(<base>; t, u)        freepoly(<base>; a, b)
  sqz(<field>; x11, x12, x21)
  matrix(<base>, 3)
  weyl(<base>)              weyl(<base>, 1)
"""

import re

from . import rings
from .rings import CommutatorSum, MatrixRing


class ParseError(ValueError):
    """A syntax or symbol error, carrying the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"char {pos}: {message}")
        self.pos = pos


_ELEMENT_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()\[\],]))")


def _tokenize_element(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _ELEMENT_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _ElementParser:
    def __init__(self, text, ring):
        self.text = text
        self.tokens = _tokenize_element(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.advance()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        e = self.expr(self.ring)
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return e

    def expr(self, ring):
        e = self.term(ring)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.term(ring)
                e = e + rhs if val == "+" else e - rhs
            else:
                return e

    def term(self, ring):
        e = self.unary(ring)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                e = e * self.unary(ring)
            elif kind == "op" and val == "/":
                self.advance()
                kind2, k, pos2 = self.advance()
                if kind2 != "int" or k == 0:
                    raise ParseError("division is only allowed by nonzero "
                                     "integer literals", pos2)
                try:
                    e = rings.Element(ring, ring._div_int(e.value, k))
                except rings.NotDivisibleError as exc:
                    raise ParseError(str(exc), pos) from None
            else:
                return e

    def unary(self, ring):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return -self.unary(ring)
        return self.power(ring)

    def power(self, ring):
        e = self.atom(ring)
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            kind2, k, pos2 = self.advance()
            if kind2 != "int":
                raise ParseError("exponent must be an integer literal", pos2)
            return e ** k
        return e

    def atom(self, ring):
        kind, val, pos = self.advance()
        if kind == "int":
            return ring.from_int(val)
        if kind == "name":
            try:
                return ring.symbol(val)
            except KeyError:
                raise ParseError(
                    f"unknown symbol {val!r} in {ring.descriptor()}", pos) from None
        if kind == "op" and val == "(":
            e = self.expr(ring)
            self.expect_op(")")
            return e
        if kind == "op" and val == "[":
            if not isinstance(ring, MatrixRing):
                raise ParseError(
                    f"matrix literal not valid in {ring.descriptor()}", pos)
            return self.matrix_rows(ring)
        raise ParseError(f"unexpected token {val!r}", pos)

    def matrix_rows(self, ring):
        # opening '[' already consumed
        rows = []
        while True:
            self.expect_op("[")
            row = [self.expr(ring.base)]
            while True:
                kind, val, pos = self.advance()
                if kind == "op" and val == ",":
                    row.append(self.expr(ring.base))
                elif kind == "op" and val == "]":
                    break
                else:
                    raise ParseError("expected ',' or ']' in matrix row", pos)
            rows.append(row)
            kind, val, pos = self.advance()
            if kind == "op" and val == ",":
                continue
            if kind == "op" and val == "]":
                break
            raise ParseError("expected ',' or ']' after matrix row", pos)
        if len(rows) != ring.n or any(len(r) != ring.n for r in rows):
            raise ParseError(
                f"expected a {ring.n}x{ring.n} matrix literal", 0)
        return ring.from_rows(rows)


def parse_element(text, ring):
    """Parse `text` into a canonical element of `ring`."""
    return _ElementParser(text, ring).parse()


def element_text(e):
    """Canonical text of an element (same grammar the parser accepts)."""
    return str(e)


# ---------------------------------------------------------------------------
# depth-aware splitting for pairs, term lists, and triples


def split_top(text, sep):
    """Split on `sep` at bracket depth zero, dropping empty pieces."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _strip_parens(text, want, label):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"expected a parenthesized {label}: {text!r}", 0)
    inner = split_top(text[1:-1], ",")
    if len(inner) != want:
        raise ParseError(
            f"expected {want} comma-separated parts in {label}: {text!r}", 0)
    return inner


def parse_pair(text, ring):
    left, right = _strip_parens(text, 2, "pair")
    return parse_element(left, ring), parse_element(right, ring)


def parse_commutator_sum(text, ring):
    """Parse '(l, r); (l, r); ...' into a CommutatorSum; empty text is the
    empty sum."""
    text = text.strip()
    if not text or text == "(none)":
        return CommutatorSum(ring, ())
    return CommutatorSum(ring, [parse_pair(p, ring) for p in split_top(text, ";")])


def pair_text(left, right):
    return f"({left}, {right})"


def commutator_sum_text(s):
    if not len(s):
        return "(none)"
    return "; ".join(pair_text(l, r) for l, r in s)


def parse_triples(text, ring):
    """Parse '(row, col, value); ...' into a {(row, col): Element} dict."""
    out = {}
    for part in split_top(text, ";"):
        row_s, col_s, val_s = _strip_parens(part, 3, "triple")
        try:
            row, col = int(row_s), int(col_s)
        except ValueError:
            raise ParseError(f"row/col must be integers in {part!r}", 0) from None
        if row < 0 or col < 0:
            raise ParseError(f"row/col must be nonnegative in {part!r}", 0)
        v = parse_element(val_s, ring)
        if not v.is_zero:
            out[(row, col)] = v
    return out


def triples_text(support):
    items = sorted(support.items())
    if not items:
        return "(none)"
    return "; ".join(f"({r}, {c}, {v})" for (r, c), v in items)


# ---------------------------------------------------------------------------
# ring descriptors


_RING_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_-]*)|(?P<op>[();,]))")


def _tokenize_ring(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _RING_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


_SCALAR_KINDS = {
    "integers": "integers", "int": "integers", "z": "integers",
    "rationals": "rationals", "q": "rationals",
}
_MOD_KINDS = {"mod": "modular", "modular": "modular",
              "gf": "prime-field", "prime-field": "prime-field"}


class _RingParser:
    def __init__(self, text):
        self.tokens = _tokenize_ring(text)
        self.i = 0

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def peek(self):
        return self.tokens[self.i]

    def expect(self, op):
        kind, val, pos = self.advance()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in ring descriptor", pos)

    def parse(self):
        ring = self.ring()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return ring

    def integer(self):
        kind, val, pos = self.advance()
        if kind != "int":
            raise ParseError("expected an integer in ring descriptor", pos)
        return val

    def names(self):
        out = []
        while True:
            kind, val, pos = self.advance()
            if kind != "name":
                raise ParseError("expected a name", pos)
            out.append(val)
            kind, val, pos = self.peek()
            if kind == "op" and val == ",":
                self.advance()
                continue
            return out

    def ring(self):
        kind, val, pos = self.advance()
        if kind != "name":
            raise ParseError("expected a ring kind name", pos)
        head = val.lower()
        if head in _SCALAR_KINDS:
            return rings.make_ring(_SCALAR_KINDS[head])
        if head in _MOD_KINDS:
            wrapped = self.peek()[0] == "op"
            if wrapped:
                self.expect("(")
            m = self.integer()
            if wrapped:
                self.expect(")")
            try:
                return rings.make_ring(_MOD_KINDS[head], m)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        if head in ("poly", "polynomial", "freepoly"):
            self.expect("(")
            base = self.ring()
            self.expect(";")
            names = self.names()
            self.expect(")")
            return rings.polynomial(base, names,
                                    commutative=head != "freepoly")
        if head in ("sqz", "square-zero-quotient"):
            self.expect("(")
            base = self.ring()
            self.expect(";")
            names = self.names()
            self.expect(")")
            try:
                return rings.square_zero_quotient(base, names)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        if head == "matrix":
            self.expect("(")
            base = self.ring()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            try:
                return rings.matrix_ring(base, n)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        if head == "weyl":
            self.expect("(")
            base = self.ring()
            bound = None
            kind, val, _ = self.peek()
            if kind == "op" and val == ",":
                self.advance()
                bound = self.integer()
            self.expect(")")
            try:
                return rings.weyl_algebra(base, bound)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        raise ParseError(f"unknown ring kind {val!r}", pos)


def parse_ring(text):
    """Parse a ring descriptor; canonical form is ring.descriptor()."""
    return _RingParser(text).parse()
