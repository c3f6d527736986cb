"""Column-finite operators on a countable tower of coordinates.

Operators are lazy: a column rule produces the finitely many nonzero
entries of each column, and a declared bound promises where they stop.
The right shift x (column i has its 1 in row i+1) and the left shift z
satisfy z*x = 1, and for any finitely supported f the series
y = -(f z + x f z^2 + x^2 f z^3 + ...) lands each column on finitely
many cells, so x*y - y*x = f can be checked exactly on any window; no
truncation is involved.
"""

from . import certificates, grammar
from .certificates import Certificate, register_replayer
from .rings import Element, PreconditionError


class ColumnBoundViolation(Exception):
    """A column produced entries below its declared bound."""

    def __init__(self, col, row, bound):
        super().__init__(
            f"column {col} has a nonzero entry at row {row}, below its "
            f"declared bound {bound}")
        self.col = col


class LazyOperator:
    """A column-finite operator given by a per-column entry rule."""

    def __init__(self, base, column_rule, bound_rule):
        self.base = base
        self._column_rule = column_rule
        self._bound_rule = bound_rule
        self._columns = {}

    def column(self, col):
        """Nonzero entries of one column as {row: raw value}."""
        hit = self._columns.get(col)
        if hit is None:
            hit = {r: v for r, v in self._column_rule(col).items()
                   if v != self.base._zero}
            bound = self._bound_rule(col)
            for r in hit:
                if r > bound:
                    raise ColumnBoundViolation(col, r, bound)
            self._columns[col] = hit
        return hit

    def col_bound(self, col):
        return self._bound_rule(col)

    def entry(self, row, col):
        return Element(self.base, self.column(col).get(row, self.base._zero))

    @classmethod
    def from_entry_rule(cls, base, entry_rule, bound_rule, overshoot=2):
        """Wrap a (row, col) rule; scans each column up to its declared
        bound and spot-checks `overshoot` rows beyond it for leakage."""
        def column_rule(col):
            bound = bound_rule(col)
            out = {r: entry_rule(r, col) for r in range(bound + 1)}
            for r in range(bound + 1, bound + 1 + overshoot):
                v = entry_rule(r, col)
                if v != base._zero:
                    raise ColumnBoundViolation(col, r, bound)
            return out
        return cls(base, column_rule, bound_rule)

    def __add__(self, other):
        base = self.base
        def column_rule(col):
            merged = dict(self.column(col))
            for r, v in other.column(col).items():
                w = merged.get(r)
                merged[r] = v if w is None else base._add(w, v)
            return merged
        def bound_rule(col):
            return max(self.col_bound(col), other.col_bound(col))
        return LazyOperator(base, column_rule, bound_rule)

    def __neg__(self):
        base = self.base
        def column_rule(col):
            return {r: base._neg(v) for r, v in self.column(col).items()}
        return LazyOperator(base, column_rule, self._bound_rule)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        """Composition self after other; exact because columns are finite."""
        base = self.base
        def column_rule(col):
            acc = {}
            for k, v in other.column(col).items():
                for r, u in self.column(k).items():
                    w = acc.get(r)
                    uv = base._mul(u, v)
                    acc[r] = uv if w is None else base._add(w, uv)
            return acc
        def bound_rule(col):
            return max((self.col_bound(k) for k in other.column(col)),
                       default=-1)
        return LazyOperator(base, column_rule, bound_rule)

    def apply(self, vector):
        """Apply to a finitely supported column vector {index: raw}."""
        base = self.base
        acc = {}
        for c, v in vector.items():
            for r, u in self.column(c).items():
                w = acc.get(r)
                uv = base._mul(u, v)
                acc[r] = uv if w is None else base._add(w, uv)
        return {r: v for r, v in acc.items() if v != base._zero}


def identity_operator(base):
    one = base._one
    return LazyOperator(base, lambda col: {col: one}, lambda col: col)


def zero_operator(base):
    return LazyOperator(base, lambda col: {}, lambda col: -1)


def shift_operators(base):
    """(x, z): the right and left shifts, with z@x the identity and
    x@z the identity minus the projection onto coordinate 0."""
    one = base._one
    x = LazyOperator(base, lambda col: {col + 1: one}, lambda col: col + 1)
    z = LazyOperator(base, lambda col: {col - 1: one} if col else {},
                     lambda col: col - 1)
    return x, z


class FiniteOperator:
    """An operator with finite support, the test inputs for the series."""

    def __init__(self, base, support):
        self.base = base
        self.support = {}
        for (r, c), v in support.items():
            if r < 0 or c < 0:
                raise PreconditionError("support positions must be nonnegative")
            raw = v.value if isinstance(v, Element) else base._coerce(v)
            if raw != base._zero:
                self.support[(r, c)] = raw

    @classmethod
    def from_triples_text(cls, base, text):
        parsed = grammar.parse_triples(text, base)
        return cls(base, {k: v for k, v in parsed.items()})

    def triples_text(self):
        return grammar.triples_text(
            {k: Element(self.base, v) for k, v in self.support.items()})

    def as_lazy(self):
        base = self.base
        by_col = {}
        for (r, c), v in self.support.items():
            by_col.setdefault(c, {})[r] = v
        def column_rule(col):
            return dict(by_col.get(col, {}))
        def bound_rule(col):
            rows = by_col.get(col)
            return max(rows) if rows else -1
        return LazyOperator(base, column_rule, bound_rule)

    def __add__(self, other):
        merged = dict(self.support)
        for k, v in other.support.items():
            w = merged.get(k)
            merged[k] = v if w is None else self.base._add(w, v)
        return FiniteOperator(self.base, {k: Element(self.base, v)
                                          for k, v in merged.items()})


def commutator_preimage(f):
    """The operator y with x@y - y@x equal to f, for finitely supported f.

    y is the series -(sum of x^i f z^(i+1)); a support cell (sr, sc)
    contributes -value along the ray (sr + i, sc + i + 1), so column c
    collects one cell per support entry and stays finite.
    """
    base = f.base
    items = tuple(f.support.items())

    def column_rule(col):
        acc = {}
        for (sr, sc), v in items:
            i = col - 1 - sc
            if i < 0:
                continue
            row = sr + i
            w = acc.get(row)
            nv = base._neg(v)
            acc[row] = nv if w is None else base._add(w, nv)
        return acc

    def bound_rule(col):
        best = -1
        for (sr, sc), _ in items:
            if sc <= col - 1:
                best = max(best, sr + col - 1 - sc)
        return best

    return LazyOperator(base, column_rule, bound_rule)


def window_equal(lhs, rhs, window):
    """Compare two operators on the square window [0, window)^2.

    Returns (ok, detail): detail names the first mismatching cell or the
    column whose declared bound was violated.
    """
    base = lhs.base
    for col in range(window):
        try:
            left = lhs.column(col)
            right = rhs.column(col)
        except ColumnBoundViolation as exc:
            return False, f"column-bound violation: {exc}"
        for row in range(window):
            lv = left.get(row, base._zero)
            rv = right.get(row, base._zero)
            if lv != rv:
                return False, (f"first mismatch at ({row}, {col}): "
                               f"{base._format(lv)} vs {base._format(rv)}")
    return True, "none"


def preimage_window_certificate(f, window=64):
    """Certify x@y - y@x == f on a window, plus z@x == 1 alongside."""
    if window < 1:
        raise PreconditionError("window must be at least 1")
    base = f.base
    params = {"ring": base.descriptor(), "operator": f.triples_text(),
              "window": str(window)}
    x, z = shift_operators(base)
    y = commutator_preimage(f)
    lhs = (x @ y) - (y @ x)
    ok_main, detail_main = window_equal(lhs, f.as_lazy(), window)
    ok_zx, detail_zx = window_equal(z @ x, identity_operator(base),
                                    max(window, 128))
    evidence = {
        "zx-identity": certificates.PASS if ok_zx else certificates.FAIL,
        "zx-detail": detail_zx,
        "preimage-window": certificates.PASS if ok_main else certificates.FAIL,
        "preimage-detail": detail_main,
    }
    ok = ok_main and ok_zx
    return Certificate("shift-preimage-window", params, evidence,
                       certificates.PASS if ok else certificates.FAIL)


@register_replayer("shift-preimage-window")
def _replay_preimage_window(params):
    base = grammar.parse_ring(params["ring"])
    text = params["operator"]
    f = FiniteOperator(base, {} if text == "(none)" else
                       grammar.parse_triples(text, base))
    return preimage_window_certificate(f, int(params["window"]))
