"""Exact rational sparse linear algebra.

Everything here is over Q, using integer-preserving elimination so that
ranks and kernels of boundary matrices are bit-exact.  Matrices are small
and sparse (a few thousand rows, entries mostly in {-2,...,2}), so we
favour fraction-free row operations with gcd normalization over any
floating point shortcut.
"""

from fractions import Fraction
from math import gcd


class SparseRationalMatrix:
    """Sparse matrix over Q, stored as {(row, col): Fraction}, zeros omitted."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    self.entries[(r, c)] = v

    @classmethod
    def from_rows(cls, row_list, cols=None):
        """Build from an iterable of {col: value} dicts (or dense lists)."""
        rows = []
        width = cols or 0
        for row in row_list:
            if isinstance(row, dict):
                d = {c: Fraction(v) for c, v in row.items() if v}
            else:
                d = {c: Fraction(v) for c, v in enumerate(row) if v}
            rows.append(d)
            if d:
                width = max(width, max(d) + 1)
        m = cls(len(rows), width if cols is None else cols)
        for r, d in enumerate(rows):
            for c, v in d.items():
                m.entries[(r, c)] = v
        return m

    def row_dicts(self):
        rows = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def __repr__(self):
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def rank(self):
        return rank_of_rows(self.row_dicts())

    def kernel_basis(self):
        return kernel_of_rows(self.row_dicts(), self.cols)


def _scale_to_int(row):
    """Clear denominators and divide by the content; rank is unaffected."""
    if not row:
        return {}
    lcm = 1
    for v in row.values():
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = {c: int(v * lcm) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def rank_of_rows(rows):
    """Exact rank over Q of an iterable of sparse rows ({col: value}).

    Integer-preserving elimination; pivots chosen Markowitz-style (short
    rows first, then small pivot magnitude) to limit coefficient blowup.
    """
    active = [r for r in (_scale_to_int(row) for row in rows) if r]
    rank = 0
    while active:
        # shortest row, then smallest absolute pivot value inside it
        best_i = min(range(len(active)), key=lambda i: len(active[i]))
        pivot_row = active.pop(best_i)
        pc = min(pivot_row, key=lambda c: (abs(pivot_row[c]), c))
        pv = pivot_row[pc]
        rank += 1
        nxt = []
        for row in active:
            rv = row.get(pc)
            if rv is None:
                nxt.append(row)
                continue
            g = gcd(pv, rv)
            a, b = pv // g, rv // g
            new = {}
            for c, v in row.items():
                w = a * v - b * pivot_row.get(c, 0)
                if w:
                    new[c] = w
            for c, v in pivot_row.items():
                if c not in row:
                    new[c] = -b * v
            if new:
                g2 = 0
                for v in new.values():
                    g2 = gcd(g2, v)
                if g2 > 1:
                    new = {c: v // g2 for c, v in new.items()}
                nxt.append(new)
        active = nxt
    return rank


def rref_of_rows(rows, cols):
    """Reduced row echelon form over Q. Returns (pivot_cols, reduced_rows)."""
    work = []
    for row in rows:
        d = {c: Fraction(v) for c, v in row.items() if v}
        if d:
            work.append(d)
    pivots = []
    reduced = []
    for col in range(cols):
        hit = None
        for i, row in enumerate(work):
            if col in row:
                hit = i
                break
        if hit is None:
            continue
        row = work.pop(hit)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        # clear col from the other work rows and from earlier reduced rows
        for other in work:
            f = other.get(col)
            if f:
                for c, v in row.items():
                    w = other.get(c, Fraction(0)) - f * v
                    if w:
                        other[c] = w
                    else:
                        other.pop(c, None)
        for other in reduced:
            f = other.get(col)
            if f:
                for c, v in row.items():
                    w = other.get(c, Fraction(0)) - f * v
                    if w:
                        other[c] = w
                    else:
                        other.pop(c, None)
        work = [r for r in work if r]
        pivots.append(col)
        reduced.append(row)
    return pivots, reduced


def kernel_of_rows(rows, cols):
    """Basis of the right kernel over Q, one vector per free column."""
    pivots, reduced = rref_of_rows(rows, cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for pcol, row in zip(pivots, reduced):
            coeff = row.get(free)
            if coeff:
                vec[pcol] = -coeff
        basis.append(vec)
    return basis


def solve_in_span(span_rows, target, cols):
    """Is `target` (sparse dict) in the row span? Exact membership test."""
    rows = list(span_rows) + [target]
    return rank_of_rows(list(span_rows)) == rank_of_rows(rows)
