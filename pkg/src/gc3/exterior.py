"""Exterior algebra over a finite generator set with exact coefficients.

An ExteriorElement maps generator subsets (bitmasks) to coefficients, which
may be ints, Fractions, or Poly.  This is enough to express Pfaffian and
trace forms of matrices whose entries are differential forms, entirely in
exact arithmetic.
"""

from fractions import Fraction
from itertools import permutations

from .polynomials import Poly


def wedge_sign(a, b):
    """Sign of merging strictly increasing generator sets a and b (bitmasks).

    0 if the sets intersect.
    """
    if a & b:
        return 0
    sign = 1
    m = b
    while m:
        low = m & -m
        j = low.bit_length() - 1
        if (a >> (j + 1)).bit_count() & 1:
            sign = -sign
        m &= m - 1
    return sign


class Ext:
    __slots__ = ("ngen", "terms")

    def __init__(self, ngen, terms=None):
        self.ngen = ngen
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    s = self.terms.get(m, 0) + c
                    if s:
                        self.terms[m] = s
                    else:
                        self.terms.pop(m, None)

    @classmethod
    def scalar(cls, ngen, c):
        e = cls(ngen)
        if c:
            e.terms[0] = c
        return e

    @classmethod
    def gen(cls, ngen, i, c=1):
        e = cls(ngen)
        if c:
            e.terms[1 << i] = c
        return e

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Ext):
            return self.ngen == other.ngen and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ngen, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, Ext):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        e = Ext(self.ngen)
        e.terms = out
        return e

    __radd__ = __add__

    def __neg__(self):
        e = Ext(self.ngen)
        e.terms = {m: -c for m, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Ext(self.ngen)
        e = Ext(self.ngen)
        e.terms = {m: v * c for m, v in self.terms.items()}
        return e

    def __mul__(self, other):
        """Wedge product (scalar coefficients commute; generators anticommute)."""
        if not isinstance(other, Ext):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s = wedge_sign(m1, m2)
                if not s:
                    continue
                m = m1 | m2
                c = c1 * c2
                if s < 0:
                    c = -c
                tot = out.get(m, 0) + c
                if tot:
                    out[m] = tot
                else:
                    del out[m]
        e = Ext(self.ngen)
        e.terms = out
        return e

    __rmul__ = scale

    def degrees(self):
        return {m.bit_count() for m in self.terms}

    def homogeneous_degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("inhomogeneous exterior element")
        return degs.pop() if degs else None

    def d(self):
        """Exterior derivative; requires Poly coefficients, with variable i
        mapping to generator i."""
        out = Ext(self.ngen)
        for m, c in self.terms.items():
            if not isinstance(c, Poly):
                continue
            for i in range(c.nvars):
                dc = c.diff(i)
                if dc:
                    out = out + Ext(self.ngen, {1 << i: dc}) * Ext(self.ngen, {m: 1})
        return out

    def contract(self, field):
        """Interior product with a vector field: field[i] is the coefficient
        of d/d(gen i); coefficients multiply on the left."""
        out = Ext(self.ngen)
        acc = out.terms
        for m, c in self.terms.items():
            mm = m
            while mm:
                low = mm & -mm
                i = low.bit_length() - 1
                f = field[i]
                if f:
                    sign = 1 if ((m & (low - 1)).bit_count() % 2 == 0) else -1
                    rest = m & ~low
                    v = f * c if sign > 0 else -(f * c)
                    s = acc.get(rest, 0) + v
                    if s:
                        acc[rest] = s
                    else:
                        acc.pop(rest, None)
                mm &= mm - 1
        return out

    def map_coeffs(self, fn):
        e = Ext(self.ngen)
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                e.terms[m] = v
        return e

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            gens = "^".join(f"d{i}" for i in range(self.ngen) if m >> i & 1)
            bits.append(f"({self.terms[m]})*{gens or '1'}")
        return " + ".join(bits)


def mat_mul(A, B):
    """Product of matrices with Ext (or scalar) entries."""
    n, k, m = len(A), len(B), len(B[0])
    out = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = None
            for t in range(k):
                term = A[i][t] * B[t][j]
                acc = term if acc is None else acc + term
            out[i][j] = acc
    return out


def mat_trace(A):
    acc = None
    for i in range(len(A)):
        acc = A[i][i] if acc is None else acc + A[i][i]
    return acc


def pfaffian(M):
    """Pfaffian of a skew-symmetric matrix over a commutative (graded-even) ring.

    Expansion along the first remaining row, memoized on index subsets.
    Odd dimension gives 0.  Entries must commute (e.g. scalars or 2-forms).
    """
    n = len(M)
    for i in range(n):
        for j in range(i, n):
            if M[i][j] + M[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    if n % 2:
        return 0
    if n == 0:
        return 1
    cache = {}

    def rec(mask):
        if mask == 0:
            return 1
        got = cache.get(mask)
        if got is not None:
            return got
        low = mask & -mask
        a = low.bit_length() - 1
        rest0 = mask & ~low
        total = None
        sign = 1
        mm = rest0
        while mm:
            lb = mm & -mm
            b = lb.bit_length() - 1
            entry = M[a][b]
            if entry:
                sub = rec(rest0 & ~lb)
                term = entry * sub
                if sign < 0:
                    term = -term
                total = term if total is None else total + term
            sign = -sign
            mm &= mm - 1
        if total is None:
            total = 0
        cache[mask] = total
        return total

    return rec((1 << n) - 1)


def pfaffian_bruteforce(M):
    """Definition-level Pfaffian: (1/2^n n!) sum over all permutations.

    Exact but factorial; oracle for tests on matrices up to 6x6.
    """
    n2 = len(M)
    if n2 % 2:
        return 0
    n = n2 // 2
    total = None
    for perm in permutations(range(n2)):
        # sign of the permutation
        sign = 1
        seen = [False] * n2
        for i in range(n2):
            if seen[i]:
                continue
            j = i
            clen = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                clen += 1
            if clen % 2 == 0:
                sign = -sign
        term = None
        for i in range(n):
            entry = M[perm[2 * i]][perm[2 * i + 1]]
            term = entry if term is None else term * entry
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    denom = Fraction(1, 2 ** n)
    for i in range(1, n + 1):
        denom /= i
    if isinstance(total, Ext):
        return total.scale(denom)
    return total * denom


def hafnian(M, idxs):
    """Sum over perfect matchings of idxs of products M[i][j] (symmetric M)."""
    idxs = list(idxs)
    if len(idxs) % 2:
        return 0

    def rec(rem):
        if not rem:
            return 1
        a = rem[0]
        total = None
        for p in range(1, len(rem)):
            b = rem[p]
            entry = M[a][b]
            if entry:
                sub = rec(rem[1:p] + rem[p + 1:])
                term = entry * sub
                total = term if total is None else total + term
        return 0 if total is None else total

    return rec(idxs)
