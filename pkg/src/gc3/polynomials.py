"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as {exponent tuple: coefficient}; coefficients are ints
or Fractions and never zero.  All arities are fixed per polynomial (nvars)
so exponent tuples can be compared directly.
"""

from fractions import Fraction


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = self.terms.get(e, 0) + c
                    if not self.terms[e]:
                        del self.terms[e]

    @classmethod
    def const(cls, nvars, c):
        p = cls(nvars)
        if c:
            p.terms[(0,) * nvars] = c
        return p

    @classmethod
    def var(cls, nvars, i, c=1):
        e = [0] * nvars
        e[i] = 1
        p = cls(nvars)
        if c:
            p.terms[tuple(e)] = c
        return p

    def copy(self):
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Poly.const(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(self.nvars, other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        out = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        p = Poly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def evaluate(self, point):
        """Exact evaluation at a sequence of numbers (int/Fraction)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= point[i] ** k
            total += v
        return total

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = c * k
        p = Poly(self.nvars)
        p.terms = out
        return p

    def subs_linear(self, vectors):
        """Substitute x_i -> sum_j vectors[i][j] * t_j (restriction to a plane).

        `vectors` is a list of nvars coefficient rows of length k; returns a
        Poly in k variables.
        """
        k = len(vectors[0]) if vectors else 0
        out = Poly.const(k, 0)
        lin = [Poly(k, {tuple(1 if j == jj else 0 for jj in range(k)): v
                        for j, v in enumerate(row) if v})
               for row in vectors]
        for e, c in self.terms.items():
            term = Poly.const(k, c)
            for i, kk in enumerate(e):
                for _ in range(kk):
                    term = term * lin[i]
            out = out + term
        return out

    def divide_exact(self, divisor):
        """Exact division self / divisor; returns the quotient or None.

        Multivariate long division against a single divisor using the graded
        lexicographic leading term.  Works because we only divide when the
        quotient is known (or suspected) to be a polynomial.
        """
        if not divisor.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return Poly(self.nvars)

        def grlex_key(e):
            return (sum(e), e)

        lead = max(divisor.terms, key=grlex_key)
        lead_c = divisor.terms[lead]
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            diff = tuple(a - b for a, b in zip(e, lead))
            if any(d < 0 for d in diff):
                return None
            q = Fraction(c) / Fraction(lead_c)
            if q.denominator == 1:
                q = int(q)
            quo[diff] = q
            for e2, c2 in divisor.terms.items():
                e3 = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(e3, 0) - q * c2
                if s:
                    rem[e3] = s
                else:
                    rem.pop(e3, None)
        p = Poly(self.nvars)
        p.terms = quo
        return p

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                            for i, k in enumerate(e) if k)
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)


def poly_det(matrix):
    """Determinant of a square matrix with commuting ring entries.

    Laplace expansion memoized on column subsets; entries may be Poly,
    Fraction or int (anything with +, *, unary -).
    """
    n = len(matrix)
    if n == 0:
        return 1
    cache = {}

    def minor(rows_from, colmask):
        if colmask == 0:
            return 1
        key = (rows_from, colmask)
        got = cache.get(key)
        if got is not None:
            return got
        row = matrix[rows_from]
        total = None
        sign = 1
        mask = colmask
        while mask:
            low = mask & -mask
            j = low.bit_length() - 1
            entry = row[j]
            if entry:
                sub = minor(rows_from + 1, colmask & ~low)
                term = entry * sub if sign > 0 else -(entry * sub)
                total = term if total is None else total + term
            sign = -sign
            mask &= mask - 1
        if total is None:
            total = 0
        cache[key] = total
        return total

    return minor(0, (1 << n) - 1)


def poly_adjugate(matrix):
    """Adjugate of a square matrix over a commutative ring: adj*M = det*I."""
    n = len(matrix)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[matrix[r][c] for c in range(n) if c != i]
                   for r in range(n) if r != j]
            d = poly_det(sub)
            adj[i][j] = d if (i + j) % 2 == 0 else -d
    return adj
