"""The odd commutative graph complex: chains, boundary, bracket, pairing.

Chains are finite rational combinations of canonical graph keys.  Every
inserted graph is canonicalized immediately and its orientation sign folded
into the coefficient; classes with an odd automorphism collapse to zero at
insertion.
"""

from fractions import Fraction
from itertools import product as _product
from math import factorial

from . import exact
from .graphs import (
    OrientedGraph, canonical_key, canonical_info, contract_edge, dipole,
    enumerate_graphs, gc_degree, loop_number, parse_adjacency,
    serialize_adjacency,
)


class Chain:
    """Formal rational combination of canonical oriented graph classes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for key, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[key] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of(cls, g, coeff=1):
        """Chain of a single oriented graph (canonicalized, sign folded)."""
        ch = cls()
        ch.add_graph(g, coeff)
        return ch

    def add_graph(self, g, coeff=1):
        key, sign = canonical_key(g)
        if sign == 0:
            return
        c = self.coeffs.get(key, Fraction(0)) + Fraction(coeff) * sign
        if c:
            self.coeffs[key] = c
        else:
            self.coeffs.pop(key, None)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __add__(self, other):
        out = Chain(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.coeffs.get(k, Fraction(0)) + c
            if s:
                out.coeffs[k] = s
            else:
                out.coeffs.pop(k, None)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Chain()
        return Chain({k: v * c for k, v in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def __neg__(self):
        return self.scale(-1)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0])

    def support(self):
        return sorted(self.coeffs)

    def bidegrees(self):
        out = set()
        for key in self.coeffs:
            g = key.graph()
            out.add((loop_number(g), gc_degree(g)))
        return out

    def homogeneous_degree(self):
        degs = {gc_degree(k.graph()) for k in self.coeffs}
        if len(degs) > 1:
            raise ValueError(f"chain is not homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def restrict_loops(self, loops):
        return Chain({k: c for k, c in self.coeffs.items()
                      if loop_number(k.graph()) == loops})

    def __repr__(self):
        if not self.coeffs:
            return "Chain(0)"
        bits = [f"{c} * {serialize_adjacency(k.graph())}" for k, c in self.items()]
        return "Chain(" + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# text format: "coefficient * adjacency-string" per line

def parse_chain(text):
    ch = Chain()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "*" in line:
            coeff_txt, adj = (s.strip() for s in line.split("*", 1))
        else:
            coeff_txt, adj = "1", line
        try:
            coeff = Fraction(coeff_txt)
            g = parse_adjacency(adj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        ch.add_graph(g, coeff)
    return ch


def serialize_chain(ch):
    lines = []
    for key, c in ch.items():
        lines.append(f"{c} * {serialize_adjacency(key.graph())}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# boundary and coboundary

def boundary(ch):
    """Sum of edge contractions; bidegree (0, -1)."""
    out = Chain()
    for key, coeff in ch.coeffs.items():
        g = key.graph()
        for i in range(g.m):
            t, h = g.edges[i]
            if t == h:
                continue
            quotient, sign = contract_edge(g, i)
            out.add_graph(quotient, coeff * sign)
    return out


def _half_edge_slots(g, v):
    """Incident half-edge slots of v as (edge index, end) with end 0=tail."""
    slots = []
    for i, (t, h) in enumerate(g.edges):
        if t == v:
            slots.append((i, 0))
        if h == v:
            slots.append((i, 1))
    return slots


def insert_graph(g1, v, g2, rho):
    """Attach g1's half-edges at v into g2 according to rho, delete v.

    rho maps each slot of `_half_edge_slots(g1, v)` to a vertex of g2.
    Returns (graph, sign); vertices of g2 come first, then g1 minus v.
    """
    n2 = g2.n
    sign = 1 if v % 2 == 0 else -1  # move v to the front of g1's order
    relabel = {}
    nxt = n2
    for u in range(g1.n):
        if u != v:
            relabel[u] = nxt
            nxt += 1
    slots = _half_edge_slots(g1, v)
    assignment = dict(zip(slots, rho))
    edges = []
    for i, (t, h) in enumerate(g1.edges):
        nt = assignment[(i, 0)] if t == v else relabel[t]
        nh = assignment[(i, 1)] if h == v else relabel[h]
        edges.append((nt, nh))
    edges.extend(g2.edges)
    return OrientedGraph(n2 + g1.n - 1, edges), sign


def circ_graphs(g1, g2, out, coeff, skip_constant=False):
    """Accumulate g1 o g2 (sum over vertices and all attachment maps)."""
    for v in range(g1.n):
        slots = _half_edge_slots(g1, v)
        for rho in _product(range(g2.n), repeat=len(slots)):
            if skip_constant and len(set(rho)) <= 1:
                continue
            h, sign = insert_graph(g1, v, g2, rho)
            out.add_graph(h, coeff * sign)


def circ(a, b):
    """Insertion a o b extended bilinearly."""
    out = Chain()
    for k1, c1 in a.coeffs.items():
        g1 = k1.graph()
        for k2, c2 in b.coeffs.items():
            circ_graphs(g1, k2.graph(), out, c1 * c2)
    return out


def bracket(a, b, strict=True):
    """Graded Lie bracket [a, b] = a o b - (-1)^{|a||b|} b o a.

    With strict=True both chains must be degree-homogeneous; otherwise the
    bracket is extended bilinearly over homogeneous components.
    """
    if strict:
        a.homogeneous_degree()
        b.homogeneous_degree()
    out = Chain()
    for k1, c1 in a.coeffs.items():
        g1 = k1.graph()
        d1 = gc_degree(g1)
        for k2, c2 in b.coeffs.items():
            g2 = k2.graph()
            d2 = gc_degree(g2)
            c = c1 * c2
            # constant attachments cancel between the two insertion orders
            circ_graphs(g1, g2, out, c, skip_constant=True)
            sign = -1 if (d1 * d2) % 2 else 1
            circ_graphs(g2, g1, out, -sign * c, skip_constant=True)
    return out


def coboundary(ch):
    """Lie bracket with a single edge, with prefactor 1/2; bidegree (0, +1).

    Splits every vertex into two halves joined by a new edge; attachments
    sending everything to one side cancel and are skipped.
    """
    d1 = dipole(1)
    out = Chain()
    for key, coeff in ch.coeffs.items():
        g = key.graph()
        half = Fraction(coeff, 2)
        circ_graphs(g, d1, out, half, skip_constant=True)
    return out


# ---------------------------------------------------------------------------
# pairing

def pairing(a, b):
    """<a, b> = sum over shared classes of a_K b_K |Aut K|."""
    total = Fraction(0)
    small, large = (a, b) if len(a.coeffs) <= len(b.coeffs) else (b, a)
    for key, c in small.coeffs.items():
        c2 = large.coeffs.get(key)
        if c2:
            total += c * c2 * canonical_info(key.graph()).aut_order
    return total


# ---------------------------------------------------------------------------
# graded pieces of the complex

def bidegree_counts(loops, degree):
    """(vertices, edges) for bidegree (loops, degree), or None if empty."""
    m = degree + 3 * loops
    n = m - loops + 1
    if m < 0 or n < 1 or (n >= 1 and 2 * m < 3 * n):
        return None
    return n, m


_basis_cache = {}


def basis(loops, degree):
    """Sorted canonical keys spanning the given bidegree (no odd classes)."""
    got = _basis_cache.get((loops, degree))
    if got is not None:
        return got
    nm = bidegree_counts(loops, degree)
    if nm is None:
        keys = []
    else:
        n, m = nm
        keys = [key for key, odd in enumerate_graphs(n, m) if not odd]
    _basis_cache[(loops, degree)] = keys
    return keys


def graded_dimension(loops, degree):
    return len(basis(loops, degree))


def boundary_matrix(loops, degree):
    """Sparse rows of the boundary map from (loops, degree) to (loops, degree-1).

    Row i is {column: coefficient} of the boundary of basis graph i in the
    basis of the target bidegree.
    """
    src = basis(loops, degree)
    dst = basis(loops, degree - 1)
    index = {key: j for j, key in enumerate(dst)}
    rows = []
    for key in src:
        b = boundary(Chain({key: 1}))
        row = {}
        for k2, c in b.coeffs.items():
            j = index.get(k2)
            if j is None:
                raise AssertionError("boundary left the enumerated basis")
            row[j] = c
        rows.append(row)
    return rows, len(dst)


def homology_dimension(loops, degree, side="chain"):
    """dim of graph (co)homology at the bidegree; equal for both sides over Q.

    chain side:   ker(d: (l,k) -> (l,k-1)) / im(d: (l,k+1) -> (l,k))
    cochain side: ker(delta: (l,k) -> (l,k+1)) / im(delta from (l,k-1)),
    whose ranks are the transposes of the same boundary matrices.
    """
    if side not in ("chain", "cochain"):
        raise ValueError(f"unknown side {side!r}")
    dim = graded_dimension(loops, degree)
    if dim == 0:
        return 0
    rows_out, _ = boundary_matrix(loops, degree)
    rank_out = exact.rank_of_rows(rows_out)
    rows_in, _ = boundary_matrix(loops, degree + 1)
    rank_in = exact.rank_of_rows(rows_in)
    return dim - rank_out - rank_in


def cocycle_check(cochain, loops, degree):
    """True iff <cochain, boundary H> = 0 for every basis graph H one degree up."""
    for key in basis(loops, degree + 1):
        dh = boundary(Chain({key: 1}))
        if pairing(cochain, dh):
            return False
    return True


# ---------------------------------------------------------------------------
# Maurer-Cartan element

def dipole_sum(max_loops):
    """Sum of odd dipoles D_{2i+1}/(2 (2i+1)!) with loop number <= max_loops."""
    ch = Chain()
    i = 1
    while 2 * i <= max_loops:
        ch = ch + Chain.of(dipole(2 * i + 1), Fraction(1, 2 * factorial(2 * i + 1)))
        i += 1
    return ch


def maurer_cartan_residual(max_loops):
    """delta Xi + [Xi, Xi]/2, truncated to loop number <= max_loops."""
    if max_loops % 2:
        raise ValueError("max_loops must be even")
    xi = dipole_sum(max_loops)
    residual = coboundary(xi) + bracket(xi, xi, strict=False).scale(Fraction(1, 2))
    return Chain({k: c for k, c in residual.coeffs.items()
                  if loop_number(k.graph()) <= max_loops})


# ---------------------------------------------------------------------------
# named generators

def theta_chain():
    return Chain.of(dipole(3))


def k4_chain():
    from .graphs import k4
    return Chain.of(k4())


def prism_chain(flip=False):
    from .graphs import prism
    return Chain.of(prism(flip))
