"""Canonical integrals: exact dipole/series-parallel values and Monte Carlo.

The Monte Carlo integrates Q Omega_m / Psi^{s/2} over the open simplex by
importance sampling from Dirichlet(1/2,...,1/2), whose density absorbs the
square-root boundary behaviour of the integrand (the square-root of edge
lengths chart makes the integrand smooth, so the weights are bounded).
"""

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import BETA5, CanonicalForm, GraphForms, ONE, top_numerator, \
    vanishing_reason
from .graphs import OrientedGraph, gc_degree, is_connected, loop_number, \
    canonical_key, serialize_adjacency

CODE_VERSION = "gc3-0.1.0"


# ---------------------------------------------------------------------------
# exact values q * pi^{p/2}

@dataclass(frozen=True)
class HalfPiExact:
    """Exact number of the form coeff * pi^(half_power/2)."""
    coeff: Fraction
    half_power: int = 0

    def __mul__(self, other):
        if isinstance(other, HalfPiExact):
            return HalfPiExact(self.coeff * other.coeff,
                               self.half_power + other.half_power)
        return HalfPiExact(self.coeff * Fraction(other), self.half_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HalfPiExact):
            return HalfPiExact(self.coeff / other.coeff,
                               self.half_power - other.half_power)
        return HalfPiExact(self.coeff / Fraction(other), self.half_power)

    def __pow__(self, k):
        return HalfPiExact(self.coeff ** k, self.half_power * k)

    def __eq__(self, other):
        if isinstance(other, HalfPiExact):
            if self.coeff == 0 and other.coeff == 0:
                return True
            return self.coeff == other.coeff and self.half_power == other.half_power
        if other == 0:
            return self.coeff == 0
        return self.coeff == other and self.half_power == 0

    def __float__(self):
        return float(self.coeff) * math.pi ** (self.half_power / 2)

    def __repr__(self):
        if self.half_power == 0:
            return f"{self.coeff}"
        return f"{self.coeff}*pi^({self.half_power}/2)"


def gamma_half(x):
    """Gamma at a positive half-integer argument, as HalfPiExact.

    Raises ValueError for anything else (signals non-reducible cases).
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"gamma argument {x} not positive")
    if x.denominator == 1:
        n = int(x)
        return HalfPiExact(Fraction(math.factorial(n - 1)), 0)
    if x.denominator == 2:
        k = int(x - Fraction(1, 2))
        # Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
        coeff = Fraction(math.factorial(2 * k),
                         4 ** k * math.factorial(k))
        return HalfPiExact(coeff, 1)
    raise ValueError(f"gamma argument {x} is not a half-integer")


class NotReducible(Exception):
    """Graph does not collapse under series/parallel reductions."""


def bubble_value(n1, n2, dim):
    """The one-loop two-point integral with indices n1, n2 in `dim`."""
    n1, n2, dim = Fraction(n1), Fraction(n2), Fraction(dim)
    try:
        return (gamma_half(dim / 2 - n1) * gamma_half(dim / 2 - n2)
                * gamma_half(n1 + n2 - dim / 2)
                / (gamma_half(n1) * gamma_half(n2)
                   * gamma_half(dim - n1 - n2)))
    except ValueError as exc:
        raise NotReducible(str(exc)) from None


def series_parallel_reduce(edges, external, dim):
    """Reduce a two-point graph by series/parallel steps to an exact value.

    edges: list of (u, v, index) with Fraction indices; external: the two
    external vertices.  Returns HalfPiExact or raises NotReducible.
    """
    dim = Fraction(dim)
    edges = [(u, v, Fraction(n)) for (u, v, n) in edges]
    s, t = external
    factor = HalfPiExact(Fraction(1), 0)
    while True:
        if len(edges) == 1:
            (u, v, n) = edges[0]
            if {u, v} != {s, t}:
                raise NotReducible("single edge does not join the externals")
            # unit external momentum: the last propagator contributes 1,
            # but its index must stay off the Gamma poles encountered so far
            return factor
        # parallel pair
        pair = None
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                if {edges[i][0], edges[i][1]} == {edges[j][0], edges[j][1]}:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair:
            i, j = pair
            u, v, n1 = edges[i]
            n2 = edges[j][2]
            factor = factor * bubble_value(n1, n2, dim)
            merged = (u, v, n1 + n2 - dim / 2)
            edges = [e for k, e in enumerate(edges) if k not in (i, j)]
            edges.append(merged)
            continue
        # series vertex: internal, exactly two incident edge-ends
        degree = {}
        for (u, v, n) in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        series_vertex = None
        for v, d in degree.items():
            if d == 2 and v not in (s, t):
                series_vertex = v
                break
        if series_vertex is None:
            raise NotReducible("no series or parallel reduction applies")
        incident = [e for e in edges if series_vertex in (e[0], e[1])]
        (u1, v1, n1), (u2, v2, n2) = incident
        a = u1 if v1 == series_vertex else v1
        b = u2 if v2 == series_vertex else v2
        edges = [e for e in edges if series_vertex not in (e[0], e[1])]
        edges.append((a, b, n1 + n2))
    # unreachable


def simplex_integral_exact(g, exponents, dim):
    """Exact value of int_simplex Omega_m prod x^(n_e - 1) / Psi^{dim/2},
    via the cut-propagator correspondence, when series-parallel reducible.

    Tries every edge as the cut; raises NotReducible if none works.
    """
    m = g.m
    exps = [Fraction(n) for n in exponents]
    dim = Fraction(dim)
    last_exc = None
    for cut in range(m):
        edges = [(g.edges[i][0], g.edges[i][1], exps[i])
                 for i in range(m) if i != cut]
        external = g.edges[cut]
        if external[0] == external[1]:
            continue
        try:
            p_value = series_parallel_reduce(edges, external, dim)
        except NotReducible as exc:
            last_exc = exc
            continue
        total = p_value / gamma_half(dim / 2)
        for n in exps:
            total = total * gamma_half(n)
        return total
    raise last_exc or NotReducible("no admissible cut edge")


def dipole_exact(i):
    """I_{D_{2i+1}}(1), computed through the Gamma-product route; equals 1."""
    from .graphs import dipole
    g = dipole(2 * i + 1)
    # phi = (-1)^i (2i-1)!! (x_1..x_m)^{i-1} Omega / Psi^{i+1/2}
    double_fact = 1
    for t in range(1, 2 * i, 2):
        double_fact *= t
    prefactor = Fraction((-1) ** i * double_fact)
    raw = simplex_integral_exact(g, [i] * (2 * i + 1), 2 * i + 1)
    value = raw * prefactor
    # normalize by (-2 pi)^{-i}
    assert value.half_power == 2 * i, value
    result = value.coeff * Fraction((-1) ** i)  # pi^i / (-2 pi)^i leaves 2^-i
    result = result / Fraction(2 ** i)
    return result


# ---------------------------------------------------------------------------
# Monte Carlo

@dataclass
class IntegralResult:
    value: float
    std_error: float
    method: str
    samples: int = 0
    seed: int = 0
    meta: dict = field(default_factory=dict)

    def within(self, target, nsigma=3.0, floor=1e-9):
        return abs(self.value - target) <= nsigma * max(self.std_error, floor)


def _poly_arrays(p, m):
    """(coefficient vector, exponent matrix) of a Poly for vectorized eval."""
    coeffs = np.array([float(c) for c in p.terms.values()], dtype=float)
    exps = np.array([list(e) for e in p.terms.keys()], dtype=float)
    if len(p.terms) == 0:
        coeffs = np.zeros(1)
        exps = np.zeros((1, m))
    return coeffs, exps


def mc_integrate(q_poly, psi_poly, s, m, samples, seed, batch=200_000):
    """Unbiased estimate of int_simplex Q Omega_m / Psi^{s/2}.

    Dirichlet(1/2) importance sampling; deterministic for fixed seed and
    sample count (batch streams are spawned from the master seed in order).
    """
    if not q_poly.terms:
        return IntegralResult(0.0, 0.0, "monte-carlo", samples, seed)
    qc, qe = _poly_arrays(q_poly, m)
    pc, pe = _poly_arrays(psi_poly, m)
    log_norm = math.lgamma(m / 2.0) - (m / 2.0) * math.log(math.pi)
    total = 0.0
    total_sq = 0.0
    done = 0
    seq = np.random.SeedSequence(seed)
    n_batches = (samples + batch - 1) // batch
    children = seq.spawn(n_batches)
    for b in range(n_batches):
        count = min(batch, samples - done)
        rng = np.random.Generator(np.random.PCG64(children[b]))
        gam = rng.gamma(0.5, size=(count, m))
        np.clip(gam, 1e-300, None, out=gam)
        y = gam / gam.sum(axis=1, keepdims=True)
        logy = np.log(y)
        qv = (np.exp(logy @ qe.T) * qc).sum(axis=1)
        psiv = (np.exp(logy @ pe.T) * pc).sum(axis=1)
        if np.any(psiv <= 0):
            raise ValueError("Symanzik polynomial non-positive at a sample")
        log_density = log_norm - 0.5 * logy.sum(axis=1)
        w = qv * np.exp(-(s / 2.0) * np.log(psiv) - log_density)
        total += float(w.sum())
        total_sq += float((w * w).sum())
        done += count
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    err = math.sqrt(var / samples)
    return IntegralResult(mean, err, "monte-carlo", samples, seed)


# ---------------------------------------------------------------------------
# canonical integrals

def _normalization(loops):
    """(-2 pi)^{-loops/2} as a float scale."""
    half = loops // 2
    return ((-1) ** half) / (2 * math.pi) ** half


def canonical_integral(g, omega=BETA5, samples=2_000_000, seed=2024,
                       cache=None, batch=200_000):
    """I_G(omega): dispatch between exact zeros, exact dipoles, and MC.

    The sign convention comes from the oriented cycle basis of g (certified
    determinant +1), so the result transforms with the orientation of g.
    """
    loops = loop_number(g)
    n, m = g.n, g.m
    if loops % 2 or n != omega.degree + 2 or m != loops + omega.degree + 1:
        return IntegralResult(0.0, 0.0, "exact-zero", 0, seed,
                              {"reason": "degree mismatch"})
    key, key_sign = canonical_key(g)
    if key_sign == 0:
        return IntegralResult(0.0, 0.0, "exact-zero", 0, seed,
                              {"reason": "odd automorphism"})
    reason = vanishing_reason(g, omega)
    if reason:
        return IntegralResult(0.0, 0.0, "exact-zero", 0, seed,
                              {"reason": reason})
    if omega == ONE and n == 2:
        # g is a dipole; canonical_key folded its orientation into key_sign
        i = loops // 2
        value = dipole_exact(i) * key_sign
        return IntegralResult(float(value), 0.0, "exact-dipole", 0, seed)
    if cache is not None:
        hit = cache.lookup(key, key_sign, omega, samples, seed)
        if hit is not None:
            return hit
    q_poly, s = top_numerator(g, omega)
    if not q_poly.terms:
        return IntegralResult(0.0, 0.0, "exact-zero", 0, seed,
                              {"reason": "zero numerator"})
    scale = _normalization(loops)
    exact_raw = _series_parallel_total(g, q_poly, s)
    if exact_raw is not None:
        if exact_raw.half_power != loops and exact_raw.coeff != 0:
            raise AssertionError("unexpected pi power in exact reduction")
        result = IntegralResult(float(exact_raw) * scale, 0.0,
                                "exact-series-parallel", 0, seed)
    else:
        from .tropical import tropical_integrate
        psi = GraphForms(g).psi()
        value, err = tropical_integrate(q_poly, psi, s, g, samples, seed,
                                        batch=batch)
        result = IntegralResult(value * scale, err * abs(scale),
                                "monte-carlo", samples, seed)
    if cache is not None:
        cache.store(key, key_sign, omega, result)
    return result


def _series_parallel_total(g, q_poly, s):
    """Monomial-wise exact reduction of int Q Omega / Psi^{s/2}, or None."""
    total = HalfPiExact(Fraction(0), 0)
    for exps, coeff in q_poly.terms.items():
        try:
            piece = simplex_integral_exact(g, [e + 1 for e in exps], s)
        except NotReducible:
            return None
        term = piece * Fraction(coeff)
        if total.coeff == 0:
            total = term
        elif term.coeff == 0:
            pass
        elif term.half_power != total.half_power:
            return None  # mixed pi powers; fall back to Monte Carlo
        else:
            total = HalfPiExact(total.coeff + term.coeff, total.half_power)
    return total


def graph_seed(seed, g):
    """Deterministic per-graph stream id derived from the master seed."""
    import zlib
    return (seed * 1_000_003 + zlib.crc32(
        serialize_adjacency(g).encode())) % (2 ** 62)


def tau1_of_chain(chain, samples=2_000_000, seed=2024, cache=None):
    """Evaluate the 6-loop beta^5 cocycle on a chain; errors in quadrature."""
    total = 0.0
    var = 0.0
    exact = True
    for key, coeff in chain.items():
        g = key.graph()
        res = canonical_integral(g, BETA5, samples=samples,
                                 seed=graph_seed(seed, g), cache=cache)
        c = float(coeff)
        total += c * res.value
        var += (c * res.std_error) ** 2
        if res.method == "monte-carlo":
            exact = False
    method = "exact-zero" if exact and total == 0.0 else "monte-carlo"
    return IntegralResult(total, math.sqrt(var), method, samples, seed)


# ---------------------------------------------------------------------------
# append-only result cache (JSON lines)

class ResultCache:
    def __init__(self, path):
        self.path = path
        self._entries = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self._entries[self._key(rec)] = rec

    @staticmethod
    def _key(rec):
        return (rec["key"], rec["omega"], rec["samples"], rec["seed"])

    def lookup(self, key, key_sign, omega, samples, seed):
        rec = self._entries.get((serialize_adjacency(key.graph()), repr(omega),
                                 samples, seed))
        if rec is None:
            return None
        return IntegralResult(rec["value"] * key_sign,
                              rec["std_error"], rec["method"],
                              rec["samples"], rec["seed"],
                              {"cache": True})

    def store(self, key, key_sign, omega, result):
        rec = {
            "key": serialize_adjacency(key.graph()),
            "omega": repr(omega),
            "method": result.method,
            "value": result.value * key_sign,  # stored for the reference orientation
            "std_error": result.std_error,
            "samples": result.samples,
            "seed": result.seed,
            "code_version": CODE_VERSION,
        }
        self._entries[self._key(rec)] = rec
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec) + "\n")
