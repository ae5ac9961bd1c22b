"""Measure-side diagnostics: cylinder weights, Bernoulli truncations, witnesses.

Equilibrium states are never built as measures.  Everything here is either
a finite-level inequality that must hold exactly, or a certificate (a word
whose block products have different spectral radii) that two equilibrium
states differ.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from . import _exact
from .config import check_budget
from .errors import InputError
from .mats import spectral_radius, to_rows, word_product, words
from .pressure import _check_args, _scale_of, iter_product_chunks, log_norm_power_sum, log_norms


@dataclass(frozen=True)
class GibbsTable:
    """Weights ``||A_w||^s exp(-n P_used)`` over all words of length ``n``.

    ``ratio_bounds`` is the (min, max) of ``N^n * weight / mass``: the
    weights relative to the uniform distribution after renormalizing to
    total mass one.
    """

    s: float
    n: int
    P_used: float
    weights: dict
    mass: float
    ratio_bounds: tuple


def gibbs_weights(t, s, n, P_used, norm="operator", budget=None):
    _check_args(s, norm)
    if n < 0:
        raise InputError("cylinder depth must be >= 0")
    check_budget(t.N ** n, budget)
    if n == 0:
        return GibbsTable(float(s), 0, float(P_used), {(): 1.0}, 1.0, (1.0, 1.0))
    scale = _scale_of(t)
    shift = n * (s * math.log(scale) - P_used)
    logs = np.concatenate([s * log_norms(p, norm) for _, p in iter_product_chunks(t, n, scale)])
    w = np.exp(logs + shift)
    mass = float(math.fsum(w))
    rel = w * (t.N ** n) / mass if mass > 0 else w
    table = {word: float(x) for word, x in zip(words(t.N, n), w)}
    return GibbsTable(float(s), n, float(P_used), table, mass, (float(rel.min()), float(rel.max())))


@dataclass(frozen=True)
class BernoulliMeasure:
    """Product measure on one-sided sequences from a probability vector.

    Rational entries must sum to one exactly; float entries to within 1e-12.
    """

    p: tuple

    def __post_init__(self):
        p = tuple(self.p)
        if not p:
            raise InputError("empty probability vector")
        if any(x < 0 for x in p):
            raise InputError("probabilities must be nonnegative")
        if all(isinstance(x, (int, Fraction)) for x in p):
            p = tuple(Fraction(x) for x in p)
            if sum(p) != 1:
                raise InputError(f"probabilities sum to {sum(p)}, not 1")
        elif abs(math.fsum(float(x) for x in p) - 1.0) > 1e-12:
            raise InputError("probabilities must sum to 1")
        object.__setattr__(self, "p", p)

    @property
    def N(self):
        return len(self.p)

    def cylinder(self, word):
        out = Fraction(1) if isinstance(self.p[0], Fraction) else 1.0
        for letter in word:
            out *= self.p[letter - 1]
        return out

    def entropy(self):
        return -math.fsum(float(x) * math.log(float(x)) for x in self.p if x > 0)

    def cylinder_array(self, n):
        """Cylinder masses of all length-``n`` words in lexicographic order."""
        p = np.array([float(x) for x in self.p])
        out = np.ones(1)
        for _ in range(n):
            out = np.kron(out, p)
        return out


def _check_measure(t, nu):
    if nu.N != t.N:
        raise InputError(f"measure has {nu.N} letters, tuple has {t.N}")


def lyapunov_upper(t, nu, n, norm="operator", budget=None):
    """``(1/n) sum_{|w|=n} nu[w] log ||A_w||``, an upper bound for the Lyapunov exponent."""
    _check_measure(t, nu)
    if n < 1:
        raise InputError("n must be a positive integer")
    check_budget(t.N ** n, budget)
    scale = _scale_of(t)
    masses = nu.cylinder_array(n)
    total = []
    for start, prods in iter_product_chunks(t, n, scale):
        m = masses[start:start + len(prods)]
        ln = log_norms(prods, norm)
        live = m > 0
        if np.any(ln[live] == -np.inf):
            return -math.inf
        total.append(math.fsum(m[live] * ln[live]))
    return math.fsum(total) / n + math.log(scale)


def variational_gap(t, s, nu, n, norm="operator", budget=None):
    """``a_n / n - (h(nu) + s * Lambda_n(nu))``; Jensen's inequality makes it >= 0."""
    _check_args(s, norm)
    lam = lyapunov_upper(t, nu, n, norm, budget)
    a_n = log_norm_power_sum(t, s, n, norm, budget)
    if lam == -math.inf:
        return math.inf
    return a_n / n - (nu.entropy() + s * lam)


@dataclass(frozen=True)
class Witness:
    """A word whose products in two tuples have different spectral radii."""

    word: tuple
    rho_a: object
    rho_b: object

    def to_json(self):
        return {"word": list(self.word), "rho_a": radius_json(self.rho_a),
                "rho_b": radius_json(self.rho_b)}


def radius_json(r):
    if isinstance(r, _exact.ExactRadius):
        v = r.value
        out = {"exact": True, "approx": float(r)}
        out["value"] = None if v is None else (str(v.numerator) if v.denominator == 1
                                               else f"{v.numerator}/{v.denominator}")
        sq = r.squared
        out["squared_minimal_polynomial"] = [str(c) for c in _exact.poly_coeffs(sq.minpoly)]
        return out
    return {"exact": False, "approx": float(r)}


def _radii_differ(ma, mb, exact):
    if not exact:
        ra, rb = spectral_radius(ma), spectral_radius(mb)
        return abs(ra - rb) > 1e-9 * max(ra, rb, 1e-300), ra, rb
    # equal characteristic polynomials settle it without root isolation
    if _exact.charpoly(to_rows(ma)) == _exact.charpoly(to_rows(mb)):
        return False, None, None
    ra, rb = spectral_radius(ma), spectral_radius(mb)
    return ra != rb, ra, rb


def distinctness_witness(blocks_a, blocks_b, s, max_len):
    """First word (shortest, then lexicographic) with differing spectral radii, or None.

    Differing radii at some word rule out equal equilibrium states for every
    ``s > 0``; ``s`` is accepted for the record and does not affect the search.
    Radii compare exactly for exact tuples and to 1e-9 relative otherwise.
    """
    if blocks_a.N != blocks_b.N:
        raise InputError(f"tuples index different alphabets ({blocks_a.N} vs {blocks_b.N} letters)")
    if not s > 0:
        raise InputError("s must be positive")
    if blocks_a.mode != blocks_b.mode:
        raise InputError("mixed exact/float comparison")
    exact = blocks_a.is_exact
    for n in range(1, max_len + 1):
        check_budget(blocks_a.N ** n, None, what="witness search")
        for w in words(blocks_a.N, n):
            differ, ra, rb = _radii_differ(word_product(blocks_a, w), word_product(blocks_b, w), exact)
            if differ:
                return Witness(w, ra, rb)
    return None
