"""Truncations and limits of the pressure ``P(A, s)``.

``a_n = log sum_{|w| = n} ||A_w||^s`` is subadditive, so every ``a_n / n``
bounds ``P(A, s)`` from above.  Float enumeration runs over fixed-size
chunks of words with log-sum-exp accumulation, so results do not depend on
the thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from . import _exact
from .config import check_budget
from .errors import InputError
from .mats import frobenius_norm_squared, identity_like, index_word, log_or_neg_inf

NORMS = ("operator", "frobenius")
CHUNK_WORDS = 2 ** 14


def _check_args(s, norm):
    if not s > 0:
        raise InputError(f"s must be positive, got {s!r}")
    if norm not in NORMS:
        raise InputError(f"norm must be one of {NORMS}, got {norm!r}")


def _all_products(stack, n):
    d = stack.shape[1]
    prods = np.eye(d)[None]
    for _ in range(n):
        prods = np.matmul(stack[None, :, :, :], prods[:, None, :, :]).reshape(-1, d, d)
    return prods


def iter_product_chunks(t, n, scale=1.0, chunk=CHUNK_WORDS):
    """Yield ``(first_index, products)`` covering all length-``n`` words in order.

    Products are float arrays of the tuple divided by ``scale``.  Words are
    split into a head (enumerated one at a time) and a tail (vectorized).
    """
    stack = t.float_stack() / scale
    N = t.N
    tail_len = 0
    while tail_len < n and N ** (tail_len + 1) <= chunk:
        tail_len += 1
    tail = _all_products(stack, tail_len)
    head_len = n - tail_len
    if head_len == 0:
        yield 0, tail
        return
    n_tail = N ** tail_len
    for h in range(N ** head_len):
        word = index_word(h, N, head_len)
        head = np.eye(t.d)
        for letter in word:
            head = stack[letter - 1] @ head
        yield h * n_tail, np.matmul(tail, head)


def _scale_of(t):
    """Power of two near the largest operator norm; dividing by it is exact."""
    top = max(np.linalg.norm(m, 2) for m in t.float_stack())
    return 2.0 ** round(math.log2(top)) if top > 0 else 1.0


def log_norms(prods, norm="operator"):
    """Log of the chosen norm of each matrix in an (M, d, d) stack."""
    d = prods.shape[-1]
    with np.errstate(divide="ignore"):
        if norm == "frobenius":
            return 0.5 * np.log(np.einsum("kij,kij->k", prods, prods))
        if d == 1:
            return np.log(np.abs(prods[:, 0, 0]))
        if d == 2:
            fro = np.einsum("kij,kij->k", prods, prods)
            det = prods[:, 0, 0] * prods[:, 1, 1] - prods[:, 0, 1] * prods[:, 1, 0]
            disc = np.sqrt(np.maximum(fro * fro - 4 * det * det, 0.0))
            return 0.5 * np.log((fro + disc) / 2)
        return np.log(np.linalg.norm(prods, 2, axis=(1, 2)))


def _partial_lse(x):
    m = np.max(x)
    if m == -np.inf:
        return -math.inf, 0.0
    return float(m), float(np.sum(np.exp(x - m)))


def _combine_lse(parts):
    top = max(m for m, _ in parts)
    if top == -math.inf:
        return -math.inf
    return top + math.log(math.fsum(sv * math.exp(m - top) for m, sv in parts if sv))


def _map_chunks(fn, chunks, threads):
    if threads is None or threads <= 1:
        return [fn(c) for c in chunks]
    out = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        batch = []
        for c in chunks:
            batch.append(c)
            if len(batch) == 4 * threads:
                out.extend(pool.map(fn, batch))
                batch = []
        out.extend(pool.map(fn, batch))
    return out


def log_norm_power_sum(t, s, n, norm="operator", budget=None, threads=1):
    """``log sum_{|w|=n} ||A_w||^s`` in floating point (``-inf`` if every product vanishes)."""
    _check_args(s, norm)
    check_budget(t.N ** n, budget)
    if n == 0:
        return 0.0 if norm == "operator" else 0.5 * s * math.log(t.d)
    scale = _scale_of(t)

    def part(chunk):
        return _partial_lse(s * log_norms(chunk[1], norm))

    parts = _map_chunks(part, iter_product_chunks(t, n, scale), threads)
    total = _combine_lse(parts)
    return total + n * s * math.log(scale) if total != -math.inf else total


def _exact_power(t, s, norm):
    return (t.is_exact and norm == "frobenius" and float(s).is_integer() and int(s) % 2 == 0)


def norm_power_sum_exact(t, s, n, budget=None):
    """Exact ``sum ||A_w||_F^s`` for an exact tuple and even integer ``s``."""
    if not _exact_power(t, s, "frobenius"):
        raise InputError("exact sums need an exact tuple, the Frobenius norm and even integer s")
    check_budget(t.N ** n, budget)
    half = int(s) // 2
    level = [identity_like(t)]
    for _ in range(n):
        level = [a @ p for p in level for a in t.matrices]
    total = Fraction(0)
    for m in level:
        total += frobenius_norm_squared(m) ** half
    return total


def pressure_upper(t, s, n, norm="operator", exact=False, budget=None, threads=1):
    """``a_n / n``, an upper bound for ``P(A, s)``; ``-inf`` if all length-``n`` products vanish.

    With ``exact=True`` (exact tuple, Frobenius norm, even integer ``s``) the
    sum is formed in rational arithmetic and only the final log is rounded.
    """
    _check_args(s, norm)
    if n < 1:
        raise InputError("n must be a positive integer")
    if exact:
        return log_or_neg_inf(norm_power_sum_exact(t, s, n, budget)) / n
    return log_norm_power_sum(t, s, n, norm, budget, threads) / n


@dataclass(frozen=True)
class PressureEstimate:
    """Truncations ``a_n / n`` for ``n = 1..n_max`` and the telescoped extrapolation.

    ``extrapolated`` is ``(a_{2m} - a_m) / m`` for the largest ``m`` with
    ``2m <= n_max``; it cancels the bounded term in ``a_n = n P + O(1)``.
    """

    s: float
    values: tuple
    extrapolated: float
    norm_used: str
    minus_infinity: bool = False
    slack: float = 0.1
    logs: tuple = field(default=(), repr=False)

    @property
    def truncations(self):
        return dict(self.values)

    @property
    def best_upper_bound(self):
        return min(v for _, v in self.values)

    def subadditivity_gaps(self):
        """``a_m + a_n - a_{m+n}`` over all recorded pairs; all should be >= -1e-9."""
        a = dict(zip((n for n, _ in self.values), self.logs))
        return {(m, n): a[m] + a[n] - a[m + n]
                for m in a for n in a if m <= n and m + n in a}

    def is_consistent(self):
        return self.minus_infinity or self.best_upper_bound >= self.extrapolated - self.slack

    def to_json(self):
        return {
            "s": self.s,
            "norm": self.norm_used,
            "values": [[n, _finite(v)] for n, v in self.values],
            "extrapolated": _finite(self.extrapolated),
            "minus_infinity": self.minus_infinity,
        }


def _finite(x):
    return None if x == -math.inf else x


def pressure_estimate(t, s, n_max, norm="operator", budget=None, threads=1, slack=0.1):
    if n_max < 2:
        raise InputError("n_max must be at least 2")
    _check_args(s, norm)
    logs = []
    for n in range(1, n_max + 1):
        logs.append(log_norm_power_sum(t, s, n, norm, budget, threads))
    minus_inf = any(a == -math.inf for a in logs)
    for n in range(n_max + 1, t.d + 1):
        if minus_inf:
            break
        minus_inf = log_norm_power_sum(t, s, n, norm, budget, threads) == -math.inf
    values = tuple((n, a / n) for n, a in enumerate(logs, start=1))
    if minus_inf:
        extrapolated = -math.inf
    else:
        m = n_max // 2
        extrapolated = (logs[2 * m - 1] - logs[m - 1]) / m
    return PressureEstimate(float(s), values, extrapolated, norm, minus_inf, slack, tuple(logs))


def vector_growth_sum(t, s, v, n, exact=False, budget=None):
    """``b_n(v) = sum_{|w|=n} ||A_w v||^s``; rational when ``exact`` and ``s`` is even."""
    _check_args(s, "operator")
    v = _check_vector(t, v, exact)
    check_budget(t.N ** n, budget)
    if exact:
        if not (t.is_exact and float(s).is_integer() and int(s) % 2 == 0):
            raise InputError("exact vector sums need an exact tuple and even integer s")
        level = [v]
        for _ in range(n):
            level = [a @ u for u in level for a in t.matrices]
        half = int(s) // 2
        return sum((sum((x * x for x in u), Fraction(0)) ** half for u in level), Fraction(0))
    return math.exp(_log_vector_sum(t, s, np.asarray(v, dtype=float), n))


def _check_vector(t, v, exact):
    if exact:
        arr = np.array([_exact.to_fraction(x) for x in v], dtype=object)
    else:
        arr = np.asarray(v, dtype=float)
    if arr.shape != (t.d,):
        raise InputError(f"vector must have length {t.d}")
    if not np.any(arr != 0):
        raise InputError("vector must be nonzero")
    return arr


def _log_vector_sum(t, s, v, n):
    if n == 0:
        return s * math.log(np.linalg.norm(v))
    scale = _scale_of(t)
    parts = []
    for _, prods in iter_product_chunks(t, n, scale):
        imgs = prods @ v
        with np.errstate(divide="ignore"):
            parts.append(_partial_lse(s * np.log(np.linalg.norm(imgs, axis=1))))
    total = _combine_lse(parts)
    return total + n * s * math.log(scale) if total != -math.inf else total


def pressure_vector_growth(t, s, v, n, budget=None):
    """``(1/n) log b_n(v)``; its lim sup equals ``P(A, s)`` when the tuple is irreducible."""
    if n < 1:
        raise InputError("n must be a positive integer")
    _check_args(s, "operator")
    v = _check_vector(t, v, False)
    check_budget(t.N ** n, budget)
    return _log_vector_sum(t, s, v, n) / n


def transfer_matrix_s2(t):
    """Matrix on vec(M_d) of ``X -> sum A_i^T X A_i`` (float)."""
    stack = t.float_stack()
    return sum(np.kron(a.T, a.T) for a in stack)


def pressure_s2_exact(t):
    """``P(A, 2)`` as the log spectral radius of the map ``X -> sum A_i^T X A_i``.

    Iterating the map from the identity gives ``sum_{|w|=n} ||A_w||_F^2``
    as a trace, so its growth rate is the pressure at ``s = 2``.
    """
    rho = float(np.max(np.abs(np.linalg.eigvals(transfer_matrix_s2(t)))))
    return math.log(rho) if rho > 0 else -math.inf
