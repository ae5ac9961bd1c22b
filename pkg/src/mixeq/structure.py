"""Invariant subspaces, block-triangular forms, cyclic forms and the mixing classifier.

Exact (rational) tuples get certified answers where a certificate exists:

* Burnside: if the unital algebra spanned by all products has dimension
  ``d**2`` there is no invariant subspace over R (or C).
* For ``d <= 3`` the exhaustive search in :mod:`mixeq.oracle` decides real
  irreducibility.
* Every proper invariant subspace that is reported has been checked by
  exact containment.

For ``d > 3`` invariant subspaces are looked for with a randomized search
(kernels of polynomials in random algebra elements, spun up under the
generators, plus the same on the transposed tuple).  Failing to find one
proves nothing, and the verdict is then ``Unknown``.

A cyclic structure of period ``l`` is a splitting ``R^d = U_1 + ... + U_l``
with every ``A_i`` mapping ``U_j`` into ``U_{j+1}`` (indices mod ``l``).
It is grown from a minimal invariant subspace ``U_1`` of the length-``l``
power tuple by ``U_{j+1} = span A U_j``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import functools
import random

import numpy as np

from . import _exact
from .config import DEFAULT_SEED, check_budget
from .errors import (BudgetError, InputError, PartialResultError, UnknownStructureError,
                     UnsupportedRegimeError)
from .gibbs import distinctness_witness
from .mats import (MatrixTuple, _as_exact_array, is_invertible, matrix_to_strings, power_tuple,
                   to_rows, word_product, words)
from .oracle import invariant_subspaces_d_le_3
from .subspaces import Subspace, orthogonal_complement, rational_hull, spin

__all__ = [
    "Subspace", "IrreducibilityVerdict", "BlockTriangularForm", "CyclicStructure",
    "MixingReport", "algebra_span_dim", "find_invariant_subspace",
    "minimal_invariant_subspaces", "is_irreducible", "block_triangularize",
    "cyclic_decomposition", "classify_mixing", "divisors",
]

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"

NOT_MIXING = "NotMixing"
MIXING = "Mixing"
INCONCLUSIVE = "Inconclusive"
UNSUPPORTED = "UnsupportedRegime"

_RANDOM_ELEMENTS = 12


def _require_exact(t, what):
    if not t.is_exact:
        raise InputError(f"{what} needs an exact (rational) tuple")


def _mats_rows(t):
    return [to_rows(m) for m in t.matrices]


def _flat(m):
    return [x for row in m for x in row]


# -- algebra dimension -------------------------------------------------------

def algebra_span_dim(t, max_len=None, budget=None):
    """Dimension of the span of the identity and all products of length ``<= max_len``.

    The span is grown breadth-first from the identity, and only products that
    enlarge it are extended, so the loop stops as soon as it stabilizes.
    Returns the stabilized dimension; raises :class:`PartialResultError`
    (carrying the dimension reached) if ``max_len`` runs out first.  The
    default ``max_len = d**2`` always suffices.
    """
    _require_exact(t, "algebra_span_dim")
    d = t.d
    if max_len is None:
        max_len = d * d
    mats = _mats_rows(t)
    span = _exact.EchelonBasis()
    eye = _exact.identity(d)
    span.add(_flat(eye))
    frontier = [eye]
    products = 0
    for _ in range(max_len):
        nxt = []
        for f in frontier:
            for a in mats:
                products += 1
                check_budget(products, budget, what="algebra span closure")
                p = _exact.mat_mul(a, f)
                if span.add(_flat(p)):
                    nxt.append(p)
        frontier = nxt
        if not frontier:
            return span.dim
    # one more level decides whether the span is already closed
    for f in frontier:
        for a in mats:
            if _flat(_exact.mat_mul(a, f)) not in span:
                raise PartialResultError(
                    f"span not closed after words of length {max_len}", lower_bound=span.dim)
    return span.dim


def _float_algebra_dim(t, tol=1e-9):
    d = t.d
    stack = t.float_stack()
    basis = np.eye(d).reshape(1, -1) / np.sqrt(d)
    frontier = [np.eye(d)]
    for _ in range(d * d):
        nxt = []
        for f in frontier:
            for a in stack:
                if basis.shape[0] == d * d:
                    return d * d
                p = a @ f
                nrm = np.linalg.norm(p)
                if nrm == 0:
                    continue
                p = p / nrm
                # distance from the current span, basis rows kept orthonormal
                r = p.reshape(-1) - basis.T @ (basis @ p.reshape(-1))
                if np.linalg.norm(r) > tol:
                    basis = np.vstack([basis, r / np.linalg.norm(r)])
                    nxt.append(p)
        frontier = nxt
        if not frontier:
            break
    return basis.shape[0]


# -- invariant subspace search -----------------------------------------------

def _vec_in_coords(basis_rows, coords):
    out = [Fraction(0)] * len(basis_rows[0])
    for c, row in zip(coords, basis_rows):
        if c != 0:
            out = [a + c * b for a, b in zip(out, row)]
    return out


def restrict(t, u):
    """Action of ``t`` on an invariant rational subspace, in the RREF basis of ``u``.

    Coordinates of a vector of ``u`` are its entries at the pivot columns.
    """
    piv = u.pivots
    out = []
    for m in _mats_rows(t):
        cols = [[_exact.mat_vec(m, list(b))[p] for p in piv] for b in u.basis]
        out.append(_exact.columns_to_matrix(cols))
    return MatrixTuple.exact(out, allow_zero=True)


def _lift(u, inner):
    """Subspace of R^d spanned by ``inner`` (coordinates relative to ``u``)."""
    rows = [list(r) for r in u.basis]
    return Subspace.from_vectors([_vec_in_coords(rows, list(v)) for v in inner.basis], u.ambient)


def _rational_small(t):
    """Rational invariant subspaces for d <= 3 that are minimal over Q."""
    found = []
    for u in invariant_subspaces_d_le_3(t):
        r = rational_hull(u)
        if 0 < r.dim < t.d:
            found.append(r)
    found = _dedupe(found)
    return [u for u in found
            if not any(v.dim < u.dim and all(u.contains(b) for b in v.basis) for v in found)]


def _dedupe(subspaces):
    out = []
    for u in sorted(subspaces, key=Subspace.sort_key):
        if not any(u.equals(v) for v in out):
            out.append(u)
    return out


def _random_elements(mats, d, rng, pairs=8):
    """Generators, some commutators and random combinations of short products.

    Large alphabets (power tuples) are sampled: at most ``pairs`` commutators
    and ``pairs`` two-letter products enter the pool.
    """
    idx = [(i, j) for i in range(len(mats)) for j in range(len(mats)) if i != j]
    chosen = rng.sample(idx, min(pairs, len(idx)))
    prods = [_exact.mat_mul(mats[i], mats[j]) for i, j in chosen]
    elems = list(mats)
    for (i, j), ab in zip(chosen, prods):
        ba = _exact.mat_mul(mats[j], mats[i])
        elems.append([[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)])
    short = [_exact.identity(d)] + list(mats) + prods
    for _ in range(_RANDOM_ELEMENTS):
        acc = [[Fraction(0)] * d for _ in range(d)]
        for m in short:
            c = rng.randint(-3, 3)
            if c:
                acc = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, m)]
        elems.append(acc)
    return elems


def _heuristic_candidates(t, seed):
    """Proper invariant subspaces found by spinning kernel vectors (exact, any d)."""
    d = t.d
    rng = random.Random(seed)
    mats = _mats_rows(t)
    mats_t = [_exact.transpose(m) for m in mats]
    found = []
    for elems, gens, dual in ((_random_elements(mats, d, rng), mats, False),
                              (_random_elements(mats_t, d, rng), mats_t, True)):
        for m in elems:
            for g in _exact.irreducible_factors(_exact.charpoly(m)):
                kernel = _exact.nullspace(_exact.eval_matrix_poly(_exact.poly_coeffs(g), m), d)
                trials = list(kernel)
                if len(kernel) > 1:
                    trials.append(_vec_in_coords(kernel, [rng.randint(-3, 3) or 1 for _ in kernel]))
                for v in trials:
                    span = spin(gens, [v])
                    if 0 < span.dim < d:
                        u = Subspace.from_vectors(span.rows, d)
                        found.append(orthogonal_complement(u) if dual else u)
    return _dedupe(found)


def _search(t, seed):
    if t.d <= 3:
        return _rational_small(t)
    return _heuristic_candidates(t, seed)


def minimal_invariant_subspaces(t, seed=DEFAULT_SEED):
    """Rational invariant subspaces, each with no smaller one found inside it.

    Sorted by dimension, then by RREF basis.  Complete for ``d <= 3``
    (minimal over Q); a best effort for larger ``d``.  Irrational invariant
    subspaces are represented by their rational hulls.
    """
    _require_exact(t, "minimal_invariant_subspaces")
    return list(_minimal_cached(tuple(tuple(m.flat) for m in t.matrices), t.d, seed))


@functools.lru_cache(maxsize=64)
def _minimal_cached(key, d, seed):
    # the structure search asks the same power tuple several times
    t = MatrixTuple.exact([np.array(flat, dtype=object).reshape(d, d) for flat in key],
                          allow_zero=True)
    return tuple(_dedupe([_shrink(t, u, seed) for u in _search(t, seed)]))


def _shrink(t, u, seed):
    """Descend into ``u`` while a smaller invariant subspace can be found."""
    while u.dim > 1:
        inner = _search(restrict(t, u), seed)
        if not inner:
            break
        u = _lift(u, inner[0])
    return u


def find_invariant_subspace(t, seed=DEFAULT_SEED):
    """A proper invariant subspace, or None when the search finds nothing.

    Exact tuples with ``d <= 3`` use the exhaustive search and may return an
    irrational subspace when no rational one exists.  None is a proof of
    irreducibility only for exact tuples with ``d <= 3``.  Float tuples use
    a numerical search and return a float subspace.
    """
    if not t.is_exact:
        return _float_search(t, seed)
    if t.d == 1:
        return None
    if t.d <= 3:
        found = invariant_subspaces_d_le_3(t)
        return found[0] if found else None
    found = minimal_invariant_subspaces(t, seed)
    return found[0] if found else None


def _float_search(t, seed, tol=1e-8):
    d = t.d
    stack = t.float_stack()
    rng = np.random.default_rng(seed)
    scale = max(np.linalg.norm(a, 2) for a in stack)
    for gens in (stack, stack.transpose(0, 2, 1)):
        dual = gens is not stack
        for _ in range(_RANDOM_ELEMENTS):
            m = np.tensordot(rng.standard_normal(len(gens)), gens, axes=1)
            vals, vecs = np.linalg.eig(m)
            for lam, v in zip(vals, vecs.T):
                if abs(lam.imag) > tol * scale:
                    continue
                basis = _float_spin(gens, v.real, tol)
                if 0 < basis.shape[0] < d:
                    u = Subspace.from_float(basis, d)
                    if dual:
                        _, s, vt = np.linalg.svd(np.asarray(u.basis), full_matrices=True)
                        u = Subspace.from_float(vt[u.dim:], d)
                    if u.is_invariant(t, 1e-6):
                        return u
    return None


def _float_spin(gens, v, tol):
    basis = (v / np.linalg.norm(v)).reshape(1, -1)
    frontier = [basis[0]]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                w = g @ u
                w = w - basis.T @ (basis @ w)
                nrm = np.linalg.norm(w)
                if nrm > tol * max(np.linalg.norm(g, 2), 1.0):
                    w = w / nrm
                    basis = np.vstack([basis, w])
                    nxt.append(w)
        frontier = nxt
    return basis


# -- irreducibility ------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Outcome of :func:`is_irreducible`.

    ``method`` names the certificate: ``"burnside"`` (``span_dim == d**2``),
    ``"exhaustive"`` (the d <= 3 search found no invariant subspace),
    ``"subspace"`` (``subspace`` is invariant, checked exactly) or
    ``"search"`` (nothing found, nothing proved).  Float verdicts set
    ``heuristic``.
    """

    status: str
    method: str
    subspace: object = None
    span_dim: object = None
    heuristic: bool = False

    @property
    def irreducible(self):
        return self.status == IRREDUCIBLE

    @property
    def reducible(self):
        return self.status == REDUCIBLE

    def to_json(self):
        out = {"status": self.status, "method": self.method, "heuristic": self.heuristic}
        if self.span_dim is not None:
            out["algebra_dim"] = self.span_dim
        if self.subspace is not None:
            out["subspace"] = self.subspace.to_json()
        return out


def is_irreducible(t, seed=DEFAULT_SEED):
    """Decide whether ``t`` has a proper invariant subspace, with a certificate."""
    d = t.d
    if d == 1:
        return IrreducibilityVerdict(IRREDUCIBLE, "burnside", span_dim=1, heuristic=not t.is_exact)
    if not t.is_exact:
        dim = _float_algebra_dim(t)
        if dim == d * d:
            return IrreducibilityVerdict(IRREDUCIBLE, "burnside", span_dim=dim, heuristic=True)
        u = _float_search(t, seed)
        if u is not None:
            return IrreducibilityVerdict(REDUCIBLE, "subspace", u, dim, heuristic=True)
        return IrreducibilityVerdict(UNKNOWN, "search", span_dim=dim, heuristic=True)
    dim = algebra_span_dim(t)
    if dim == d * d:
        return IrreducibilityVerdict(IRREDUCIBLE, "burnside", span_dim=dim)
    u = find_invariant_subspace(t, seed)
    if u is not None:
        assert u.is_invariant(t)
        return IrreducibilityVerdict(REDUCIBLE, "subspace", u, dim)
    if d <= 3:
        return IrreducibilityVerdict(IRREDUCIBLE, "exhaustive", span_dim=dim)
    return IrreducibilityVerdict(UNKNOWN, "search", span_dim=dim)


# -- block triangular form ----------------------------------------------------------

def _block_ranges(dims):
    out, start = [], 0
    for k in dims:
        out.append((start, start + k))
        start += k
    return out


def _sub(m, rows, cols):
    return m[rows[0]:rows[1], cols[0]:cols[1]]


@dataclass(frozen=True)
class BlockTriangularForm:
    """``X^-1 A_i X`` is block upper triangular with diagonal block sizes ``dims``.

    ``diagonal_blocks[j]`` is the tuple of j-th diagonal blocks;
    ``strict_blocks[(r, c)]`` (``r < c``) holds the above-diagonal blocks,
    one matrix per letter.  ``complete`` is False when some diagonal block
    could not be certified irreducible; ``block_verdicts`` says which.
    """

    X: np.ndarray
    dims: tuple
    diagonal_blocks: tuple
    strict_blocks: dict
    block_verdicts: tuple
    complete: bool
    notes: tuple = ()

    @property
    def X_inv(self):
        return _as_exact_array(_exact.inverse(to_rows(self.X)))

    def conjugated(self, t):
        x_inv = self.X_inv
        return [x_inv @ m @ self.X for m in t.matrices]

    def check(self, t):
        """Exact re-verification of the block pattern and reconstruction."""
        ranges = _block_ranges(self.dims)
        for i, b in enumerate(self.conjugated(t)):
            for r, rr in enumerate(ranges):
                for c, cc in enumerate(ranges):
                    blk = _sub(b, rr, cc)
                    if r > c and np.any(blk != 0):
                        return False
                    if r == c and not np.array_equal(blk, self.diagonal_blocks[r].matrices[i]):
                        return False
            rebuilt = self.X @ b @ self.X_inv
            if not np.array_equal(rebuilt, t.matrices[i]):
                return False
        return True

    def to_json(self):
        return {
            "X": _strings(self.X),
            "dims": list(self.dims),
            "diagonal_blocks": [[_strings(m) for m in blk.matrices] for blk in self.diagonal_blocks],
            "strict_blocks": [{"row": r, "col": c, "matrices": [_strings(m) for m in ms]}
                              for (r, c), ms in sorted(self.strict_blocks.items())],
            "block_verdicts": [v.to_json() for v in self.block_verdicts],
            "complete": self.complete,
            "notes": list(self.notes),
        }


def _strings(m):
    return matrix_to_strings(m)


def _split_basis(u, d):
    """``[basis of u | standard vectors off the pivots]`` as a rational matrix."""
    cols = [list(b) for b in u.basis]
    for i in range(d):
        if i not in u.pivots:
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            cols.append(e)
    return _as_exact_array(_exact.columns_to_matrix(cols))


def _triangularize(t, seed, notes):
    """Return ``(X, dims, verdicts)`` for ``t`` by recursive splitting."""
    d = t.d
    eye = _as_exact_array(_exact.identity(d))
    verdict = is_irreducible(t, seed)
    if verdict.irreducible:
        return eye, (d,), (verdict,)
    minimal = minimal_invariant_subspaces(t, seed)
    if not minimal:
        if verdict.reducible:
            notes.append(f"a {d}-dimensional block is reducible over R but not over Q")
        else:
            notes.append(f"a {d}-dimensional block could not be certified irreducible")
        return eye, (d,), (verdict,)
    u = minimal[0]
    x0 = _split_basis(u, d)
    conj = t.conjugated(x0)
    k = u.dim
    top = MatrixTuple.exact([m[:k, :k] for m in conj.matrices], allow_zero=True)
    bottom = MatrixTuple.exact([m[k:, k:] for m in conj.matrices], allow_zero=True)
    x1, dims1, v1 = _triangularize(top, seed, notes)
    x2, dims2, v2 = _triangularize(bottom, seed, notes)
    inner = np.zeros((d, d), dtype=object)
    inner[:, :] = Fraction(0)
    inner[:k, :k] = x1
    inner[k:, k:] = x2
    return x0 @ inner, dims1 + dims2, v1 + v2


def block_triangularize(t, seed=DEFAULT_SEED):
    """Simultaneous block upper triangular form with irreducible diagonal blocks.

    Invariant subspaces are split off smallest first; the basis is completed
    with standard vectors, so an already triangular tuple keeps ``X = I``.
    Diagonal blocks that cannot be certified irreducible leave the result
    flagged ``complete=False``.
    """
    _require_exact(t, "block_triangularize")
    notes = []
    x, dims, verdicts = _triangularize(t, seed, notes)
    x_inv = _as_exact_array(_exact.inverse(to_rows(x)))
    conj = [x_inv @ m @ x for m in t.matrices]
    ranges = _block_ranges(dims)
    diag = tuple(MatrixTuple.exact([_sub(b, rr, rr) for b in conj], allow_zero=True)
                 for rr in ranges)
    strict = {}
    for r, rr in enumerate(ranges):
        for c, cc in enumerate(ranges):
            if r < c:
                strict[(r, c)] = tuple(_sub(b, rr, cc) for b in conj)
    complete = all(v.irreducible for v in verdicts)
    return BlockTriangularForm(x, dims, diag, strict, verdicts, complete, tuple(notes))


# -- cyclic structure ------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicStructure:
    """A period-``ell`` cyclic splitting ``R^d = U_1 + ... + U_ell``.

    ``X`` stacks the RREF bases of ``U_1, ..., U_ell`` as columns.
    ``blocks[i][j]`` (0-based letter ``i`` and index ``j``) is the k x k
    matrix of ``A_{i+1}: U_{j+1} -> U_{j+2}``.  ``families[j]`` is the
    ``N**ell``-tuple of length-``ell`` products restricted to ``U_{j+1}``,
    in lexicographic word order.
    """

    ell: int
    k: int
    X: np.ndarray
    chain: tuple
    blocks: tuple
    families: tuple
    family_verdicts: tuple = field(default=())

    @property
    def X_inv(self):
        return _as_exact_array(_exact.inverse(to_rows(self.X)))

    def check(self, t):
        """Exact re-verification of every structural property."""
        ell, k, d = self.ell, self.k, t.d
        if k * ell != d or _exact.rank([list(c) for c in self.X.T]) != d:
            return False
        x_inv = self.X_inv
        for i, m in enumerate(t.matrices):
            for j, u in enumerate(self.chain):
                nxt = self.chain[(j + 1) % ell]
                if not all(nxt.contains(list(m @ np.array(b, dtype=object))) for b in u.basis):
                    return False
            b = x_inv @ m @ self.X
            if not np.array_equal(self.X @ b @ x_inv, m):
                return False
            for r in range(ell):
                for c in range(ell):
                    blk = b[r * k:(r + 1) * k, c * k:(c + 1) * k]
                    if r == (c + 1) % ell:
                        if not np.array_equal(blk, self.blocks[i][c]):
                            return False
                    elif np.any(blk != 0):
                        return False
        for idx, w in enumerate(words(t.N, ell)):
            p = x_inv @ word_product(t, w) @ self.X
            for r in range(ell):
                for c in range(ell):
                    blk = p[r * k:(r + 1) * k, c * k:(c + 1) * k]
                    if r == c:
                        if not np.array_equal(blk, self.families[r].matrices[idx]):
                            return False
                    elif np.any(blk != 0):
                        return False
        return True

    def to_json(self):
        return {
            "ell": self.ell,
            "k": self.k,
            "X": _strings(self.X),
            "chain": [u.to_json() for u in self.chain],
            "blocks": [[_strings(b) for b in per_letter] for per_letter in self.blocks],
            "families": [[_strings(m) for m in fam.matrices] for fam in self.families],
            "family_verdicts": [v.to_json() for v in self.family_verdicts],
        }


def divisors(d):
    """Divisors of ``d`` greater than one, ascending."""
    return [ell for ell in range(2, d + 1) if d % ell == 0]


def _chain_from(t, u1):
    """Grow ``U_{j+1} = span A U_j`` until it returns to ``U_1``; None if it fails."""
    d = t.d
    mats = _mats_rows(t)
    chain = [u1]
    total = _exact.EchelonBasis(u1.basis)
    for _ in range(d):
        img = _exact.EchelonBasis()
        for m in mats:
            for b in chain[-1].basis:
                img.add(_exact.mat_vec(m, list(b)))
        nxt = Subspace.from_vectors(img.rows, d) if img.dim else None
        if nxt is None:
            return None
        if nxt.equals(u1):
            return chain if total.dim == d else None
        before = total.dim
        for b in nxt.basis:
            total.add(list(b))
        if total.dim != before + nxt.dim:
            return None
        chain.append(nxt)
    return None


def _merge(chain, ell, d):
    """Coarsen a chain of period ``m`` (a multiple of ``ell``) to period ``ell``."""
    m = len(chain)
    if m == ell:
        return chain
    if m % ell:
        return None
    merged = []
    for j in range(ell):
        vecs = [list(b) for i in range(j, m, ell) for b in chain[i].basis]
        merged.append(Subspace.from_vectors(vecs, d))
    return merged


def _build_structure(t, chain, seed):
    d, ell = t.d, len(chain)
    k = d // ell
    cols = [list(b) for u in chain for b in u.basis]
    x = _as_exact_array(_exact.columns_to_matrix(cols))
    x_inv = _as_exact_array(_exact.inverse(to_rows(x)))
    blocks = []
    for m in t.matrices:
        b = x_inv @ m @ x
        blocks.append(tuple(b[((j + 1) % ell) * k:((j + 1) % ell + 1) * k, j * k:(j + 1) * k]
                            for j in range(ell)))
    prods = power_tuple(t, ell).matrices
    fams = []
    for j in range(ell):
        sl = slice(j * k, (j + 1) * k)
        fams.append(MatrixTuple.exact([(x_inv @ p @ x)[sl, sl] for p in prods], allow_zero=True))
    verdicts = tuple(is_irreducible(f, seed) for f in fams)
    return CyclicStructure(ell, k, x, tuple(chain), tuple(blocks), tuple(fams), verdicts)


def _cyclic_search(t, ell, seed):
    """Return ``(structure or None, verdict on the power tuple)``."""
    power = power_tuple(t, ell)
    pv = is_irreducible(power, seed)
    if pv.irreducible:
        return None, pv
    candidates = minimal_invariant_subspaces(power, seed)
    if not candidates and pv.status == UNKNOWN:
        raise UnknownStructureError(
            f"no invariant subspace of the length-{ell} power tuple was found or ruled out")
    for u1 in candidates:
        chain = _chain_from(t, u1)
        if chain is None:
            continue
        chain = _merge(chain, ell, t.d)
        if chain is None or any(u.dim != t.d // ell for u in chain):
            continue
        return _build_structure(t, chain, seed), pv
    return None, pv


def _check_cyclic_input(t, ell, seed):
    _require_exact(t, "cyclic_decomposition")
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 2:
        raise InputError(f"ell must be an integer > 1, got {ell!r}")
    if t.d % ell:
        raise InputError(f"ell must divide d={t.d}, got {ell}")
    v = is_irreducible(t, seed)
    if v.reducible:
        raise InputError("the tuple is reducible; run block_triangularize first")
    if not any(is_invertible(m) for m in t.matrices):
        raise UnsupportedRegimeError("no member of the tuple is invertible")
    return v


def cyclic_decomposition(t, ell, seed=DEFAULT_SEED):
    """Cyclic structure of period ``ell``, or None if there is none.

    Raises :class:`InputError` for reducible tuples and for ``ell`` not
    dividing ``d``, :class:`UnsupportedRegimeError` when no matrix is
    invertible, and :class:`UnknownStructureError` when the power tuple's
    invariant subspaces could be neither found nor ruled out.
    """
    _check_cyclic_input(t, ell, seed)
    structure, _ = _cyclic_search(t, ell, seed)
    return structure


# -- mixing classifier -----------------------------------------------------------------

@dataclass(frozen=True)
class MixingReport:
    """Three-valued mixing verdict with the certificates behind it.

    ``verdict`` is ``"NotMixing"`` (cyclic structure plus a witness that two
    block families have different equilibrium states), ``"Mixing"`` (every
    power tuple of period dividing ``d`` is certified irreducible),
    ``"Inconclusive"`` or ``"UnsupportedRegime"`` (no invertible member).
    ``witness_pair`` holds the two 1-based family indices compared.
    """

    verdict: str
    s: float
    cyclic: object = None
    witness: object = None
    witness_pair: object = None
    ell_tested: tuple = ()
    power_verdicts: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def ell(self):
        return None if self.cyclic is None else self.cyclic.ell

    def structural_fields(self):
        """Everything except ``s`` and the witness (these never depend on ``s``)."""
        return (self.verdict, None if self.cyclic is None else self.cyclic.to_json(),
                self.ell_tested, {k: v.to_json() for k, v in self.power_verdicts.items()},
                self.notes)

    def to_json(self):
        return {
            "verdict": self.verdict,
            "s": self.s,
            "ell_tested": list(self.ell_tested),
            "cyclic": None if self.cyclic is None else self.cyclic.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_pair": None if self.witness_pair is None else list(self.witness_pair),
            "power_verdicts": {str(k): v.to_json() for k, v in self.power_verdicts.items()},
            "notes": list(self.notes),
        }


def _regime_notes(t, seed):
    notes = ["no member is invertible, so period-l structure need not exist"]
    for n in (2, 3):
        try:
            form = block_triangularize(power_tuple(t, n), seed)
        except BudgetError:
            break
        notes.append(f"length-{n} power tuple: block dims {list(form.dims)}")
    return notes


def classify_mixing(t, s, witness_max_len=4, seed=DEFAULT_SEED):
    """Decide whether the equilibrium state of an irreducible tuple is mixing.

    Periods ``ell`` run over divisors of ``d`` above one.  For each one the
    length-``ell`` power tuple is tested for irreducibility and, if it is
    reducible, a cyclic structure is grown from its minimal invariant
    subspace.  Family 1 is then compared with every other family by
    :func:`~mixeq.gibbs.distinctness_witness`.  Nothing except the witness
    search sees ``s``, and a witness found at one ``s`` certifies distinct
    equilibrium states at every ``s``.
    """
    _require_exact(t, "classify_mixing")
    if not s > 0:
        raise InputError("s must be positive")
    base = is_irreducible(t, seed)
    if base.reducible:
        raise InputError("the tuple is reducible; run block_triangularize first")
    notes = []
    if base.status == UNKNOWN:
        notes.append("irreducibility of the tuple itself is not certified")
    if not any(is_invertible(m) for m in t.matrices):
        return MixingReport(UNSUPPORTED, float(s), notes=tuple(notes + _regime_notes(t, seed)))
    tested, power_verdicts = [], {}
    first_structure = None
    uncertain = base.status == UNKNOWN
    for ell in divisors(t.d):
        tested.append(ell)
        try:
            structure, pv = _cyclic_search(t, ell, seed)
        except UnknownStructureError as exc:
            notes.append(f"ell={ell}: {exc}")
            uncertain = True
            continue
        power_verdicts[ell] = pv
        if structure is None:
            if not pv.irreducible:
                notes.append(f"ell={ell}: power tuple reducible but no cyclic chain closed")
                uncertain = True
            continue
        first_structure = first_structure or structure
        if not all(v.irreducible for v in structure.family_verdicts):
            notes.append(f"ell={ell}: some block family is not certified irreducible")
            uncertain = True
            continue
        f1 = structure.families[0]
        for j in range(1, ell):
            w = distinctness_witness(f1, structure.families[j], s, witness_max_len)
            if w is not None:
                notes.append(f"ell={ell}: families 1 and {j + 1} differ at word {list(w.word)}; "
                             "distinct for every s > 0")
                return MixingReport(NOT_MIXING, float(s), structure, w, (1, j + 1),
                                    tuple(tested), power_verdicts, tuple(notes))
        notes.append(f"ell={ell}: cyclic structure found, no witness up to length {witness_max_len}")
    if first_structure is None and not uncertain:
        if not tested:
            notes.append("d = 1: no period above one")
        return MixingReport(MIXING, float(s), None, None, None, tuple(tested),
                            power_verdicts, tuple(notes))
    return MixingReport(INCONCLUSIVE, float(s), first_structure, None, None, tuple(tested),
                        power_verdicts, tuple(notes))
