"""Subspaces of R^d with exact bases, and the spanning/invariance helpers built on them."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from .mats import entry_to_string


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace given by a basis in reduced row-echelon form.

    ``field`` is None for rational subspaces and a
    :class:`~mixeq._exact.NumberField` when the basis needs an irrational
    real algebraic number.  Float subspaces (``exact=False``) carry an
    orthonormal basis instead.
    """

    basis: tuple
    ambient: int
    field: object = None
    exact: bool = True

    @classmethod
    def from_vectors(cls, vectors, ambient=None):
        """Canonical (RREF) subspace; the number field is read off the entries."""
        vectors = [list(v) for v in vectors]
        if ambient is None:
            ambient = len(vectors[0])
        rows, _ = _exact.rref(vectors) if vectors else ([], [])
        field = next((x.field for row in rows for x in row
                      if isinstance(x, _exact.NumberFieldElement) and not x.is_rational()), None)
        if field is None:
            rows = [[x.coeffs[0] if isinstance(x, _exact.NumberFieldElement) else x for x in row]
                    for row in rows]
        return cls(tuple(tuple(r) for r in rows), ambient, field, True)

    @classmethod
    def from_float(cls, vectors, ambient=None, tol=1e-9):
        a = np.atleast_2d(np.asarray(vectors, dtype=float))
        u, s, _ = np.linalg.svd(a.T, full_matrices=False)
        r = int(np.sum(s > tol * max(s.max(initial=0.0), 1.0)))
        return cls(tuple(map(tuple, u[:, :r].T)), ambient or a.shape[1], None, False)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_rational(self):
        return self.exact and self.field is None

    @property
    def pivots(self):
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)

    def sort_key(self):
        """Smaller dimension first, rational before irrational, then pivots and entries."""
        if not self.exact:
            return (self.dim, 2, (), ())
        entries = tuple(float(x) if isinstance(x, _exact.NumberFieldElement) else x
                        for row in self.basis for x in row)
        return (self.dim, 0 if self.field is None else 1, self.pivots, entries)

    def columns(self):
        """Basis vectors as the columns of a d x dim array."""
        dtype = object if self.exact else float
        return np.array([list(r) for r in self.basis], dtype=dtype).T.reshape(self.ambient, self.dim)

    def contains(self, v):
        if not self.exact:
            b = np.asarray(self.basis, dtype=float)
            v = np.asarray(v, dtype=float)
            resid = v - b.T @ (b @ v)
            return np.linalg.norm(resid) <= 1e-8 * max(np.linalg.norm(v), 1.0)
        return list(v) in _exact.EchelonBasis(self.basis)

    def is_invariant(self, t, tol=1e-8):
        """Check ``A_i U <= U`` for every matrix of ``t`` (exactly unless float)."""
        if not self.exact:
            b = np.asarray(self.basis, dtype=float)
            proj = b.T @ b
            for m in t.matrices:
                img = np.asarray(m, dtype=float) @ b.T
                if np.linalg.norm(img - proj @ img) > tol * max(np.linalg.norm(m, 2), 1.0):
                    return False
            return True
        span = _exact.EchelonBasis(self.basis)
        for m in t.matrices:
            rows = [list(r) for r in m]
            for u in self.basis:
                if _exact.mat_vec(rows, list(u)) not in span:
                    return False
        return True

    def equals(self, other):
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        if not (self.exact and other.exact):
            return all(other.contains(v) for v in self.basis)
        if self.field != other.field:
            return False
        return all(a == b for ra, rb in zip(self.basis, other.basis) for a, b in zip(ra, rb))

    def to_json(self):
        out = {
            "dim": self.dim,
            "ambient": self.ambient,
            "basis": [[entry_to_string(x) if self.exact else float(x) for x in row]
                      for row in self.basis],
        }
        if self.field is not None:
            out["field"] = {
                "minimal_polynomial": [entry_to_string(c) for c in
                                       _exact.poly_coeffs(self.field.poly)],
                "real_root_index": self.field.root_index,
                "generator_approx": float(self.field.theta_float()),
            }
        out["exact"] = self.exact
        return out

    def __repr__(self):
        tag = "" if self.field is None else f" over {self.field!r}"
        body = [[entry_to_string(x) if self.exact else round(float(x), 6) for x in row]
                for row in self.basis]
        return f"Subspace(dim={self.dim}, basis={body}{tag})"


def coordinate_subspace(d, indices):
    rows = []
    for i in indices:
        row = [Fraction(0)] * d
        row[i] = Fraction(1)
        rows.append(row)
    return Subspace.from_vectors(rows, d)


def spin(generators, vectors):
    """Smallest subspace containing ``vectors`` and stable under every generator.

    ``generators`` are lists of rows.  The result is an
    :class:`~mixeq._exact.EchelonBasis`.
    """
    span = _exact.EchelonBasis()
    frontier = [list(v) for v in vectors if span.add(v)]
    while frontier:
        nxt = []
        for u in frontier:
            for g in generators:
                w = _exact.mat_vec(g, u)
                if span.add(w):
                    nxt.append(w)
        frontier = nxt
    return span


def rational_hull(u):
    """Smallest rational subspace containing an algebraic subspace.

    Splitting each basis vector into its rational coefficient vectors of
    ``1, t, t^2, ...`` gives vectors whose span is Galois-stable; it is
    invariant whenever ``u`` is.
    """
    if u.field is None:
        return u
    parts = []
    for row in u.basis:
        for j in range(u.field.degree):
            parts.append([x.coeffs[j] if isinstance(x, _exact.NumberFieldElement) else
                          (x if j == 0 else Fraction(0)) for x in row])
    parts = [p for p in parts if not _exact.is_zero_vector(p)]
    return Subspace.from_vectors(parts, u.ambient)


def orthogonal_complement(u):
    """Orthogonal complement of an exact subspace (same field)."""
    vecs = _exact.nullspace([list(r) for r in u.basis], u.ambient)
    return Subspace.from_vectors(vecs, u.ambient)

