"""Slow reference implementations.

Nothing here is optimized: :func:`enumerate_sum` evaluates the pressure sum
word by word, and :func:`invariant_subspaces_d_le_3` decides real
irreducibility for d <= 3 by exact eigen-analysis in number fields of
degree at most 3.
"""

from fractions import Fraction
import itertools
import math

import numpy as np

from . import _exact
from .config import check_budget
from .errors import InputError
from .mats import frobenius_norm_squared, operator_norm, word_product, words
from .subspaces import Subspace, orthogonal_complement

ORACLE_MAX_WORDS = 10 ** 7


def enumerate_sum(t, s, n, norm="operator"):
    """Literal ``sum over |w| = n of ||A_w||^s``.

    Exact (a ``Fraction``) when the tuple is exact, the norm is Frobenius and
    ``s`` is an even integer; a float otherwise.  ``n = 0`` sums over the
    empty word only and gives the norm of the identity to the power ``s``.
    """
    if s <= 0:
        raise InputError("s must be positive")
    if norm not in ("operator", "frobenius"):
        raise InputError(f"unknown norm {norm!r}")
    check_budget(t.N ** n, ORACLE_MAX_WORDS, what="oracle enumeration")
    exact_sum = t.is_exact and norm == "frobenius" and float(s).is_integer() and int(s) % 2 == 0
    total = Fraction(0) if exact_sum else 0.0
    for w in words(t.N, n):
        m = word_product(t, w)
        if exact_sum:
            total += frobenius_norm_squared(m) ** (int(s) // 2)
        elif norm == "frobenius":
            total += math.sqrt(frobenius_norm_squared(np.asarray(m, dtype=float))) ** s
        else:
            total += operator_norm(m) ** s
    return total


# -- exhaustive invariant subspaces for d <= 3 -----------------------------

def _rows(m):
    return [list(r) for r in m]


def _commutator_kernel(mats, d):
    """Common kernel of every commutator ``A_i A_j - A_j A_i``; lines must live here."""
    eqs = []
    for a, b in itertools.combinations(mats, 2):
        ab = _exact.mat_mul(a, b)
        ba = _exact.mat_mul(b, a)
        eqs.extend([x - y for x, y in zip(ra, rb)] for ra, rb in zip(ab, ba))
    if not eqs:
        return _exact.identity(d)
    return _exact.nullspace(eqs, d)


def _real_eigenfields(a):
    """One ``(eigenvalue, field)`` pair per real eigenvalue of a rational matrix."""
    out = []
    for g in _exact.irreducible_factors(_exact.charpoly(a)):
        if g.degree() == 1:
            c = _exact.poly_coeffs(g)
            out.append((-c[1] / c[0], None))
            continue
        for idx in range(_exact.real_root_count(g)):
            field = _exact.NumberField(g, idx)
            out.append((field.generator(), field))
    return out


def joint_eigenspaces(mats, d):
    """Maximal subspaces on which every matrix acts as a real scalar.

    Returns a list of bases (lists of vectors).  Every line inside one of
    these spaces is invariant and every invariant line lies in one of them.
    """
    start = _commutator_kernel(mats, d)
    if not start:
        return []
    candidates = [start]
    for a in mats:
        nxt = []
        for basis in candidates:
            if len(basis) == 1:
                v = basis[0]
                if _exact.rank([v, _exact.mat_vec(a, v)]) == 1:
                    nxt.append(basis)
                continue
            # dim >= 2 only happens over Q when d <= 3
            assert all(not isinstance(x, _exact.NumberFieldElement) for v in basis for x in v)
            cols = _exact.columns_to_matrix(basis)
            for lam, _field in _real_eigenfields(a):
                shifted = [[x - (lam if i == j else 0) for j, x in enumerate(row)]
                           for i, row in enumerate(a)]
                restricted = _exact.mat_mul(shifted, cols)
                kernel = _exact.nullspace(restricted, len(basis))
                if kernel:
                    nxt.append([_exact.mat_vec(cols, c) for c in kernel])
        candidates = nxt
    return [_exact.rref(b)[0] for b in candidates]


def _lines(spaces, d):
    lines = []
    for basis in spaces:
        for v in basis:
            lines.append(Subspace.from_vectors([v], d))
    return lines


def invariant_subspaces_d_le_3(t):
    """All minimal invariant subspaces of an exact tuple with d <= 3.

    Lines come from joint real eigenspaces, one per basis vector of each
    joint eigenspace (when such a space has dimension >= 2 every line in it
    is invariant, and only its echelon basis lines are listed).  Irrational
    lines are returned once per real embedding of their number field.  For
    d = 3 the invariant planes are the orthogonal complements of invariant
    lines of the transposed tuple; planes containing an invariant line are
    dropped as non-minimal.  An empty list certifies irreducibility over R.
    """
    if not t.is_exact:
        raise InputError("the subspace oracle needs an exact tuple")
    d = t.d
    if d > 3:
        raise InputError(f"the subspace oracle handles d <= 3, got d = {d}")
    if d == 1:
        return []
    mats = [_rows(m) for m in t.matrices]
    spaces = joint_eigenspaces(mats, d)
    found = _lines(spaces, d)
    if d == 3:
        dual = joint_eigenspaces([_exact.transpose(m) for m in mats], d)
        for line in _lines(dual, d):
            plane = orthogonal_complement(line)
            if not any(_plane_meets(plane, s) for s in spaces):
                found.append(plane)
    unique = []
    for u in sorted(found, key=Subspace.sort_key):
        if not any(u.equals(v) for v in unique):
            unique.append(u)
    return unique


def _plane_meets(plane, space):
    if len(space) >= 2:
        return True
    normal = list(orthogonal_complement(plane).basis[0])
    v = list(space[0])
    fields = {x.field for x in normal + v if isinstance(x, _exact.NumberFieldElement)}
    if len(fields) <= 1:
        return _exact._dot(normal, v) == 0
    # normal and line live in different number fields: compare numerically
    val = sum(float(a) * float(b) for a, b in zip(normal, v))
    return abs(val) < 1e-12
