"""Matrix tuples, words and products.

Letters are 1-based, as in ``A_1, ..., A_N``.  A word ``(i_1, ..., i_n)``
names the product ``A_{i_n} ... A_{i_1}``: the first letter acts first.
Words of a fixed length are ordered lexicographically in ``(i_1, ..., i_n)``
read left to right, so ``i_1`` is the most significant letter.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math

import numpy as np

from . import _exact
from .config import check_budget
from .errors import InputError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


def _as_exact_array(m):
    rows = [[_exact.to_fraction(x) for x in row] for row in m]
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            arr[i, j] = x
    return arr


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """An N-tuple of d x d matrices over Q (``exact``) or float64 (``float``).

    Matrices are stored as read-only numpy arrays, ``dtype=object`` holding
    ``Fraction`` entries in exact mode.
    """

    matrices: tuple
    mode: str = EXACT
    name: str = None
    # derived tuples (power tuples, restrictions) may legitimately vanish
    allow_zero: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown scalar mode {self.mode!r}")
        if not self.matrices:
            raise InputError("a matrix tuple needs at least one matrix")
        mats = []
        for idx, m in enumerate(self.matrices, start=1):
            if self.mode == EXACT:
                if isinstance(m, np.ndarray) and m.dtype.kind == "f":
                    raise InputError("float arrays cannot be converted to exact mode")
                try:
                    arr = _as_exact_array(m)
                except TypeError as exc:
                    raise InputError(f"matrix {idx}: {exc}") from None
            else:
                arr = np.array(m, dtype=float)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
                raise InputError(f"matrix {idx} is not a nonempty square matrix")
            arr.setflags(write=False)
            mats.append(arr)
        d = mats[0].shape[0]
        for idx, m in enumerate(mats, start=1):
            if m.shape != (d, d):
                raise InputError(f"matrix {idx} has shape {m.shape}, expected {(d, d)}")
        if not self.allow_zero and all(not np.any(m != 0) for m in mats):
            raise InputError("all matrices are zero (pressure would be -inf)")
        object.__setattr__(self, "matrices", tuple(mats))

    @classmethod
    def exact(cls, matrices, name=None, allow_zero=False):
        return cls(tuple(matrices), EXACT, name, allow_zero)

    @classmethod
    def floating(cls, matrices, name=None):
        return cls(tuple(matrices), FLOAT, name)

    @property
    def N(self):
        return len(self.matrices)

    @property
    def d(self):
        return self.matrices[0].shape[0]

    @property
    def is_exact(self):
        return self.mode == EXACT

    def __len__(self):
        return self.N

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, letter):
        """Matrix for a 1-based letter."""
        check_letter(self, letter)
        return self.matrices[letter - 1]

    def __eq__(self, other):
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return (self.mode == other.mode and self.N == other.N and self.d == other.d
                and all(np.array_equal(a, b) for a, b in zip(self.matrices, other.matrices)))

    __hash__ = None

    def to_float(self):
        if not self.is_exact:
            return self
        return MatrixTuple(tuple(m.astype(float) for m in self.matrices), FLOAT, self.name,
                           self.allow_zero)

    def to_exact(self):
        if self.is_exact:
            return self
        raise InputError("float tuples cannot be converted to exact mode")

    def float_stack(self):
        """All matrices as one (N, d, d) float64 array."""
        return np.stack([m.astype(float) for m in self.matrices])

    def rows(self, letter):
        """Matrix ``letter`` as a list of rows (exact helpers use this form)."""
        return [list(r) for r in self[letter]]

    def transpose(self):
        return MatrixTuple(tuple(m.T for m in self.matrices), self.mode, self.name, self.allow_zero)

    def scaled(self, c):
        if self.is_exact:
            c = _exact.to_fraction(c)
        return MatrixTuple(tuple(m * c for m in self.matrices), self.mode, self.name)

    def conjugated(self, x, x_inv=None):
        """The tuple ``(X^-1 A_i X)``."""
        x = np.asarray(x, dtype=object if self.is_exact else float)
        if x_inv is None:
            x_inv = inverse(x)
        return MatrixTuple(tuple(x_inv @ m @ x for m in self.matrices), self.mode,
                           allow_zero=self.allow_zero)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<MatrixTuple{label} N={self.N} d={self.d} mode={self.mode}>"


def check_letter(t, letter):
    if isinstance(letter, bool) or not isinstance(letter, (int, np.integer)) or not 1 <= letter <= t.N:
        raise InputError(f"letter {letter!r} out of range 1..{t.N}")


def check_word(t, w):
    for letter in w:
        check_letter(t, letter)
    return tuple(int(x) for x in w)


def words(N, n):
    """All words of length ``n`` over ``1..N`` in lexicographic order."""
    return itertools.product(range(1, N + 1), repeat=n)


def word_index(word, N):
    """0-based position of ``word`` in the lexicographic enumeration."""
    idx = 0
    for letter in word:
        idx = idx * N + (letter - 1)
    return idx


def index_word(idx, N, n):
    letters = []
    for _ in range(n):
        idx, r = divmod(idx, N)
        letters.append(r + 1)
    return tuple(reversed(letters))


def identity_like(t):
    if t.is_exact:
        return _as_exact_array(_exact.identity(t.d))
    return np.eye(t.d)


def word_product(t, w):
    """``A_{i_n} ... A_{i_1}`` for ``w = (i_1, ..., i_n)``; the empty word gives the identity."""
    w = check_word(t, w)
    prod = identity_like(t)
    for letter in w:
        prod = t.matrices[letter - 1] @ prod
    return prod


def power_tuple(t, n, budget=None):
    """The N^n-tuple of all length-``n`` products in lexicographic word order."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"power must be a positive integer, got {n!r}")
    check_budget(t.N ** n, budget, what=f"power tuple of length {n}")
    level = [identity_like(t)]
    for _ in range(n):
        level = [a @ p for p in level for a in t.matrices]
    name = f"{t.name}^{n}" if t.name else None
    return MatrixTuple(tuple(level), t.mode, name, allow_zero=True)


def to_rows(m):
    return [list(r) for r in np.asarray(m)]


def rank(m, tol=None):
    """Exact rank for object arrays; SVD rank with tolerance for floats."""
    m = np.asarray(m)
    if m.dtype == object:
        return _exact.rank(to_rows(m))
    return int(np.linalg.matrix_rank(m, tol=tol))


def is_invertible(m):
    m = np.asarray(m)
    if m.dtype == object:
        return _exact.rank(to_rows(m)) == m.shape[0]
    d = m.shape[0]
    return abs(np.linalg.det(m)) > 1e-9 * max(np.linalg.norm(m, 2), 1e-300) ** d


def inverse(m):
    m = np.asarray(m)
    if m.dtype == object:
        try:
            inv = _exact.inverse(to_rows(m))
        except ZeroDivisionError:
            raise InputError("matrix is singular") from None
        return _as_exact_array(inv)
    return np.linalg.inv(m)


def spectral_radius(m):
    """Largest eigenvalue modulus.

    Rational (object) matrices give an :class:`~mixeq._exact.ExactRadius`
    that compares exactly with numbers and other radii; float matrices give
    a float from a dense eigensolver.
    """
    m = np.asarray(m)
    if m.dtype == object:
        return _exact.exact_spectral_radius(to_rows(m))
    if m.size == 1:
        return float(abs(m.reshape(-1)[0]))
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def operator_norm(m):
    return float(np.linalg.norm(np.asarray(m, dtype=float), 2))


def frobenius_norm_squared(m):
    """Exact for rational matrices, float otherwise."""
    m = np.asarray(m)
    if m.dtype == object:
        acc = Fraction(0)
        for x in m.flat:
            acc += x * x
        return acc
    return float(np.sum(m * m))


def fraction_str(x):
    x = _exact.to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_to_strings(m):
    m = np.asarray(m)
    if m.dtype == object:
        return [[entry_to_string(x) for x in row] for row in m]
    return [[float(x) for x in row] for row in m]


def entry_to_string(x):
    if isinstance(x, _exact.NumberFieldElement):
        if x.is_rational():
            return fraction_str(x.coeffs[0])
        return repr(x)
    return fraction_str(x)


def log_or_neg_inf(x):
    if isinstance(x, Fraction):
        if x <= 0:
            return -math.inf
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x) if x > 0 else -math.inf
