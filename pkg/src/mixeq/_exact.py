"""Exact linear algebra over Q and small real number fields.

Matrices here are lists of rows.  Every routine only uses ``+ - * /`` and
comparison with zero, so the same code runs over ``Fraction`` and over
``NumberFieldElement``.
"""

from fractions import Fraction
import math

import sympy
from sympy import QQ

X = sympy.Symbol("x")


def to_fraction(value):
    """Convert int/str/Fraction/sympy Rational/gmpy mpq to ``Fraction``; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("float entries cannot enter exact mode")
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        num = num() if callable(num) else num
        den = den() if callable(den) else den
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot interpret {value!r} as a rational")


# -- dense matrix helpers -------------------------------------------------

def identity(d, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [_dot(row, v) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def _dot(u, v):
    it = iter(zip(u, v))
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def trace(a):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def is_zero_vector(v):
    return all(x == 0 for x in v)


# -- echelon forms ----------------------------------------------------------

class EchelonBasis:
    """Reduced row-echelon basis of a span, grown one vector at a time."""

    def __init__(self, vectors=()):
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, v):
        """Insert ``v``; return True iff it enlarged the span."""
        r = self.reduce(v)
        p = next((i for i, a in enumerate(r) if a != 0), None)
        if p is None:
            return False
        inv = 1 / r[p]
        r = [a * inv for a in r]
        for idx, row in enumerate(self.rows):
            c = row[p]
            if c != 0:
                self.rows[idx] = [a - c * b for a, b in zip(row, r)]
        pos = sum(1 for q in self.pivots if q < p)
        self.rows.insert(pos, r)
        self.pivots.insert(pos, p)
        return True

    def __contains__(self, v):
        return is_zero_vector(self.reduce(v))


def rref(rows):
    basis = EchelonBasis(rows)
    return basis.rows, basis.pivots


def rank(rows):
    return EchelonBasis(rows).dim


def nullspace(m, ncols=None):
    """Basis of ``{x : m x = 0}``; ``m`` is a list of rows."""
    if ncols is None:
        ncols = len(m[0])
    rows, pivots = rref(m) if m else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    zero = Fraction(0)
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def inverse(m):
    d = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(m)]
    rows, pivots = rref(aug)
    if len(rows) < d or pivots[d - 1] != d - 1:
        raise ZeroDivisionError("matrix is singular")
    return [row[d:] for row in rows]


def columns_to_matrix(cols):
    return [list(r) for r in zip(*cols)]


def charpoly(m):
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    eye = identity(n)
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        mk = mat_mul(m, mk)
        mk = [[a + c_prev * e for a, e in zip(ra, re)] for ra, re in zip(mk, eye)]
        coeffs.append(-trace(mat_mul(m, mk)) / k)
    return coeffs


def eval_matrix_poly(coeffs, m):
    """Horner evaluation of a polynomial (highest first) at a square matrix."""
    n = len(m)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in coeffs:
        acc = mat_mul(acc, m)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


# -- polynomials via sympy ------------------------------------------------

def to_poly(coeffs):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], X, domain=QQ)


def poly_coeffs(poly):
    return [to_fraction(c) for c in poly.all_coeffs()]


def irreducible_factors(coeffs):
    """Distinct monic irreducible rational factors of a polynomial."""
    _, factors = to_poly(coeffs).factor_list()
    return [f.monic() for f, _ in factors]


def real_root_count(poly):
    return poly.count_roots() if poly.degree() > 0 else 0


# -- real number fields -----------------------------------------------------

class NumberField:
    """Q(theta) with theta a chosen real root of an irreducible monic polynomial.

    Arithmetic never looks at which root was chosen; ``root_index`` (ascending
    among real roots) only matters for float evaluation.
    """

    def __init__(self, minpoly, root_index):
        self.poly = minpoly.monic()
        self.degree = self.poly.degree()
        self.root_index = root_index
        # x^m = -sum(tail[i] x^i)
        self._tail = [to_fraction(c) for c in reversed(self.poly.all_coeffs()[1:])]
        self._theta = None

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.poly == other.poly
                and self.root_index == other.root_index)

    def __hash__(self):
        return hash((tuple(self.poly.all_coeffs()), self.root_index))

    def __repr__(self):
        return f"NumberField({self.poly.as_expr()}, root {self.root_index})"

    @property
    def real_embeddings(self):
        return real_root_count(self.poly)

    def theta_float(self, digits=30):
        if self._theta is None:
            self._theta = sympy.CRootOf(self.poly.as_expr(), X, self.root_index).evalf(digits)
        return self._theta

    def generator(self):
        return self.element([Fraction(0), Fraction(1)])

    def element(self, coeffs):
        return NumberFieldElement(self, self._reduce(list(coeffs)))

    def _reduce(self, c):
        m = self.degree
        c = [to_fraction(x) for x in c]
        for top in range(len(c) - 1, m - 1, -1):
            lead = c[top]
            if lead:
                for i, t in enumerate(self._tail):
                    c[top - m + i] -= lead * t
            c[top] = Fraction(0)
        c = c[:m] + [Fraction(0)] * (m - len(c))
        return tuple(c)


class NumberFieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different number fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    prod[i + j] += a * b
        return NumberFieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self == 0:
            raise ZeroDivisionError("inverse of zero in a number field")
        p = to_poly(list(reversed(self.coeffs)))
        inv = p.invert(self.field.poly)
        return self.field.element(reversed(poly_coeffs(inv)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, tuple(a / other for a in self.coeffs))
        if isinstance(other, NumberFieldElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, o))

    __hash__ = None

    def __float__(self):
        theta = self.field.theta_float()
        return float(sum(sympy.Float(c.numerator) / c.denominator * theta ** i
                         for i, c in enumerate(self.coeffs)))

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __repr__(self):
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "(" + (" + ".join(terms) or "0") + ")"


# -- exact real algebraic numbers -------------------------------------------

class AlgebraicReal:
    """A real algebraic number given by its minimal polynomial and an isolating interval."""

    def __init__(self, minpoly, lo, hi):
        self.minpoly = minpoly.monic()
        self.lo = to_fraction(lo)
        self.hi = to_fraction(hi)
        if self.minpoly.degree() == 1:
            r = -to_fraction(self.minpoly.all_coeffs()[1])
            self.lo = self.hi = r

    @classmethod
    def from_rational(cls, q):
        q = to_fraction(q)
        return cls(to_poly([Fraction(1), -q]), q, q)

    @classmethod
    def largest_real_root(cls, coeffs):
        """Largest real root of a rational polynomial, or None if it has none."""
        poly = to_poly(coeffs)
        if poly.degree() < 1:
            return None
        ivals = poly.sqf_part().intervals()
        if not ivals:
            return None
        (a, b), _ = max(ivals, key=lambda t: t[0][1])
        a, b = to_fraction(a), to_fraction(b)
        for f in irreducible_factors(coeffs):
            if f.degree() == 1:
                r = -to_fraction(f.all_coeffs()[1]) / to_fraction(f.all_coeffs()[0])
                if a <= r <= b:
                    return cls(f, r, r)
            elif f.count_roots(sympy.Rational(a.numerator, a.denominator),
                               sympy.Rational(b.numerator, b.denominator)) > 0:
                return cls(f, a, b)
        raise AssertionError("isolating interval matched no irreducible factor")

    @property
    def rational(self):
        """The value as a Fraction when it is rational, else None."""
        return self.lo if self.minpoly.degree() == 1 else None

    def _root_index(self):
        if self.minpoly.degree() == 1:
            return 0
        return self.minpoly.count_roots(None, sympy.Rational(self.lo.numerator, self.lo.denominator))

    def refine(self, eps):
        if self.minpoly.degree() == 1 or self.hi - self.lo <= eps:
            return self.lo, self.hi
        a, b = self.minpoly.refine_root(
            sympy.Rational(self.lo.numerator, self.lo.denominator),
            sympy.Rational(self.hi.numerator, self.hi.denominator),
            eps=sympy.Rational(eps.numerator, eps.denominator))
        self.lo, self.hi = to_fraction(a), to_fraction(b)
        return self.lo, self.hi

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rational == other
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return self.minpoly == other.minpoly and self._root_index() == other._root_index()

    def __hash__(self):
        return hash((tuple(self.minpoly.all_coeffs()), self._root_index()))

    def compare(self, other):
        """-1, 0 or 1, decided exactly."""
        if not isinstance(other, AlgebraicReal):
            other = AlgebraicReal.from_rational(other)
        if self == other:
            return 0
        eps = Fraction(1, 2 ** 20)
        while True:
            a1, b1 = self.refine(eps)
            a2, b2 = other.refine(eps)
            if b1 < a2:
                return -1
            if b2 < a1:
                return 1
            eps /= 2 ** 20

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self):
        a, b = self.refine(Fraction(1, 2 ** 60))
        return float((a + b) / 2)

    def __repr__(self):
        if self.rational is not None:
            return f"AlgebraicReal({self.rational})"
        return f"AlgebraicReal(root of {self.minpoly.as_expr()} in [{self.lo}, {self.hi}])"


def fraction_sqrt(q):
    """Exact square root of a nonnegative Fraction, or None when irrational."""
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class ExactRadius:
    """Spectral radius of a rational matrix, stored exactly through its square.

    ``squared`` is the largest real root of the characteristic polynomial of
    ``M (x) M`` whose eigenvalues are all products of two eigenvalues of ``M``.
    """

    def __init__(self, squared):
        self.squared = squared

    @property
    def value(self):
        """The radius as a Fraction when rational, else None."""
        sq = self.squared.rational
        return None if sq is None else fraction_sqrt(sq)

    def __float__(self):
        return math.sqrt(float(self.squared))

    def _other_squared(self, other):
        if isinstance(other, ExactRadius):
            return other.squared
        if isinstance(other, (int, Fraction)):
            if other < 0:
                return None
            return AlgebraicReal.from_rational(Fraction(other) ** 2)
        return NotImplemented

    def __eq__(self, other):
        sq = self._other_squared(other)
        if sq is NotImplemented:
            return NotImplemented
        return sq is not None and self.squared == sq

    def __hash__(self):
        return hash(self.squared)

    def compare(self, other):
        sq = self._other_squared(other)
        if sq is None:
            return 1
        return self.squared.compare(sq)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self):
        v = self.value
        if v is not None:
            return f"ExactRadius({v})"
        return f"ExactRadius(sqrt of {self.squared!r})"


def exact_spectral_radius(m):
    """Exact spectral radius of a square rational matrix (list of rows)."""
    if len(m) == 1:
        return ExactRadius(AlgebraicReal.from_rational(m[0][0] ** 2))
    root = AlgebraicReal.largest_real_root(charpoly(kron(m, m)))
    return ExactRadius(root)
