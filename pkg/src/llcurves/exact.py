"""Exact scalars and dense linear algebra.

Everything numeric in this package is exact: ranks and nullspaces come from
Gauss-Jordan elimination over a field, never from floating point.  Two scalar
types appear:

* ``fractions.Fraction`` for purely rational residue systems;
* ``QQi`` (complex numbers with rational real and imaginary parts) for
  everything involving 2x2 unimodular matrices.

``QQi`` stores a value as ``(a + b*i)/d`` with integers ``a, b`` and ``d >= 1``
in lowest terms, which keeps equality decidable and the common all-integer
case (d == 1) fast.
"""

from fractions import Fraction
from math import gcd, isqrt


def _as_int_pair(x):
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QQi:
    """Gaussian rational ``(a + b*i)/d`` in lowest terms, ``d >= 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        rn, rd = _as_int_pair(re)
        im_n, im_d = _as_int_pair(im)
        a = rn * im_d
        b = im_n * rd
        d = rd * im_d
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @staticmethod
    def _raw(a, b, d):
        """Construct from already-normalized data (no checks)."""
        v = object.__new__(QQi)
        object.__setattr__(v, "a", a)
        object.__setattr__(v, "b", b)
        object.__setattr__(v, "d", d)
        return v

    @staticmethod
    def _norm(a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        return QQi._raw(a, b, d)

    # -- field structure ------------------------------------------------

    def __add__(self, other):
        other = qqi(other)
        if self.d == 1 and other.d == 1:
            return QQi._raw(self.a + other.a, self.b + other.b, 1)
        return QQi._norm(self.a * other.d + other.a * self.d,
                         self.b * other.d + other.b * self.d,
                         self.d * other.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = qqi(other)
        if self.d == 1 and other.d == 1:
            return QQi._raw(self.a - other.a, self.b - other.b, 1)
        return QQi._norm(self.a * other.d - other.a * self.d,
                         self.b * other.d - other.b * self.d,
                         self.d * other.d)

    def __rsub__(self, other):
        return qqi(other) - self

    def __neg__(self):
        return QQi._raw(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = qqi(other)
        a = self.a * other.a - self.b * other.b
        b = self.a * other.b + self.b * other.a
        if self.d == 1 and other.d == 1:
            return QQi._raw(a, b, 1)
        return QQi._norm(a, b, self.d * other.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return QQi._norm(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other):
        return self * qqi(other).inverse()

    def __rtruediv__(self, other):
        return qqi(other) * self.inverse()

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = qqi(other)
        if not isinstance(other, QQi):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    @property
    def re(self):
        return Fraction(self.a, self.d)

    @property
    def im(self):
        return Fraction(self.b, self.d)

    def conjugate(self):
        return QQi._raw(self.a, -self.b, self.d)

    def norm(self):
        """|z|^2 as a Fraction."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def is_rational(self):
        return self.b == 0

    def key(self):
        """Deterministic sort key (no meaningful order on the field)."""
        return (self.a, self.b, self.d)

    def sqrt(self):
        """An exact square root in QQ(i), or None if none exists."""
        if not self:
            return QQi._raw(0, 0, 1)
        if self.b == 0:
            r = self.re
            if r > 0:
                s = _fraction_sqrt(r)
                return None if s is None else qqi(s)
            s = _fraction_sqrt(-r)
            return None if s is None else QQi(0, s)
        n = _fraction_sqrt(self.norm())
        if n is None:
            return None
        x2 = (self.re + n) / 2
        x = _fraction_sqrt(x2)
        if x is None or x == 0:
            return None
        return QQi(x, self.im / (2 * x))

    def __repr__(self):
        if self.b == 0:
            return str(Fraction(self.a, self.d))
        return f"({Fraction(self.a, self.d)}{'+' if self.b > 0 else '-'}{abs(Fraction(self.b, self.d))}i)"


def qqi(x):
    """Coerce an int, Fraction, or QQi to QQi."""
    if isinstance(x, QQi):
        return x
    if isinstance(x, int):
        return QQi._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return QQi._raw(x.numerator, 0, x.denominator)
    raise TypeError(f"cannot coerce {type(x).__name__} to QQi")


QQI_ZERO = QQi(0)
QQI_ONE = QQi(1)
QQI_I = QQi(0, 1)


def _fraction_sqrt(f):
    """Exact square root of a nonnegative Fraction, or None."""
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


class Mat2:
    """Immutable 2x2 matrix over QQi."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", qqi(a))
        object.__setattr__(self, "b", qqi(b))
        object.__setattr__(self, "c", qqi(c))
        object.__setattr__(self, "d", qqi(d))

    @staticmethod
    def identity():
        return _MAT2_ID

    @staticmethod
    def diagonal(x, y):
        return Mat2(x, 0, 0, y)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(self.a * other.a + self.b * other.c,
                        self.a * other.b + self.b * other.d,
                        self.c * other.a + self.d * other.c,
                        self.c * other.b + self.d * other.d)
        x = qqi(other)
        return Mat2(self.a * x, self.b * x, self.c * x, self.d * x)

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2(self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __rmul__(self, other):
        x = qqi(other)
        return Mat2(self.a * x, self.b * x, self.c * x, self.d * x)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inverse(self):
        det = self.det()
        if not det:
            raise ZeroDivisionError("singular 2x2 matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def is_identity(self):
        return (self.a == QQI_ONE and self.d == QQI_ONE
                and not self.b and not self.c)

    def is_scalar(self):
        return not self.b and not self.c and self.a == self.d

    def entry(self, i, j):
        """1-based matrix entry."""
        return (self.a, self.b, self.c, self.d)[2 * (i - 1) + (j - 1)]

    def apply(self, x, y):
        """Image of the column vector (x, y)."""
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def key(self):
        return (self.a.key(), self.b.key(), self.c.key(), self.d.key())

    def __repr__(self):
        return f"Mat2[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


_MAT2_ID = Mat2(1, 0, 0, 1)


# Basis of the traceless 2x2 matrices used throughout: H, E, F with
# H = [[1,0],[0,-1]], E = [[0,1],[0,0]], F = [[0,0],[1,0]].  A traceless
# matrix [[x, y], [z, -x]] has coordinates (x, y, z).

def traceless_coords(m):
    return (m.a, m.b, m.c)


def traceless_from_coords(x, y, z):
    return Mat2(x, y, z, -qqi(x))


TRACELESS_BASIS = (Mat2(1, 0, 0, -1), Mat2(0, 1, 0, 0), Mat2(0, 0, 1, 0))


def adjoint_matrix(m, m_inv=None):
    """3x3 matrix (rows) of X -> m^-1 X m on the (H, E, F) coordinates."""
    if m_inv is None:
        m_inv = m.inverse()
    cols = [traceless_coords(m_inv * basis * m) for basis in TRACELESS_BASIS]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


# -- Gauss-Jordan over an arbitrary exact field ------------------------------
#
# Rows are lists of scalars supporting +, -, *, /, unary -, and truthiness
# as a zero test (both Fraction and QQi qualify).

def rref(rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv_p = 1 / rows[r][c]
        rows[r] = [x * inv_p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def matrix_rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, ncols, one=Fraction(1), zero=Fraction(0)):
    """Basis of the solution space of the homogeneous system ``rows``.

    ``one`` and ``zero`` fix the scalar type of the basis vectors when the
    system has no rows touching some variable.
    """
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis
