"""Exact arithmetic over the Gaussian rationals Q[i] and small dense matrices.

A :class:`GaussianRational` is stored as a triple of integers ``(a, b, d)``
meaning ``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``.  That form
is unique, so structural equality is value equality and hashing is cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

from .errors import SingularMatrix

__all__ = [
    "GaussianRational", "gq", "ZERO", "ONE",
    "det", "inverse", "adjugate", "matmul", "matvec", "identity", "is_zero_matrix",
]


def _reduced(a: int, b: int, d: int):
    if d == 0:
        raise ZeroDivisionError("GaussianRational with zero denominator")
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return a, b, d


class GaussianRational:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._a, self._b, self._d = _reduced(a, b, d)
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj._a, obj._b, obj._d = _reduced(a, b, d)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot convert {x!r} to GaussianRational")

    # -- accessors ---------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def reciprocal(self) -> "GaussianRational":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q[i]")
        a, b, d = self._a, self._b, self._d
        return GaussianRational._raw(d * a, -d * b, a * a + b * b)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            if self._b == 0:
                # agree with hash(Fraction) / hash(int) for real values
                self._hash = hash(Fraction(self._a, self._d))
            else:
                self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- text forms --------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        im_abs = abs(im_)
        im_txt = "i" if im_abs == 1 else f"{im_abs}i"
        if re_ == 0:
            return ("-" if im_ < 0 else "") + im_txt
        return f"{re_}{'-' if im_ < 0 else '+'}{im_txt}"

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the text form produced by ``str``: ``"3"``, ``"-2/3"``, ``"1/2+3i"``, ``"-i"``."""
        s = text.replace(" ", "")
        try:
            if not s.endswith("i"):
                return cls(Fraction(s))
            body = s[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut > 0:
                re_txt, im_txt = body[:cut], body[cut:]
            else:
                re_txt, im_txt = "0", body
            if im_txt in ("", "+", "-"):
                im_txt += "1"
            return cls(Fraction(re_txt), Fraction(im_txt))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a Gaussian rational: {text!r}") from None

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(Fraction(str(obj.get("re", "0"))), Fraction(str(obj.get("im", "0"))))
        if isinstance(obj, int):
            return cls(obj)
        if isinstance(obj, str):
            return cls.parse(obj)
        raise ValueError(f"bad scalar {obj!r}")


def gq(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


# -- matrices: tuples of row tuples ----------------------------------------


def identity(k: int):
    return tuple(tuple(ONE if i == j else ZERO for j in range(k)) for i in range(k))


def matmul(A, B):
    cols = list(zip(*B))
    return tuple(
        tuple(_dot(row, col) for col in cols)
        for row in A
    )


def matvec(A, v):
    return tuple(_dot(row, v) for row in A)


def _dot(u, v):
    total = ZERO
    for x, y in zip(u, v):
        if not x.is_zero() and not y.is_zero():
            total = total + x * y
    return total


def is_zero_matrix(A) -> bool:
    return all(x.is_zero() for row in A for x in row)


def _gauss_exact_div(x, y):
    """Exact quotient of Gaussian integers given as (re, im) pairs."""
    (a, b), (c, e) = x, y
    n = c * c + e * e
    return ((a * c + b * e) // n, (b * c - a * e) // n)


def det(A) -> GaussianRational:
    """Determinant by fraction-free (Bareiss) elimination.

    Each row is scaled to Gaussian integers first, so no intermediate value
    needs a gcd; the scale factors are divided out once at the end.
    """
    k = len(A)
    if k == 0:
        return ONE
    if k == 1:
        return A[0][0]
    if k == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    M = []
    scale = 1
    for row in A:
        L = 1
        for x in row:
            L = L * x._d // gcd(L, x._d)
        scale *= L
        M.append([(x._a * (L // x._d), x._b * (L // x._d)) for x in row])
    sign = 1
    prev = (1, 0)
    for c in range(k - 1):
        p = next((r for r in range(c, k) if M[r][c] != (0, 0)), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        pr, pi = M[c][c]
        for r in range(c + 1, k):
            xr, xi = M[r][c]
            row_r, row_c = M[r], M[c]
            for j in range(c + 1, k):
                ar, ai = row_r[j]
                br, bi = row_c[j]
                num = (ar * pr - ai * pi - (xr * br - xi * bi), ar * pi + ai * pr - (xr * bi + xi * br))
                row_r[j] = _gauss_exact_div(num, prev)
            row_r[c] = (0, 0)
        prev = (pr, pi)
    re, im = M[k - 1][k - 1]
    return GaussianRational._raw(sign * re, sign * im, scale)


def inverse(A):
    """Inverse by Gauss-Jordan; raises SingularMatrix."""
    k = len(A)
    M = [list(row) + [ONE if i == j else ZERO for j in range(k)] for i, row in enumerate(A)]
    for c in range(k):
        p = next((r for r in range(c, k) if not M[r][c].is_zero()), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].reciprocal()
        M[c] = [x * inv for x in M[c]]
        for r in range(k):
            if r != c and not M[r][c].is_zero():
                factor = M[r][c]
                M[r] = [x - factor * y for x, y in zip(M[r], M[c])]
    return tuple(tuple(row[k:]) for row in M)


def minor_matrix(A, i: int, j: int):
    return tuple(
        tuple(x for c, x in enumerate(row) if c != j)
        for r, row in enumerate(A) if r != i
    )


def cofactor(A, i: int, j: int) -> GaussianRational:
    d = det(minor_matrix(A, i, j))
    return -d if (i + j) % 2 else d


def adjugate(A):
    """Classical adjoint: ``adjugate(A)[i][j]`` is the cofactor of ``A[j][i]``."""
    k = len(A)
    if k == 1:
        return ((ONE,),)
    cof = [[cofactor(A, i, j) for j in range(k)] for i in range(k)]
    return tuple(tuple(cof[j][i] for j in range(k)) for i in range(k))
