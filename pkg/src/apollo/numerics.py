"""Exact/float scalars, complex scalars, projective points and circle forms.

A scalar is either a :class:`fractions.Fraction` (exact) or a ``float``.
Python's numeric tower already demotes ``Fraction op float`` to ``float``,
which is exactly the mixed-mode rule we want, so no wrapper type is used
for real scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import SingularMatrix

Scalar = Union[Fraction, float]

FLOAT_RTOL = 1e-12


def to_scalar(v) -> Scalar:
    """Coerce ints/strings/Fractions to Fraction, floats stay floats."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        # "62/179", "0.5", "1e-3" all parse exactly
        return Fraction(v.strip())
    raise TypeError(f"cannot convert {v!r} to a scalar")


def is_exact(*values) -> bool:
    for v in values:
        if isinstance(v, ComplexScalar):
            if not v.is_exact:
                return False
        elif not isinstance(v, (Fraction, int)):
            return False
    return True


def integer_sqrt(n: int) -> Optional[int]:
    """Square root of ``n`` if it is a perfect square, else ``None``."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    s = math.isqrt(n)
    return s if s * s == n else None


def rational_sqrt(q) -> Optional[Fraction]:
    q = Fraction(q)
    if q < 0:
        raise ValueError("rational_sqrt of a negative number")
    n = integer_sqrt(q.numerator)
    if n is None:
        return None
    d = integer_sqrt(q.denominator)
    if d is None:
        return None
    return Fraction(n, d)


def scalar_sqrt(v: Scalar) -> Scalar:
    """Exact root when ``v`` is a rational square, float root otherwise."""
    if isinstance(v, Fraction):
        r = rational_sqrt(v)
        if r is not None:
            return r
    return math.sqrt(v)


def scalar_abs(v: Scalar) -> Scalar:
    return -v if v < 0 else v


def fmt_scalar(v: Scalar) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return repr(v)


def json_scalar(v: Scalar):
    """JSON-friendly value: int when integral-exact, float otherwise."""
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return float(v)
    return float(v)


@dataclass(frozen=True)
class ComplexScalar:
    """Complex number whose parts are scalars (exact Gaussian rationals or floats)."""

    re: Scalar
    im: Scalar = Fraction(0)

    @staticmethod
    def of(v) -> "ComplexScalar":
        if isinstance(v, ComplexScalar):
            return v
        if isinstance(v, complex):
            return ComplexScalar(v.real, v.imag)
        return ComplexScalar(to_scalar(v), Fraction(0) if not isinstance(v, float) else 0.0)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.re, Fraction) and isinstance(self.im, Fraction)

    def __add__(self, o):
        o = ComplexScalar.of(o)
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = ComplexScalar.of(o)
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return ComplexScalar.of(o) - self

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, o):
        o = ComplexScalar.of(o)
        return ComplexScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = ComplexScalar.of(o)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("complex division by zero")
        p = self * o.conjugate()
        return ComplexScalar(p.re / n, p.im / n)

    def __rtruediv__(self, o):
        return ComplexScalar.of(o) / self

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def abs2(self) -> Scalar:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __repr__(self) -> str:
        return f"({fmt_scalar(self.re)}{'+' if self.im >= 0 else '-'}{fmt_scalar(scalar_abs(self.im))}i)"


ZERO = ComplexScalar(Fraction(0), Fraction(0))
ONE = ComplexScalar(Fraction(1), Fraction(0))
I = ComplexScalar(Fraction(0), Fraction(1))


def complex_sqrt(z: ComplexScalar) -> ComplexScalar:
    """Principal square root (Re >= 0, ties Im >= 0); exact when possible."""
    z = ComplexScalar.of(z)
    if z.is_exact:
        mod = rational_sqrt(z.abs2())
        if mod is not None:
            p = rational_sqrt((mod + z.re) / 2)
            q = rational_sqrt((mod - z.re) / 2)
            if p is not None and q is not None:
                if z.im < 0:
                    q = -q
                return _principal(ComplexScalar(p, q))
    import cmath

    w = cmath.sqrt(complex(z))
    return _principal(ComplexScalar(w.real, w.imag))


def _principal(w: ComplexScalar) -> ComplexScalar:
    if w.re < 0 or (w.re == 0 and w.im < 0):
        w = -w
    if isinstance(w.re, float) and w.re == 0:
        w = ComplexScalar(0.0, w.im)
    return w


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ProjPoint = Union[ComplexScalar, _Infinity]


def point(x, y) -> ComplexScalar:
    return ComplexScalar(to_scalar(x), to_scalar(y))


def is_inf(z) -> bool:
    return z is INF


def points_close(z: ProjPoint, w: ProjPoint, tol: float = 1e-9) -> bool:
    if z is INF or w is INF:
        return z is w
    if z.is_exact and w.is_exact:
        return z == w
    scale = max(1.0, abs(z), abs(w))
    return abs(z - w) <= tol * scale


# --- Hermitian circle forms -------------------------------------------------


@dataclass(frozen=True)
class CircleForm:
    """Locus ``A|z|^2 + conj(B) z + B conj(z) + C = 0``; ``A == 0`` is a line."""

    A: Scalar
    B: ComplexScalar
    C: Scalar

    def __post_init__(self):
        if self.discriminant() <= 0:
            raise ValueError("circle form has no real locus")

    @staticmethod
    def circle(center, radius) -> "CircleForm":
        c = ComplexScalar.of(center)
        r = to_scalar(radius)
        return CircleForm(Fraction(1) if c.is_exact else 1.0, -c, c.abs2() - r * r)

    @staticmethod
    def line(normal, offset) -> "CircleForm":
        """Line ``{z : Re(conj(normal) z) = offset}``."""
        n = ComplexScalar.of(normal)
        h = to_scalar(offset)
        return CircleForm(Fraction(0), n * Fraction(1, 2), -h)

    def discriminant(self) -> Scalar:
        return self.B.abs2() - self.A * self.C

    @property
    def is_line(self) -> bool:
        return self.A == 0

    @property
    def is_exact(self) -> bool:
        return is_exact(self.A, self.B, self.C)

    def center(self) -> ComplexScalar:
        if self.is_line:
            raise ValueError("a line has no center")
        return -self.B / self.A

    def radius2(self) -> Scalar:
        return self.discriminant() / (self.A * self.A)

    def radius(self) -> float:
        return math.sqrt(float(self.radius2()))

    def line_normal_offset(self):
        """Unnormalised ``(n, h)`` with the line equal to ``Re(conj(n) z) = h``."""
        if not self.is_line:
            raise ValueError("not a line")
        return self.B * 2, -self.C

    def canonical(self) -> "CircleForm":
        for v in (self.A, self.B.re, self.B.im, self.C):
            if v != 0:
                return CircleForm(self.A / v, ComplexScalar(self.B.re / v, self.B.im / v), self.C / v)
        raise ValueError("zero form")

    def evaluate(self, z: ComplexScalar) -> Scalar:
        z = ComplexScalar.of(z)
        return self.A * z.abs2() + 2 * (self.B.conjugate() * z).re + self.C

    def contains(self, z: ProjPoint, tol: float = 1e-9) -> bool:
        """Whether ``z`` lies on the locus (lines contain INF)."""
        if z is INF:
            return self.is_line
        v = self.evaluate(z)
        if is_exact(v):
            return v == 0
        scale = max(1.0, abs(float(self.A)) * float(z.abs2()), abs(self.B) * abs(z), abs(float(self.C)))
        return abs(v) <= tol * scale

    def key(self, tol: Optional[float] = None):
        """Hashable identity of the locus: exact canonical form, or a rounded one."""
        c = self.canonical()
        if c.is_exact and tol is None:
            return (c.A, c.B.re, c.B.im, c.C)
        digits = 9 if tol is None else max(0, round(-math.log10(tol)))
        return tuple(round(float(v), digits) + 0.0 for v in (c.A, c.B.re, c.B.im, c.C))

    def same_locus(self, other: "CircleForm", tol: float = 1e-9) -> bool:
        a, b = self.canonical(), other.canonical()
        if a.is_exact and b.is_exact:
            return a == b
        return all(
            abs(float(x) - float(y)) <= tol * max(1.0, abs(float(x)), abs(float(y)))
            for x, y in ((a.A, b.A), (a.B.re, b.B.re), (a.B.im, b.B.im), (a.C, b.C))
        )


def _mat_mul(p, q):
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _conj_transpose(p):
    a, b, c, d = p
    return (a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())


def circle_apply_moebius(c: CircleForm, g) -> CircleForm:
    """Image of the locus ``c`` under ``g`` (anything with ``matrix`` and ``conj``).

    With ``g(z) = M z`` (or ``M conj(z)``) the image form is
    ``adj(M)^* H adj(M)`` where ``H`` is the Hermitian matrix of ``c``
    (entrywise conjugated first for anti-holomorphic ``g``).
    """
    m11, m12, m21, m22 = (ComplexScalar.of(v) for v in g.matrix)
    det = m11 * m22 - m12 * m21
    if det.is_zero():
        raise SingularMatrix("determinant is zero")
    b = c.B.conjugate() if g.conj else c.B
    h = (ComplexScalar.of(c.A), b, b.conjugate(), ComplexScalar.of(c.C))
    adj = (m22, -m12, -m21, m11)
    out = _mat_mul(_conj_transpose(adj), _mat_mul(h, adj))
    return CircleForm(out[0].re, out[1], out[3].re)
