"""Disks, tangency spinors, Pauli-spinor projection and the six-spinor frame."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from .errors import LineUnsupported, NotTangent
from .numerics import (
    INF,
    ComplexScalar,
    ProjPoint,
    Scalar,
    complex_sqrt,
    is_exact,
    to_scalar,
)

TANGENCY_RTOL = 1e-9


@dataclass(frozen=True)
class Disk:
    """A generalised disk in augmented curvature-center coordinates.

    ``k`` is the signed curvature, ``kz`` the curvature times the center
    (for a line: the unit normal pointing into the half-plane) and
    ``kbar`` the curvature of the disk's image under inversion in the unit
    circle (for a line: twice its signed distance from the origin). All
    three transform linearly under the Descartes reflection.
    """

    kbar: Scalar
    k: Scalar
    kz: ComplexScalar

    @staticmethod
    def circle(center, curvature) -> "Disk":
        c = ComplexScalar.of(center)
        k = to_scalar(curvature)
        if k == 0:
            raise ValueError("use Disk.line for zero curvature")
        kz = c * k
        return Disk((kz.abs2() - 1) / k, k, kz)

    @staticmethod
    def line(normal, offset) -> "Disk":
        """Half-plane ``{p : n.p >= offset}`` bounded by a line; ``|n| = 1``."""
        n = ComplexScalar.of(normal)
        h = to_scalar(offset)
        zero = Fraction(0) if is_exact(n, h) else 0.0
        return Disk(2 * h, zero, n)

    @property
    def is_line(self) -> bool:
        return self.k == 0

    @property
    def center(self) -> ComplexScalar:
        if self.is_line:
            raise LineUnsupported("a line has no center")
        return self.kz / self.k

    @property
    def radius(self) -> float:
        if self.is_line:
            return float("inf")
        return abs(1 / float(self.k))

    @property
    def signed_radius(self) -> Scalar:
        return 1 / self.k

    @property
    def normal(self) -> ComplexScalar:
        if not self.is_line:
            raise ValueError("only lines have a normal")
        return self.kz

    @property
    def offset(self) -> Scalar:
        if not self.is_line:
            raise ValueError("only lines have an offset")
        return self.kbar / 2

    @property
    def is_exact(self) -> bool:
        return is_exact(self.kbar, self.k, self.kz)

    def scaled(self, s) -> "Disk":
        """The disk after the similarity z -> s z (s > 0)."""
        s = to_scalar(s)
        return Disk(self.kbar * s, self.k / s, self.kz)


def tangency_residual(d1: Disk, d2: Disk) -> float:
    """Distance from tangency, relative to the larger finite radius."""
    if d1.is_line and d2.is_line:
        # parallel lines touch at infinity exactly when their normals are opposite
        return abs(complex(d1.kz + d2.kz))
    if d1.is_line or d2.is_line:
        ln, c = (d1, d2) if d1.is_line else (d2, d1)
        n = complex(ln.normal)
        p = complex(c.center)
        dist = (n.conjugate() * p).real - float(ln.offset)
        # the circle sits on the opposite side of the half-plane, touching it
        return abs(dist + c.radius) / c.radius
    w = complex(d2.center - d1.center)
    r1, r2 = float(d1.signed_radius), float(d2.signed_radius)
    scale = max(abs(r1), abs(r2))
    return min(abs(abs(w) - abs(r1 + r2)), abs(abs(w) - abs(r1 - r2))) / scale


def are_tangent(d1: Disk, d2: Disk, rtol: float = TANGENCY_RTOL) -> bool:
    if not (d1.is_line or d2.is_line) and d1.is_exact and d2.is_exact:
        w2 = (d2.center - d1.center).abs2()
        r1, r2 = d1.signed_radius, d2.signed_radius
        return w2 == (r1 + r2) ** 2 or w2 == (r1 - r2) ** 2
    return tangency_residual(d1, d2) <= rtol


def spinor_of_pair(d1: Disk, d2: Disk) -> ComplexScalar:
    """Principal root ``u`` of ``u^2 = w / (r1 r2)``, ``w`` the center difference."""
    if d1.is_line or d2.is_line:
        raise LineUnsupported("tangency spinors need finite radii")
    if not are_tangent(d1, d2):
        raise NotTangent(f"disks are not tangent (residual {tangency_residual(d1, d2):.3g})")
    w = d2.center - d1.center
    return complex_sqrt(w * (d1.k * d2.k))


class SpinorProducts(NamedTuple):
    C: Scalar
    A: Scalar
    B: Scalar
    D_minus: Scalar
    D_plus: Scalar
    K: Scalar


def cross(a: ComplexScalar, b: ComplexScalar) -> Scalar:
    return a.re * b.im - a.im * b.re


def dot(a: ComplexScalar, b: ComplexScalar) -> Scalar:
    return a.re * b.re + a.im * b.im


def spinor_products(a, b) -> SpinorProducts:
    """Curvatures read off two spinors sharing the anchor disk C.

    ``D-``/``D+`` use squared norms of ``a -/+ b``; they equal the Descartes
    roots in that order when ``a . b >= 0``.
    """
    a = ComplexScalar.of(a)
    b = ComplexScalar.of(b)
    c = cross(a, b)
    return SpinorProducts(
        C=c,
        A=a.abs2() - c,
        B=b.abs2() - c,
        D_minus=(a - b).abs2() - c,
        D_plus=(a + b).abs2() - c,
        K=dot(a, b),
    )


def project_pauli(a, b) -> ProjPoint:
    a = ComplexScalar.of(a)
    b = ComplexScalar.of(b)
    if a.is_zero():
        if b.is_zero():
            raise ValueError("the zero Pauli spinor has no projection")
        return INF
    return b / a


def completion_spinors(a, b) -> Tuple[ComplexScalar, ComplexScalar]:
    """Spinors ``(b + a, b - a)`` from C to the two Descartes completions."""
    a = ComplexScalar.of(a)
    b = ComplexScalar.of(b)
    return b + a, b - a


def _sf(z: ProjPoint) -> ProjPoint:
    # z -> -1/(i - z) = 1/(z - i)
    if z is INF:
        return ComplexScalar(Fraction(0), Fraction(0))
    d = z - ComplexScalar(Fraction(0), Fraction(1))
    if d.is_zero():
        return INF
    return 1 / d


def _fs(z: ProjPoint) -> ProjPoint:
    # z -> i + 1/z
    i = ComplexScalar(Fraction(0), Fraction(1))
    if z is INF:
        return i
    if z.is_zero():
        return INF
    return i + 1 / z


def frame_representatives(z) -> Tuple[ProjPoint, ProjPoint, ProjPoint]:
    """The three points obtained by re-anchoring the spinor pair: ``(z, SF z, FS z)``."""
    if z is not INF:
        z = ComplexScalar.of(z)
    return z, _sf(z), _fs(z)


@dataclass(frozen=True)
class SpinorFrame:
    """Spinors ``a = spin(B,C)``, ``b = spin(C,A)``, ``c = spin(A,B)``, signed so
    that ``a + b + c = 0``. The symplectic partner of ``x`` is ``i x``."""

    a: ComplexScalar
    b: ComplexScalar
    c: ComplexScalar

    @staticmethod
    def plus(x: ComplexScalar) -> ComplexScalar:
        return x * ComplexScalar(Fraction(0), Fraction(1))

    def closure_residual(self) -> float:
        return abs(complex(self.a + self.b + self.c))

    def curvatures(self) -> Tuple[Scalar, Scalar, Scalar]:
        """``(A, B, C)`` from ``b+ x c``, ``c+ x a`` and ``a+ x b``.

        Reproduces the actual curvatures for a frame built by
        :func:`spinor_frame`; the opposite operand order gives their negatives.
        """
        p = self.plus
        return cross(p(self.b), self.c), cross(p(self.c), self.a), cross(p(self.a), self.b)


def spinor_frame(dA: Disk, dB: Disk, dC: Disk) -> SpinorFrame:
    a = spinor_of_pair(dB, dC)
    b = spinor_of_pair(dC, dA)
    c = spinor_of_pair(dA, dB)
    best: Optional[SpinorFrame] = None
    for sb in (1, -1):
        for sc in (1, -1):
            f = SpinorFrame(a, b * sb, c * sc)
            if best is None or f.closure_residual() < best.closure_residual():
                best = f
    return best
