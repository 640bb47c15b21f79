import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from apollo.depth import descartes_solutions, triple_of_z
from apollo.errors import LineUnsupported, NotTangent
from apollo.numerics import INF, ComplexScalar, point
from apollo.packing import tricycle_of_z_geometric
from apollo.spinor import (
    Disk,
    are_tangent,
    completion_spinors,
    frame_representatives,
    project_pauli,
    spinor_frame,
    spinor_of_pair,
    spinor_products,
)

I = ComplexScalar(Fraction(0), Fraction(1))
small = st.fractions(-6, 6, max_denominator=12)


def test_spinor_of_unit_pair():
    u = spinor_of_pair(Disk.circle(0, 1), Disk.circle(2, 1))
    assert complex(u * u) == pytest.approx(2)
    assert u.re > 0


def test_spinor_of_unequal_pair():
    u = spinor_of_pair(Disk.circle(0, 1), Disk.circle(Fraction(3, 2), 2))
    assert complex(u) == pytest.approx(math.sqrt(3))


def test_spinor_swap_multiplies_by_i():
    d1, d2 = Disk.circle(0, 1), Disk.circle(Fraction(3, 2), 2)
    u, v = complex(spinor_of_pair(d1, d2)), complex(spinor_of_pair(d2, d1))
    assert v == pytest.approx(1j * u) or v == pytest.approx(-1j * u)


def test_spinor_errors():
    with pytest.raises(NotTangent):
        spinor_of_pair(Disk.circle(0, 1), Disk.circle(3, 1))
    with pytest.raises(LineUnsupported):
        spinor_of_pair(Disk.line(I, 1), Disk.circle(0, 1))


def test_spinor_definition_against_cmath():
    # oracle: u^2 = w / (r1 r2) with plain complex arithmetic
    d1, d2 = Disk.circle(point(1, 1), Fraction(1, 2)), Disk.circle(point(1, 4), 1)
    u = complex(spinor_of_pair(d1, d2))
    w = 3j
    assert u * u == pytest.approx(w / (2 * 1))


def test_products_normalised_pair():
    x, y = Fraction(3, 5), Fraction(2, 7)
    p = spinor_products(1, point(x, y))
    assert (p.C, p.A, p.B) == (y, 1 - y, x * x + y * y - y)
    assert p.K == x


def test_products_belt_examples():
    p = spinor_products(1, I)
    assert (p.C, p.A, p.B, p.D_minus, p.D_plus) == (1, 0, 0, 1, 1)
    p = spinor_products(1, point(1, 1))
    assert (p.C, p.A, p.B, p.D_minus, p.D_plus) == (1, 0, 1, 0, 4)


@given(small, small)
def test_squared_norms_are_descartes_roots(x, y):
    p = spinor_products(1, point(x, y))
    assume(p.A * p.B + p.B * p.C + p.C * p.A >= 0)
    lo, hi = descartes_solutions((p.A, p.B, p.C))
    assert {p.D_minus, p.D_plus} == {lo, hi}


@given(small, small, small, small)
def test_sign_double_cover(a1, a2, b1, b2):
    a, b = point(a1, a2), point(b1, b2)
    p = spinor_products(a, b)
    assert spinor_products(-a, b).C == -p.C
    assert spinor_products(-a, -b) == p


def test_project_pauli():
    assert project_pauli(1, point(3, 4)) == point(3, 4)
    assert project_pauli(2, point(0, 2)) == I
    assert project_pauli(0, 1) is INF


def test_completion_spinors():
    x, y = Fraction(2, 3), Fraction(1, 4)
    plus, minus = completion_spinors(1, point(x, y))
    assert plus == point(x + 1, y) and minus == point(x - 1, y)
    p = spinor_products(1, point(x, y))
    assert plus.abs2() - p.C == p.D_plus and minus.abs2() - p.C == p.D_minus


def test_frame_representatives_examples():
    z1, z2, z3 = frame_representatives(I)
    assert z1 == I and z2 is INF and z3 == point(0, 0)
    one = point(1, 0)
    _, z2, z3 = frame_representatives(one)
    assert complex(z2) == pytest.approx(-1 / (1j - 1))
    assert z3 == point(1, 1)


@given(small, small)
def test_frame_representatives_cycle_and_triples(x, y):
    z = point(x, y)
    assume(z != I and z != point(0, 0))
    z1, z2, z3 = frame_representatives(z)
    assume(z2 is not INF and z3 is not INF and z2 != point(0, 0) and z3 != I)
    # the map z -> 1/(z - i) has order three
    assert frame_representatives(frame_representatives(z2)[1])[1] == z
    def normed(t):
        return sorted(v / sum(t) for v in t)
    n1 = normed(triple_of_z(z1))
    assert normed(triple_of_z(z2)) == n1 == normed(triple_of_z(z3))


@given(st.fractions(-4, 4, max_denominator=10), st.fractions(Fraction(1, 10), Fraction(9, 10), max_denominator=10))
def test_geometric_tricycle_frame(x, y):
    z = point(x, y)
    A, B, C = triple_of_z(z)
    assume(B != 0)
    dA, dB, dC = tricycle_of_z_geometric(z)
    assert (dA.k, dB.k, dC.k) == (A, B, C)
    assert are_tangent(dA, dB) and are_tangent(dB, dC) and are_tangent(dC, dA)
    f = spinor_frame(dA, dB, dC)
    assert f.closure_residual() == 0
    assert f.curvatures() == (A, B, C)
    b, c = spinor_of_pair(dC, dA), spinor_of_pair(dC, dB)
    assert b == point(1, 0)
    assert c == z or c == -z


def test_tricycle_examples():
    dA, dB, dC = tricycle_of_z_geometric(point(1, Fraction(1, 2)))
    assert (dA.k, dB.k, dC.k) == (Fraction(1, 2), Fraction(3, 4), Fraction(1, 2))
    dA, dB, dC = tricycle_of_z_geometric(point(0, Fraction(1, 2)))
    assert dB.k == Fraction(-1, 4)
    # the containing disk: others are internally tangent
    assert (dA.center - dB.center).abs2() == (dB.signed_radius + dA.signed_radius) ** 2


def test_disk_coordinates_roundtrip():
    d = Disk.circle(point(Fraction(1, 3), 2), Fraction(5, 2))
    assert d.center == point(Fraction(1, 3), 2)
    assert d.kbar == (d.kz.abs2() - 1) / d.k
    s = d.scaled(3)
    assert s.k == Fraction(5, 6) and s.center == point(1, 6)
