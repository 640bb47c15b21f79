import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from apollo.depth import depth_z, triple_of_z
from apollo.errors import CanonicalizeOverflow, ClosureOverflow, UnknownGenerator
from apollo.numerics import INF, ComplexScalar, point, points_close
from apollo.symmetry import (
    IDENTITY,
    GroupElement,
    apply_word_coordinates,
    canonicalize_to_P,
    closure,
    compose,
    enumerate_g,
    enumerate_theta,
    evaluate_word,
    generator,
    generator_coordinate,
    in_region,
    orbit_sample,
    verify_relations,
)

import oracles

coords = st.fractions(-5, 5, max_denominator=24)
NAMES = ["T", "T-1", "S", "F", "R", "H", "P"]


def test_relations_all_hold():
    bad = [c.name for c in verify_relations() if not c.passed]
    assert bad == []


def test_group_orders():
    assert len(enumerate_theta()) == 12
    assert len(enumerate_theta(with_h=False)) == 6
    assert len(enumerate_g()) == 3


def test_matrix_table_s_generates_infinite_group():
    with pytest.raises(ClosureOverflow):
        closure({"Sgeo": generator("Sgeo"), "F": generator("F")})


def test_h_does_not_commute_with_t():
    H, T = generator("H"), generator("T")
    assert compose(H, T) != compose(T, H)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        generator("Q")
    with pytest.raises(UnknownGenerator):
        generator_coordinate("That", point(0, 0))


@given(st.sampled_from(NAMES), coords, coords)
def test_matrix_action_matches_coordinates(name, x, y):
    z = point(x, y)
    assert generator(name).apply(z) == generator_coordinate(name, z)


@given(st.sampled_from(NAMES), coords, coords)
def test_matrix_action_matches_plain_complex(name, x, y):
    z = point(x, y)
    g = generator(name)
    w = g.apply(z)
    assume(w is not INF)
    ref = oracles.moebius_apply(g.matrix, g.conj, complex(z))
    assert complex(w) == pytest.approx(ref)


def test_coordinate_forms_at_infinity():
    assert generator_coordinate("S", INF) == point(0, 0)
    assert generator_coordinate("R", INF) == ComplexScalar(Fraction(0), Fraction(1))
    assert generator_coordinate("S", point(0, 0)) is INF
    assert generator_coordinate("R", point(0, 1)) is INF
    assert generator("S").apply(INF) == point(0, 0)


@given(st.lists(st.sampled_from(NAMES), max_size=6), coords, coords)
def test_word_evaluation_order(word, x, y):
    z = point(x, y)
    w = apply_word_coordinates(word, z)
    g = evaluate_word(word)
    assert g.apply(z) == w if w is not INF else g.apply(z) is INF


def test_inverse():
    for n in NAMES:
        g = generator(n)
        assert compose(g, g.inverse()) == IDENTITY


def test_algebraic_versions():
    z = point(Fraction(2, 3), Fraction(1, 5))
    assert generator("Fhat").apply(z) == point(Fraction(-2, 3), Fraction(4, 5))
    assert generator("Rhat").apply(z) == ComplexScalar(Fraction(0), Fraction(1)) * z / (z - point(0, 1))
    TS = compose(generator("That"), generator("Shat"))
    assert compose(TS, compose(TS, TS)) == IDENTITY


def test_curvature_permutation():
    z = point(Fraction(3, 7), Fraction(2, 9))
    A, B, C = triple_of_z(z)
    base = sorted(v / (A + B + C) for v in (A, B, C))
    fA, fB, fC = triple_of_z(generator_coordinate("F", z))
    assert (fA, fB, fC) == (C, B, A)
    for n in ("F", "S", "R"):
        t = triple_of_z(generator_coordinate(n, z))
        assert sorted(v / sum(t) for v in t) == base


def test_regions():
    assert in_region("P", point(0, -2))
    assert not in_region("P", point(Fraction(3, 10), Fraction(1, 10)))
    assert in_region("Q", point(Fraction(6, 5), Fraction(1, 5)))
    assert in_region("dark", point(0, Fraction(1, 2)))
    assert in_region("strip", point(7, 1))
    with pytest.raises(ValueError):
        in_region("nowhere", point(0, 0))


def test_q_images_tile_near_triple_point():
    # sampled points near (sqrt3/2, 1/2) lie in exactly one Theta-image of the interior of Q
    theta = list(enumerate_theta())
    rng = random.Random(8)
    cx, cy = math.sqrt(3) / 2, 0.5
    for _ in range(300):
        z = ComplexScalar(cx + rng.uniform(-0.2, 0.2), cy + rng.uniform(-0.2, 0.2))
        hits = 0
        for g in theta:
            w = g.inverse().apply(z)
            x, y = float(w.re), float(w.im)
            if x > 1e-9 and y < 0.5 - 1e-9 and x * x + y * y > 1 + 1e-9:
                hits += 1
        assert hits == 1


def test_canonical_examples():
    c = canonicalize_to_P(point(0, -2))
    assert c.point == point(0, -2) and c.word == ()
    c = canonicalize_to_P(point(Fraction(3, 10), Fraction(27, 10)))
    assert c.point == point(Fraction(3, 10), Fraction(-17, 10)) and c.word == ("F",)
    c = canonicalize_to_P(point(1, Fraction(1, 2)))
    assert c.point == point(0, -1) and c.boundary


def test_cusp_class_reduces_to_infinity():
    assert canonicalize_to_P(point(0, 1)).point is INF
    assert canonicalize_to_P(point(Fraction(7, 3), 0)).point is INF


@settings(max_examples=200)
@given(coords, coords)
def test_canonical_word_reproduces_point(x, y):
    z = point(x, y)
    c = canonicalize_to_P(z)
    assert apply_word_coordinates(c.word, z) == c.point or (c.point is INF and apply_word_coordinates(c.word, z) is INF)
    if c.point is not INF:
        assert in_region("P", c.point)


def test_canonicalize_overflow():
    with pytest.raises(CanonicalizeOverflow):
        canonicalize_to_P(point(10**5, Fraction(-1, 2)), max_steps=10)


@given(coords, coords)
def test_orbit_points_share_canonical_point(x, y):
    z = point(x, y)
    base = canonicalize_to_P(z).point
    for w in orbit_sample(z, 2):
        c = canonicalize_to_P(w).point if w is not INF else INF
        assert points_close(c, base)


def test_orbit_contains_word_images():
    pts = orbit_sample(point(0, 1), 2, gens=("T", "S"))
    assert point(1, 1) in pts
    assert point(Fraction(1, 2), Fraction(1, 2)) in pts
    with pytest.raises(ValueError):
        orbit_sample(point(0, 1), 9)


@settings(max_examples=60)
@given(st.fractions(0, 3, max_denominator=50), st.fractions(Fraction(1, 50), Fraction(49, 50), max_denominator=50))
def test_theta_preserves_depth(x, y):
    z = point(x, y)
    d = depth_z(z).depth
    for g in enumerate_theta():
        w = g.apply(z)
        if w is not INF:
            assert depth_z(w).depth == d


def test_float_points_canonicalize():
    c = canonicalize_to_P(ComplexScalar(0.3, 0.4))
    assert in_region("P", ComplexScalar(min(float(c.point.re), 0.5), c.point.im)) or c.boundary
