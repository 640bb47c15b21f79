import itertools
import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from apollo.depth import depth_triple, depth_z
from apollo.numerics import CircleForm, circle_apply_moebius, point
from apollo.packing import Packing, belt_seed, generate_packing, window_seed
from apollo.render import (
    OVERFLOW_COLOR,
    PALETTE,
    ZERO_COLOR,
    belt_loci,
    fnum,
    mirror_loci,
    pixel_centers,
    render_depth,
    render_packing_svg,
    render_tessellation_svg,
    tessellation_circles,
    write_ppm,
)
from apollo.symmetry import XI_GENERATORS, evaluate_word

SVG = "{http://www.w3.org/2000/svg}"


def test_ppm_header_and_size():
    r = render_depth((0, 1, 0, 1), 1, 1, mode="spinor")
    data = write_ppm(r)
    assert data == b"P6\n1 1\n255\n" + bytes(r.pixel(0, 0))
    assert len(data) == 11 + 3
    big = write_ppm(render_depth((-3, 3, 0, 1), 64, 48, 8, workers=1))
    assert big.startswith(b"P6\n64 48\n255\n") and len(big) == 13 + 64 * 48 * 3


def test_ppm_to_file(tmp_path):
    r = render_depth((0, 1, 0, 1), 4, 2)
    path = tmp_path / "d.ppm"
    write_ppm(r, path)
    assert path.read_bytes() == write_ppm(r)


def test_pixel_centers_exact():
    xs, ys = pixel_centers((Fraction(0), Fraction(2), Fraction(0), Fraction(1)), 4, 2)
    assert xs == [Fraction(1, 4), Fraction(3, 4), Fraction(5, 4), Fraction(7, 4)]
    assert ys == [Fraction(3, 4), Fraction(1, 4)]


def test_spinor_raster_matches_scalar_depth():
    r = render_depth((-2, 3, 0, 1), 40, 12, max_depth=64, workers=1)
    xs, ys = pixel_centers(r.window, 40, 12)
    want = np.array([[depth_z(point(x, y)).depth for x in xs] for y in ys])
    assert (r.depths == want).all()


def test_spinor_spot_colors():
    r = render_depth((0, 1, 0, 1), 1, 1)
    assert r.depths[0, 0] == 0 and r.pixel(0, 0) == ZERO_COLOR
    r = render_depth((Fraction(1, 2), Fraction(3, 2), 0, 1), 1, 1)
    assert r.depths[0, 0] == 1 and r.pixel(0, 0) == PALETTE[0]


def test_overflow_color():
    r = render_depth((49, 51, 0, 1), 1, 1, max_depth=8)
    assert r.depths[0, 0] == 8 and r.pixel(0, 0) == OVERFLOW_COLOR


def test_web_mode_points():
    r = render_depth((Fraction(8, 10), 1, Fraction(8, 10), 1), 1, 1, mode="web")
    assert r.depths[0, 0] == depth_triple((1, Fraction(9, 10), Fraction(9, 10))).depth > 0
    r = render_depth((Fraction(1, 2), Fraction(3, 2), Fraction(1, 2), Fraction(3, 2)), 1, 1, mode="web")
    assert r.depths[0, 0] == 1


def test_worker_count_does_not_matter():
    a = render_depth((-1, 2, 0, 1), 50, 37, 30, workers=1, rows_per_task=3)
    b = render_depth((-1, 2, 0, 1), 50, 37, 30, workers=5, rows_per_task=3)
    assert a.pixels == b.pixels


def test_render_argument_errors():
    for kw in ({"mode": "bogus"}, {"max_depth": 0}):
        with pytest.raises(ValueError):
            render_depth((0, 1, 0, 1), 2, 2, **kw)
    with pytest.raises(ValueError):
        render_depth((1, 0, 0, 1), 2, 2)
    with pytest.raises(ValueError):
        render_depth((0, 1, 0, 1), 0, 2)


def test_nearest_pixel():
    r = render_depth((0, 4, 0, 1), 8, 2)
    assert r.nearest(0.1, 0.9) == (0, 0)
    assert r.nearest(3.9, 0.1) == (7, 1)


def test_fnum():
    assert fnum(0.5) == "0.5"
    assert fnum(-0.0) == "0"
    assert fnum(Fraction(1, 3)) == "0.333333333"
    assert fnum(2.0) == "2"
    assert fnum(1e-12) == "1e-12"


def _parse(svg):
    return ET.fromstring(svg)


def test_window_svg():
    p = generate_packing(window_seed(), 15)
    svg = render_packing_svg(p)
    root = _parse(svg)
    circles = root.findall(f".//{SVG}circle")
    assert len(circles) == len(p.disks) == 19
    radii = [float(c.get("r")) for c in circles]
    assert radii == sorted(radii, reverse=True)
    assert svg == render_packing_svg(generate_packing(window_seed(), 15))


def test_window_svg_labels():
    p = generate_packing(window_seed(), 6)
    root = _parse(render_packing_svg(p, labels=True))
    texts = sorted(t.text for t in root.findall(f".//{SVG}text"))
    assert texts == sorted(str(int(k)) for k in p.curvatures() if k > 0)


def test_belt_svg_has_lines():
    p = generate_packing(belt_seed(), 4, bounds=(-3, 3, -1, 1))
    root = _parse(render_packing_svg(p))
    assert len(root.findall(f".//{SVG}line")) == 2


def test_empty_packing_svg():
    p = Packing(disks=[], levels=[], adjacency=set(), configs=[], seed=(), duplicates=0)
    root = _parse(render_packing_svg(p))
    assert root.findall(f".//{SVG}circle") == []


def _brute_force_keys(max_len, tol=None):
    # every word over the generators, composed as one element, applied to each base locus
    base = mirror_loci() + belt_loci()
    keys = set()
    for n in range(max_len + 1):
        for word in itertools.product(XI_GENERATORS, repeat=n):
            g = evaluate_word(list(word))
            for c in base:
                keys.add(circle_apply_moebius(c, g).canonical().key(tol))
    return keys


def test_tessellation_base():
    circles = tessellation_circles(0)
    assert len(circles) == 7
    kinds = sorted(tc.kind for tc in circles.values())
    assert kinds.count("mirror") == 4 and kinds.count("belt") == 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tessellation_matches_word_enumeration(n):
    assert set(tessellation_circles(n)) == _brute_force_keys(n)


def test_tessellation_contains_translates():
    keys = set(tessellation_circles(2))
    for k in (1, -1, 2):
        assert CircleForm.line(1, k).canonical().key() in keys
    assert CircleForm.line(1, 3).canonical().key() not in keys


def test_tessellation_svg_colors():
    svg = render_tessellation_svg(2)
    root = _parse(svg)
    strokes = {e.get("stroke") for e in root.iter() if e.get("stroke")}
    assert strokes == {"black", "red"}
    assert svg == render_tessellation_svg(2)
    with pytest.raises(ValueError):
        tessellation_circles(9)
