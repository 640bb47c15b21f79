"""Depth rasters (PPM) and vector drawings (SVG) of packings and the
tessellation generated by the mirror group."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .depth import depth_grid
from .numerics import CircleForm, ComplexScalar, circle_apply_moebius, to_scalar
from .symmetry import XI_GENERATORS, generator

ZERO_COLOR = (0, 0, 0)
OVERFLOW_COLOR = (255, 255, 255)
PALETTE = (
    (25, 25, 112),
    (0, 0, 205),
    (30, 144, 255),
    (0, 191, 255),
    (135, 206, 235),
    (70, 130, 180),
    (100, 149, 237),
    (65, 105, 225),
    (0, 0, 139),
    (72, 61, 139),
    (106, 90, 205),
    (123, 104, 238),
)

MODES = ("spinor", "web")


def default_workers() -> int:
    env = os.environ.get("APOLLO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Raster:
    width: int
    height: int
    window: Tuple[Fraction, Fraction, Fraction, Fraction]
    depths: np.ndarray  # (height, width), max_depth marks overflow
    pixels: bytes  # row-major RGB
    max_depth: int

    def pixel(self, i: int, j: int) -> Tuple[int, int, int]:
        o = 3 * (j * self.width + i)
        return tuple(self.pixels[o:o + 3])

    def nearest(self, x, y) -> Tuple[int, int]:
        """Indices (i, j) of the pixel whose center is nearest to (x, y)."""
        xmin, xmax, ymin, ymax = (float(v) for v in self.window)
        i = int(math.floor((float(x) - xmin) / (xmax - xmin) * self.width))
        j = int(math.floor((ymax - float(y)) / (ymax - ymin) * self.height))
        return min(max(i, 0), self.width - 1), min(max(j, 0), self.height - 1)


def pixel_centers(window, width: int, height: int):
    """Exact sample coordinates: xs per column, ys per row (top row first)."""
    xmin, xmax, ymin, ymax = window
    xs = [xmin + (Fraction(2 * i + 1, 2)) * (xmax - xmin) / width for i in range(width)]
    ys = [ymax - (Fraction(2 * j + 1, 2)) * (ymax - ymin) / height for j in range(height)]
    return xs, ys


def colorize(depths: np.ndarray, max_depth: int) -> np.ndarray:
    lut = np.zeros((max_depth + 1, 3), dtype=np.uint8)
    lut[0] = ZERO_COLOR
    for d in range(1, max_depth):
        lut[d] = PALETTE[(d - 1) % 12]
    lut[max_depth] = OVERFLOW_COLOR
    return lut[np.clip(depths, 0, max_depth)]


def _rows_spinor(xs, ys, max_depth):
    # triple (1-y, x^2 + (y^2-y), y); x^2 and y^2-y are exact before rounding,
    # so mirror pixels (x -> -x, y -> 1-y) see bit-identical float triples
    x2 = np.array([float(x * x) for x in xs])
    q = np.array([float(y * y - y) for y in ys])
    a = np.array([float(1 - y) for y in ys])
    c = np.array([float(y) for y in ys])
    A = np.repeat(a[:, None], len(xs), axis=1)
    B = x2[None, :] + q[:, None]
    C = np.repeat(c[:, None], len(xs), axis=1)
    return depth_grid(A, B, C, max_depth)


def _rows_web(xs, ys, max_depth):
    xf = np.array([float(x) for x in xs])
    yf = np.array([float(y) for y in ys])
    A = np.ones((len(ys), len(xs)))
    B = np.repeat(xf[None, :], len(ys), axis=0)
    C = np.repeat(yf[:, None], len(xs), axis=1)
    return depth_grid(A, B, C, max_depth)


def render_depth(window, width: int, height: int, max_depth: int = 64, mode: str = "spinor",
                 workers: Optional[int] = None, rows_per_task: int = 16) -> Raster:
    """Depth per pixel center: ``depth_z`` (spinor) or ``depth_triple(1, x, y)`` (web).

    Rows are computed in parallel chunks and assembled in order, so the
    result does not depend on ``workers``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if width < 1 or height < 1:
        raise ValueError("raster must be at least 1x1")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    win = tuple(to_scalar(v) for v in window)
    win = tuple(Fraction(v) for v in win)
    if not (win[0] < win[1] and win[2] < win[3]):
        raise ValueError("degenerate window")
    xs, ys = pixel_centers(win, width, height)
    job = _rows_spinor if mode == "spinor" else _rows_web
    chunks = [ys[k:k + rows_per_task] for k in range(0, height, rows_per_task)]
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(chunks) == 1:
        parts = [job(xs, ch, max_depth) for ch in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda ch: job(xs, ch, max_depth), chunks))
    depths = np.concatenate(parts, axis=0)
    rgb = colorize(depths, max_depth)
    return Raster(width, height, win, depths, rgb.tobytes(), max_depth)


def ppm_bytes(r: Raster) -> bytes:
    return f"P6\n{r.width} {r.height}\n255\n".encode("ascii") + r.pixels


def write_ppm(r: Raster, out=None) -> bytes:
    """Binary PPM; ``out`` may be a path or a binary file object."""
    data = ppm_bytes(r)
    if out is None:
        return data
    if hasattr(out, "write"):
        out.write(data)
    else:
        with open(out, "wb") as fh:
            fh.write(data)
    return data


# --- SVG ------------------------------------------------------------------------


def fnum(v) -> str:
    """9 significant digits, trailing zeros trimmed, no negative zero."""
    v = float(v)
    if v == 0 or abs(v) < 1e-300:
        return "0"
    s = f"{v:.9g}"
    if "e" in s:
        mant, exp = s.split("e")
        if "." in mant:
            mant = mant.rstrip("0").rstrip(".")
        return f"{mant}e{int(exp)}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    """One global affine map from y-up window coordinates to y-down pixels."""

    def __init__(self, window, width: int, height: int):
        self.xmin, self.xmax, self.ymin, self.ymax = (float(v) for v in window)
        self.width = width
        self.height = height
        self.sx = width / (self.xmax - self.xmin)
        self.sy = height / (self.ymax - self.ymin)
        self.stroke = 0.005 * height
        self.parts: List[str] = []

    def X(self, x):
        return (float(x) - self.xmin) * self.sx

    def Y(self, y):
        return (self.ymax - float(y)) * self.sy

    def circle(self, cx, cy, r, color="black", extra=""):
        self.parts.append(
            f'<circle cx="{fnum(self.X(cx))}" cy="{fnum(self.Y(cy))}" r="{fnum(float(r) * self.sx)}" '
            f'fill="none" stroke="{color}" stroke-width="{fnum(self.stroke)}"{extra}/>'
        )

    def line(self, p, q, color="black"):
        self.parts.append(
            f'<line x1="{fnum(self.X(p[0]))}" y1="{fnum(self.Y(p[1]))}" x2="{fnum(self.X(q[0]))}" '
            f'y2="{fnum(self.Y(q[1]))}" stroke="{color}" stroke-width="{fnum(self.stroke)}"/>'
        )

    def text(self, x, y, s, size):
        self.parts.append(
            f'<text x="{fnum(self.X(x))}" y="{fnum(self.Y(y))}" font-size="{fnum(size)}" '
            f'text-anchor="middle" dominant-baseline="central">{s}</text>'
        )

    def document(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
        )
        body = "".join(p + "\n" for p in self.parts)
        return head + body + "</svg>\n"


def clip_line(point, direction, window) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Segment of the infinite line ``point + t direction`` inside the window."""
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    px, py = point
    dx, dy = direction
    t0, t1 = -math.inf, math.inf
    for p, d, lo, hi in ((px, dx, xmin, xmax), (py, dy, ymin, ymax)):
        if d == 0:
            if p < lo or p > hi:
                return None
            continue
        a, b = (lo - p) / d, (hi - p) / d
        if a > b:
            a, b = b, a
        t0, t1 = max(t0, a), min(t1, b)
    if t0 > t1:
        return None
    return (px + t0 * dx, py + t0 * dy), (px + t1 * dx, py + t1 * dy)


def _line_geometry(n: complex, h: float):
    # {p : Re(conj(n) p) = h}
    m2 = abs(n) ** 2
    p0 = n * (h / m2)
    d = n * 1j
    return (p0.real, p0.imag), (d.real, d.imag)


def _packing_window(p) -> Tuple[float, float, float, float]:
    finite = [d for d in p.disks if not d.is_line]
    outer = [d for d in finite if d.k < 0]
    pool = outer if outer else finite
    if not pool:
        return (-1.0, 1.0, -1.0, 1.0)
    xs0 = min(float(d.center.re) - d.radius for d in pool)
    xs1 = max(float(d.center.re) + d.radius for d in pool)
    ys0 = min(float(d.center.im) - d.radius for d in pool)
    ys1 = max(float(d.center.im) + d.radius for d in pool)
    for d in p.disks:
        if d.is_line:
            # axis-parallel boundary lines widen the box to stay visible
            n, h = complex(d.normal), float(d.offset)
            if n.real == 0:
                y = h / n.imag
                ys0, ys1 = min(ys0, y), max(ys1, y)
            elif n.imag == 0:
                x = h / n.real
                xs0, xs1 = min(xs0, x), max(xs1, x)
    pad = 0.02 * max(xs1 - xs0, ys1 - ys0)
    return (xs0 - pad, xs1 + pad, ys0 - pad, ys1 + pad)


def render_packing_svg(p, width: int = 800, window=None, labels: bool = False) -> str:
    """One ``<circle>`` per disk (``<line>`` for half-planes), largest first,
    ties broken by center."""
    win = _packing_window(p) if window is None else tuple(float(v) for v in window)
    height = max(1, round(width * (win[3] - win[2]) / (win[1] - win[0])))
    cv = _Canvas(win, width, height)
    lines = [d for d in p.disks if d.is_line]
    circles = [d for d in p.disks if not d.is_line]
    for d in sorted(lines, key=lambda d: (float(d.kz.re), float(d.kz.im), float(d.kbar))):
        pt, dr = _line_geometry(complex(d.normal), float(d.offset))
        seg = clip_line(pt, dr, win)
        if seg is not None:
            cv.line(*seg)
    circles.sort(key=lambda d: (-d.radius, float(d.center.re), float(d.center.im)))
    for d in circles:
        c = d.center
        cv.circle(c.re, c.im, d.radius)
    if labels:
        for d in circles:
            if d.k > 0:
                c = d.center
                cv.text(c.re, c.im, fnum(d.k), d.radius * cv.sx * 0.8)
    return cv.document()


# --- tessellation ---------------------------------------------------------------

HALF = Fraction(1, 2)
_I = ComplexScalar(Fraction(0), Fraction(1))


def mirror_loci() -> List[CircleForm]:
    """x = 0, y = 1/2, |z| = 1, |z - i| = 1."""
    return [
        CircleForm.line(1, 0),
        CircleForm.line(_I, HALF),
        CircleForm.circle(0, 1),
        CircleForm.circle(_I, 1),
    ]


def belt_loci() -> List[CircleForm]:
    """Boundaries of the zero-depth region: y = 0, y = 1 and |z - i/2| = 1/2."""
    return [
        CircleForm.line(_I, 0),
        CircleForm.line(_I, 1),
        CircleForm.circle(_I * HALF, HALF),
    ]


@dataclass(frozen=True)
class TessCircle:
    form: CircleForm
    kind: str  # "mirror" or "belt"
    length: int  # shortest word length that produced it


def tessellation_circles(max_word_length: int, gens: Sequence[str] = XI_GENERATORS,
                         tol: Optional[float] = None) -> Dict[tuple, TessCircle]:
    """Images of the base loci under all words of length <= max_word_length."""
    if max_word_length < 0 or max_word_length > 8:
        raise ValueError("max_word_length must be in 0..8")
    elems = [generator(g) for g in gens]
    found: Dict[tuple, TessCircle] = {}
    frontier = []
    for kind, loci in (("mirror", mirror_loci()), ("belt", belt_loci())):
        for c in loci:
            k = c.key(tol)
            if k not in found:
                found[k] = TessCircle(c.canonical(), kind, 0)
                frontier.append(found[k])
    for length in range(1, max_word_length + 1):
        nxt = []
        for tc in frontier:
            for g in elems:
                img = circle_apply_moebius(tc.form, g).canonical()
                k = img.key(tol)
                if k not in found:
                    found[k] = TessCircle(img, tc.kind, length)
                    nxt.append(found[k])
        frontier = nxt
    return found


def _visible(c: CircleForm, window) -> bool:
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if c.is_line:
        n, h = c.line_normal_offset()
        pt, d = _line_geometry(complex(n), float(h))
        return clip_line(pt, d, window) is not None
    ctr = c.center()
    r = c.radius()
    cx, cy = float(ctr.re), float(ctr.im)
    # nearest / farthest distance from the center to the box
    nx = min(max(cx, xmin), xmax)
    ny = min(max(cy, ymin), ymax)
    near = math.hypot(cx - nx, cy - ny)
    far = max(math.hypot(cx - x, cy - y) for x in (xmin, xmax) for y in (ymin, ymax))
    return near <= r <= far


def render_tessellation_svg(max_word_length: int, window=(-2, 2, -1.5, 2.5), width: int = 800) -> str:
    """Mirror images in black, images of the belt boundaries in red."""
    win = tuple(float(v) for v in window)
    height = max(1, round(width * (win[3] - win[2]) / (win[1] - win[0])))
    cv = _Canvas(win, width, height)
    circles = tessellation_circles(max_word_length)
    order = sorted(circles.items(), key=lambda kv: (kv[1].kind != "mirror", kv[1].length, kv[0]))
    for _, tc in order:
        c = tc.form
        if not _visible(c, win):
            continue
        color = "black" if tc.kind == "mirror" else "red"
        if c.is_line:
            n, h = c.line_normal_offset()
            pt, d = _line_geometry(complex(n), float(h))
            cv.line(*clip_line(pt, d, win), color=color)
        else:
            ctr = c.center()
            cv.circle(ctr.re, ctr.im, c.radius(), color=color)
    return cv.document()
