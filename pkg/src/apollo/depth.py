"""Apollonian depth: the curvature-triple process, the z-plane parametrisation,
and the strip algorithm that walks z into the dark disk."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from .errors import DepthOverflow, InfinitePoint, NegativeRadicand, NonPositiveInput, NotRealizable
from .numerics import INF, ComplexScalar, Scalar, rational_sqrt, to_scalar

DEFAULT_MAX_STEPS = 10_000
FLOAT_ZERO_RTOL = 1e-12

Triple = Tuple[Scalar, Scalar, Scalar]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class DepthResult:
    depth: int
    chain: Tuple[Triple, ...] = ()
    # run-length exponents n1..nm of the word a^n1 b a^n2 b ... b a^nm
    word: Tuple[int, ...] = ()
    # concrete generator names applied, in order (strip algorithm only)
    moves: Tuple[str, ...] = ()
    path: Tuple[ComplexScalar, ...] = ()
    exact: bool = True

    def word_string(self) -> str:
        return word_string(self.word)


def word_string(exponents: Sequence[int]) -> str:
    parts = []
    for k, n in enumerate(exponents):
        if k:
            parts.append("β")
        if n:
            parts.append("α" if n == 1 else f"α^{n}")
    return " ".join(parts)


def _coerce_triple(t) -> Tuple[list, bool]:
    vals = [to_scalar(v) for v in t]
    if len(vals) != 3:
        raise ValueError("a triple needs exactly three curvatures")
    exact = all(isinstance(v, Fraction) for v in vals)
    if not exact:
        vals = [float(v) for v in vals]
    return vals, exact


def descartes_solutions(t) -> Tuple[Scalar, Scalar]:
    """The two curvatures ``(d-, d+)`` completing ``t`` to a Descartes quadruple."""
    (a, b, c), exact = _coerce_triple(t)
    rad = a * b + b * c + c * a
    s = a + b + c
    if exact:
        if rad < 0:
            raise NegativeRadicand(f"ab+bc+ca = {rad} < 0")
        root = rational_sqrt(rad)
        if root is not None:
            return s - 2 * root, s + 2 * root
        rad = float(rad)
        s = float(s)
    elif rad < 0:
        raise NegativeRadicand(f"ab+bc+ca = {rad} < 0")
    root = math.sqrt(rad)
    return s - 2 * root, s + 2 * root


def _float_replacement(p: float, q: float, r: float) -> float:
    """d- for a triple sorted as p >= q >= r; the fixed operation order makes
    the float process exactly permutation invariant."""
    rad = (p * q + q * r) + r * p
    if rad < 0:
        if rad < -FLOAT_ZERO_RTOL * p * p:
            raise NegativeRadicand(f"ab+bc+ca = {rad} < 0")
        rad = 0.0
    return ((p + q) + r) - 2.0 * math.sqrt(rad)


def depth_triple(t, max_steps: int = DEFAULT_MAX_STEPS) -> DepthResult:
    """Number of ascending Descartes moves until a non-positive curvature appears.

    Each move drops the (first) greatest entry and appends its replacement,
    so chains read like ``(179,62,23) -> (62,23,6) -> ...``.

    Exact while every radicand is a rational square; demotes to float
    otherwise. The move that produces the first non-positive value counts.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    vals, exact = _coerce_triple(t)
    tol = 0 if exact else FLOAT_ZERO_RTOL * max(abs(v) for v in vals)
    chain = [tuple(vals)]
    if min(vals) <= tol:
        return DepthResult(0, tuple(chain), exact=exact)
    steps = 0
    while True:
        if steps >= max_steps:
            raise DepthOverflow(f"depth exceeds max_steps={max_steps}")
        big = vals.index(max(vals))
        if exact:
            a, b, c = vals
            rad = a * b + b * c + c * a
            if rad < 0:
                raise NegativeRadicand(f"ab+bc+ca = {rad} < 0")
            root = rational_sqrt(rad)
            if root is None:
                exact = False
                vals = [float(v) for v in vals]
                tol = FLOAT_ZERO_RTOL * max(abs(float(v)) for v in chain[0])
        if exact:
            new = a + b + c - 2 * root
        else:
            p, q, r = sorted(vals, reverse=True)
            new = _float_replacement(p, q, r)
        vals = vals[:big] + vals[big + 1:] + [new]
        steps += 1
        chain.append(tuple(vals))
        if new <= tol:
            return DepthResult(steps, tuple(chain), exact=exact)


def reduce_triple(t) -> Tuple[Scalar, Scalar]:
    """Scale by the largest entry: returns the other two, in cyclic order after it."""
    vals, _ = _coerce_triple(t)
    if min(vals) <= 0:
        raise NonPositiveInput("reduce_triple needs positive curvatures")
    k = vals.index(max(vals))
    c = vals[k]
    return vals[(k + 1) % 3] / c, vals[(k + 2) % 3] / c


def triple_of_z(z) -> Triple:
    """Curvatures ``(A, B, C) = (1-y, x^2+y^2-y, y)`` of the tricycle coded by z."""
    if z is INF:
        raise InfinitePoint("the point at infinity has no finite triple")
    z = ComplexScalar.of(z)
    x, y = z.re, z.im
    return (1 - y, x * x + y * y - y, y)


def z_of_triple(t) -> ComplexScalar:
    """Inverse of :func:`triple_of_z` up to scale, with ``x >= 0``."""
    (a, b, c), exact = _coerce_triple(t)
    s = a + c
    if s <= 0:
        raise NotRealizable("A + C must be positive")
    lam = 1 / s
    y = lam * c
    rad = lam * b - y * y + y
    if rad < 0:
        if exact or rad < -FLOAT_ZERO_RTOL:
            raise NotRealizable(f"negative radicand {rad}")
        rad = 0.0
    if exact:
        x = rational_sqrt(rad)
        if x is None:
            x, y = math.sqrt(rad), float(y)
    else:
        x = math.sqrt(rad)
    return ComplexScalar(x, y)


def depth_z(z, max_steps: int = DEFAULT_MAX_STEPS) -> DepthResult:
    return depth_triple(triple_of_z(z), max_steps)


def depth_z_algorithm(z, max_steps: int = DEFAULT_MAX_STEPS) -> DepthResult:
    """Depth via the z-plane walk: alpha = shift left by one (then fold x),
    beta = inversion in |z - i| = 1 followed by folding y into [1/2, 1].

    The point is first folded to x >= 0 and y >= 1/2; points outside the
    open strip 0 < y < 1 are zero-depth. The dark-disk test is closed
    (omega <= 1/4) to match the boundary convention of :func:`depth_z`.
    """
    if z is INF:
        raise InfinitePoint("the point at infinity has no depth")
    z = ComplexScalar.of(z)
    x, y = z.re, z.im
    exact = z.is_exact
    moves = []
    if x < 0:
        x = -x
        moves.append("H")
    if y <= 0 or y >= 1:
        return DepthResult(0, word=(), moves=tuple(moves), path=(ComplexScalar(x, y),), exact=exact)
    if y < HALF:
        y = 1 - y
        moves.append("F")
    path = [ComplexScalar(x, y)]
    exps = [0]
    d = 0
    while True:
        omega = x * x + (HALF - y) ** 2
        if omega <= QUARTER:
            break
        if d >= max_steps:
            raise DepthOverflow(f"depth exceeds max_steps={max_steps}")
        den = x * x + (y - 1) ** 2
        if den < 1:
            ny = (x * x + y * y - y) / den
            x = x / den
            moves.append("R")
            if ny < HALF:
                moves.append("F")
            y = HALF + abs(ny - HALF)
            exps.append(0)
        x = x - 1
        moves.append("T-1")
        if x < 0:
            x = -x
            moves.append("H")
        d += 1
        exps[-1] += 1
        path.append(ComplexScalar(x, y))
    return DepthResult(d, word=tuple(exps) if d else (), moves=tuple(moves), path=tuple(path), exact=exact)


def depth_grid(a: np.ndarray, b: np.ndarray, c: np.ndarray, max_depth: int) -> np.ndarray:
    """Vectorised float process over arrays of triples.

    Uses the same sorted-order arithmetic as :func:`depth_triple`'s float
    path. Entries that have not terminated within ``max_depth - 1`` moves
    get the value ``max_depth`` (the overflow marker).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    shape = a.shape
    vals = np.sort(np.stack([a.ravel(), b.ravel(), c.ravel()], axis=1), axis=1)[:, ::-1].copy()
    tol = FLOAT_ZERO_RTOL * np.max(np.abs(vals), axis=1)
    out = np.full(vals.shape[0], max_depth, dtype=np.int64)
    zero = vals[:, 2] <= tol
    out[zero] = 0
    idx = np.nonzero(~zero)[0]
    cur = vals[idx]
    ctol = tol[idx]
    for step in range(1, max_depth):
        if idx.size == 0:
            break
        p, q, r = cur[:, 0], cur[:, 1], cur[:, 2]
        rad = (p * q + q * r) + r * p
        rad = np.where(rad < 0, 0.0, rad)
        new = ((p + q) + r) - 2.0 * np.sqrt(rad)
        done = new <= ctol
        out[idx[done]] = step
        keep = ~done
        idx = idx[keep]
        ctol = ctol[keep]
        nxt = np.stack([q[keep], r[keep], new[keep]], axis=1)
        cur = np.sort(nxt, axis=1)[:, ::-1]
    return out.reshape(shape)
