"""Mirror/inversion generators, the finite and infinite symmetry groups of the
depth pattern, fundamental regions and reduction to the packing domain P."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .depth import DEFAULT_MAX_STEPS, depth_z_algorithm
from .errors import CanonicalizeOverflow, ClosureOverflow, SingularMatrix, UnknownGenerator
from .numerics import INF, ComplexScalar, ProjPoint, points_close, to_scalar

_0 = Fraction(0)
_1 = Fraction(1)
HALF = Fraction(1, 2)


def _c(re, im=0) -> ComplexScalar:
    return ComplexScalar(Fraction(re), Fraction(im))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """``z -> M.z`` or, with ``conj``, ``z -> M.conj(z)`` where ``M.w = (a w + b)/(c w + d)``.

    Equality is projective: matrices proportional by a nonzero complex
    scalar with the same ``conj`` flag are the same element.
    """

    matrix: Tuple[ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar]
    conj: bool = False

    def __post_init__(self):
        a, b, c, d = self.matrix
        if (a * d - b * c).is_zero():
            raise SingularMatrix("determinant is zero")

    def canonical(self) -> "GroupElement":
        for v in self.matrix:
            if not v.is_zero():
                return GroupElement(tuple(e / v for e in self.matrix), self.conj)
        raise SingularMatrix("zero matrix")

    def _key(self):
        c = self.canonical()
        return (c.conj,) + tuple((e.re, e.im) for e in c.matrix)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __call__(self, z: ProjPoint) -> ProjPoint:
        return self.apply(z)

    def apply(self, z: ProjPoint) -> ProjPoint:
        a, b, c, d = self.matrix
        if z is INF:
            return INF if c.is_zero() else a / c
        w = ComplexScalar.of(z)
        if self.conj:
            w = w.conjugate()
        den = c * w + d
        if den.is_zero():
            return INF
        return (a * w + b) / den

    def inverse(self) -> "GroupElement":
        a, b, c, d = self.matrix
        adj = (d, -b, -c, a)
        if self.conj:
            adj = tuple(e.conjugate() for e in adj)
        return GroupElement(adj, self.conj)

    def __repr__(self) -> str:
        c = self.canonical()
        a, b, cc, d = c.matrix
        return f"GroupElement([[{a}, {b}], [{cc}, {d}]]{', conj' if self.conj else ''})"


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """``g o h`` (apply ``h`` first)."""
    a, b, c, d = g.matrix
    e, f, gg, hh = (x.conjugate() for x in h.matrix) if g.conj else h.matrix
    return GroupElement(
        (a * e + b * gg, a * f + b * hh, c * e + d * gg, c * f + d * hh),
        g.conj != h.conj,
    )


IDENTITY = GroupElement((_c(1), _c(0), _c(0), _c(1)))

# "S" is the inversion z -> 1/conj(z) in the unit circle (coordinate form);
# "Sgeo" is the matrix-table form z -> -1/conj(z), i.e. S followed by z -> -z.
# Together with F it generates an infinite group.
_GENERATORS: Dict[str, GroupElement] = {
    "T": GroupElement((_c(1), _c(1), _c(0), _c(1))),
    "F": GroupElement((_c(1), _c(0, 1), _c(0), _c(1)), True),
    "S": GroupElement((_c(0), _c(1), _c(1), _c(0)), True),
    "Sgeo": GroupElement((_c(0), _c(-1), _c(1), _c(0)), True),
    "R": GroupElement((_c(1), _c(0), _c(0, -1), _c(1)), True),
    "H": GroupElement((_c(0, 1), _c(0), _c(0), _c(0, -1)), True),
    "P": GroupElement((_c(0, -1), _c(0, 1), _c(0), _c(0, 1)), True),
    # holomorphic variants (no conjugation)
    "That": GroupElement((_c(1), _c(1), _c(0), _c(1))),
    "Fhat": GroupElement((_c(0, 1), _c(1), _c(0), _c(0, -1))),
    "Shat": GroupElement((_c(0), _c(-1), _c(1), _c(0))),
    "Rhat": GroupElement((_c(0, 1), _c(0), _c(1), _c(0, -1))),
}
_GENERATORS["T-1"] = _GENERATORS["T"].inverse()

_ALIASES = {"T^-1": "T-1", "T⁻¹": "T-1", "Tinv": "T-1", "α": "T-1", "alpha": "T-1", "β": "R", "beta": "R"}

GENERATOR_NAMES = tuple(_GENERATORS)
XI_GENERATORS = ("T", "T-1", "S", "F", "H")


def generator(name: str) -> GroupElement:
    name = _ALIASES.get(name, name)
    try:
        return _GENERATORS[name]
    except KeyError:
        raise UnknownGenerator(name) from None


def evaluate_word(names: Iterable[str]) -> GroupElement:
    """Element for a word read left to right in order of application.

    ``alpha`` evaluates as T^-1 and ``beta`` as R; the data-dependent folds
    of the strip walk are recorded as separate H/F letters in its moves.
    """
    g = IDENTITY
    for n in names:
        g = compose(generator(n), g)
    return g


def generator_coordinate(name: str, z: ProjPoint) -> ProjPoint:
    """Apply a generator through its real coordinate formulas."""
    name = _ALIASES.get(name, name)
    if name not in ("F", "S", "R", "H", "T", "T-1", "P", "Sgeo"):
        raise UnknownGenerator(name)
    if z is INF:
        if name == "S" or name == "Sgeo":
            return ComplexScalar(_0, _0)
        if name == "R":
            return ComplexScalar(_0, _1)
        return INF
    z = ComplexScalar.of(z)
    x, y = z.re, z.im
    if name == "F":
        return ComplexScalar(x, 1 - y)
    if name == "H":
        return ComplexScalar(-x, y)
    if name == "T":
        return ComplexScalar(x + 1, y)
    if name == "T-1":
        return ComplexScalar(x - 1, y)
    if name == "P":
        return ComplexScalar(1 - x, y)
    if name in ("S", "Sgeo"):
        r2 = x * x + y * y
        if r2 == 0:
            return INF
        return ComplexScalar((x if name == "S" else -x) / r2, y / r2)
    den = x * x + (y - 1) ** 2
    if den == 0:
        return INF
    return ComplexScalar(x / den, (x * x + y * y - y) / den)


def apply_word_coordinates(names: Sequence[str], z: ProjPoint) -> ProjPoint:
    for n in names:
        z = generator_coordinate(n, z)
    return z


def closure(gens: Dict[str, GroupElement], limit: int = 24) -> Dict[GroupElement, Tuple[str, ...]]:
    """All elements generated, each with a shortest word (BFS order)."""
    found: Dict[GroupElement, Tuple[str, ...]] = {IDENTITY: ()}
    queue = deque([IDENTITY])
    while queue:
        g = queue.popleft()
        word = found[g]
        for name, s in gens.items():
            h = compose(s, g)
            if h not in found:
                found[h] = word + (name,)
                if len(found) > limit:
                    raise ClosureOverflow(f"closure exceeds {limit} elements")
                queue.append(h)
    return found


def enumerate_theta(with_h: bool = True, s_name: str = "S") -> Dict[GroupElement, Tuple[str, ...]]:
    """The finite group generated by S, F (and H); 12 elements with H, 6 without."""
    names = [s_name, "F"] + (["H"] if with_h else [])
    return closure({n: generator(n) for n in names})


def enumerate_g() -> Dict[GroupElement, Tuple[str, ...]]:
    """The order-3 group {id, FS, SF} relating the three spinor anchors."""
    return closure({"FS": evaluate_word(["S", "F"]), "SF": evaluate_word(["F", "S"])})


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _power(g: GroupElement, n: int) -> GroupElement:
    out = IDENTITY
    for _ in range(n):
        out = compose(g, out)
    return out


def verify_relations() -> List[Check]:
    g = generator
    S, F, R, H, T, P = (g(n) for n in ("S", "F", "R", "H", "T", "P"))
    SF, FR, RS = compose(S, F), compose(F, R), compose(R, S)
    checks = [
        Check("H^2 = id", compose(H, H) == IDENTITY),
        Check("S^2 = id", compose(S, S) == IDENTITY),
        Check("F^2 = id", compose(F, F) == IDENTITY),
        Check("R^2 = id", compose(R, R) == IDENTITY),
        Check("(SF)^3 = id", _power(SF, 3) == IDENTITY),
        Check("(FR)^3 = id", _power(FR, 3) == IDENTITY),
        Check("(RS)^3 = id", _power(RS, 3) == IDENTITY),
        Check("R = SFS", compose(S, compose(F, S)) == R),
        Check("R = FSF", compose(F, compose(S, F)) == R),
    ]
    for name in ("S", "F", "R"):
        x = g(name)
        checks.append(Check(f"H{name} = {name}H", compose(H, x) == compose(x, H)))
    checks += [
        Check("T = PH", compose(P, H) == T),
        Check("T^-1 = HP", compose(H, P) == g("T-1")),
        Check("(That Shat)^3 = id", _power(compose(g("That"), g("Shat")), 3) == IDENTITY),
        Check("FS = Fhat Shat", compose(F, S) == compose(g("Fhat"), g("Shat"))),
        Check("SF = Shat Fhat", compose(S, F) == compose(g("Shat"), g("Fhat"))),
        Check("Fhat^2 = id", compose(g("Fhat"), g("Fhat")) == IDENTITY),
        Check("Shat^2 = id", compose(g("Shat"), g("Shat")) == IDENTITY),
        Check("Rhat^2 = id", compose(g("Rhat"), g("Rhat")) == IDENTITY),
    ]
    return checks


# --- regions ------------------------------------------------------------------


def _xy(z: ProjPoint):
    z = ComplexScalar.of(z)
    return z.re, z.im


def in_region(name: str, z: ProjPoint) -> bool:
    """Closed-set membership for the regions P, Q, strip and dark."""
    if z is INF:
        return False
    x, y = _xy(z)
    if name == "P":
        return 0 <= x <= HALF and y <= 0 and x * x + y * y >= 1
    if name == "Q":
        return x >= 0 and y <= HALF and x * x + y * y >= 1
    if name == "strip":
        return 0 <= y <= 1
    if name == "dark":
        return x * x + (y - HALF) ** 2 <= Fraction(1, 4)
    raise ValueError(f"unknown region {name!r}")


def on_boundary_of_p(z: ProjPoint, tol: float = 1e-9) -> bool:
    if z is INF:
        return True
    x, y = _xy(z)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == 0 or x == HALF or y == 0 or x * x + y * y == 1
    return abs(x) <= tol or abs(x - 0.5) <= tol or abs(y) <= tol or abs(x * x + y * y - 1) <= tol


@dataclass(frozen=True)
class Canonical:
    point: ProjPoint
    word: Tuple[str, ...]
    boundary: bool


def canonicalize_to_P(z: ProjPoint, max_steps: int = DEFAULT_MAX_STEPS) -> Canonical:
    """Reduce ``z`` to its representative in P under the packing group.

    Fold x >= 0; send y > 1 down with F; walk strip points into the dark
    disk, invert them above y = 1 and reflect below the axis; finish with
    the usual translate/fold/invert reduction of the lower half-plane.
    The cusp (the Apollonian belt class) reduces to INF.
    """
    word: List[str] = []

    def step(name):
        nonlocal z
        if len(word) >= max_steps:
            raise CanonicalizeOverflow(f"reduction exceeds max_steps={max_steps}")
        word.append(name)
        z = generator_coordinate(name, z)

    if z is INF:
        return Canonical(INF, (), True)
    z = ComplexScalar.of(z)
    if z.re < 0:
        step("H")
    if z.im > 1:
        step("F")
    if z.im == 1:
        step("F")
    if z.im > 0:
        walk = depth_z_algorithm(z, max_steps=max_steps)
        for name in walk.moves:
            step(name)
        step("S")
        step("F")
    # lower half-plane (y <= 0): Dedekind-style reduction
    while z is not INF:
        x, y = z.re, z.im
        n = math.floor(x)
        if abs(n) > max_steps:
            raise CanonicalizeOverflow("translation too long")
        for _ in range(abs(n)):
            step("T-1" if n > 0 else "T")
        x = z.re
        if x > HALF:
            step("P")
            x = z.re
        if x * x + z.im * z.im < 1:
            step("S")
            continue
        break
    return Canonical(z, tuple(word), on_boundary_of_p(z))


def orbit_sample(z: ProjPoint, word_length: int, gens: Sequence[str] = XI_GENERATORS) -> List[ProjPoint]:
    """Distinct images of z under all words of length <= word_length (BFS order)."""
    if word_length > 8:
        raise ValueError("word_length is limited to 8")
    if z is not INF:
        z = ComplexScalar.of(z)

    def key(p):
        if p is INF:
            return "inf"
        if p.is_exact:
            return (p.re, p.im)
        return (round(float(p.re), 9) + 0.0, round(float(p.im), 9) + 0.0)

    seen = {key(z): z}
    frontier = [z]
    for _ in range(word_length):
        nxt = []
        for p in frontier:
            for name in gens:
                q = generator(name).apply(p)
                k = key(q)
                if k not in seen:
                    seen[k] = q
                    nxt.append(q)
        frontier = nxt
    return list(seen.values())


def same_canonical(a: Canonical, b: Canonical, tol: float = 1e-9) -> bool:
    return points_close(a.point, b.point, tol)
