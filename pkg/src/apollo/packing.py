"""Apollonian packings: seeds, breadth-first generation by Descartes
reflection, integrality checks and the tricycle graph."""

from __future__ import annotations

import csv
import io
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .depth import _coerce_triple, descartes_solutions, triple_of_z
from .errors import (
    GeometryInconsistent,
    NonRationalInput,
    NotRealizable,
    PackingOverflow,
    Unreachable,
    UnsupportedForm,
)
from .numerics import (
    ComplexScalar,
    INF,
    Scalar,
    complex_sqrt,
    json_scalar,
    rational_sqrt,
    scalar_sqrt,
    to_scalar,
)
from .spinor import Disk, are_tangent, tangency_residual

DEFAULT_MAX_DISKS = 100_000

Quadruple = Tuple[Scalar, Scalar, Scalar, Scalar]


def descartes_defect(q: Sequence[Scalar]) -> Scalar:
    """``(a+b+c+d)^2 - 2(a^2+b^2+c^2+d^2)``; zero for a Descartes quadruple."""
    return sum(q) ** 2 - 2 * sum(v * v for v in q)


def is_descartes(q: Sequence[Scalar], rtol: float = 1e-9) -> bool:
    d = descartes_defect(q)
    if all(isinstance(v, (Fraction, int)) for v in q):
        return d == 0
    return abs(d) <= rtol * max(1.0, sum(float(v) ** 2 for v in q))


def complete_seed(t) -> Quadruple:
    """``(a, b, c, d-)`` with ``d- = a+b+c - 2 sqrt(ab+bc+ca)``."""
    (a, b, c), _ = _coerce_triple(t)
    d_minus, _ = descartes_solutions((a, b, c))
    return (a, b, c, d_minus)


def reflect(disks: Sequence[Disk], j: int) -> Disk:
    """Replace ``disks[j]`` by ``2 (sum of the other three) - disks[j]`` in all coordinates."""
    others = [d for i, d in enumerate(disks) if i != j]
    old = disks[j]
    kbar = 2 * sum((d.kbar for d in others), Fraction(0)) - old.kbar
    k = 2 * sum((d.k for d in others), Fraction(0)) - old.k
    kz = (others[0].kz + others[1].kz + others[2].kz) * 2 - old.kz
    return Disk(kbar, k, kz)


# --- geometric seeds ------------------------------------------------------------


def _kbar_for(k, kz: ComplexScalar, neighbors: Sequence[Disk]) -> Scalar:
    if k != 0:
        return (kz.abs2() - 1) / k
    # a line: its offset is fixed by tangency to any finite neighbour
    for d in neighbors:
        if not d.is_line:
            c = d.center
            h = kz.re * c.re + kz.im * c.im + d.signed_radius
            return 2 * h
    raise NotRealizable("a line needs a finite tangent neighbour")


def descartes_completions(d1: Disk, d2: Disk, d3: Disk) -> List[Disk]:
    """The disks tangent to three mutually tangent disks (usually two).

    Curvatures and curvature-times-centers each satisfy the Descartes
    relation; the sign pairing is settled by an explicit tangency test.
    """
    trio = (d1, d2, d3)
    k_opts = descartes_solutions((d1.k, d2.k, d3.k))
    w = d1.kz * d2.kz + d2.kz * d3.kz + d3.kz * d1.kz
    root = complex_sqrt(w)
    s = d1.kz + d2.kz + d3.kz
    out: List[Disk] = []
    for k in dict.fromkeys(k_opts):
        for kz in (s + root * 2, s - root * 2):
            if k == 0 and abs(abs(kz) - 1) > 1e-9:
                continue
            try:
                cand = Disk(_kbar_for(k, kz, trio), k, kz)
            except NotRealizable:
                continue
            if all(are_tangent(cand, d) for d in trio) and not any(_same_disk(cand, o) for o in out + list(trio)):
                out.append(cand)
    return out


def _same_disk(a: Disk, b: Disk) -> bool:
    return disk_key(a) == disk_key(b)


def disk_key(d: Disk):
    """Deduplication key: exact when the disk is exact, else rounded to 1e-9."""
    if d.is_exact:
        return (Fraction(d.kbar), Fraction(d.k), d.kz.re, d.kz.im)
    return tuple(round(float(v), 9) + 0.0 for v in (d.kbar, d.k, d.kz.re, d.kz.im))


def _pick_completion(trio, want=None) -> Disk:
    opts = descartes_completions(*trio)
    if not opts:
        raise GeometryInconsistent("no disk is tangent to all three")
    if want is None:
        want = descartes_solutions(tuple(d.k for d in trio))[0]
    want_f = float(want)
    for o in opts:
        if o.k == want or abs(float(o.k) - want_f) <= 1e-9 * max(1.0, abs(want_f)):
            return o
    raise GeometryInconsistent(f"no completion with curvature {want}")


def seed_from_curvatures(a, b, c, d=None) -> Tuple[Disk, Disk, Disk, Disk]:
    """Place a Descartes configuration with the given curvatures.

    The first finite disk sits at the origin and the second on the positive
    real axis; positions are exact whenever the needed square roots are
    rational. ``d`` defaults to the smaller completion.
    """
    ks = [to_scalar(v) for v in (a, b, c)]
    zeros = [k for k in ks if k == 0]
    if len(zeros) == 3:
        raise NotRealizable("three lines cannot be mutually tangent")
    if len(zeros) == 2:
        k = next(k for k in ks if k != 0)
        if k <= 0:
            raise NotRealizable("a disk between two lines needs positive curvature")
        r = 1 / k
        i = ComplexScalar(Fraction(0), Fraction(1)) if isinstance(r, Fraction) else ComplexScalar(0.0, 1.0)
        top = Disk.line(i, r)
        bottom = Disk.line(-i, r)
        mid = Disk.circle(ComplexScalar(r * 0, r * 0), k)
        trio = [top, bottom, mid]
    elif len(zeros) == 1:
        p, q = [k for k in ks if k != 0]
        if p <= 0 or q <= 0:
            raise NotRealizable("disks tangent to a line must have positive curvature")
        rp, rq = 1 / p, 1 / q
        gap = scalar_sqrt(rp * rq) * 2
        zero = rp * 0
        neg_i = ComplexScalar(zero, zero - 1)
        base = Disk.line(neg_i, zero)  # half-plane y <= 0
        trio = [base, Disk.circle(ComplexScalar(zero, rp), p), Disk.circle(ComplexScalar(gap, rq), q)]
    else:
        k1, k2, k3 = ks
        r1, r2, r3 = 1 / k1, 1 / k2, 1 / k3
        d12, d13, d23 = abs(r1 + r2), abs(r1 + r3), abs(r2 + r3)
        if d12 == 0:
            raise NotRealizable("coincident disks")
        x = (d13 * d13 - d23 * d23 + d12 * d12) / (2 * d12)
        h2 = d13 * d13 - x * x
        if h2 < 0:
            if isinstance(h2, Fraction) or h2 < -1e-12 * float(d13 * d13):
                raise NotRealizable("curvatures admit no tangent placement")
            h2 = 0.0
        y = scalar_sqrt(h2)
        zero = x * 0
        trio = [
            Disk.circle(ComplexScalar(zero, zero), k1),
            Disk.circle(ComplexScalar(d12, zero), k2),
            Disk.circle(ComplexScalar(x, y), k3),
        ]
    ordered = _reorder(trio, ks)
    fourth = _pick_completion(ordered, None if d is None else to_scalar(d))
    return tuple(ordered) + (fourth,)


def _reorder(trio: List[Disk], ks) -> List[Disk]:
    pool = list(trio)
    out = []
    for k in ks:
        for j, dd in enumerate(pool):
            if dd.k == k:
                out.append(pool.pop(j))
                break
    return out


def window_seed() -> Tuple[Disk, Disk, Disk, Disk]:
    """Outer circle -1 at 0, the two 2-disks at -1/2 and 1/2, a 3-disk at 2i/3."""
    h = Fraction(1, 2)
    outer = Disk.circle(0, -1)
    left = Disk.circle(-h, 2)
    right = Disk.circle(h, 2)
    top = Disk.circle(ComplexScalar(Fraction(0), Fraction(2, 3)), 3)
    return (outer, left, right, top)


def belt_seed() -> Tuple[Disk, Disk, Disk, Disk]:
    """Lines y = 1 and y = -1 with unit circles at 0 and 2."""
    i = ComplexScalar(Fraction(0), Fraction(1))
    return (Disk.line(i, 1), Disk.line(-i, 1), Disk.circle(0, 1), Disk.circle(2, 1))


def tricycle_of_z_geometric(z) -> Tuple[Disk, Disk, Disk]:
    """Disks ``(A, B, C)`` for the tricycle coded by ``z``.

    C touches A at the origin (C on the left, A on the right); B is placed
    so that the tangency spinors from C are 1 (to A) and z (to B), up to sign.
    """
    if z is INF:
        raise NotRealizable("the point at infinity codes no finite tricycle")
    z = ComplexScalar.of(z)
    A, B, C = triple_of_z(z)
    if A == 0 or B == 0 or C == 0:
        raise NotRealizable("a line in the tricycle; use seed_from_curvatures")
    cC = ComplexScalar.of(-1 / C)
    dC = Disk.circle(cC, C)
    dA = Disk.circle(ComplexScalar.of(1 / A), A)
    dB = Disk.circle(cC + z * z / (C * B), B)
    for p, q in ((dA, dB), (dB, dC), (dC, dA)):
        if not are_tangent(p, q):
            raise NotRealizable("constructed disks are not tangent")
    return dA, dB, dC


# --- generation -----------------------------------------------------------------


@dataclass
class Packing:
    disks: List[Disk] = field(default_factory=list)
    levels: List[int] = field(default_factory=list)
    adjacency: set = field(default_factory=set)
    configs: List[Tuple[int, int, int, int]] = field(default_factory=list)
    seed: Tuple[int, int, int, int] = ()
    duplicates: int = 0

    def curvatures(self) -> List[Scalar]:
        return [d.k for d in self.disks]

    def curvature_multiset(self) -> Dict[Scalar, int]:
        out: Dict[Scalar, int] = {}
        for k in sorted(self.curvatures()):
            out[k] = out.get(k, 0) + 1
        return out

    def config_curvatures(self):
        for q in self.configs:
            yield tuple(self.disks[i].k for i in q)

    def max_tangency_residual(self) -> float:
        worst = 0.0
        for i, j in self.adjacency:
            worst = max(worst, tangency_residual(self.disks[i], self.disks[j]))
        return worst


def _in_bounds(d: Disk, bounds) -> bool:
    if bounds is None or d.is_line:
        return True
    xmin, xmax, ymin, ymax = bounds
    c = d.center
    r = d.radius
    x, y = float(c.re), float(c.im)
    return x + r >= xmin and x - r <= xmax and y + r >= ymin and y - r <= ymax


def generate_packing(
    seed: Sequence[Disk],
    max_curvature=None,
    max_level: Optional[int] = None,
    bounds=None,
    max_disks: int = DEFAULT_MAX_DISKS,
) -> Packing:
    """Breadth-first Descartes reflection from a seed configuration.

    A configuration never re-reflects the slot it was produced by. Disks
    with curvature above ``max_curvature``, beyond ``max_level`` generations
    or entirely outside ``bounds = (xmin, xmax, ymin, ymax)`` are pruned.
    At least one of the three limits is required.
    """
    if max_curvature is None and max_level is None and bounds is None:
        raise ValueError("need max_curvature, max_level or bounds")
    seed = tuple(seed)
    if len(seed) != 4:
        raise ValueError("a seed has four disks")
    for p, q in combinations(seed, 2):
        if not are_tangent(p, q):
            raise GeometryInconsistent(f"seed disks are not tangent (residual {tangency_residual(p, q):.3g})")
    kmax = None if max_curvature is None else to_scalar(max_curvature)

    pk = Packing()
    index: Dict[tuple, int] = {}
    for d in seed:
        key = disk_key(d)
        if key in index:
            raise GeometryInconsistent("repeated seed disk")
        index[key] = len(pk.disks)
        pk.disks.append(d)
        pk.levels.append(0)
    pk.seed = (0, 1, 2, 3)
    pk.adjacency.update(tuple(sorted(p)) for p in combinations(range(4), 2))
    pk.configs.append(pk.seed)

    queue = deque([(pk.seed, -1, 0)])
    while queue:
        quad, skip, level = queue.popleft()
        if max_level is not None and level >= max_level:
            continue
        members = [pk.disks[i] for i in quad]
        for j in range(4):
            if j == skip:
                continue
            new = reflect(members, j)
            if kmax is not None and new.k > kmax:
                continue
            if not _in_bounds(new, bounds):
                continue
            key = disk_key(new)
            others = [quad[t] for t in range(4) if t != j]
            if key in index:
                n = index[key]
                if n in quad:
                    continue
                pk.duplicates += 1
                pk.adjacency.update(tuple(sorted((n, o))) for o in others)
                continue
            if len(pk.disks) >= max_disks:
                raise PackingOverflow(f"more than {max_disks} disks; lower max_curvature or give bounds/max_level")
            n = len(pk.disks)
            index[key] = n
            pk.disks.append(new)
            pk.levels.append(level + 1)
            pk.adjacency.update(tuple(sorted((n, o))) for o in others)
            child = tuple(n if t == j else quad[t] for t in range(4))
            pk.configs.append(child)
            queue.append((child, j, level + 1))
    return pk


# --- export ---------------------------------------------------------------------

COLUMNS = ("index", "curvature", "cx", "cy", "level")


def _rows(p: Packing):
    for i, d in enumerate(p.disks):
        if d.is_line:
            cx = cy = None
        else:
            c = d.center
            cx, cy = json_scalar(c.re), json_scalar(c.im)
        yield {"index": i, "curvature": json_scalar(d.k), "cx": cx, "cy": cy, "level": p.levels[i]}


def packing_to_json(p: Packing) -> str:
    """Disks as {index, curvature, cx, cy, level}; lines have null centers."""
    doc = {"disks": list(_rows(p)), "adjacency": sorted([list(e) for e in p.adjacency])}
    return json.dumps(doc, indent=1)


def packing_to_csv(p: Packing) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in _rows(p):
        w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


# --- integrality ----------------------------------------------------------------


def scale_to_integral(q: Sequence) -> Tuple[int, ...]:
    """Multiply by lcm(denominators) / gcd(numerators): integral and primitive."""
    vals = []
    for v in q:
        if isinstance(v, float) or not isinstance(v, (int, Fraction, str)):
            raise NonRationalInput(f"{v!r} is not an exact rational")
        vals.append(Fraction(v))
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vals]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    if g == 0:
        raise NonRationalInput("all entries are zero")
    return tuple(n // g for n in ints)


@dataclass(frozen=True)
class Surd:
    """``a + b sqrt(q)`` with rational a, b, q (q >= 0)."""

    a: Fraction
    b: Fraction
    q: Fraction

    @staticmethod
    def sqrt(q) -> "Surd":
        q = Fraction(q)
        if q < 0:
            raise UnsupportedForm("square root of a negative number")
        return Surd(Fraction(0), Fraction(1), q)

    def rational(self) -> Optional[Fraction]:
        if self.b == 0:
            return self.a
        r = rational_sqrt(self.q)
        return None if r is None else self.a + self.b * r

    @property
    def is_rational(self) -> bool:
        return self.rational() is not None

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        root = f"sqrt({self.q})" if mag == 1 else f"{mag}*sqrt({self.q})"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {root}"


@dataclass(frozen=True)
class Integrality:
    kind: str  # "IntegralAfterScaling" or "NotIntegral"
    seed: Optional[Tuple[int, ...]] = None
    witness: Optional[Tuple[str, Surd]] = None

    @property
    def integral(self) -> bool:
        return self.kind == "IntegralAfterScaling"


def _as_rational(v):
    if isinstance(v, Surd):
        return v.rational()
    if isinstance(v, float):
        raise UnsupportedForm("floats are not exact; pass a rational or a Surd")
    return Fraction(v)


def integrality_classify(x, y=None) -> Integrality:
    """Classify the packing coded by ``z = x + iy``.

    ``x`` and ``y`` are rationals or :class:`Surd` values; a point may be
    passed as a single :class:`ComplexScalar` with exact parts. Rational
    points give the primitive integral seed (sorted); ``x = sqrt(q)`` with
    non-square ``q`` yields an irrational curvature among B, D-, D+.
    """
    if y is None:
        z = ComplexScalar.of(x)
        if not z.is_exact:
            raise UnsupportedForm("floats are not exact; pass a rational or a Surd")
        x, y = z.re, z.im
    ry = _as_rational(y)
    if ry is None:
        raise UnsupportedForm("only x may be an irrational square root")
    rx = _as_rational(x)
    if rx is not None:
        A, B, C = triple_of_z(ComplexScalar(rx, ry))
        quad = complete_seed((A, B, C))
        return Integrality("IntegralAfterScaling", seed=tuple(sorted(scale_to_integral(quad))))
    if not isinstance(x, Surd) or x.a != 0:
        raise UnsupportedForm("x must be rational or b*sqrt(q)")
    q = x.b * x.b * x.q  # x^2
    A, B, C = 1 - ry, q + ry * ry - ry, ry
    # AB + BC + CA = x^2 = q, so D+- = A+B+C +- 2 sqrt(q)
    s = A + B + C
    root = Surd(Fraction(0), abs(x.b) * 2, x.q)
    for name, w in (("B", Surd(B, Fraction(0), Fraction(0))), ("D-", Surd(s, -root.b, x.q)), ("D+", Surd(s, root.b, x.q))):
        if not w.is_rational:
            return Integrality("NotIntegral", witness=(name, w))
    return Integrality("IntegralAfterScaling", seed=tuple(sorted(scale_to_integral((A, B, C, s - 2 * rational_sqrt(q))))))


# --- tricycle graph -------------------------------------------------------------


@dataclass
class TricycleGraph:
    packing: Packing
    vertices: List[Tuple[int, int, int]]
    neighbors: Dict[Tuple[int, int, int], List[Tuple[int, int, int]]]
    completions: Dict[Tuple[int, int, int], int]

    def degree(self, v) -> int:
        return len(self.neighbors[v])

    def is_full(self, v) -> bool:
        """All six potential neighbours exist (both completions survived)."""
        return self.completions[v] == 2

    def curvatures(self, v) -> Tuple[Scalar, Scalar, Scalar]:
        return tuple(self.packing.disks[i].k for i in v)

    def is_zero_vertex(self, v) -> bool:
        return any(k <= 0 for k in self.curvatures(v))

    def find(self, curvatures) -> List[Tuple[int, int, int]]:
        want = sorted(to_scalar(k) for k in curvatures)
        return [v for v in self.vertices if sorted(self.curvatures(v)) == want]


def build_tricycle_graph(p: Packing) -> TricycleGraph:
    """Vertices are tangent disk-index triples; two are joined when they share
    two disks and the two non-shared disks touch."""
    nbrs: Dict[int, set] = {i: set() for i in range(len(p.disks))}
    for i, j in p.adjacency:
        nbrs[i].add(j)
        nbrs[j].add(i)
    verts = set()
    for q in p.configs:
        for t in combinations(sorted(q), 3):
            verts.add(t)
    vertices = sorted(verts)
    neighbors = {}
    completions = {}
    for v in vertices:
        a, b, c = v
        common = sorted(nbrs[a] & nbrs[b] & nbrs[c])
        completions[v] = len(common)
        out = []
        for e in common:
            for pair in ((a, b), (a, c), (b, c)):
                out.append(tuple(sorted(pair + (e,))))
        neighbors[v] = out
    return TricycleGraph(p, vertices, neighbors, completions)


@dataclass(frozen=True)
class GraphDepth:
    depth: int
    complete: bool  # True when every vertex closer than `depth` had full degree


def graph_depth(g: TricycleGraph, v) -> GraphDepth:
    """BFS distance from ``v`` to the tricycles containing a disk of curvature <= 0."""
    v = tuple(sorted(v))
    if v not in g.neighbors:
        raise KeyError(f"{v} is not a vertex")
    dist = {v: 0}
    queue = deque([v])
    first_partial = math.inf
    while queue:
        u = queue.popleft()
        if g.is_zero_vertex(u):
            return GraphDepth(dist[u], first_partial >= dist[u])
        if not g.is_full(u):
            first_partial = min(first_partial, dist[u])
        for w in g.neighbors[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    raise Unreachable("no zero-depth tricycle reachable; enlarge max_curvature")
