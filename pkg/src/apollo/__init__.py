"""Apollonian depth, spinor coordinates, mirror symmetry groups and packings."""

__version__ = "0.1.0"

from .depth import depth_triple, depth_z, depth_z_algorithm, descartes_solutions, triple_of_z, z_of_triple
from .numerics import INF, CircleForm, ComplexScalar, point
from .packing import generate_packing, belt_seed, window_seed
from .symmetry import canonicalize_to_P, generator

__all__ = [
    "INF",
    "CircleForm",
    "ComplexScalar",
    "belt_seed",
    "canonicalize_to_P",
    "depth_triple",
    "depth_z",
    "depth_z_algorithm",
    "descartes_solutions",
    "generate_packing",
    "generator",
    "point",
    "triple_of_z",
    "window_seed",
    "z_of_triple",
]
