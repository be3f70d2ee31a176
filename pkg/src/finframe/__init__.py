"""Finite frames, their points and duals, and radical tensor ideals of finite
tensor-triangulated presentations, all checkable by brute force."""

__version__ = "0.1.0"

from .errors import CheckFailure, InputError
from .frame import OMEGA, Arity, Frame, IdealLattice, k_compact_elements, k_ideals
from .poset import FinitePoset, as_lattice, is_distributive, poset_from_covers
from .stone import FiniteSpace, point_space, points
from .ttg import TTPresentation, rad_closure, rad_lattice

__all__ = [
    "OMEGA",
    "Arity",
    "CheckFailure",
    "FiniteSpace",
    "FinitePoset",
    "Frame",
    "IdealLattice",
    "InputError",
    "TTPresentation",
    "as_lattice",
    "is_distributive",
    "k_compact_elements",
    "k_ideals",
    "point_space",
    "points",
    "poset_from_covers",
    "rad_closure",
    "rad_lattice",
]
