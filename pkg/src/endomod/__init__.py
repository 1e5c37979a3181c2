"""Exact classification of endomorphisms of finite-dimensional vector spaces.

Torsion F[t]-modules, their primary splitting and residue-field transport,
Grothendieck-group classes, and coherent functors on nilpotent modules.
"""

from .errors import EndomodError
from .fields import FieldDescriptor, extension_field, field_make, prime_field, rationals
from .poly import Poly, factor
from .torsion import TorsionModule, elementary_divisors, invariant_factors, similar

__version__ = "0.1.0"

__all__ = [
    "EndomodError",
    "FieldDescriptor",
    "Poly",
    "TorsionModule",
    "elementary_divisors",
    "extension_field",
    "factor",
    "field_make",
    "invariant_factors",
    "prime_field",
    "rationals",
    "similar",
]
