"""Finite monoids, syntactic ordered monoids and pseudovariety membership."""

__version__ = "0.1.0"

from .monoid import FiniteMonoid, OrderedMonoid, Transformation, from_generators, green_data
from .lang import synt, syntactic_ordered_monoid
from .terms import Pseudoidentity, check, parse_term
from .pseudovar import membership, survey
from .provability import provable_leq
from .presentations import Presentation, enumerate_presentation
from .burnside import burnside_group, sigma

__all__ = [
    "FiniteMonoid", "OrderedMonoid", "Transformation", "from_generators", "green_data",
    "synt", "syntactic_ordered_monoid", "Pseudoidentity", "check", "parse_term",
    "membership", "survey", "provable_leq", "Presentation", "enumerate_presentation",
    "burnside_group", "sigma",
]
