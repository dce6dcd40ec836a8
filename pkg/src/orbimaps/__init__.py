"""Exact classification of rational functions on the projective line."""

from .classify import (
    GenusClass,
    catalog_match,
    genus_class,
    is_belyi,
    is_lattes,
    mu_equivalent,
    postcritical_set,
    zero_chi_analysis,
)
from .expr import parse_map
from .orbifold import Orbifold, euler_char, is_covering, ramification_orbifolds
from .ratmap import INF, Finite, Mobius, RationalMap, compose, make_map, passport

__all__ = [
    "GenusClass",
    "catalog_match",
    "genus_class",
    "is_belyi",
    "is_lattes",
    "mu_equivalent",
    "postcritical_set",
    "zero_chi_analysis",
    "parse_map",
    "Orbifold",
    "euler_char",
    "is_covering",
    "ramification_orbifolds",
    "INF",
    "Finite",
    "Mobius",
    "RationalMap",
    "compose",
    "make_map",
    "passport",
]

__version__ = "0.1.0"
