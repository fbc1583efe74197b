"""Bijections and functors between fuzzy coverings and fuzzy partitions.

Value vectors of an element are points of the unit cube; coverings live on the
top faces F, partitions on the simplex K.  ``transforms`` holds the pointwise
maps between these regions, ``category`` lifts them to families and checks
morphisms, ``estimator`` wraps everything as a scikit-learn transformer.
"""
from .category import (
    FuzzyFamily,
    Morphism,
    ValidationReport,
    compose,
    convert,
    enumerate_hom_set,
    functor_C_eps,
    functor_D_eps,
    functor_F,
    functor_Fn,
    functor_G,
    functor_Gn,
    identity,
    lift_pointwise,
    product_covering,
    validate_family,
)
from .estimator import FamilyTransformer
from .exceptions import BudgetExceeded, DomainError, FuzzyCoverError, KindError, ParseError
from .geometry import DEFAULT_TOL, Region, member
from .transforms import MapId, apply_map, sample_region

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "DEFAULT_TOL", "DomainError", "FamilyTransformer", "FuzzyCoverError",
    "FuzzyFamily", "KindError", "MapId", "Morphism", "ParseError", "Region", "ValidationReport",
    "apply_map", "compose", "convert", "enumerate_hom_set", "functor_C_eps", "functor_D_eps",
    "functor_F", "functor_Fn", "functor_G", "functor_Gn", "identity", "lift_pointwise", "member",
    "product_covering", "sample_region", "validate_family",
]
