"""Rank-3 quivers with real weights: mutation, Markov constant, geometric realizations,
mutation-class classification and exploration."""
from .classify import ClassReport, DiscretenessReport, classify, discreteness, minimality_note
from .errors import CapExceeded, DomainError
from .explore import ExchangeGraph, explore, is_mutation_finite, table1, to_dot
from .geometry import (
    Realization,
    build_reflection_realization,
    build_rotation_realization,
    composed_isometry_trace,
    mutate_realization,
    realize,
)
from .quiver import Quiver, canonical_key, markov_constant, mutate, mutate_word, parse_quiver
from .scalar import CycloScalar, FloatScalar, cyclo, parse_scalar, rational
from .search import find_acyclic, line_bound, spherical_bound

__all__ = [
    "CapExceeded",
    "ClassReport",
    "CycloScalar",
    "DiscretenessReport",
    "DomainError",
    "ExchangeGraph",
    "FloatScalar",
    "Quiver",
    "Realization",
    "build_reflection_realization",
    "build_rotation_realization",
    "canonical_key",
    "classify",
    "composed_isometry_trace",
    "cyclo",
    "discreteness",
    "explore",
    "find_acyclic",
    "is_mutation_finite",
    "line_bound",
    "markov_constant",
    "minimality_note",
    "mutate",
    "mutate_realization",
    "mutate_word",
    "parse_quiver",
    "parse_scalar",
    "rational",
    "realize",
    "spherical_bound",
    "table1",
    "to_dot",
]
