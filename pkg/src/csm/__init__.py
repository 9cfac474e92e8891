"""Contexts, systems and modalities: a projective-measurement calculus.

Contexts are orthonormal frames of rank-one projectors, modalities are the
projectors themselves, and conditional probabilities between modalities of
different contexts follow the Born trace formula.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Context,
    ContextTransformation,
    Modality,
    Relation,
    System,
    TransitionTable,
    born_probability,
    classify_pair,
    context_from_basis,
    max_exclusive_set,
    transform_context,
    transition_table,
)

__all__ = [
    "Context",
    "ContextTransformation",
    "Modality",
    "Relation",
    "System",
    "TransitionTable",
    "born_probability",
    "classify_pair",
    "context_from_basis",
    "max_exclusive_set",
    "transform_context",
    "transition_table",
]
