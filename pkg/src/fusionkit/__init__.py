"""Explicit 2-groups, F2-modules, extensions and fusion systems around L3(4)-type Sylow subgroups."""

from .errors import (
    FusionKitError,
    InconsistentPresentation,
    NoFpfElement,
    NotACocycle,
    NotAutomorphism,
    NotInSylow,
    NotWeaklyClosed,
    SearchExhausted,
    ShapeMismatch,
    Singular,
    TooLarge,
)

__version__ = "0.1.0"

__all__ = [
    "FusionKitError",
    "InconsistentPresentation",
    "NoFpfElement",
    "NotACocycle",
    "NotAutomorphism",
    "NotInSylow",
    "NotWeaklyClosed",
    "SearchExhausted",
    "ShapeMismatch",
    "Singular",
    "TooLarge",
]
