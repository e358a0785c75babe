"""Discrete dynamics toolkit: from the Lorenz flow down to the logistic Cantor set."""

from .core import (
    DomainError,
    DynamicsError,
    EscapeError,
    InsufficientDataError,
    IntegrationError,
    Orbit,
    Point2,
    SingularParameterError,
    State3,
    Tolerance,
    approx_eq,
)

__all__ = [
    "DomainError",
    "DynamicsError",
    "EscapeError",
    "InsufficientDataError",
    "IntegrationError",
    "Orbit",
    "Point2",
    "SingularParameterError",
    "State3",
    "Tolerance",
    "approx_eq",
]

__version__ = "0.1.0"
