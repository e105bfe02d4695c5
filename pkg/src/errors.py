"""
Error types module.

This module defines the exception hierarchy raised by the simulator packages.
"""


class MeraSimError(Exception):
    """Base class for all simulator errors."""


class ShapeMismatchError(MeraSimError, ValueError):
    """Tensor shapes, axes or element counts are inconsistent."""


class DegenerateMatrixError(MeraSimError, ArithmeticError):
    """A factorization met a rank-deficient matrix."""


class DegenerateRetractionError(DegenerateMatrixError):
    """A retraction step collapsed the rank of the moved point."""


class NonFiniteGradientError(MeraSimError, ArithmeticError):
    """A gradient contained NaN or infinite entries."""


class NonFiniteObjectiveError(MeraSimError, ArithmeticError):
    """An objective evaluation returned NaN or infinity."""


class ConstraintViolationError(MeraSimError, ValueError):
    """An isometry, unitarity or normalization constraint does not hold."""


class NonUnitaryGateError(ConstraintViolationError):
    """A gate matrix is not unitary within tolerance."""


class InvalidQubitError(MeraSimError, ValueError):
    """Qubit indices are out of range, repeated or not adjacent."""


class ConeMembershipError(MeraSimError, KeyError):
    """A tensor was requested that is not a member of the causal cone."""


class StateCapError(MeraSimError, ValueError):
    """A dense state was requested for more qubits than the configured cap."""


class CircuitFormatError(MeraSimError, ValueError):
    """A circuit document is malformed or fails validation."""


class NetworkFormatError(MeraSimError, ValueError):
    """A network document is malformed or fails validation."""


class ConfigError(MeraSimError, ValueError):
    """A run configuration is invalid."""
