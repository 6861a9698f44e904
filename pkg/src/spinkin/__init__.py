"""Rotational kinematics of spin states.

Speed, covariant acceleration and speed excess of pure (Fubini-Study) and
mixed (Bures) spin states under rotations, with the entanglement measures
and random-ensemble survey they are compared against.
"""

from .errors import DegenerateStateError, ValidationError

__version__ = "0.1.0"

__all__ = ["DegenerateStateError", "ValidationError", "__version__"]
