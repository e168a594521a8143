"""SU(2) character varieties of surfaces and their Dehn twist dynamics."""

from ._su2twist import *  # noqa: F401,F403
from ._su2twist import (
    InvariantViolation,
    NonGenericInput,
    OrbitSample,
    ParseError,
    Quaternion,
    SurfaceRep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
