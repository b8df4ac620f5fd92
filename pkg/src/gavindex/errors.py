"""Exception types shared across the library."""

from __future__ import annotations


class GavError(Exception):
    """Base class for all library-specific errors."""


class NotQuasiprojectiveSetup(GavError):
    """The columns of P do not generate the ambient space as a cone."""


class NotAmple(GavError):
    """The requested class does not lie in the interior of the moving cone."""


class NotQGorenstein(GavError):
    """No rational multiple of the canonical class is Cartier."""


class NotQGorensteinOnCone(GavError):
    """The support-function system on a specific cone has no rational solution."""

    def __init__(self, message: str, cone=None):
        super().__init__(message)
        self.cone = cone


class MalformedFanCone(GavError):
    """A fan cone is neither a leaf cone nor a big cone."""

    def __init__(self, message: str, cone=None):
        super().__init__(message)
        self.cone = cone


class DegenerateCell(GavError):
    """The base point lies in the affine hull of the cell."""


class NotLatticeMeasurable(GavError):
    """The value group of the cell's affine hull has a non-integral generator."""


class InvalidCandidate(GavError):
    """A parameter tuple produced data that fails validation."""
