"""Exception taxonomy shared by every module in the package.

All failures raised on purpose derive from PhinoiseError so callers can
catch the package's errors without netting unrelated bugs. The CLI maps
these onto exit codes (see cli.py).
"""

__all__ = [
    "PhinoiseError",
    "InvalidInput",
    "InvalidCutoff",
    "SymmetryViolation",
    "DegenerateSpectrum",
    "InvalidTrajectory",
    "UnsupportedLayout",
    "ShapeError",
    "FormatError",
    "IoError",
]


class PhinoiseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(PhinoiseError):
    """Argument violates a documented precondition (dtype, range, NaN/Inf)."""


class InvalidCutoff(PhinoiseError):
    """Frequency cutoff outside the valid range for the given extent."""


class SymmetryViolation(PhinoiseError):
    """Spectrum is not Hermitian-symmetric enough to invert to a real tensor."""


class DegenerateSpectrum(PhinoiseError):
    """Spectral quantity is undefined because all relevant energy is zero."""


class InvalidTrajectory(PhinoiseError):
    """Synthetic motion path leaves the frame and wrapping is disabled."""


class UnsupportedLayout(PhinoiseError):
    """Array file uses a memory layout this package does not accept."""


class ShapeError(PhinoiseError):
    """Array has the wrong number of dimensions or a zero-length axis."""


class FormatError(PhinoiseError):
    """Byte stream is not a well-formed array file of a supported version."""


class IoError(PhinoiseError):
    """Operating-system level read or write failure."""
