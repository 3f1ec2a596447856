"""Process-level error classes, one per exit code family."""


class AdapterError(Exception):
    """Base class; carries the exit code the CLI should return."""

    exit_code = 1


class UsageError(AdapterError):
    """Bad arguments or an inconsistent config. Exit 2."""

    exit_code = 2


class FileError(AdapterError):
    """Unreadable, unparsable, or wrongly shaped input files. Exit 3."""

    exit_code = 3


class NumericError(AdapterError):
    """Degenerate spectra where the math has no answer. Exit 4."""

    exit_code = 4
