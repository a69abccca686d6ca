"""Exception types shared across the package."""


class Rank1Error(Exception):
    """Base class for all library-specific errors."""


class ZeroCoordinate(Rank1Error):
    """A factor vector contains a coordinate that is exactly zero."""


class ZeroValue(Rank1Error):
    """An observed entry value is exactly zero."""


class IndexOutOfRange(Rank1Error):
    """An entry index has the wrong length or a coordinate outside [1, d]."""


class Inconsistent(Rank1Error):
    """A linear system has no solution."""


class ContradictorySamples(Rank1Error):
    """Two observations of the same index carry different values."""


class InconsistentSigns(Rank1Error):
    """The sign system over GF(2) is infeasible: samples are not rank-1."""


class InconsistentMagnitudes(Rank1Error):
    """The log-magnitude system over the reals is infeasible."""


class BadParameter(Rank1Error):
    """A parameter is missing, out of range, or too large to handle."""
