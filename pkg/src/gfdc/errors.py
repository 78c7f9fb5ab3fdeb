"""Exception types shared across the package."""


class GFDCError(Exception):
    """Base class for errors raised by this package."""


class DataFormatError(GFDCError):
    """A data file (CSV dataset or label file) could not be parsed."""


class UnsatisfiableClusterCountError(GFDCError):
    """The requested cluster count cannot be formed from stable samples.

    Raised when the flock-splitting recursion has been driven all the way
    down to single-sample flocks and there are still fewer flocks than
    requested clusters.
    """
