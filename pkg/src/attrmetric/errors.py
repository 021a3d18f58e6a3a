"""Exception hierarchy shared by all modules."""


class AttrMetricError(Exception):
    """Base class for all errors raised by this package."""


class NonBinaryEntry(AttrMetricError):
    """A matrix entry is outside {-1, +1}."""


class EmptyMatrix(AttrMetricError):
    """A matrix has zero rows or zero columns."""


class RaggedRows(AttrMetricError):
    """Rows of the input do not all have the same length."""


class NonFiniteScore(AttrMetricError):
    """A classifier score is NaN or infinite."""


class TooFewAttributes(AttrMetricError):
    """A split needs at least two attribute columns."""


class DegenerateSplit(AttrMetricError):
    """The requested ratio leaves one side of the split empty."""


class LengthMismatch(AttrMetricError):
    """Two attribute sets disagree on the number of images."""


class OutOfRange(AttrMetricError):
    """A score or parameter falls outside its documented range."""


class ParseError(AttrMetricError):
    """A matrix file contains a token that is not an integer."""


class HeaderMismatch(AttrMetricError):
    """Declared matrix dimensions disagree with the file body."""


class IoFailure(AttrMetricError):
    """A file could not be read or written."""


class ManifestError(AttrMetricError):
    """A run manifest is malformed or references missing files."""
