"""Exception types shared across the package.

Every error carries a short machine-readable ``kind`` so the CLI can emit
structured error objects.
"""


class Error(Exception):
    kind = "error"


class ParseError(Error):
    """Malformed input file (edge list, family file, label file)."""

    kind = "parse"


class DimensionMismatch(Error):
    """Vector/matrix/graph sizes do not line up."""

    kind = "dimension-mismatch"


class PreconditionError(Error):
    """A structural precondition of an operation or protocol is not met."""

    kind = "precondition"
