"""Exception types shared across the package."""


class TetmacError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(TetmacError):
    """A tetrahedron is too flat (or has coincident vertices) for the
    requested quantity to be well defined."""


class InvalidGamma(TetmacError, ValueError):
    """Angle bound outside the admissible interval [pi/3, pi)."""


class InvalidBound(TetmacError, ValueError):
    """Quality-ratio bound outside its admissible range (must exceed 6)."""


class InadmissibleExponents(TetmacError, ValueError):
    """The (k, m, p) combination is outside the range where the
    interpolation estimate holds (k - m = 0 requires p > 2)."""


class SolveFailure(TetmacError):
    """The interpolation node system is numerically singular."""

    def __init__(self, message: str, condition: float | None = None):
        super().__init__(message)
        self.condition = condition


class ParseError(TetmacError, ValueError):
    """Malformed mesh input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MeshIndexError(ParseError):
    """A mesh element references a vertex that does not exist."""


class DimensionError(ParseError):
    """Mesh file declares a spatial dimension other than 3."""
