"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input: bad vertex id, loop, or duplicate edge."""


class EmbeddingError(ValueError):
    """Rotation system or outer face inconsistent with a sphere embedding."""


class ParseError(ValueError):
    """Malformed file input; message carries line/position diagnostics."""


class SolveError(RuntimeError):
    """Solver preconditions violated or an exact answer was required but unavailable."""


class InvariantViolation(RuntimeError):
    """A property the underlying theory guarantees failed; treat as a bug alarm."""
