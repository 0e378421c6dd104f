"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line can map failures to
the documented process status without inspecting exception types.
"""


class StableSubspaceError(Exception):
    exit_code = 2


class ShapeMismatch(StableSubspaceError, ValueError):
    pass


class DimensionMismatch(ShapeMismatch):
    pass


class LengthMismatch(ShapeMismatch):
    pass


class NonFinite(StableSubspaceError, ValueError):
    pass


class ConvergenceFailure(StableSubspaceError, ArithmeticError):
    exit_code = 3


class AllZero(StableSubspaceError, ValueError):
    exit_code = 3


class EmptySelection(StableSubspaceError, ValueError):
    pass


class ClusterTooSmall(StableSubspaceError, ValueError):
    def __init__(self, cluster, size, minimum):
        self.cluster = cluster
        self.size = size
        self.minimum = minimum
        super().__init__(
            f"cluster {cluster} has {size} points, fewer than the minimum of {minimum}"
        )


class SpecInvalid(StableSubspaceError, ValueError):
    exit_code = 1


class ConfigInvalid(StableSubspaceError, ValueError):
    exit_code = 1


class InvalidLabels(StableSubspaceError, ValueError):
    pass


class Parse(StableSubspaceError, ValueError):
    def __init__(self, path, line, col, message):
        self.path = path
        self.line = line
        self.col = col
        super().__init__(f"{path}:{line}:{col}: {message}")


class RaggedRows(Parse):
    pass
