"""Exception hierarchy used across the package."""


class GraphFormatError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class NoPerfectTargetSetError(ValueError):
    """Raised when the graph admits no perfect target set (isolated vertex)."""


class DisconnectedGraphError(ValueError):
    pass


class SizeLimitError(ValueError):
    """Exhaustive search refused because the instance is too large."""


class ConvergenceError(RuntimeError):
    """The simulation did not reach its limit cycle within the step cap.

    Never expected for valid inputs: the cap is derived from the O(|E|)
    convergence guarantee, so hitting it means a bug or a broken input.
    """
