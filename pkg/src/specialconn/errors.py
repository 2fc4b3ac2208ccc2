"""Exception types shared across the package."""


class StructuralError(ValueError):
    """Shape or dimension mismatch between arguments."""


class Rejected(Exception):
    """An input fails a mathematical precondition.

    ``witness`` carries the concrete basis indices and values that show it.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class ConsistencyError(RuntimeError):
    """An internal identity that should always hold was violated."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class RecordError(ValueError):
    """Malformed file record; ``path`` locates the offending entry."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
