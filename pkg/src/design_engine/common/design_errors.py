class DesignProblemError(ValueError):
    """A design problem violates one of the construction assumptions."""


class EnumerationCapError(RuntimeError):
    def __init__(self, bound: int, cap: int):
        super().__init__(f"Enumeration refused: candidate bound {bound} exceeds cap {cap}")
        self.bound = bound
        self.cap = cap


class ProblemFileError(ValueError):
    """A problem file is malformed or describes an invalid problem."""
