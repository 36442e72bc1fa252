"""Exception types shared across the package."""


class LcpLabError(Exception):
    pass


class InputError(LcpLabError, ValueError):
    """Malformed user input (bad index set, unparsable document, ...)."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class IllegitimatePivot(LcpLabError):
    def __init__(self, alpha):
        super().__init__(f"principal submatrix on {tuple(i + 1 for i in alpha)} is singular")
        self.alpha = tuple(alpha)


class NumericalBreakdown(LcpLabError):
    def __init__(self, pivot):
        super().__init__(f"non-positive pivot at index {pivot} in SPD factorization")
        self.pivot = pivot


class PreconditionError(LcpLabError):
    pass


class InternalInconsistency(LcpLabError):
    """A certificate failed to verify; indicates a detector bug."""


class DimensionTooLarge(LcpLabError):
    pass


class InfeasibleStart(LcpLabError):
    pass


class IpmStall(LcpLabError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class GenerationExhausted(LcpLabError):
    def __init__(self, attempts, classfilter):
        super().__init__(f"no {classfilter} matrix found in {attempts} draws")
        self.attempts = attempts
