"""Exception hierarchy shared by all modules."""


class TcriskError(Exception):
    """Base class for every error raised by this package."""


class SpaceMismatch(TcriskError, ValueError):
    """Two operands live on different outcome spaces."""


class InvalidObject(TcriskError, ValueError):
    """A space, measure, partition or filtration violates its invariants."""


class IllDefinedPaste(TcriskError, ValueError):
    """The source measure gives zero mass to a block the target marginal charges."""

    def __init__(self, block):
        self.block = tuple(block)
        super().__init__(f"paste undefined: block {self.block} has target mass but zero source mass")


class PolarBlock(TcriskError, ValueError):
    """Conditioning on a block that every test measure ignores."""

    def __init__(self, block):
        self.block = tuple(block)
        super().__init__(f"block {self.block} is polar")


class PreconditionError(TcriskError, ValueError):
    pass


class NoWitnessFound(TcriskError, RuntimeError):
    """No counterexample exists although the classifier said there must be one."""


class NotUniversalError(TcriskError, ValueError):
    """Raised when a dynamic extension is requested for a non-universal measure."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"risk measure is not time-consistent for every filtration; witness: {witness}")
