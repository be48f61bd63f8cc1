"""Exception hierarchy shared by every module."""


class SignedGraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphStructureError(SignedGraphError, ValueError):
    pass


class DuplicateEdge(GraphStructureError):
    pass


class Loop(GraphStructureError):
    pass


class UnknownVertex(GraphStructureError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotACircuit(GraphStructureError):
    pass


class PartialColoring(SignedGraphError, ValueError):
    pass


class NonPositiveK(SignedGraphError, ValueError):
    pass


class InvalidRotation(SignedGraphError, ValueError):
    pass


class NotTwoConnected(SignedGraphError, ValueError):
    pass


class WouldCreateParallelEdge(SignedGraphError, RuntimeError):
    pass


class Disconnected(SignedGraphError, ValueError):
    pass


class EmptyList(SignedGraphError, ValueError):
    pass


class BudgetExceeded(SignedGraphError, RuntimeError):
    pass


class BadPosition(SignedGraphError, ValueError):
    pass


class NotPlanar(SignedGraphError, ValueError):
    pass


class GirthTooSmall(SignedGraphError, ValueError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class PreconditionViolated(SignedGraphError, ValueError):
    def __init__(self, condition, detail=""):
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)
        self.condition = condition


class InternalInvariantBroken(SignedGraphError, AssertionError):
    """Raised when a construction that must succeed does not; always a bug."""


class VerificationFailed(SignedGraphError, AssertionError):
    def __init__(self, stage, detail=""):
        super().__init__(f"stage {stage}: {detail}" if detail else f"stage {stage}")
        self.stage = stage
