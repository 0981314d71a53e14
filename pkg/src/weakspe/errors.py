"""Exception hierarchy shared by every module of the package."""


class WeakSPEError(Exception):
    """Base class for all errors raised by this package."""


class GameError(WeakSPEError, ValueError):
    """The game description violates a structural invariant."""


class DeadEndVertex(GameError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} has no successor")
        self.vertex = vertex


class UnknownVertex(GameError):
    def __init__(self, vertex, where=""):
        msg = f"unknown vertex {vertex!r}"
        if where:
            msg += f" in {where}"
        super().__init__(msg)
        self.vertex = vertex


class ArityMismatch(GameError):
    pass


class InvalidObjective(GameError):
    pass


class MixedObjectives(GameError):
    pass


class UnsupportedObjective(WeakSPEError):
    """The requested operation is not defined for this objective class."""


class EmptySet(WeakSPEError, ValueError):
    pass


class NotRealizable(WeakSPEError, ValueError):
    pass


class PayoffAbsent(WeakSPEError):
    pass


class EmptyLabel(WeakSPEError):
    pass


class MissingLasso(WeakSPEError):
    pass


class BudgetExceeded(WeakSPEError):
    pass


class MalformedFormula(WeakSPEError, ValueError):
    pass
