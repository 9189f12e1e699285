"""Exception hierarchy."""


class FredkitError(Exception):
    """Base class for engine errors."""


class NotGraphExpressible(FredkitError):
    """The expression has no basis-graph (weighted partial shift) form."""


class IndexOutOfSpace(FredkitError):
    """A witness map references a basis vector that does not exist."""


class InvalidWitness(FredkitError, ValueError):
    """A witness map is not a weighted partial isometry on basis vectors."""


class ArityDomain(FredkitError, ValueError):
    """An atom was given parameters outside its domain."""


class NotSemiFredholm(FredkitError):
    pass


class NotUpperSemiBrowder(FredkitError):
    pass


class NotLowerSemiBrowder(FredkitError):
    pass


class UnsupportedForLambda(FredkitError):
    """lambda-dependent invariants are not available for this expression."""


class Infeasible(FredkitError):
    """A witness was requested for an impossible completion problem."""


class DslSyntaxError(FredkitError, ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} at position {pos}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)
