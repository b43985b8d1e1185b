"""Exception types shared across the toolkit.

Every exception carries enough of a witness to reproduce the failure by
hand; checkers prefer returning structured reports, and raise only when a
precondition is violated or an input is malformed.
"""


class CatError(Exception):
    """Base class for all toolkit errors."""


class UnknownId(CatError):
    pass


class MismatchedEndpoints(CatError):
    pass


class MissingComposite(CatError):
    pass


class NonAssociative(CatError):
    pass


class InvalidCategory(CatError):
    """Raised when a description fails validation; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__("\n".join(report.render()))


class NotAFunctor(CatError):
    pass


class NoProducts(CatError):
    pass


class MissingProducts(CatError):
    pass


class NoAdjoint(CatError):
    pass


class NoTerminal(CatError):
    pass


class NoLift(CatError):
    pass


class NotDiscrete(CatError):
    pass


class IncoherentTransitions(CatError):
    pass


class SearchExhausted(CatError):
    """An exhaustive search went past the configured candidate cap."""


class CapExceeded(SearchExhausted):
    pass


class FLCRequired(CatError):
    pass


class SymbolicFilter(CatError):
    pass


class NotProductStable(CatError):
    pass


class OptimizationMismatch(CatError):
    """The germ-class construction and the minimum optimization disagree.

    This is an internal bug sentinel: for explicit filters the two
    constructions are provably isomorphic, so a mismatch means the code
    is wrong, never the input.
    """


class PreservationFailure(CatError):
    pass


class NotFibrant(CatError):
    pass


class NotStable(CatError):
    pass


class EndpointMismatch(CatError):
    pass


class UnsupportedTail(CatError):
    pass


class UnsupportedTailComposition(CatError):
    pass


class UnsupportedFamily(CatError):
    pass


class IllTypedParameter(CatError):
    def __init__(self, position, message):
        self.position = position
        super().__init__(f"parameter {position}: {message}")


class NoExponentials(CatError):
    pass


class NotNatural(CatError):
    pass


class ParseError(CatError):
    def __init__(self, path, line_no, message):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")
