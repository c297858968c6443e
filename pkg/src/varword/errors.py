"""Exception types shared by all varword modules."""


class VarwordError(Exception):
    """Base class for all errors raised by this package."""


class PositionOutOfRange(VarwordError):
    """A flip/block position lies outside the string it applies to."""


class TooManyValues(VarwordError):
    """More instantiation values than the word has variable kinds."""


class UnboundVariable(VarwordError):
    """A substituted variable survives truncation (malformed word)."""


class OverlappingBlocks(VarwordError):
    """Block family members share positions."""


class BlockOutOfOrder(VarwordError):
    """Block i does not lie entirely below block i+1."""


class BaseNotZeroOnBlock(VarwordError):
    """The base string carries a 1 on a variable block position."""


class HorizonExceeded(VarwordError):
    """An input is longer than the coloring's declared domain."""


class DomainMismatch(VarwordError):
    """Input kind does not match the coloring's declared domain."""


class ColoringSyntaxError(VarwordError):
    """Coloring/schedule file violates the line grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ColoringSemanticError(VarwordError):
    """Well-formed file with inconsistent content (color range, duplicates)."""


class PreconditionViolated(VarwordError):
    """An operation was called outside its stated preconditions."""


class BudgetExhausted(VarwordError):
    """A bounded search ran out of budget; carries the partial state."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ResampleBudgetExceeded(BudgetExhausted):
    """Resampling did not converge; partial assignment attached."""


class NoRepeat(VarwordError):
    """A witness walk left the certificate's color set (item-4 breach)."""


class CertificateViolation(VarwordError):
    """A certificate failed one of its own structural guarantees."""


class EmptyTree(VarwordError):
    """No realized tuple at the requested chain level (upstream bug)."""


class HomogeneityFailure(VarwordError):
    """An assembled solution failed the flip/truncation color check."""

    def __init__(self, message, flip_set=None, point=None):
        super().__init__(message)
        self.flip_set = flip_set
        self.point = point


class LeafLengthExceedsHorizon(VarwordError):
    """An adversary target's leaves are longer than the coloring horizon."""


class ScheduleTooShort(VarwordError):
    """A gap query needs stages beyond the schedule's declared coverage."""
