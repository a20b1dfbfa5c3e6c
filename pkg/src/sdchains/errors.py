"""Exception hierarchy.

Every error raised on purpose by the package derives from ``SdchainsError``
so the CLI can map it to exit code 2 (input problems) or report it as a
verified failure.
"""


class SdchainsError(Exception):
    """Base class for package errors."""


class InvariantViolation(SdchainsError, ValueError):
    """An algebra or module literal breaks a structural invariant."""


class AlgebraError(InvariantViolation):
    """Structure constants violate an algebra invariant."""


class NotCommutative(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class NoUnit(AlgebraError):
    pass


class NotLocal(AlgebraError):
    pass


class UnitInIdeal(AlgebraError):
    pass


class ModuleError(InvariantViolation):
    """Action matrices violate a module invariant."""


class NotAnnihilated(SdchainsError):
    """An ideal fails to kill a module that should descend to the quotient."""


class NotTotallyReflexive(SdchainsError):
    pass


class NotSemidualizing(SdchainsError):
    pass


class PreconditionUnverified(SdchainsError):
    pass


class DistinctnessUnknown(SdchainsError):
    pass


class HypothesisFailed(SdchainsError):
    pass


class DecompositionMismatch(SdchainsError):
    pass


class MultipleNonvanishingDegrees(SdchainsError):
    pass


class BassInconclusive(SdchainsError):
    pass


class ParseError(SdchainsError, ValueError):
    pass


class NameNotFound(SdchainsError, KeyError):
    pass
