"""Exception types raised by the analysis and simulation code."""


class LambertWDomainError(ValueError):
    """Argument outside the real domain of the requested Lambert W branch."""


class NoStationaryDistributionError(ValueError):
    """The HOL phase chain has no proper limit (unbounded cutoff with p + q <= 1)."""


class NoEquilibriumError(ValueError):
    """The fixed-point equation has no root on the requested interval."""


class RootBracketError(RuntimeError):
    """A sign scan failed to bracket exactly one root.

    ``sign_pattern`` holds the scanned signs so callers can see what went wrong.
    """

    def __init__(self, message, sign_pattern=None):
        super().__init__(message)
        self.sign_pattern = sign_pattern


class DivergedRunError(RuntimeError):
    """Statistic requested from a simulation run flagged as divergent."""


class SaturationOnset(ArithmeticError):
    """Finite-n trajectory step requested with ``p_t <= lambda``.

    The unsaturated map no longer applies; switch to the saturated one.
    """


class UnderflowClampWarning(RuntimeWarning):
    """A probability underflowed and was clamped to the smallest normal float."""
