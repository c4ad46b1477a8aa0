from __future__ import annotations


class IgnifrontError(Exception):
    """Base class for all other ignifront errors"""


class ParameterError(IgnifrontError, ValueError):
    """Base class for invalid input errors"""


class NonFinite(ParameterError):  # noqa: N818
    """A parameter is NaN or infinite."""


class NonPositiveParameter(ParameterError):  # noqa: N818
    """q, h or theta_ig is not strictly positive."""


class OrderingViolated(ParameterError):  # noqa: N818
    """The ordering 0 < theta_ig < theta_hl < theta_plus does not hold."""


class InvalidReaction(ParameterError):  # noqa: N818
    """A custom reaction term violates the equilibrium hypotheses."""


class ConfigError(ParameterError):
    """Invalid or incomplete run configuration."""


class NumericalError(IgnifrontError, ArithmeticError):
    """Base class for all numerical failures"""


class SpeedNonPositive(NumericalError):  # noqa: N818
    """A front speed must be strictly positive here."""


class OutOfDomain(NumericalError):  # noqa: N818
    """Temperature outside the neighborhood W of the reaction term."""


class OutOfRange(NumericalError):  # noqa: N818
    """Interface position outside the range of a curve."""


class BracketFailure(NumericalError):  # noqa: N818
    """Root bracket could not be verified."""


class NoSignChange(NumericalError):  # noqa: N818
    """The curves psi and phi do not cross."""


class SeedTooLarge(NumericalError):  # noqa: N818
    """Separatrix seed left the basin before reaching theta_hl."""


class ToleranceFailure(NumericalError):  # noqa: N818
    """Integrator or root finder could not meet the requested tolerance."""


class TailEstimateUnreliable(NumericalError):  # noqa: N818
    """Trajectory ended too far from the saddle for the analytic tail."""


class ExtrapolationBeyondTail(NumericalError):  # noqa: N818
    """Evaluation point beyond the reach of the saddle patch."""


class StabilityViolated(NumericalError):  # noqa: N818
    """Time step violates the explicit scheme bound dt <= dx^2 / 2."""


class FrontLeftDomain(NumericalError):  # noqa: N818
    """The simulated front came too close to the domain boundary."""


class InsufficientData(NumericalError):  # noqa: N818
    """Not enough samples to measure a speed."""
