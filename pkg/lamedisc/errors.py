"""Exception hierarchy for lamedisc."""


class LameDiscError(Exception):
    """Base class for all lamedisc errors."""


class PreconditionViolated(LameDiscError, ValueError):
    """An input lies outside the domain where an operation or bound is valid."""


class OmegaUndefined(PreconditionViolated):
    """h <= nu(nu+1), so omega = sqrt(h - nu(nu+1)) is not a positive real."""


class InvalidEnergy(PreconditionViolated):
    """Pendulum energy must be strictly positive."""


class InvalidModulus(PreconditionViolated):
    """Complementary modulus outside (0, 1]."""


class PoleAtNonpositiveInteger(LameDiscError, ValueError):
    """Gamma (or a hypergeometric lower parameter) evaluated at 0, -1, -2, ..."""


class NonConvergence(LameDiscError, ArithmeticError):
    """An AGM or Landen iteration did not contract within its iteration cap."""


class SeriesDivergence(LameDiscError, ArithmeticError):
    """A hypergeometric series cannot reach the tolerance within its term cap."""


class StepLimitExceeded(LameDiscError, ArithmeticError):
    """The ODE integrator used up max_steps before reaching the endpoint."""


class ToleranceUnachievable(LameDiscError, ArithmeticError):
    """The step size collapsed below the floating-point resolution of t."""
