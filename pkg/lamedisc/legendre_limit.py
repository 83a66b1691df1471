"""Lame's equation at k = 1: w'' + (h - nu(nu+1) tanh^2 t) w = 0.

With x = tanh^2 t the canonical solutions are hypergeometric:

    w1(t) = cosh^mu t F(-(mu+nu)/2, (1-mu+nu)/2; 1/2; x)
    w2(t) = tanh t cosh^mu t F((1-mu-nu)/2, (2-mu+nu)/2; 3/2; x)

with mu = i omega. Both expressions are real; the real part is taken to drop
rounding noise. For large t they approach z_j(t) = Re(A_j e^{i omega t}).
"""

import cmath
import math
from dataclasses import dataclass
from typing import Literal

from lamedisc.bounds import bound_constants, one_minus_tanh
from lamedisc.errors import PreconditionViolated, SeriesDivergence
from lamedisc.lame_core import omega_of
from lamedisc.special_functions import complex_gamma, gauss_2f1

# tanh^2(6) = 1 - 2.5e-5; beyond this the direct series is too long.
T_MAX = 6.0

_SQRT_PI = math.sqrt(math.pi)
_LN2 = math.log(2.0)

Branch = Literal[1, 2]


@dataclass(frozen=True)
class ConnectionConstants:
    """A1, A2 of the large-t behaviour, with the omega and nu they belong to."""

    A1: complex
    A2: complex
    omega: float
    nu: float


def _log_2cosh(t: float) -> float:
    t = abs(t)
    return t + math.log1p(math.exp(-2.0 * t))


def _parameters(mu: complex, nu: float, j: Branch) -> tuple[complex, complex]:
    if j == 1:
        return -0.5 * (mu + nu), 0.5 * (1.0 - mu + nu)
    return 0.5 * (1.0 - mu - nu), 0.5 * (2.0 - mu + nu)


def _check_t(t: float) -> None:
    if t < 0.0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if t > T_MAX:
        raise SeriesDivergence(f"direct 2F1 evaluation capped at t <= {T_MAX}, got t={t}")


def _pieces(t: float, h: float, nu: float, j: Branch):
    """Prefactor cosh^mu, tanh, sech^2, F, dF/dx and mu for branch j."""
    _check_t(t)
    mu = 1j * omega_of(h, nu)
    a, b = _parameters(mu, nu, j)
    c = 0.5 if j == 1 else 1.5
    th = math.tanh(t)
    sech2 = 1.0 / math.cosh(t) ** 2
    x = th * th
    prefactor = cmath.exp(mu * (_log_2cosh(t) - _LN2))
    f = gauss_2f1(a, b, c, x)
    df = a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x)
    return prefactor, th, sech2, f, df, mu


def w1(t: float, h: float, nu: float) -> float:
    """Solution with w1(0) = 1, w1'(0) = 0."""
    _check_t(t)
    mu = 1j * omega_of(h, nu)
    a, b = _parameters(mu, nu, 1)
    x = math.tanh(t) ** 2
    return (cmath.exp(mu * (_log_2cosh(t) - _LN2)) * gauss_2f1(a, b, 0.5, x)).real


def w2(t: float, h: float, nu: float) -> float:
    """Solution with w2(0) = 0, w2'(0) = 1."""
    _check_t(t)
    mu = 1j * omega_of(h, nu)
    a, b = _parameters(mu, nu, 2)
    th = math.tanh(t)
    return (th * cmath.exp(mu * (_log_2cosh(t) - _LN2)) * gauss_2f1(a, b, 1.5, th * th)).real


def w1_prime(t: float, h: float, nu: float) -> float:
    """w1'(t) from dF/dx = (ab/c) F(a+1, b+1; c+1; x) and dx/dt = 2 tanh t sech^2 t."""
    prefactor, th, sech2, f, df, mu = _pieces(t, h, nu, 1)
    return (prefactor * (mu * th * f + 2.0 * th * sech2 * df)).real


def w2_prime(t: float, h: float, nu: float) -> float:
    """w2'(t), differentiating tanh t cosh^mu t F(x) term by term."""
    prefactor, th, sech2, f, df, mu = _pieces(t, h, nu, 2)
    inner = mu * th * f + 2.0 * th * sech2 * df
    return (prefactor * (sech2 * f + th * inner)).real


def connection_constants(h: float, nu: float) -> ConnectionConstants:
    """A1 and A2 from the connection formula of F at x = 1.

    Raises:
        OmegaUndefined: h <= nu(nu+1).
    """
    omega = omega_of(h, nu)
    mu = 1j * omega
    g_mu = complex_gamma(mu)
    a1 = (
        cmath.exp((1.0 - mu) * _LN2)
        * _SQRT_PI
        * g_mu
        / (complex_gamma(0.5 * (1.0 + mu + nu)) * complex_gamma(0.5 * (mu - nu)))
    )
    a2 = (
        cmath.exp(-mu * _LN2)
        * _SQRT_PI
        * g_mu
        / (complex_gamma(0.5 * (2.0 + mu + nu)) * complex_gamma(0.5 * (1.0 + mu - nu)))
    )
    return ConnectionConstants(A1=a1, A2=a2, omega=omega, nu=nu)


def v_connection(t: float, c: ConnectionConstants, j: Branch) -> complex:
    """A_j (2 cosh t)^mu F(a_j, b_j; 1 - mu; cosh^-2 t); its real part is w_j(t).

    Converges fast for large t, where the direct series is slow. Needs t > 0.
    """
    if t <= 0.0:
        raise PreconditionViolated(f"connection form needs t > 0, got {t}")
    mu = 1j * c.omega
    a, b = _parameters(mu, c.nu, j)
    y = 1.0 / math.cosh(t) ** 2
    value = c.A1 if j == 1 else c.A2 * math.tanh(t)
    return value * cmath.exp(mu * _log_2cosh(t)) * gauss_2f1(a, b, 1.0 - mu, y)


def z_osc(t: float, c: ConnectionConstants, j: Branch) -> float:
    """Re(A_j e^{i omega t})."""
    amp = c.A1 if j == 1 else c.A2
    return (amp * cmath.exp(1j * c.omega * t)).real


def z_osc_prime(t: float, c: ConnectionConstants, j: Branch) -> float:
    """Re(i omega A_j e^{i omega t})."""
    amp = c.A1 if j == 1 else c.A2
    return (1j * c.omega * amp * cmath.exp(1j * c.omega * t)).real


def theorem2_bound(t: float, h: float, nu: float, which: Literal["w1", "w2p"]) -> float:
    """Bound on |w1 - z1| (which="w1") or |w2' - z2'| (which="w2p") at t >= 0.

    Raises:
        PreconditionViolated: h <= 0, h <= nu(nu+1) or t < 0.
    """
    if t < 0.0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    omega = omega_of(h, nu)
    consts = bound_constants(h, nu, None)
    decay = abs(nu) * (nu + 1.0) * one_minus_tanh(t)
    if which == "w1":
        return consts.C1 / omega * decay
    if which == "w2p":
        return consts.C2 * decay
    raise PreconditionViolated(f"which must be 'w1' or 'w2p', got {which!r}")
