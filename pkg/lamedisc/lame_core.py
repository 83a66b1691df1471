"""Hill discriminant of Lame's equation y'' + (h - nu(nu+1) k^2 sn^2(t, k)) y = 0.

The discriminant D is integrated numerically over the half period [0, K] and
compared with the closed form 2 Re(B e^{2 i omega K}), whose distance from D is
bounded explicitly. Together they certify stability (|D| < 2) or instability
(|D| > 2) without trusting the integrator.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import StrEnum

from lamedisc.bounds import discriminant_gap
from lamedisc.errors import InvalidEnergy, OmegaUndefined, PreconditionViolated
from lamedisc.ode_floquet import FundamentalMatrix, IntegrationConfig, fundamental_matrix
from lamedisc.special_functions import (
    Modulus,
    complex_gamma,
    ellip_K,
    jacobi_sn_cn_dn,
)

logger = logging.getLogger(__name__)

# Floating-point allowance when deciding |approx| +- bound against 2.
CERTIFICATION_SLACK = 1e-12

# Numeric verdicts need |D| this many rel_tol away from 2.
NUMERIC_MARGIN_FACTOR = 100.0


class Verdict(StrEnum):
    PROVABLY_STABLE = "ProvablyStable"
    PROVABLY_UNSTABLE = "ProvablyUnstable"
    NUMERICALLY_STABLE = "NumericallyStable"
    NUMERICALLY_UNSTABLE = "NumericallyUnstable"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class LameParams:
    """Parameters (h, nu, k) of Lame's equation.

    nu < -1/2 is replaced by -1 - nu, which leaves nu(nu+1) unchanged.
    """

    h: float
    nu: float
    m: Modulus

    def __post_init__(self):
        if not (math.isfinite(self.h) and math.isfinite(self.nu)):
            raise PreconditionViolated(f"h and nu must be finite, got h={self.h}, nu={self.nu}")
        if self.nu < -0.5:
            object.__setattr__(self, "nu", -1.0 - self.nu)

    @classmethod
    def from_tau(cls, h: float, nu: float, tau: float) -> "LameParams":
        return cls(h, nu, Modulus.from_tau(tau))

    @property
    def nu_factor(self) -> float:
        """nu(nu+1)."""
        return self.nu * (self.nu + 1.0)


@dataclass(frozen=True)
class AsymptoticConstants:
    """omega, B and the polar form 2|B|, arg B of the approximant."""

    omega: float
    B: complex
    amplitude: float
    phase: float


@dataclass(frozen=True)
class DiscriminantReport:
    """Numerical discriminant, closed-form approximant, its error bound and the verdict.

    approx and bound are None when the comparison hypotheses fail.
    """

    D: float
    approx: float | None
    bound: float | None
    verdict: Verdict
    wronskian_drift: float = 0.0


def q_lame(t: float, p: LameParams) -> float:
    """Coefficient h - nu(nu+1) k^2 sn^2(t, k)."""
    if p.nu_factor == 0.0:
        return p.h
    sn = jacobi_sn_cn_dn(t, p.m)[0]
    return p.h - p.nu_factor * (p.m.k * sn) ** 2


def omega_of(h: float, nu: float) -> float:
    """omega = sqrt(h - nu(nu+1)), the frequency of the k = 1 limit at infinity.

    Raises:
        OmegaUndefined: h <= nu(nu+1).
    """
    w2 = h - nu * (nu + 1.0)
    if not w2 > 0.0:
        raise OmegaUndefined(
            f"omega needs h > nu(nu+1); got h={h}, nu(nu+1)={nu * (nu + 1.0):.12g}"
        )
    return math.sqrt(w2)


def monodromy(p: LameParams, cfg: IntegrationConfig | None = None) -> FundamentalMatrix:
    """Fundamental matrix of Lame's equation over the half period [0, K(k)]."""
    return fundamental_matrix(lambda t: q_lame(t, p), 0.0, ellip_K(p.m), cfg)


def _discriminant_from(fm: FundamentalMatrix, cfg: IntegrationConfig) -> float:
    reduced = 2.0 * (2.0 * fm.y1 * fm.y2p - 1.0)
    symmetric = 2.0 * fm.trace_symmetric
    if abs(reduced - symmetric) > 10.0 * cfg.rel_tol:
        logger.warning(
            "reduced and symmetric discriminant differ by %.3g", abs(reduced - symmetric)
        )
    return reduced


def discriminant(p: LameParams, cfg: IntegrationConfig | None = None) -> float:
    """Hill discriminant D = 2(2 y1(K) y2'(K) - 1) by numerical integration."""
    cfg = cfg or IntegrationConfig()
    return _discriminant_from(monodromy(p, cfg), cfg)


def asymptotic_constants(h: float, nu: float) -> AsymptoticConstants:
    """B = Gamma(1+mu) Gamma(mu) / (Gamma(1+mu+nu) Gamma(mu-nu)), mu = i omega.

    Raises:
        OmegaUndefined: h <= nu(nu+1).
    """
    omega = omega_of(h, nu)
    mu = 1j * omega
    big_b = (complex_gamma(1.0 + mu) * complex_gamma(mu)) / (
        complex_gamma(1.0 + mu + nu) * complex_gamma(mu - nu)
    )
    phase = cmath.phase(big_b)
    if phase == -math.pi:
        phase = math.pi
    return AsymptoticConstants(omega=omega, B=big_b, amplitude=2.0 * abs(big_b), phase=phase)


def b_product_form(omega: float, n: int) -> complex:
    """B for integer nu = n >= 0: prod_{j=1..n} (i omega - j) / (i omega + j)."""
    if n < 0:
        raise PreconditionViolated(f"product form needs an integer nu >= 0, got {n}")
    mu = 1j * omega
    value = 1.0 + 0.0j
    for j in range(1, n + 1):
        value *= (mu - j) / (mu + j)
    return value


def comparison_hypotheses(p: LameParams) -> None:
    """Raise the error naming the failed hypothesis of the discriminant comparison.

    Branch (a), nu >= 0, needs h > nu(nu+1); branch (b), -1/2 <= nu < 0, needs h > 0.
    """
    if p.nu >= 0.0:
        if p.h <= p.nu_factor:
            raise OmegaUndefined(
                f"nu >= 0 branch needs h > nu(nu+1) = {p.nu_factor:.12g}, got h={p.h}"
            )
    elif p.h <= 0.0:
        raise PreconditionViolated(f"-1/2 <= nu < 0 branch needs h > 0, got h={p.h}")


def approx_discriminant(p: LameParams) -> float:
    """2 Re(B e^{2 i omega K(k)})."""
    comparison_hypotheses(p)
    c = asymptotic_constants(p.h, p.nu)
    return 2.0 * (c.B * cmath.exp(2j * c.omega * ellip_K(p.m))).real


def asymptotic_discriminant(p: LameParams) -> float:
    """2 Re(B e^{2 i omega ln(4/k')}), the k -> 1 form with K replaced by ln(4/k')."""
    comparison_hypotheses(p)
    c = asymptotic_constants(p.h, p.nu)
    return 2.0 * (c.B * cmath.exp(2j * c.omega * math.log(4.0 / p.m.kprime))).real


def error_bound(p: LameParams) -> float:
    """Bound on |D - approx_discriminant|.

    nu >= 0:           8 sqrt(h) omega^-2 nu(nu+1) (E + 1 - 2 tanh K)
    -1/2 <= nu < 0:    8 omega h^-1 |nu|(nu+1) (E + 1 - 2 tanh K)

    Raises:
        OmegaUndefined: nu >= 0 and h <= nu(nu+1).
        PreconditionViolated: nu < 0 and h <= 0.
    """
    comparison_hypotheses(p)
    if p.nu_factor == 0.0:
        return 0.0
    omega = omega_of(p.h, p.nu)
    gap = discriminant_gap(p.m)
    if p.nu >= 0.0:
        return 8.0 * math.sqrt(p.h) / omega**2 * p.nu_factor * gap
    return 8.0 * omega / p.h * abs(p.nu) * (p.nu + 1.0) * gap


def classify(p: LameParams, cfg: IntegrationConfig | None = None) -> DiscriminantReport:
    """Stability verdict for Lame's equation.

    The approximant interval [approx - bound, approx + bound] decides first
    (Provably*). Otherwise |D| is compared with 2 using a margin of
    100 rel_tol (Numerically*). |D| within the margin of 2 is Undetermined.
    """
    cfg = cfg or IntegrationConfig()
    fm = monodromy(p, cfg)
    d_value = _discriminant_from(fm, cfg)

    approx = bound = None
    try:
        approx = approx_discriminant(p)
        bound = error_bound(p)
    except PreconditionViolated as e:
        logger.info("no certified comparison: %s", e)

    verdict = Verdict.UNDETERMINED
    if approx is not None and abs(approx) + bound < 2.0 - CERTIFICATION_SLACK:
        verdict = Verdict.PROVABLY_STABLE
    elif approx is not None and abs(approx) - bound > 2.0 + CERTIFICATION_SLACK:
        verdict = Verdict.PROVABLY_UNSTABLE
    else:
        margin = NUMERIC_MARGIN_FACTOR * cfg.rel_tol
        if abs(d_value) < 2.0 - margin:
            verdict = Verdict.NUMERICALLY_STABLE
        elif abs(d_value) > 2.0 + margin:
            verdict = Verdict.NUMERICALLY_UNSTABLE

    return DiscriminantReport(
        D=d_value,
        approx=approx,
        bound=bound,
        verdict=verdict,
        wronskian_drift=fm.wronskian_drift,
    )


def map_pendulum(gamma: float, energy: float) -> LameParams:
    """Lame parameters for coupled pendula linearized about a rotating solution.

    k^2 = 2/(E + 2), h = k^2 (2 gamma + 1), nu = 1.

    Raises:
        InvalidEnergy: energy <= 0.
    """
    if not energy > 0.0:
        raise InvalidEnergy(f"energy must be > 0, got {energy}")
    k2 = 2.0 / (energy + 2.0)
    kprime = math.sqrt(energy / (energy + 2.0))
    m = Modulus(kprime=kprime, k=math.sqrt(k2))
    return LameParams(h=k2 * (2.0 * gamma + 1.0), nu=1.0, m=m)
