"""Special-function kernels.

Complete elliptic integrals and Jacobi elliptic functions for a real modulus,
the complex gamma function, and the Gauss hypergeometric series on [0, 1).
Everything here is a pure function of its arguments.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from lamedisc.errors import (
    InvalidModulus,
    NonConvergence,
    PoleAtNonpositiveInteger,
    SeriesDivergence,
)

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)

# Largest tau for which e^{-tau}, and so 1 - k, is still a normal float
TAU_MAX = -math.log(float(np.finfo(float).tiny))

# AGM and Landen converge quadratically; 64 iterations only fail for garbage input.
AGM_MAX_ITER = 64

# Lanczos approximation, g = 7 with nine coefficients.
LANCZOS_G = 7.0
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

HYP2F1_TOL = 1e-14
HYP2F1_MAX_TERMS = 4_000_000
_HYP2F1_MAX_CHUNK = 1 << 16


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus held through its complement k'.

    k' is the primary field because the interesting regime is k -> 1, where
    1 - k carries all the information. Build it with one of the classmethods.
    """

    kprime: float
    k: float = field(default=math.nan)
    source_tau: float | None = None

    def __post_init__(self):
        if not (0.0 < self.kprime <= 1.0):
            raise InvalidModulus(f"complementary modulus must lie in (0, 1], got {self.kprime!r}")
        if math.isnan(self.k):
            object.__setattr__(self, "k", math.sqrt((1.0 - self.kprime) * (1.0 + self.kprime)))
        if abs(self.k * self.k + self.kprime * self.kprime - 1.0) > 8 * EPS:
            raise InvalidModulus(f"k={self.k!r} and k'={self.kprime!r} are not complementary")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        """Modulus from k in [0, 1)."""
        if not (0.0 <= k < 1.0):
            raise InvalidModulus(f"modulus must lie in [0, 1), got {k!r}")
        return cls(kprime=math.sqrt((1.0 - k) * (1.0 + k)), k=float(k))

    @classmethod
    def from_kprime(cls, kprime: float) -> "Modulus":
        """Modulus from its complement k' in (0, 1]."""
        return cls(kprime=float(kprime))

    @classmethod
    def from_tau(cls, tau: float) -> "Modulus":
        """Modulus with k = 1 - exp(-tau), 0 <= tau <= TAU_MAX (about 708.4).

        k'^2 = e^{-tau} (2 - e^{-tau}) is formed directly, never as 1 - k^2.
        Beyond TAU_MAX e^{-tau} leaves the normal float range and underflows to 0
        soon after.
        """
        if not (tau >= 0.0 and math.isfinite(tau)):
            raise InvalidModulus(f"tau must be a finite number >= 0, got {tau!r}")
        if tau > TAU_MAX:
            raise InvalidModulus(
                f"tau={tau!r} exceeds {TAU_MAX:.6g}: 1 - k = e^-tau underflows double precision"
            )
        e = math.exp(-tau)
        return cls(kprime=math.sqrt(e * (2.0 - e)), k=-math.expm1(-tau), source_tau=float(tau))

    @property
    def tau(self) -> float:
        """tau with k = 1 - exp(-tau)."""
        if self.source_tau is not None:
            return self.source_tau
        # 1 - k = k'^2 / (1 + k)
        return -math.log(self.kprime * self.kprime / (1.0 + self.k))


def _agm(m: Modulus) -> tuple[float, float]:
    """Run the AGM on (1, k'); return K and the companion sum for E."""
    a, b, c = 1.0, m.kprime, m.k
    power = 0.5
    total = power * c * c

    for _ in range(AGM_MAX_ITER):
        if abs(c) <= EPS * a:
            return math.pi / (2.0 * a), total
        a_next = 0.5 * (a + b)
        b = math.sqrt(a * b)
        c = c * c / (4.0 * a_next)
        a = a_next
        power *= 2.0
        total += power * c * c

    raise NonConvergence(f"AGM did not converge for k'={m.kprime!r}")


def ellip_K(m: Modulus) -> float:
    """Complete elliptic integral of the first kind K(k)."""
    return _agm(m)[0]


def ellip_E(m: Modulus) -> float:
    """Complete elliptic integral of the second kind E(k)."""
    big_k, total = _agm(m)
    return big_k * (1.0 - total)


def jacobi_sn_cn_dn(t: float, m: Modulus) -> tuple[float, float, float]:
    """Jacobi sn, cn, dn at real argument t by the descending Landen (AGM phase) method.

    dn is returned as sqrt(k'^2 + k^2 cn^2), which is positive for real t and
    avoids the 0/0 of the phase-difference formula at t = K.
    """
    k = m.k
    if k <= EPS:
        s, c = math.sin(t), math.cos(t)
        return s, c, math.sqrt(1.0 - k * k * s * s)

    a_seq = [1.0]
    c_seq = [k]
    b = m.kprime
    while abs(c_seq[-1]) > EPS * a_seq[-1]:
        if len(a_seq) > AGM_MAX_ITER:
            raise NonConvergence(f"Landen descent did not converge for k'={m.kprime!r}")
        a = a_seq[-1]
        a_next = 0.5 * (a + b)
        b = math.sqrt(a * b)
        c_seq.append(c_seq[-1] ** 2 / (4.0 * a_next))
        a_seq.append(a_next)

    n = len(a_seq) - 1
    phi = math.ldexp(a_seq[n] * t, n)
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c_seq[j] / a_seq[j] * math.sin(phi)))

    sn, cn = math.sin(phi), math.cos(phi)
    dn = math.sqrt(m.kprime * m.kprime + (k * cn) ** 2)
    return sn, cn, dn


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def complex_gamma(z: complex) -> complex:
    """Gamma function for complex argument.

    Lanczos approximation on Re z >= 1/2 and the reflection formula
    Gamma(z) Gamma(1 - z) = pi / sin(pi z) elsewhere.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {z.real:g}")

    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))

    z -= 1.0
    series = LANCZOS_COEF[0]
    for i, coef in enumerate(LANCZOS_COEF[1:], start=1):
        series += coef / (z + i)
    t = z + LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * series


def _terms_needed(x: float, tol: float) -> float:
    """Rough term count for x^n / (1 - x) to drop below tol."""
    if x <= 0.0:
        return 1.0
    return math.log(tol * (1.0 - x)) / math.log(x)


def gauss_2f1(
    a: complex,
    b: complex,
    c: complex,
    x: float,
    tol: float = HYP2F1_TOL,
    max_terms: int = HYP2F1_MAX_TERMS,
) -> complex:
    """Gauss hypergeometric series F(a, b; c; x) for 0 <= x < 1.

    Terms are generated in chunks with a cumulative product of term ratios.
    Summation stops once the geometric tail estimate |T_n| rho / (1 - rho),
    rho = max(|T_{n+1}/T_n|, x), falls below tol (absolute, scaled by |F| when
    |F| > 1). Near x = 1 the tail decays like x^n, so about
    ln(tol (1 - x)) / ln x terms are needed; inputs that would exceed max_terms
    are refused up front.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpositive_integer(c):
        raise PoleAtNonpositiveInteger(f"F(a, b; c; x) undefined for c = {c.real:g}")
    if not (0.0 <= x < 1.0):
        raise SeriesDivergence(f"series requires 0 <= x < 1, got x={x!r}")
    if x == 0.0:
        return 1.0 + 0.0j

    needed = _terms_needed(x, tol)
    if needed > max_terms:
        raise SeriesDivergence(
            f"x={x!r} needs about {needed:.3g} terms for tol={tol:g}, cap is {max_terms}"
        )

    # ratios settle towards x only once n exceeds the parameter sizes
    n_settled = abs(a) + abs(b) + abs(c) + 1.0

    total = 1.0 + 0.0j
    last = 1.0 + 0.0j
    n = 0
    chunk = 64
    while n < max_terms:
        idx = np.arange(n, n + chunk, dtype=float)
        ratios = (a + idx) * (b + idx) / ((c + idx) * (idx + 1.0)) * x
        terms = last * np.cumprod(ratios)

        rho = np.maximum(np.abs(ratios), x)
        with np.errstate(divide="ignore", invalid="ignore"):
            tails = np.where(rho < 1.0, np.abs(terms) * rho / (1.0 - rho), np.inf)
        tails[idx + 1.0 < n_settled] = np.inf
        done = np.flatnonzero((tails <= tol * max(1.0, abs(total))) | (terms == 0))

        if done.size:
            stop = int(done[0]) + 1
            total += complex(terms[:stop].sum())
            logger.debug("2F1 x=%.17g summed %d terms", x, n + stop)
            return total

        total += complex(terms.sum())
        last = complex(terms[-1])
        n += chunk
        chunk = min(2 * chunk, _HYP2F1_MAX_CHUNK)

    raise SeriesDivergence(f"2F1 series at x={x!r} did not reach tol={tol:g} in {max_terms} terms")
