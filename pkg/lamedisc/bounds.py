"""A priori bounds for the canonical solutions of Lame's equation.

The constants C1, C1', C2, C2' bound |y1|, |y1'|, |y2|, |y2'| on [s, K] for any
starting point s in [0, K]; with k = 1 they hold on the whole half line.
They feed the comparison bounds in legendre_limit and lame_core.
"""

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

from lamedisc.errors import PreconditionViolated
from lamedisc.special_functions import Modulus, ellip_E, ellip_K

Direction = Literal["nondecreasing", "nonincreasing"]
Quantity = Literal["y1", "y2p"]


@dataclass(frozen=True)
class BoundConstants:
    """H = sqrt(h - nu(nu+1) k^2) and the four solution bounds."""

    H: float
    C1: float
    C1p: float
    C2: float
    C2p: float


class Envelope(NamedTuple):
    """Sup-norm bounds for y1, y1', y2, y2'."""

    y1: float
    y1p: float
    y2: float
    y2p: float


def one_minus_tanh(x: float) -> float:
    """1 - tanh x without cancellation for large x >= 0."""
    e = math.exp(-2.0 * x)
    return 2.0 * e / (1.0 + e)


def elliptic_gap(m: Modulus) -> float:
    """E(k) - tanh K(k), the integrated gap between tanh^2 and k^2 sn^2 on [0, K]."""
    return (ellip_E(m) - 1.0) + one_minus_tanh(ellip_K(m))


def discriminant_gap(m: Modulus) -> float:
    """E(k) + 1 - 2 tanh K(k)."""
    return (ellip_E(m) - 1.0) + 2.0 * one_minus_tanh(ellip_K(m))


def bound_constants(h: float, nu: float, m: Modulus | None = None) -> BoundConstants:
    """Solution bounds for q(t) = h - nu(nu+1) k^2 sn^2(t, k).

    Args:
        h: Spectral parameter, h > 0.
        nu: Degree; nu = 0 uses the nu >= 0 column, where both columns agree.
        m: Modulus, or None for the k = 1 (tanh^2) limit.

    Raises:
        PreconditionViolated: h <= 0 or h <= nu(nu+1) k^2.
    """
    k2 = 1.0 if m is None else m.k * m.k
    if h <= 0.0:
        raise PreconditionViolated(f"bounds require h > 0, got h={h}")
    big_h2 = h - nu * (nu + 1.0) * k2
    if big_h2 <= 0.0:
        raise PreconditionViolated(
            f"bounds require h > nu(nu+1)k^2, got h={h}, nu(nu+1)k^2={h - big_h2:.12g}"
        )

    big_h = math.sqrt(big_h2)
    root_h = math.sqrt(h)
    if nu < 0.0:
        return BoundConstants(H=big_h, C1=1.0, C1p=big_h, C2=1.0 / root_h, C2p=big_h / root_h)
    return BoundConstants(H=big_h, C1=root_h / big_h, C1p=root_h, C2=1.0 / big_h, C2p=1.0)


def theorem1_bound(h: float, nu: float, m: Modulus, which: Quantity) -> float:
    """Bound on |y(K; k) - y(K; 1)| for y1 or y2' started at 0.

    The constants are formed with k = 1.

    Raises:
        PreconditionViolated: h <= 0 or h <= nu(nu+1).
    """
    if h <= nu * (nu + 1.0):
        raise PreconditionViolated(f"comparison with k = 1 needs h > nu(nu+1), got h={h}")
    c = bound_constants(h, nu, None)
    factor = {"y1": c.C1 * c.C2, "y2p": c.C2 * c.C2p}.get(which)
    if factor is None:
        raise PreconditionViolated(f"which must be 'y1' or 'y2p', got {which!r}")
    return factor * abs(nu) * (nu + 1.0) * elliptic_gap(m)


def lemma2_envelope(q_min: float, q_max: float, direction: Direction) -> Envelope:
    """Sup-norm envelopes for the canonical solutions with a positive monotone q.

    Args:
        q_min: min of q on the interval (m), > 0.
        q_max: max of q on the interval (M), >= q_min.
        direction: Whether q is nondecreasing or nonincreasing.
    """
    if q_min <= 0.0:
        raise PreconditionViolated(f"envelope needs q_min > 0, got {q_min}")
    if q_max < q_min:
        raise PreconditionViolated(f"q_max={q_max} is below q_min={q_min}")

    ratio = math.sqrt(q_max / q_min)
    if direction == "nondecreasing":
        return Envelope(1.0, math.sqrt(q_max), 1.0 / math.sqrt(q_min), ratio)
    if direction == "nonincreasing":
        return Envelope(ratio, math.sqrt(q_max), 1.0 / math.sqrt(q_min), 1.0)
    raise PreconditionViolated(f"unknown direction {direction!r}")
