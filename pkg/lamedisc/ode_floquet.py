"""Fundamental solutions of u'' + q(t) u = 0.

Both canonical solutions are carried as one first-order system
(y1, y1', y2, y2') so the coefficient q is evaluated once per stage.
The integrator is the Dormand-Prince 5(4) pair with FSAL and PI step control.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from lamedisc.errors import PreconditionViolated, StepLimitExceeded, ToleranceUnachievable

logger = logging.getLogger(__name__)

Coefficient = Callable[[float], float]
State = tuple[float, float, float, float]

EPS = float(np.finfo(float).eps)

# Dormand-Prince 5(4) tableau
DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# difference between the 5th and embedded 4th order weights
DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# PI controller constants
SAFETY = 0.9
FAC_MIN = 0.2
FAC_MAX = 10.0
BETA = 0.04
EXPO1 = 0.2 - 0.75 * BETA


@dataclass(frozen=True)
class IntegrationConfig:
    """Tolerances and step budget for one integration."""

    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_steps: int = 200_000

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise PreconditionViolated(
                f"tolerances must be positive, got rel_tol={self.rel_tol}, abs_tol={self.abs_tol}"
            )
        if self.max_steps < 1:
            raise PreconditionViolated(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class FundamentalMatrix:
    """y1, y1', y2, y2' at the right endpoint.

    Initial data at the left endpoint: y1 = y2' = 1, y1' = y2 = 0.
    """

    y1: float
    y1p: float
    y2: float
    y2p: float

    @property
    def wronskian(self) -> float:
        return self.y1 * self.y2p - self.y1p * self.y2

    @property
    def wronskian_drift(self) -> float:
        return abs(self.wronskian - 1.0)

    @property
    def trace_symmetric(self) -> float:
        """y1 y2' + y1' y2."""
        return self.y1 * self.y2p + self.y1p * self.y2

    def as_tuple(self) -> State:
        return (self.y1, self.y1p, self.y2, self.y2p)


def _rhs(q: Coefficient, t: float, y) -> State:
    qt = q(t)
    return (y[1], -qt * y[0], y[3], -qt * y[2])


def _advance(y, h: float, weights, stages) -> list[float]:
    out = list(y)
    for w, k in zip(weights, stages):
        if w:
            hw = h * w
            out[0] += hw * k[0]
            out[1] += hw * k[1]
            out[2] += hw * k[2]
            out[3] += hw * k[3]
    return out


def _rms(values, scale) -> float:
    return math.sqrt(sum((v / s) ** 2 for v, s in zip(values, scale)) / 4.0)


def _initial_step(q: Coefficient, a: float, b: float, y0, f0, cfg: IntegrationConfig) -> float:
    scale = [cfg.abs_tol + cfg.rel_tol * abs(v) for v in y0]
    d0 = _rms(y0, scale)
    d1 = _rms(f0, scale)
    h0 = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-6
    h0 = min(h0, b - a)

    y1 = _advance(y0, h0, (1.0,), (f0,))
    f1 = _rhs(q, a + h0, y1)
    d2 = _rms([u - v for u, v in zip(f1, f0)], scale) / h0

    big = max(d1, d2)
    h1 = (0.01 / big) ** 0.2 if big > 1e-15 else max(1e-6, 1e-3 * h0)
    return min(100.0 * h0, h1, b - a)


def _integrate(q: Coefficient, a: float, b: float, cfg: IntegrationConfig, record: bool):
    if not (a < b):
        raise PreconditionViolated(f"integration interval needs a < b, got [{a}, {b}]")

    y: list[float] = [1.0, 0.0, 0.0, 1.0]
    k1 = _rhs(q, a, y)
    h = _initial_step(q, a, b, y, k1, cfg)
    t = a

    path = [(t, *y)] if record else None
    accepted = rejected = 0
    fac_old = 1e-4
    last_rejected = False

    while t < b:
        if accepted + rejected >= cfg.max_steps:
            raise StepLimitExceeded(
                f"{cfg.max_steps} steps used at t={t:.6g} of [{a:.6g}, {b:.6g}]"
            )
        if h <= 16.0 * EPS * max(abs(t), abs(b)):
            raise ToleranceUnachievable(
                f"step size {h:.3g} at t={t:.6g} below resolution for rel_tol={cfg.rel_tol:g}"
            )

        last = t + h >= b
        if last:
            h = b - t

        stages = [k1]
        for i in range(1, 7):
            yi = _advance(y, h, DP_A[i], stages)
            stages.append(_rhs(q, t + DP_C[i] * h, yi))
        y_new = yi  # FSAL: the last stage point is the 5th-order solution

        err_vec = [0.0, 0.0, 0.0, 0.0]
        for w, k in zip(DP_E, stages):
            if w:
                for i in range(4):
                    err_vec[i] += h * w * k[i]
        scale = [cfg.abs_tol + cfg.rel_tol * max(abs(u), abs(v)) for u, v in zip(y, y_new)]
        err = _rms(err_vec, scale)

        fac11 = err**EXPO1 if err > 0.0 else 0.0
        if err <= 1.0:
            fac = fac11 / fac_old**BETA
            fac = max(1.0 / FAC_MAX, min(1.0 / FAC_MIN, fac / SAFETY))
            fac_old = max(err, 1e-4)
            t = b if last else t + h
            y = y_new
            k1 = stages[6]
            accepted += 1
            h_new = h / fac
            if last_rejected:
                h_new = min(h_new, h)
            h = h_new
            last_rejected = False
            if record:
                path.append((t, *y))
        else:
            h = h / min(1.0 / FAC_MIN, fac11 / SAFETY)
            rejected += 1
            last_rejected = True

    logger.debug(
        "integrated [%.6g, %.6g]: %d accepted, %d rejected steps", a, b, accepted, rejected
    )

    result = FundamentalMatrix(*y)
    if result.wronskian_drift > 10.0 * cfg.rel_tol:
        logger.warning(
            "Wronskian drift %.3g exceeds 10*rel_tol on [%.6g, %.6g]",
            result.wronskian_drift,
            a,
            b,
        )
    return result, path


def fundamental_matrix(
    q: Coefficient, a: float, b: float, cfg: IntegrationConfig | None = None
) -> FundamentalMatrix:
    """Integrate u'' + q(t) u = 0 from a to b for both canonical solutions.

    Args:
        q: Coefficient function, continuous on [a, b].
        a: Left endpoint, where the canonical initial data are imposed.
        b: Right endpoint, b > a.
        cfg: Tolerances; defaults to IntegrationConfig().

    Raises:
        StepLimitExceeded: max_steps used before reaching b.
        ToleranceUnachievable: step size collapsed to floating-point resolution.
    """
    result, _ = _integrate(q, a, b, cfg or IntegrationConfig(), record=False)
    return result


def trajectory(
    q: Coefficient, a: float, b: float, cfg: IntegrationConfig | None = None
) -> np.ndarray:
    """Same integration as fundamental_matrix, keeping every accepted step.

    Returns:
        Array of shape (n, 5) with columns t, y1, y1', y2, y2'; the first row is
        the initial point a and the last row is b.
    """
    _, path = _integrate(q, a, b, cfg or IntegrationConfig(), record=True)
    return np.asarray(path, dtype=float)
