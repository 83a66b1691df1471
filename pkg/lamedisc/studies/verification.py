"""Invariant suite: every quantitative inclusion the library promises, checked numerically.

Each property reports its worst margin (allowed minus observed; negative means
violated) and where that worst case occurred.
"""

import cmath
import json
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from lamedisc.bounds import bound_constants, lemma2_envelope, theorem1_bound
from lamedisc.errors import LameDiscError
from lamedisc.lame_core import (
    LameParams,
    Verdict,
    approx_discriminant,
    asymptotic_constants,
    b_product_form,
    classify,
    discriminant,
    error_bound,
    monodromy,
    q_lame,
)
from lamedisc.legendre_limit import (
    connection_constants,
    theorem2_bound,
    w1,
    w1_prime,
    w2,
    w2_prime,
    z_osc,
    z_osc_prime,
)
from lamedisc.ode_floquet import FundamentalMatrix, IntegrationConfig, trajectory
from lamedisc.special_functions import (
    Modulus,
    complex_gamma,
    ellip_E,
    ellip_K,
    jacobi_sn_cn_dn,
)
from lamedisc.studies.sweep import (
    CSV_FIELDS,
    POINT_KEYS,
    compute_row,
    format_number,
    parse_sweep_csv,
    point_record,
    run_sweep,
    sweep_csv_text,
)

logger = logging.getLogger(__name__)

# Slack added to analytic bounds that vanish identically (nu = 0).
NUMERIC_SLACK = 1e-8
WRONSKIAN_TOL = 1e-9
# Step of the finite differences on the k = 1 solutions
FD_STEP = 1e-5

NU_GRID = (0.0, 0.25, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst_margin: float
    detail: str


@dataclass
class SuiteContext:
    """Shared state of one suite run."""

    rng: np.random.Generator
    grid_density: int
    cfg: IntegrationConfig
    drifts: list[float] = field(default_factory=list)

    def monodromy(self, p: LameParams) -> FundamentalMatrix:
        """Half-period fundamental matrix, recording its Wronskian drift."""
        fm = monodromy(p, self.cfg)
        self.drifts.append(fm.wronskian_drift)
        return fm

    def classify(self, p: LameParams):
        report = classify(p, self.cfg)
        self.drifts.append(report.wronskian_drift)
        return report

    @property
    def j_values(self) -> tuple[int, ...]:
        return tuple(range(1, 11)) if self.grid_density >= 2 else (1, 4, 7, 10)

    @property
    def tau_values(self) -> tuple[float, ...]:
        if self.grid_density >= 2:
            return tuple(float(t) for t in range(1, 9))
        return (1.0, 3.0, 5.0, 8.0)


class Margin:
    """Running minimum of allowed - observed."""

    def __init__(self):
        self.worst = math.inf
        self.where = "no checks"

    def check(self, allowed: float, observed: float, where: str) -> None:
        margin = allowed - observed
        if not math.isfinite(margin):
            margin = -math.inf
        if margin < self.worst:
            self.worst = margin
            self.where = f"{where}: observed {observed:.3g}, allowed {allowed:.3g}"

    def require(self, condition: bool, where: str) -> None:
        if not condition and self.worst > -1.0:
            self.worst = -1.0
            self.where = where


def _discriminant_row(d_value: float, p: LameParams) -> str:
    return f"h={p.h:g} nu={p.nu:g} tau={p.m.tau:g} D={d_value:.12g}"


def worked_example(ctx: SuiteContext, out: Margin) -> None:
    p = LameParams.from_tau(6.0, 0.5, 5.0)
    report = ctx.classify(p)
    out.check(5e-7, abs(p.m.k - 0.993262), "k at tau=5")
    out.check(5e-6, abs(report.approx + 1.274528), "approx at tau=5")
    out.check(5e-6, abs(report.bound - 0.066641), "bound at tau=5")
    out.require(report.verdict is Verdict.PROVABLY_STABLE, f"verdict {report.verdict}")


def discriminant_inclusion(ctx: SuiteContext, out: Margin) -> None:
    for nu in NU_GRID:
        for j in ctx.j_values:
            for tau in ctx.tau_values:
                p = LameParams.from_tau(nu * (nu + 1.0) + j, nu, tau)
                report = ctx.classify(p)
                out.check(
                    report.bound + NUMERIC_SLACK,
                    abs(report.D - report.approx),
                    _discriminant_row(report.D, p),
                )


def constant_coefficient_case(ctx: SuiteContext, out: Margin) -> None:
    for h in (1.0, 2.0, 4.0, 9.0):
        for tau in (1.0, 3.0, 5.0):
            p = LameParams.from_tau(h, 0.0, tau)
            fm = ctx.monodromy(p)
            d_value = 2.0 * (2.0 * fm.y1 * fm.y2p - 1.0)
            exact = 2.0 * math.cos(2.0 * math.sqrt(h) * ellip_K(p.m))
            out.check(1e-8, abs(d_value - exact), _discriminant_row(d_value, p))
            out.check(0.0, error_bound(p), f"bound at h={h:g} tau={tau:g}")


def wronskian_conservation(ctx: SuiteContext, out: Margin) -> None:
    """Checks every half-period matrix integrated by the properties before it."""
    out.require(bool(ctx.drifts), "no integrations recorded")
    for i, drift in enumerate(ctx.drifts):
        out.check(WRONSKIAN_TOL, drift, f"integration #{i}")


def sweep_tightening(ctx: SuiteContext, out: Margin) -> None:
    steps = 151 if ctx.grid_density >= 2 else 31
    rows = run_sweep(6.0, 0.5, 0.5, 8.0, steps, ctx.cfg)
    for row in rows:
        if row.tau < 3.0:
            continue
        if row.D is None or row.bound is None:
            out.require(False, f"row at tau={row.tau:g} has no discriminant")
            continue
        out.check(row.bound + NUMERIC_SLACK, abs(row.D - row.approx), f"sweep tau={row.tau:.4g}")

    bounds = [error_bound(LameParams.from_tau(6.0, 0.5, tau)) for tau in (3.0, 5.0, 8.0)]
    out.check(bounds[0], bounds[1], "bound(5) < bound(3)")
    out.check(bounds[1], bounds[2], "bound(8) < bound(5)")
    out.require(bounds[0] > bounds[1] > bounds[2], "bound not strictly decreasing")


def connection_identities(ctx: SuiteContext, out: Margin) -> None:
    for h, nu in ((6.0, 0.5), (10.0, 1.0)):
        c = connection_constants(h, nu)
        big_b = asymptotic_constants(h, nu).B
        ratio = math.sin(nu * math.pi) / math.sinh(c.omega * math.pi)
        where = f"h={h:g} nu={nu:g}"
        cross = c.omega * c.A1 * c.A2.conjugate()
        out.check(1e-10, abs(cross + ratio - 1j), f"A1 conj(A2), {where}")
        out.check(1e-10, abs(1j * c.omega * c.A1 * c.A2 - big_b), f"B from A1 A2, {where}")
        out.check(1e-10, abs(abs(big_b) ** 2 - 1.0 - ratio**2), f"|B|^2, {where}")

    for nu in NU_GRID:
        for j in ctx.j_values:
            h = nu * (nu + 1.0) + j
            consts = asymptotic_constants(h, nu)
            ratio = math.sin(nu * math.pi) / math.sinh(consts.omega * math.pi)
            deviation = abs(abs(consts.B) ** 2 - 1.0 - ratio**2)
            out.check(1e-10, deviation, f"|B|^2, h={h:g} nu={nu:g}")

    for n in (1, 2, 3):
        h = n * (n + 1.0) + 4.0
        consts = asymptotic_constants(h, float(n))
        out.check(1e-12, abs(abs(consts.B) - 1.0), f"|B| at nu={n}")
        out.check(1e-12, abs(consts.B - b_product_form(consts.omega, n)), f"product form nu={n}")
        if n == 1:
            mu = 1j * consts.omega
            out.check(1e-12, abs(consts.B - (mu - 1.0) / (mu + 1.0)), "B at nu=1")


def polar_form(ctx: SuiteContext, out: Margin) -> None:
    for nu in NU_GRID:
        for tau in ctx.tau_values:
            p = LameParams.from_tau(nu * (nu + 1.0) + 3.0, nu, tau)
            consts = asymptotic_constants(p.h, p.nu)
            polar = consts.amplitude * math.cos(2.0 * consts.omega * ellip_K(p.m) + consts.phase)
            out.check(1e-12, abs(approx_discriminant(p) - polar), f"nu={nu:g} tau={tau:g}")


def degree_reflection(ctx: SuiteContext, out: Margin) -> None:
    for nu in (0.25, 1.0):
        a = ctx.classify(LameParams.from_tau(4.0, nu, 3.0))
        b = ctx.classify(LameParams.from_tau(4.0, -1.0 - nu, 3.0))
        out.require(a == b, f"reports differ for nu={nu:g} and {-1.0 - nu:g}")


def self_convergence(ctx: SuiteContext, out: Margin) -> None:
    p = LameParams.from_tau(6.0, 0.5, 5.0)
    coarse_cfg = IntegrationConfig(ctx.cfg.rel_tol * 1e3, ctx.cfg.abs_tol * 1e3, ctx.cfg.max_steps)
    fine_cfg = IntegrationConfig(ctx.cfg.rel_tol * 5e2, ctx.cfg.abs_tol * 5e2, ctx.cfg.max_steps)
    d_coarse = discriminant(p, coarse_cfg)
    d_fine = discriminant(p, fine_cfg)
    out.check(coarse_cfg.rel_tol, abs(d_coarse - d_fine), "halving rel_tol")


def _forward_slope(f: Callable[[float], float], d: float) -> float:
    """Second-order one-sided difference at t = 0."""
    return (-3.0 * f(0.0) + 4.0 * f(d) - f(2.0 * d)) / (2.0 * d)


def legendre_initial_data(ctx: SuiteContext, out: Margin) -> None:
    h, nu = 6.0, 0.5
    d = FD_STEP
    out.check(1e-12, abs(w1(0.0, h, nu) - 1.0), "w1(0)")
    out.check(1e-12, abs(w2(0.0, h, nu)), "w2(0)")
    out.check(1e-8, abs(_forward_slope(lambda t: w1(t, h, nu), d)), "w1'(0) by differences")
    out.check(1e-8, abs(_forward_slope(lambda t: w2(t, h, nu), d) - 1.0), "w2'(0) by differences")
    out.check(1e-12, abs(w1_prime(0.0, h, nu)), "w1'(0)")
    out.check(1e-12, abs(w2_prime(0.0, h, nu) - 1.0), "w2'(0)")


def legendre_ode_residual(ctx: SuiteContext, out: Margin) -> None:
    h, nu = 6.0, 0.5
    d = FD_STEP
    branches = (("w1", w1, w1_prime), ("w2", w2, w2_prime))
    for t in np.linspace(0.0, 5.0, 21):
        t = float(t)
        q = h - nu * (nu + 1.0) * math.tanh(t) ** 2
        for name, f, fp in branches:
            if t < d:
                second = _forward_slope(lambda s: fp(s, h, nu), d)
            else:
                second = (fp(t + d, h, nu) - fp(t - d, h, nu)) / (2.0 * d)
            out.check(1e-8, abs(second + q * f(t, h, nu)), f"{name}'' + q {name} at t={t:g}")


def legendre_asymptotics(ctx: SuiteContext, out: Margin) -> None:
    h, nu = 6.0, 0.5
    c = connection_constants(h, nu)
    for t in np.arange(0.5, 5.01, 0.5):
        t = float(t)
        out.check(
            theorem2_bound(t, h, nu, "w1"),
            abs(w1(t, h, nu) - z_osc(t, c, 1)),
            f"w1 at t={t:g}",
        )
        out.check(
            theorem2_bound(t, h, nu, "w2p"),
            abs(w2_prime(t, h, nu) - z_osc_prime(t, c, 2)),
            f"w2' at t={t:g}",
        )
    out.check(
        abs(w1(2.0, h, nu) - z_osc(2.0, c, 1)),
        abs(w1(6.0, h, nu) - z_osc(6.0, c, 1)),
        "decay from t=2 to t=6",
    )


def legendre_comparison(ctx: SuiteContext, out: Margin) -> None:
    for nu in NU_GRID:
        for j in ctx.j_values:
            h = nu * (nu + 1.0) + j
            for tau in (3.0, 5.0, 8.0):
                p = LameParams.from_tau(h, nu, tau)
                fm = ctx.monodromy(p)
                big_k = ellip_K(p.m)
                where = f"h={h:g} nu={nu:g} tau={tau:g}"
                out.check(
                    theorem1_bound(h, nu, p.m, "y1") + NUMERIC_SLACK,
                    abs(fm.y1 - w1(big_k, h, nu)),
                    f"y1, {where}",
                )
                out.check(
                    theorem1_bound(h, nu, p.m, "y2p") + NUMERIC_SLACK,
                    abs(fm.y2p - w2_prime(big_k, h, nu)),
                    f"y2', {where}",
                )


def elementary_inequalities(ctx: SuiteContext, out: Margin) -> None:
    for k in (0.5, 0.9, 0.99):
        m = Modulus.from_k(k)
        for t in np.linspace(0.0, ellip_K(m), 41):
            sn = jacobi_sn_cn_dn(float(t), m)[0]
            th = math.tanh(t)
            out.check(1e-14, k * sn - th, f"k sn <= tanh, k={k:g} t={t:.4g}")
            out.check(1e-14, th - sn, f"tanh <= sn, k={k:g} t={t:.4g}")

    for kprime in (1e-6, 1e-3, 0.1, 0.5, 0.999):
        m = Modulus.from_kprime(kprime)
        big_k, big_e = ellip_K(m), ellip_E(m)
        out.check(kprime**2 * big_k, big_e - math.tanh(big_k), f"E - tanh K, k'={kprime:g}")
        out.check(math.pi / 2.0 - math.log(kprime), big_k, f"K, k'={kprime:g}")

    for kprime in np.geomspace(1e-6, 1e-2, 9):
        m = Modulus.from_kprime(float(kprime))
        out.check(
            10.0 * kprime**2 * abs(math.log(kprime)),
            abs(ellip_K(m) - math.log(4.0 / kprime)),
            f"K asymptote, k'={kprime:.3g}",
        )


def _sup_norms(path: np.ndarray) -> np.ndarray:
    return np.max(np.abs(path[:, 1:]), axis=0)


def monotone_envelope(ctx: SuiteContext, out: Margin) -> None:
    cases = (
        (lambda t: 1.0 + t, 1.0, 2.0, "nondecreasing"),
        (lambda t: 2.0 - t, 1.0, 2.0, "nonincreasing"),
    )
    for q, q_min, q_max, direction in cases:
        norms = _sup_norms(trajectory(q, 0.0, 1.0, ctx.cfg))
        envelope = lemma2_envelope(q_min, q_max, direction)
        for name, observed, allowed in zip(envelope._fields, norms, envelope):
            out.check(allowed + NUMERIC_SLACK, float(observed), f"{name}, {direction}")


def solution_bounds(ctx: SuiteContext, out: Margin) -> None:
    for _ in range(5):
        nu = float(ctx.rng.uniform(-0.5, 2.5))
        h = max(nu * (nu + 1.0), 0.0) + float(ctx.rng.uniform(0.5, 10.0))
        p = LameParams.from_tau(h, nu, float(ctx.rng.uniform(0.5, 6.0)))
        big_k = ellip_K(p.m)
        s = float(ctx.rng.uniform(0.0, 0.99 * big_k))
        norms = _sup_norms(trajectory(lambda t: q_lame(t, p), s, big_k, ctx.cfg))
        consts = bound_constants(p.h, p.nu, p.m)
        allowed = (consts.C1, consts.C1p, consts.C2, consts.C2p)
        where = f"h={h:.4g} nu={p.nu:.4g} tau={p.m.tau:.4g} s={s:.4g}"
        for name, observed, limit in zip(("y1", "y1'", "y2", "y2'"), norms, allowed):
            out.check(limit + NUMERIC_SLACK, float(observed), f"{name}, {where}")


def gamma_identities(ctx: SuiteContext, out: Margin) -> None:
    samples = ctx.rng.uniform(-5.0, 5.0, 24) + 1j * ctx.rng.uniform(-20.0, 20.0, 24)
    for z in samples:
        z = complex(z)
        reflection = complex_gamma(z) * complex_gamma(1.0 - z) * cmath.sin(math.pi * z) / math.pi
        out.check(1e-11, abs(reflection - 1.0), f"reflection at z={z:.4g}")
        doubled = (
            cmath.exp((z - 1.0) * math.log(2.0))
            * complex_gamma(0.5 * z)
            * complex_gamma(0.5 * (z + 1.0))
        )
        target = math.sqrt(math.pi) * complex_gamma(z)
        out.check(1e-11, abs(doubled / target - 1.0), f"duplication at z={z:.4g}")


def jacobi_identities(ctx: SuiteContext, out: Margin) -> None:
    for k in ctx.rng.uniform(0.0, 0.999999, 6):
        m = Modulus.from_k(float(k))
        big_k = ellip_K(m)
        for t in ctx.rng.uniform(-2.0 * big_k, 2.0 * big_k, 8):
            t = float(t)
            sn, cn, dn = jacobi_sn_cn_dn(t, m)
            where = f"k={k:.6g} t={t:.4g}"
            out.check(1e-11, abs(sn * sn + cn * cn - 1.0), f"sn^2 + cn^2, {where}")
            out.check(1e-11, abs(dn * dn + (m.k * sn) ** 2 - 1.0), f"dn^2 + k^2 sn^2, {where}")
            shifted = jacobi_sn_cn_dn(t + 2.0 * big_k, m)[0]
            out.check(1e-10, abs(shifted + sn), f"sn(t + 2K), {where}")


def csv_round_trip(ctx: SuiteContext, out: Margin) -> None:
    rows = run_sweep(6.0, 0.5, 3.0, 8.0, 6, ctx.cfg)
    # no omega: empty omega, approx and bound columns
    rows.append(compute_row(1.0, 2.0, Modulus.from_tau(3.0), ctx.cfg))
    text = sweep_csv_text(rows)
    parsed = parse_sweep_csv(text)
    out.require(len(parsed) == len(rows), f"{len(parsed)} rows parsed, {len(rows)} written")

    for row, back in zip(rows, parsed):
        where = f"tau={row.tau:g}"
        for name in CSV_FIELDS[:-1]:
            value, restored = getattr(row, name), getattr(back, name)
            if value is None or restored is None:
                out.require(value is restored, f"{name} emptiness changed, {where}")
                continue
            out.check(1e-14 * abs(value), abs(restored - value), f"{name}, {where}")
            out.require(
                format_number(restored) == format_number(value), f"{name} digits, {where}"
            )
        out.require(back.verdict is row.verdict, f"verdict, {where}")

    out.require(sweep_csv_text(parsed) == text, "re-emitted CSV differs")


def point_json_schema(ctx: SuiteContext, out: Margin) -> None:
    verdicts = {str(v) for v in Verdict}
    cases = ((6.0, 0.5, Modulus.from_tau(5.0)), (4.0, 0.0, Modulus.from_k(0.5)))
    for h, nu, m in cases:
        where = f"h={h:g} nu={nu:g}"
        row = compute_row(h, nu, m, ctx.cfg)
        text = json.dumps(point_record(h, nu, row, asymptotic_constants(h, nu)))
        out.require("NaN" not in text and "Infinity" not in text, f"non-finite literal, {where}")
        payload = json.loads(text)
        out.require(tuple(payload) == POINT_KEYS, f"key set {tuple(payload)}, {where}")
        for key, value in payload.items():
            if key == "verdict":
                out.require(value in verdicts, f"verdict {value!r}, {where}")
            else:
                out.require(value is None or isinstance(value, float), f"{key}={value!r}, {where}")


PropertyCheck = Callable[[SuiteContext, Margin], None]

# wronskian_conservation covers the integrations of the three properties before it.
PROPERTIES: tuple[tuple[str, PropertyCheck], ...] = (
    ("worked_example", worked_example),
    ("discriminant_inclusion", discriminant_inclusion),
    ("constant_coefficient_case", constant_coefficient_case),
    ("wronskian_conservation", wronskian_conservation),
    ("sweep_tightening", sweep_tightening),
    ("connection_identities", connection_identities),
    ("polar_form", polar_form),
    ("degree_reflection", degree_reflection),
    ("self_convergence", self_convergence),
    ("legendre_initial_data", legendre_initial_data),
    ("legendre_ode_residual", legendre_ode_residual),
    ("legendre_asymptotics", legendre_asymptotics),
    ("legendre_comparison", legendre_comparison),
    ("elementary_inequalities", elementary_inequalities),
    ("monotone_envelope", monotone_envelope),
    ("solution_bounds", solution_bounds),
    ("gamma_identities", gamma_identities),
    ("jacobi_identities", jacobi_identities),
    ("csv_round_trip", csv_round_trip),
    ("point_json_schema", point_json_schema),
)


def run_property(name: str, check: PropertyCheck, ctx: SuiteContext) -> PropertyResult:
    out = Margin()
    try:
        check(ctx, out)
    except LameDiscError as e:
        logger.warning("property %s raised %s: %s", name, type(e).__name__, e)
        return PropertyResult(name, False, -math.inf, f"{type(e).__name__}: {e}")

    passed = out.worst >= 0.0
    logger.info("%s: %s (worst margin %.3g)", name, "pass" if passed else "FAIL", out.worst)
    return PropertyResult(name, passed, out.worst, out.where)


def run_suite(
    seed: int = 0,
    grid_density: int = 1,
    cfg: IntegrationConfig | None = None,
    on_result: Callable[[PropertyResult], None] | None = None,
) -> list[PropertyResult]:
    """Run every property in order.

    Args:
        seed: Seed for the randomly sampled points.
        grid_density: 1 for the reduced grids, 2 or more for the full ones.
        cfg: Integrator settings shared by all properties.
        on_result: Called after each property, e.g. to advance a progress bar.
    """
    ctx = SuiteContext(
        rng=np.random.default_rng(seed),
        grid_density=grid_density,
        cfg=cfg or IntegrationConfig(),
    )
    results = []
    for name, check in PROPERTIES:
        result = run_property(name, check, ctx)
        results.append(result)
        if on_result:
            on_result(result)
    return results
