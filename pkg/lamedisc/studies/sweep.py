"""Parameter sweeps along k = 1 - e^{-tau} and their CSV files."""

import csv
import io
import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from functools import partial
from pathlib import Path

import numpy as np

from lamedisc.errors import LameDiscError, OmegaUndefined, PreconditionViolated
from lamedisc.lame_core import (
    AsymptoticConstants,
    LameParams,
    Verdict,
    approx_discriminant,
    classify,
    error_bound,
    omega_of,
)
from lamedisc.ode_floquet import IntegrationConfig
from lamedisc.special_functions import Modulus, ellip_E, ellip_K

logger = logging.getLogger(__name__)

CSV_FIELDS = ("tau", "k", "kprime", "K", "E", "omega", "D", "approx", "bound", "verdict")

# Key set of the single-point JSON report
POINT_KEYS = ("h", "nu", *CSV_FIELDS, "amplitude", "phase")


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep; None marks a value that could not be computed."""

    tau: float
    k: float
    kprime: float
    K: float
    E: float
    omega: float | None
    D: float | None
    approx: float | None
    bound: float | None
    verdict: Verdict


def format_number(value: float | None) -> str:
    """15 significant digits, locale independent; empty for None."""
    return "" if value is None else format(value, ".15g")


def _parse_number(text: str) -> float | None:
    return float(text) if text != "" else None


def row_to_record(row: SweepRow) -> dict[str, float | str | None]:
    """Row as plain values, numbers rounded to the 15 digits written to disk."""
    record: dict[str, float | str | None] = {}
    for f in fields(SweepRow):
        value = getattr(row, f.name)
        if f.name == "verdict":
            record[f.name] = str(value)
        else:
            record[f.name] = _parse_number(format_number(value))
    return record


def point_record(
    h: float, nu: float, row: SweepRow, constants: AsymptoticConstants
) -> dict[str, float | str | None]:
    """Single-point report as a flat mapping with exactly POINT_KEYS, in that order."""
    record = row_to_record(row)
    record.update(
        h=_parse_number(format_number(h)),
        nu=_parse_number(format_number(nu)),
        amplitude=_parse_number(format_number(constants.amplitude)),
        phase=_parse_number(format_number(constants.phase)),
    )
    return {key: record[key] for key in POINT_KEYS}


def compute_row(
    h: float, nu: float, m: Modulus, cfg: IntegrationConfig | None = None
) -> SweepRow:
    """Classify one modulus. Integration failures give an empty D and Undetermined."""
    p = LameParams(h, nu, m)

    try:
        omega = omega_of(p.h, p.nu)
    except OmegaUndefined:
        omega = None

    try:
        report = classify(p, cfg)
        d_value, approx, bound, verdict = report.D, report.approx, report.bound, report.verdict
    except LameDiscError as e:
        logger.warning("tau=%.6g: discriminant failed: %s", m.tau, e)
        d_value, verdict = None, Verdict.UNDETERMINED
        try:
            approx, bound = approx_discriminant(p), error_bound(p)
        except PreconditionViolated:
            approx = bound = None

    return SweepRow(
        tau=m.tau,
        k=m.k,
        kprime=m.kprime,
        K=ellip_K(m),
        E=ellip_E(m),
        omega=omega,
        D=d_value,
        approx=approx,
        bound=bound,
        verdict=verdict,
    )


def _row_at_tau(tau: float, h: float, nu: float, cfg: IntegrationConfig | None) -> SweepRow:
    return compute_row(h, nu, Modulus.from_tau(float(tau)), cfg)


def run_sweep(
    h: float,
    nu: float,
    tau_min: float,
    tau_max: float,
    steps: int,
    cfg: IntegrationConfig | None = None,
    workers: int = 1,
    on_row: Callable[[SweepRow], None] | None = None,
) -> list[SweepRow]:
    """Rows on an evenly spaced tau grid, returned in tau order.

    Args:
        workers: Process count; rows are computed in-process when 1.
        on_row: Called after each row, e.g. to advance a progress bar.
    """
    if not tau_min < tau_max:
        raise PreconditionViolated(f"need tau_min < tau_max, got {tau_min} >= {tau_max}")
    if steps < 2:
        raise PreconditionViolated(f"need at least 2 steps, got {steps}")

    taus = np.linspace(tau_min, tau_max, steps)
    job = partial(_row_at_tau, h=h, nu=nu, cfg=cfg)

    rows: list[SweepRow] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for row in executor.map(job, taus):
                rows.append(row)
                if on_row:
                    on_row(row)
    else:
        for tau in taus:
            row = job(tau)
            rows.append(row)
            if on_row:
                on_row(row)

    logger.info("sweep h=%g nu=%g: %d rows", h, nu, len(rows))
    return rows


def _write_rows(rows: Iterable[SweepRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        values = asdict(row)
        writer.writerow(
            [str(values[name]) if name == "verdict" else format_number(values[name])
             for name in CSV_FIELDS]
        )


def sweep_csv_text(rows: Iterable[SweepRow]) -> str:
    buffer = io.StringIO()
    _write_rows(rows, buffer)
    return buffer.getvalue()


def write_sweep_csv(rows: Iterable[SweepRow], path: Path) -> None:
    """Write rows as UTF-8 CSV with LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        _write_rows(rows, f)


def _read_rows(stream) -> list[SweepRow]:
    rows = []
    for record in csv.DictReader(stream):
        rows.append(
            SweepRow(
                tau=float(record["tau"]),
                k=float(record["k"]),
                kprime=float(record["kprime"]),
                K=float(record["K"]),
                E=float(record["E"]),
                omega=_parse_number(record["omega"]),
                D=_parse_number(record["D"]),
                approx=_parse_number(record["approx"]),
                bound=_parse_number(record["bound"]),
                verdict=Verdict(record["verdict"]),
            )
        )
    return rows


def parse_sweep_csv(text: str) -> list[SweepRow]:
    """Inverse of sweep_csv_text."""
    return _read_rows(io.StringIO(text, newline=""))


def read_sweep_csv(path: Path) -> list[SweepRow]:
    """Parse a file written by write_sweep_csv."""
    with open(path, encoding="utf-8", newline="") as f:
        return _read_rows(f)
