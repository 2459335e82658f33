"""Sweep tables over (N, M): one row of fidelities and checks per pair.

Output rendering is pinned for byte-stable golden files: '.' decimal
separator, 12 significant digits, real-valued JSON fields emitted as
decimal strings, fixed column order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import estimation, gate, optimality, restricted
from .errors import ValidationError
from .qubit import PureQubit, philox_rng

BASE_COLUMNS = [
    "N",
    "M",
    "fidelity_unot",
    "fidelity_estimation",
    "fidelity_clone",
    "s_not",
    "s_clone",
    "delta_extremal_minus",
    "delta_extremal_plus",
    "separable",
    "real_case_fidelity",
]
MC_COLUMNS = ["delta_estimation_mc", "delta_estimation_mc_stderr"]

DELTA_PROBES = 24  # probe count for the per-row extremal-channel errors


@dataclass(frozen=True)
class SweepConfig:
    n_min: int
    n_max: int
    m_min: int
    m_max: int
    samples: int = 0
    seed: int = 0
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if self.n_min < 1 or self.m_min < 1:
            raise ValidationError("n_min and m_min must be >= 1")
        if self.n_max < self.n_min or self.m_max < self.m_min:
            raise ValidationError("ranges must be nonempty (max >= min)")
        if self.samples < 0:
            raise ValidationError("samples must be >= 0")
        if 0 < self.samples < estimation.MIN_MC_SAMPLES:
            raise ValidationError(
                f"samples must be 0 (analytic only) or >= {estimation.MIN_MC_SAMPLES}"
            )
        if self.n_max + self.m_max + 1 > gate.MAX_GATE_QUBITS:
            raise ValidationError(
                f"n_max + m_max + 1 exceeds the gate bound {gate.MAX_GATE_QUBITS}"
            )
        if self.output_format not in ("csv", "json"):
            raise ValidationError(f"output_format must be csv or json, got {self.output_format!r}")

    @property
    def include_mc(self) -> bool:
        return self.samples > 0

    def columns(self) -> list[str]:
        return BASE_COLUMNS + (MC_COLUMNS if self.include_mc else [])


@dataclass(frozen=True)
class ReportRow:
    n: int
    m: int
    fidelity_unot: float
    fidelity_estimation: float
    fidelity_clone: float
    s_not: float
    s_clone: float
    delta_extremal_minus: float
    delta_extremal_plus: float
    separable: bool
    real_case_fidelity: float
    delta_estimation_mc: float | None = None
    delta_estimation_mc_stderr: float | None = None

    def __post_init__(self):
        for name in ("fidelity_unot", "fidelity_estimation", "fidelity_clone"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValidationError(f"{name} = {v!r} outside [0, 1]")
        if abs(self.fidelity_unot - self.fidelity_estimation) > 1e-10:
            raise ValidationError("gate and estimation fidelities disagree beyond tolerance")

    def as_dict(self) -> dict:
        return {
            "N": self.n,
            "M": self.m,
            "fidelity_unot": self.fidelity_unot,
            "fidelity_estimation": self.fidelity_estimation,
            "fidelity_clone": self.fidelity_clone,
            "s_not": self.s_not,
            "s_clone": self.s_clone,
            "delta_extremal_minus": self.delta_extremal_minus,
            "delta_extremal_plus": self.delta_extremal_plus,
            "separable": self.separable,
            "real_case_fidelity": self.real_case_fidelity,
            "delta_estimation_mc": self.delta_estimation_mc,
            "delta_estimation_mc_stderr": self.delta_estimation_mc_stderr,
        }


def compute_row(n: int, m: int, samples: int, seed: int) -> ReportRow:
    """One sweep row; all randomness derives from (seed, n, m) counters."""
    rng = philox_rng([seed, n, m])
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    psi = PureQubit.from_vector(z / (abs(z[0]) ** 2 + abs(z[1]) ** 2) ** 0.5)
    rep = gate.gate_report(psi, n, m)
    joint = gate.apply_unot(psi, n, m)
    # A single produced qubit has no pair to test; vacuously separable.
    separable = gate.check_pairwise_separability(joint).ppt if m >= 2 else True
    delta_minus = optimality.delta_of_channel(
        optimality.extremal_channel(n, (n - 1) / 2.0), n, n_probes=DELTA_PROBES, seed=[seed, n, m, 1]
    )
    delta_plus = optimality.delta_of_channel(
        optimality.extremal_channel(n, (n + 1) / 2.0), n, n_probes=DELTA_PROBES, seed=[seed, n, m, 2]
    )
    mc_delta = mc_stderr = None
    if samples > 0:
        mc = estimation.classical_unot_montecarlo(psi, n, samples, [seed, n, m, 3])
        mc_delta, mc_stderr = mc.delta, mc.delta_stderr
    return ReportRow(
        n=n,
        m=m,
        fidelity_unot=rep.fidelity_not,
        fidelity_estimation=float(1 - Fraction(1, n + 2)),
        fidelity_clone=rep.fidelity_clone,
        s_not=rep.scaling_not,
        s_clone=rep.scaling_clone,
        delta_extremal_minus=delta_minus,
        delta_extremal_plus=delta_plus,
        separable=separable,
        real_case_fidelity=restricted.real_estimation_fidelity(n),
        delta_estimation_mc=mc_delta,
        delta_estimation_mc_stderr=mc_stderr,
    )


def run_sweep(config: SweepConfig) -> list[ReportRow]:
    """Rows in (N, M) lexicographic order; deterministic for a given config."""
    return [
        compute_row(n, m, config.samples, config.seed)
        for n in range(config.n_min, config.n_max + 1)
        for m in range(config.m_min, config.m_max + 1)
    ]


def format_real(x: float) -> str:
    return format(float(x), ".12g")


def _cell(key: str, value) -> str:
    if key in ("N", "M"):
        return str(int(value))
    if key == "separable":
        return "true" if value else "false"
    return format_real(value)


def render_csv(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        data = row.as_dict() if isinstance(row, ReportRow) else row
        lines.append(",".join(_cell(c, data[c]) for c in columns))
    return "\n".join(lines) + "\n"


def render_json(rows, columns, config_fields: dict | None = None) -> str:
    out_rows = []
    for row in rows:
        data = row.as_dict() if isinstance(row, ReportRow) else row
        entry = {}
        for c in columns:
            if c in ("N", "M"):
                entry[c] = int(data[c])
            elif c == "separable":
                entry[c] = bool(data[c])
            else:
                entry[c] = format_real(data[c])
        out_rows.append(entry)
    doc = {"columns": columns, "rows": out_rows}
    if config_fields is not None:
        doc = {"config": config_fields, **doc}
    return json.dumps(doc, indent=2) + "\n"


def render_sweep(rows, config: SweepConfig) -> str:
    columns = config.columns()
    if config.output_format == "json":
        cfg = {
            "n_min": config.n_min,
            "n_max": config.n_max,
            "m_min": config.m_min,
            "m_max": config.m_max,
            "samples": config.samples,
            "seed": config.seed,
        }
        return render_json(rows, columns, cfg)
    return render_csv(rows, columns)
