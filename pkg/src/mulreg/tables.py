"""Tabular outputs as Arrow tables, written as CSV.

Floats are written by Arrow's shortest round-trip formatter, so parsing a CSV
cell gives back the exact float64 that was written.
"""

from __future__ import annotations

import io
import json
from typing import TYPE_CHECKING

import pyarrow as pa
import pyarrow.csv as pacsv

from mulreg.model import RNG_NAME, RNG_VERSION

if TYPE_CHECKING:
    from mulreg.experiments import (
        EstimationCurve,
        F4Report,
        PlotSeries,
        RateFit,
        RiskReport,
        RiskTable,
        TailCurve,
    )
    from mulreg.model import Sample

RISK_SCHEMA = pa.schema(
    [
        pa.field("function_id", pa.string(), nullable=False),
        pa.field("n", pa.int64(), nullable=False),
        pa.field("points", pa.int64()),
        pa.field("adaptive_risk", pa.float64()),
        pa.field("adaptive_se", pa.float64()),
        pa.field("oracle_risk", pa.float64()),
        pa.field("ratio", pa.float64()),
        pa.field("failed", pa.int64()),
        pa.field("fallback_scales", pa.int64()),
    ]
)

PLOT_SCHEMA = pa.schema(
    [
        pa.field("series", pa.string(), nullable=False),
        pa.field("x", pa.float64()),
        pa.field("y", pa.float64()),
    ]
)


def to_csv_bytes(table: pa.Table) -> bytes:
    sink = io.BytesIO()
    pacsv.write_csv(table, sink)
    return sink.getvalue()


def read_csv_bytes(data: bytes) -> pa.Table:
    return pacsv.read_csv(pa.BufferReader(data))


def sample_table(sample: Sample) -> pa.Table:
    columns = {f"x_{j + 1}": pa.array(sample.x[:, j]) for j in range(sample.d)}
    columns["y"] = pa.array(sample.y_values)
    return pa.table(columns)


def sample_sidecar(sample: Sample) -> bytes:
    return json.dumps(
        {
            "function_id": sample.function_id,
            "n": sample.n,
            "d": sample.d,
            "seed": sample.seed,
            "stream": list(sample.stream),
            "noise": sample.noise,
            "rng_name": RNG_NAME,
            "rng_version": RNG_VERSION,
        },
        indent=2,
    ).encode("utf-8")


def risk_table(table: RiskTable) -> pa.Table:
    rows = [row.model_dump() for row in table.rows]
    return pa.Table.from_pylist(rows, schema=RISK_SCHEMA)


def plot_table(series: list[PlotSeries]) -> pa.Table:
    rows = [
        {"series": s.name, "x": x, "y": y}
        for s in series
        for x, y in zip(s.x, s.y, strict=True)
    ]
    return pa.Table.from_pylist(rows, schema=PLOT_SCHEMA)


def report_table(reports: list[RiskReport]) -> pa.Table:
    return pa.table(
        {
            "function_id": [r.function_id for r in reports],
            "estimator": [r.estimator for r in reports],
            "n": pa.array([r.n for r in reports], type=pa.int64()),
            "y": [",".join(repr(v) for v in r.y) for r in reports],
            "reps": pa.array([r.reps for r in reports], type=pa.int64()),
            "risk": pa.array([r.risk for r in reports], type=pa.float64()),
            "standard_error": pa.array([r.standard_error for r in reports], type=pa.float64()),
            "h_oracle": pa.array([r.h_oracle for r in reports], type=pa.float64()),
            "bandwidth_mean": pa.array([r.bandwidth_mean for r in reports], type=pa.float64()),
            "failed": pa.array([r.failed for r in reports], type=pa.int64()),
        }
    )


def candidate_table(report: RiskReport) -> pa.Table:
    candidates = report.candidates or []
    return pa.table(
        {
            "h": pa.array([c.h for c in candidates], type=pa.float64()),
            "risk": pa.array([c.risk for c in candidates], type=pa.float64()),
            "standard_error": pa.array([c.standard_error for c in candidates], type=pa.float64()),
        }
    )


def f4_table(report: F4Report) -> pa.Table:
    return report_table([report.parametric, report.adaptive])


def rate_table(fit: RateFit) -> pa.Table:
    return pa.table(
        {
            "n": pa.array(fit.ns, type=pa.int64()),
            "bayes_risk": pa.array(fit.risks, type=pa.float64()),
            "lse_risk": pa.array(fit.baseline_risks, type=pa.float64()),
            "minimax_rate": pa.array(fit.minimax_rates, type=pa.float64()),
            "adaptive_rate": pa.array(fit.adaptive_rates, type=pa.float64()),
        }
    )


def tail_table(curve: TailCurve) -> pa.Table:
    return pa.table(
        {
            "eps": pa.array(curve.eps, type=pa.float64()),
            "probability": pa.array(curve.probabilities, type=pa.float64()),
        }
    )


def curve_table(curve: EstimationCurve) -> pa.Table:
    return pa.table(
        {
            "y": pa.array([p.y for p in curve.points], type=pa.float64()),
            "truth": pa.array([p.truth for p in curve.points], type=pa.float64()),
            "estimate": pa.array([p.estimate for p in curve.points], type=pa.float64()),
            "h": pa.array([p.h for p in curve.points], type=pa.float64()),
        }
    )
