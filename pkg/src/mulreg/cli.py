"""CLI interface for mulreg.

Commands:
    simulate         Draw one seeded sample and write it as CSV
    estimate         Locally bayesian estimate at a fixed or minimax bandwidth
    adapt            Fully data-driven estimate with its selection trace
    oracle           Monte Carlo risk over candidate bandwidths
    replicate-table  Adaptive risk and oracle/adaptive ratio table
    replicate-f4     Parametric window against the adaptive ladder on f4
    rate             Convergence-rate slopes against the LSE baseline
    tail             Empirical deviation tail with a log-linear fit
    curve            Adaptive estimates across the unit interval for one sample
    replay           Re-run the command recorded in a manifest
    status           Show the manifest of an output directory

Exit codes: 0 success, 2 invalid input or configuration, 3 estimation failure.
"""

from __future__ import annotations

import sys
from collections.abc import Callable
from typing import Annotated, Any

import fsspec
import numpy as np
import structlog
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from mulreg.config import RunConfig, Settings, load_config
from mulreg.errors import ConfigError, EstimationError, InputError
from mulreg.manifest import ManifestManager, RunManifest
from mulreg.storage import StorageBackend

app = typer.Typer(
    name="mulreg",
    help="Locally bayesian estimation under multiplicative uniform noise.",
    no_args_is_help=True,
)
console = Console()
logger = structlog.get_logger()

EXIT_INPUT = 2
EXIT_ESTIMATION = 3

# typer re-exports the parser errors of whichever click it ships; their
# common parent covers bad values, unknown options and missing arguments.
UsageError: type[Exception] = typer.BadParameter.__mro__[1]

Outputs = dict[str, bytes]


def _configure_logging(level: str) -> None:
    import logging

    logging.basicConfig(
        format="%(message)s",
        level=getattr(logging, level.upper(), logging.INFO),
        stream=sys.stderr,
    )
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, level.upper(), logging.INFO)
        ),
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.dev.ConsoleRenderer(),
        ],
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


def _name(cfg: RunConfig, default: str) -> str:
    return cfg.out or default


def _sibling(path: str, suffix: str) -> str:
    stem = path.rsplit(".", 1)[0] if "." in path.rsplit("/", 1)[-1] else path
    return stem + suffix


def _run_simulate(cfg: RunConfig) -> Outputs:
    from mulreg.functions import test_function
    from mulreg.model import make_grid, simulate
    from mulreg.tables import sample_sidecar, sample_table, to_csv_bytes

    sample = simulate(
        test_function(cfg.function_id), make_grid(cfg.d, cfg.n), cfg.seed, noise=cfg.noise
    )
    out = _name(cfg, "sample.csv")
    console.print(f"[bold]Sample:[/bold] {sample.function_id}, n={sample.n}, d={sample.d}")
    return {out: to_csv_bytes(sample_table(sample)), _sibling(out, ".json"): sample_sidecar(sample)}


def _sample_for(cfg: RunConfig) -> Any:
    from mulreg.functions import test_function
    from mulreg.model import make_grid, simulate

    f = test_function(cfg.function_id)
    return f, simulate(f, make_grid(cfg.d, cfg.n), cfg.seed, noise=cfg.noise)


def _run_estimate(cfg: RunConfig) -> Outputs:
    import json

    from mulreg.bayes import minimax_estimate
    from mulreg.experiments import minimax_defaults
    from mulreg.lepski import fixed_bandwidth_estimate
    from mulreg.local_poly import warn_if_outside_validity

    f, sample = _sample_for(cfg)
    y = np.array(cfg.y)
    if cfg.h is not None:
        warn_if_outside_validity(cfg.h, cfg.n, cfg.b, cfg.d)
        est = fixed_bandwidth_estimate(sample, y, cfg.h, cfg.b, cfg.integrator, cfg.h_max)
        estimator, h = "fixed", cfg.h
    elif cfg.beta is not None:
        beta, L, a_low, m_up, h = minimax_defaults(
            f, y, cfg.n, cfg.b, cfg.beta, cfg.lipschitz, cfg.a_low, cfg.m_up
        )
        est = minimax_estimate(sample, y, beta, L, a_low, m_up, cfg.b, cfg.integrator)
        estimator = "minimax"
    else:
        raise ConfigError("estimate needs --h (fixed bandwidth) or --beta (minimax bandwidth)")

    truth = float(f(y[None, :])[0])
    record = {
        "estimator": estimator,
        "function_id": f.id,
        "n": cfg.n,
        "y": list(cfg.y),
        "h": h,
        "f_hat": est.f_hat_y,
        "truth": truth,
        "theta_hat": est.theta_hat.values.tolist(),
        "constrained": est.constrained,
        "iterations": est.iterations,
        "integrator": est.integrator_report.model_dump(),
    }
    console.print(f"f_hat({cfg.y}) = {est.f_hat_y:.6g}  (truth {truth:.6g}, h={h:.4g})")
    return {_name(cfg, "estimate.json"): json.dumps(record, indent=2).encode("utf-8")}


def _run_adapt(cfg: RunConfig) -> Outputs:
    from mulreg.lepski import adaptive_estimate, bandwidth_grid
    from mulreg.local_poly import warn_if_outside_validity

    _, sample = _sample_for(cfg)
    grid = bandwidth_grid(cfg.n, cfg.b, cfg.d, cfg.h_max)
    warn_if_outside_validity(grid.h_max, cfg.n, cfg.b, cfg.d)
    f_hat, trace = adaptive_estimate(
        sample, np.array(cfg.y), cfg.b, cfg.q, cfg.integrator, cfg.mode, cfg.c_thr, cfg.h_max
    )
    console.print(
        f"f*({cfg.y}) = {f_hat:.6g}  k_hat={trace.k_hat}/{len(trace.estimates) - 1} "
        f"h={trace.selected_h:.4g}"
    )
    return {_name(cfg, "trace.json"): trace.model_dump_json(indent=2).encode("utf-8")}


def _run_oracle(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import EstimatorSpec, mc_risk
    from mulreg.tables import candidate_table, to_csv_bytes

    spec = EstimatorSpec(
        kind="oracle",
        b=cfg.b,
        h_max=cfg.h_max,
        h_candidates=cfg.h_candidates,
        integrator=cfg.integrator,
        noise=cfg.noise,
    )
    report = mc_risk(
        spec, cfg.function_id, list(cfg.y), cfg.n, cfg.reps, cfg.seed, cfg.d, cfg.workers
    )
    console.print(
        f"oracle h={report.h_oracle:.4g}  risk={report.risk:.4g} ± {report.standard_error:.2g}"
    )
    out = _name(cfg, "oracle.csv")
    return {
        out: to_csv_bytes(candidate_table(report)),
        _sibling(out, ".json"): report.model_dump_json(indent=2).encode("utf-8"),
    }


def _run_replicate_table(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import replicate_risk_table
    from mulreg.tables import plot_table, risk_table, to_csv_bytes

    table = replicate_risk_table(
        reps=cfg.reps,
        mode=cfg.mode,
        c_thr=cfg.c_thr,
        seed=cfg.seed,
        functions=cfg.functions,
        ns=cfg.ns or (100, 1000),
        n_points=cfg.n_points,
        b=cfg.b,
        q=cfg.q,
        integrator=cfg.integrator,
        workers=cfg.workers,
    )
    view = Table(title="Risk table")
    for column in ("function", "n", "adaptive risk", "± SE", "oracle/adaptive"):
        view.add_column(column)
    for row in table.rows:
        view.add_row(
            row.function_id,
            str(row.n),
            f"{row.adaptive_risk:.4f}",
            f"{row.adaptive_se:.4f}",
            f"{row.ratio:.3f}",
        )
    console.print(view)
    out = _name(cfg, "risk_table.csv")
    return {
        out: to_csv_bytes(risk_table(table)),
        _sibling(out, "_ratio_vs_n.csv"): to_csv_bytes(plot_table(table.ratio_vs_n)),
        _sibling(out, ".json"): table.model_dump_json(indent=2).encode("utf-8"),
    }


def _run_replicate_f4(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import replicate_f4
    from mulreg.tables import f4_table, plot_table, to_csv_bytes

    report = replicate_f4(
        reps=cfg.reps,
        seed=cfg.seed,
        n=cfg.n,
        b=cfg.b,
        q=cfg.q,
        mode=cfg.mode,
        c_thr=cfg.c_thr,
        integrator=cfg.integrator,
        workers=cfg.workers,
    )
    console.print(
        f"parametric risk={report.parametric.risk:.4g}  adaptive risk={report.adaptive.risk:.4g}  "
        f"mean width={report.mean_selected_width:.4g} (radius {report.mean_selected_radius:.4g})"
    )
    out = _name(cfg, "f4.csv")
    return {
        out: to_csv_bytes(f4_table(report)),
        _sibling(out, "_plot.csv"): to_csv_bytes(
            plot_table([report.shape, report.bandwidth_histogram])
        ),
        _sibling(out, ".json"): report.model_dump_json(indent=2).encode("utf-8"),
    }


def _run_rate(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import rate_slope
    from mulreg.functions import test_function
    from mulreg.tables import rate_table, to_csv_bytes

    f = test_function(cfg.function_id)
    beta = cfg.beta_nominal or f.beta_nominal
    if beta is None:
        raise ConfigError(f"{f.id} has no nominal smoothness; pass --beta-nominal")
    fit = rate_slope(
        f,
        beta,
        cfg.ns or (100, 400, 1600),
        cfg.reps,
        cfg.seed,
        y=cfg.y[0],
        d=cfg.d,
        b=cfg.b,
        integrator=cfg.integrator,
        workers=cfg.workers,
    )
    console.print(
        f"bayes slope={fit.slope:.3f} (target {fit.target:.3f})  "
        f"lse slope={fit.baseline_slope:.3f} (target {fit.baseline_target:.3f})"
    )
    out = _name(cfg, "rate.csv")
    return {
        out: to_csv_bytes(rate_table(fit)),
        _sibling(out, ".json"): fit.model_dump_json(indent=2).encode("utf-8"),
    }


def _run_tail(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import tail_decay_check
    from mulreg.tables import tail_table, to_csv_bytes

    if cfg.h is None:
        raise ConfigError("tail needs a fixed bandwidth --h")
    curve = tail_decay_check(
        cfg.function_id,
        cfg.n,
        cfg.h,
        cfg.eps_grid,
        cfg.reps,
        cfg.seed,
        y=cfg.y[0],
        d=cfg.d,
        b=cfg.b,
        integrator=cfg.integrator,
        workers=cfg.workers,
    )
    console.print(f"log-tail slope={curve.slope:.4g}  R^2={curve.r_squared:.3f}")
    out = _name(cfg, "tail.csv")
    return {
        out: to_csv_bytes(tail_table(curve)),
        _sibling(out, ".json"): curve.model_dump_json(indent=2).encode("utf-8"),
    }


def _run_curve(cfg: RunConfig) -> Outputs:
    from mulreg.experiments import estimation_curve
    from mulreg.tables import curve_table, to_csv_bytes

    curve = estimation_curve(
        cfg.function_id,
        cfg.n,
        cfg.seed,
        cfg.n_points,
        cfg.b,
        cfg.q,
        cfg.mode,
        cfg.c_thr,
        cfg.integrator,
    )
    console.print(f"{len(curve.points)} points, {curve.failed} failed")
    return {_name(cfg, "curve.csv"): to_csv_bytes(curve_table(curve))}


RUNNERS: dict[str, Callable[[RunConfig], Outputs]] = {
    "simulate": _run_simulate,
    "estimate": _run_estimate,
    "adapt": _run_adapt,
    "oracle": _run_oracle,
    "replicate-table": _run_replicate_table,
    "replicate-f4": _run_replicate_f4,
    "rate": _run_rate,
    "tail": _run_tail,
    "curve": _run_curve,
}


def _execute(command: str, cfg: RunConfig) -> RunManifest:
    storage = StorageBackend.from_root(cfg.out_dir)
    storage.check_credentials()
    outputs = RUNNERS[command](cfg)
    hashes = {path: storage.write_bytes(path, data) for path, data in outputs.items()}
    manifest = RunManifest(
        command=command,
        config=cfg.model_dump(mode="json"),
        seed=cfg.seed,
        outputs=hashes,
    )
    ManifestManager(storage).save(manifest)
    logger.info("run_finished", command=command, out_dir=cfg.out_dir, outputs=sorted(hashes))
    return manifest


_FLAG_FIELDS = {"fn": "function_id", "candidates": "h_candidates", "eps": "eps_grid"}
_PRESETS: dict[str, dict[str, Any]] = {"replicate-f4": {"function_id": "f4", "n": 1000}}


def _invoke(command: str, params: dict[str, Any]) -> None:
    """Layer settings, presets, the config file and flags, then run ``command``."""
    settings = Settings()
    flags = dict(params)
    config = flags.pop("config", None)
    _configure_logging(flags.pop("log_level", None) or settings.log_level)
    flags = {_FLAG_FIELDS.get(key, key): value for key, value in flags.items()}
    method = flags.pop("method", None)
    if method is not None:
        flags["integrator"] = {"method": method}
    defaults = {
        "out_dir": settings.out_dir,
        "workers": settings.workers,
        "integrator": settings.integrator_defaults(),
        **_PRESETS.get(command, {}),
    }
    cfg = load_config(config, overrides=flags, defaults=defaults)
    _execute(command, cfg)


FnOpt = Annotated[str | None, typer.Option("--fn", help="f1..f4 or constant(c)")]
NOpt = Annotated[int | None, typer.Option("--n", help="Sample size (a perfect d-th power)")]
DOpt = Annotated[int | None, typer.Option("--d", help="Dimension of the design")]
BOpt = Annotated[int | None, typer.Option("--b", help="Local polynomial degree (default 1)")]
QOpt = Annotated[float | None, typer.Option("--q", help="Loss exponent of the threshold")]
YOpt = Annotated[str | None, typer.Option("--y", help="Evaluation point, e.g. 0.5 or 0.3,0.6")]
HOpt = Annotated[float | None, typer.Option("--h", help="Fixed bandwidth (window width)")]
HMaxOpt = Annotated[float | None, typer.Option("--h-max", help="Top of the bandwidth ladder")]
ModeOpt = Annotated[str | None, typer.Option("--mode", help="theory or practical thresholds")]
CThrOpt = Annotated[float | None, typer.Option("--c-thr", help="Practical threshold constant")]
SeedOpt = Annotated[int | None, typer.Option("--seed", help="Master seed")]
RepsOpt = Annotated[int | None, typer.Option("--reps", help="Monte Carlo replications")]
WorkersOpt = Annotated[int | None, typer.Option("--workers", help="Replication workers")]
NoiseOpt = Annotated[str | None, typer.Option("--noise", help="uniform, or none for U_i = 1")]
MethodOpt = Annotated[str | None, typer.Option("--method", help="Integrator: auto, grid, sample")]
OutOpt = Annotated[str | None, typer.Option("--out", help="Primary output file name")]
OutDirOpt = Annotated[
    str | None, typer.Option("--out-dir", help="Output root (local, s3://, or gs://)")
]
ConfigOpt = Annotated[str | None, typer.Option("--config", help="JSON run config")]
LogOpt = Annotated[str | None, typer.Option("--log-level", "-l")]


@app.command()
def simulate(
    fn: FnOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    seed: SeedOpt = None,
    noise: NoiseOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Draw Y_i = f(X_i) U_i on the regular grid and write it as CSV."""
    _invoke("simulate", locals())


@app.command()
def estimate(
    fn: FnOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    b: BOpt = None,
    y: YOpt = None,
    h: HOpt = None,
    h_max: HMaxOpt = None,
    beta: Annotated[float | None, typer.Option("--beta", help="Smoothness (minimax)")] = None,
    lipschitz: Annotated[
        float | None, typer.Option("--lipschitz", help="Holder constant L")
    ] = None,
    a_low: Annotated[float | None, typer.Option("--a-low", help="Lower bound A")] = None,
    m_up: Annotated[float | None, typer.Option("--m-up", help="Upper bound M")] = None,
    seed: SeedOpt = None,
    noise: NoiseOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Locally bayesian estimate at a fixed bandwidth (--h) or the minimax one (--beta)."""
    _invoke("estimate", locals())


@app.command()
def adapt(
    fn: FnOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    b: BOpt = None,
    q: QOpt = None,
    y: YOpt = None,
    h_max: HMaxOpt = None,
    mode: ModeOpt = None,
    c_thr: CThrOpt = None,
    seed: SeedOpt = None,
    noise: NoiseOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Data-driven estimate at y; writes the full selection trace as JSON."""
    _invoke("adapt", locals())


@app.command()
def oracle(
    fn: FnOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    b: BOpt = None,
    y: YOpt = None,
    h_max: HMaxOpt = None,
    candidates: Annotated[
        str | None, typer.Option("--h-candidates", help="Comma-separated bandwidths")
    ] = None,
    reps: RepsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    noise: NoiseOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Monte Carlo risk of the bayes estimator over candidate bandwidths."""
    _invoke("oracle", locals())


@app.command("replicate-table")
def replicate_table(
    functions: Annotated[str | None, typer.Option("--functions", help="e.g. f1,f2,f3")] = None,
    ns: Annotated[str | None, typer.Option("--ns", help="e.g. 100,1000")] = None,
    n_points: Annotated[int | None, typer.Option("--n-points")] = None,
    b: BOpt = None,
    q: QOpt = None,
    mode: ModeOpt = None,
    c_thr: CThrOpt = None,
    reps: RepsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Adaptive risk and oracle/adaptive ratio per function and sample size."""
    _invoke("replicate-table", locals())


@app.command("replicate-f4")
def replicate_f4(
    n: NOpt = None,
    b: BOpt = None,
    q: QOpt = None,
    mode: ModeOpt = None,
    c_thr: CThrOpt = None,
    reps: RepsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Risk on the locally linear f4: parametric window against adaptive selection."""
    _invoke("replicate-f4", locals())


@app.command()
def rate(
    fn: FnOpt = None,
    ns: Annotated[str | None, typer.Option("--ns", help="e.g. 100,400,1600")] = None,
    beta_nominal: Annotated[float | None, typer.Option("--beta-nominal")] = None,
    b: BOpt = None,
    y: YOpt = None,
    reps: RepsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Log-log risk slopes of the bayes and least squares estimators."""
    _invoke("rate", locals())


@app.command()
def tail(
    fn: FnOpt = None,
    n: NOpt = None,
    h: HOpt = None,
    eps: Annotated[str | None, typer.Option("--eps", help="Comma-separated eps grid")] = None,
    b: BOpt = None,
    y: YOpt = None,
    reps: RepsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Empirical tail of n h^d |f_hat - f| at a fixed bandwidth."""
    _invoke("tail", locals())


@app.command()
def curve(
    fn: FnOpt = None,
    n: NOpt = None,
    n_points: Annotated[int | None, typer.Option("--n-points")] = None,
    b: BOpt = None,
    q: QOpt = None,
    mode: ModeOpt = None,
    c_thr: CThrOpt = None,
    seed: SeedOpt = None,
    method: MethodOpt = None,
    out: OutOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Adaptive estimates over the unit interval for one sample."""
    _invoke("curve", locals())


@app.command()
def replay(
    manifest_path: str = typer.Argument(..., help="Path to a manifest.json"),
    out_dir: OutDirOpt = None,
    log_level: LogOpt = None,
) -> None:
    """Re-run a recorded command and compare output hashes."""
    _configure_logging(log_level or Settings().log_level)
    try:
        with fsspec.open(manifest_path, "rb") as f:
            recorded = RunManifest.from_json(f.read())
    except FileNotFoundError as exc:
        raise ConfigError(f"manifest not found: {manifest_path}") from exc
    config = dict(recorded.config)
    if out_dir is not None:
        config["out_dir"] = out_dir
    cfg = RunConfig.model_validate(config)
    fresh = _execute(recorded.command, cfg)

    mismatched = [
        path for path, digest in recorded.outputs.items() if fresh.outputs.get(path) != digest
    ]
    for path in sorted(recorded.outputs):
        mark = "[red]differs[/red]" if path in mismatched else "[green]identical[/green]"
        console.print(f"  {path}: {mark}")
    if mismatched:
        raise typer.Exit(1)


@app.command()
def status(
    out_dir: str = typer.Argument(".", help="Output root (local, s3://, or gs://)"),
) -> None:
    """Show the manifest of an output directory and check its output hashes."""
    _configure_logging(Settings().log_level)
    manager = ManifestManager(StorageBackend.from_root(out_dir))
    if not manager.exists():
        console.print(f"No manifest in {out_dir}")
        raise typer.Exit(1)
    manifest = manager.load()
    checks = manager.verify(manifest)

    console.print(f"[bold]Manifest:[/bold] {out_dir}/{manager.path}")
    console.print(f"  Command: {manifest.command}")
    console.print(f"  Seed: {manifest.seed}")
    console.print(f"  RNG: {manifest.rng_name} v{manifest.rng_version}")
    console.print(f"  Version: {manifest.package_version}")
    console.print(f"  Created: {manifest.created_at}")
    console.print(f"  Content hash: {manifest.content_hash}")
    for path, ok in sorted(checks.items()):
        console.print(f"  {path}: {'ok' if ok else '[red]modified or missing[/red]'}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and map failures to exit codes."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="mulreg", standalone_mode=False)
    except UsageError as exc:
        exc.show()  # type: ignore[attr-defined]
        return EXIT_INPUT
    except typer.Abort:
        return 1
    except (InputError, ValidationError) as exc:
        console.print(f"[red]error:[/red] {type(exc).__name__}: {exc}")
        return EXIT_INPUT
    except EstimationError as exc:
        console.print(f"[red]estimation failed:[/red] {type(exc).__name__}: {exc}")
        return EXIT_ESTIMATION
    return result if isinstance(result, int) else 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
