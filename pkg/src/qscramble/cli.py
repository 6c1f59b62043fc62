"""Command-line experiment runner.

Exit codes: 0 on success, 2 on configuration errors, 3 on resource-cap
errors.  Flags override values loaded from --config (a JSON document with
the same keys as EnsembleConfig).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .config import EnsembleConfig
from .errors import InvalidConfigError, ResourceLimitError
from .experiments import run_kurtosis, run_mipt, run_oracle_checks, run_renyi4, run_tdoped
from .output import Table, emit_outputs, read_csv, write_csv
from .svgplot import line_plot


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _parse_grid(text: str) -> list[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise InvalidConfigError(f"grid must be start:stop:step, got {text!r}")
    if step <= 0:
        raise InvalidConfigError(f"grid step must be positive, got {step}")
    out = []
    k = 0
    while True:
        v = round(start + k * step, 10)
        if v > stop + 1e-9:
            break
        out.append(v)
        k += 1
    return out


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--qubits", help="comma-separated system sizes, e.g. 8,12,16")
    sub.add_argument("--nt-max", type=int, help="scan T counts 0..NT_MAX")
    sub.add_argument("--samples", type=int, help="circuit samples per point")
    sub.add_argument("--instances", type=int, help="trajectories per grid point")
    sub.add_argument("--theta", help="comma-separated rotation angles (radians)")
    sub.add_argument("--pm-grid", help="measurement-rate grid start:stop:step")
    sub.add_argument("--cycles", type=int, help="brickwork cycles per trajectory")
    sub.add_argument("--subsystem-fraction", help="|A|/n, e.g. 1/4 or 0.125")
    sub.add_argument("--backend", choices=["auto", "tableau", "statevector"])
    sub.add_argument("--seed", type=int, help="master seed")
    sub.add_argument("--out", help="output directory")
    sub.add_argument("--format", choices=["csv", "json", "both"], dest="fmt")
    sub.add_argument("--threads", type=int, help="worker processes")
    sub.add_argument("--block-steps", type=int, help="composite steps per scrambling block")


def _build_config(kind: str, args: argparse.Namespace) -> EnsembleConfig:
    if args.config:
        config = EnsembleConfig.from_file(args.config)
        config.kind = kind
    else:
        config = EnsembleConfig(kind=kind)
    if args.qubits:
        config.n_list = _parse_int_list(args.qubits)
    if args.nt_max is not None:
        config.nt_values = list(range(args.nt_max + 1))
    if args.samples is not None:
        config.samples = args.samples
    if args.instances is not None:
        config.instances = args.instances
    if args.theta:
        config.thetas = _parse_float_list(args.theta)
    if args.pm_grid:
        config.pm_grid = _parse_grid(args.pm_grid)
    if args.cycles is not None:
        config.cycles = args.cycles
    if args.subsystem_fraction:
        config.subsystem_fraction = Fraction(args.subsystem_fraction)
    if args.backend:
        config.backend = args.backend
    if args.seed is not None:
        config.master_seed = args.seed
    if args.out:
        config.out = args.out
    if args.fmt:
        config.fmt = args.fmt
    if args.threads is not None:
        config.threads = args.threads
    if args.block_steps is not None:
        config.block_steps = args.block_steps
    if config.nt_values is None and kind in ("tdoped", "kurtosis", "renyi4"):
        config.nt_values = list(range(0, 17))
    config.validate()
    return config


def _outdir(config: EnsembleConfig) -> Path:
    out = Path(config.out) if config.out else Path("results") / config.kind
    out.mkdir(parents=True, exist_ok=True)
    return out


def _series_by(table: Table, series_col: str, x_col: str, y_col: str):
    seen: list = []
    for v in table.column(series_col):
        if v not in seen:
            seen.append(v)
    series = []
    for v in seen:
        sub = table.select(**{series_col: v})
        series.append((f"{series_col}={v}", sub.column(x_col), sub.column(y_col)))
    return series


def _run_tdoped_like(kind: str, args) -> int:
    config = _build_config(kind, args)
    run = {"tdoped": run_tdoped, "renyi4": run_renyi4}[kind]
    result = run(config)
    out = _outdir(config)
    emit_outputs(result.samples, out / "samples", config.fmt)
    emit_outputs(result.summary, out / "summary", config.fmt)
    emit_outputs(result.fits, out / "fits", config.fmt)
    y = "neg_ln_delta_s4_ab" if kind == "renyi4" else "neg_ln_delta_i2"
    line_plot(_series_by(result.summary, "n", "n_t", y), out / "fluctuations.svg",
              title=f"{kind}: fluctuation decay", xlabel="T-gate count",
              ylabel=f"-ln {y[11:] if kind != 'renyi4' else 'delta S4'}")
    for row in result.fits.rows:
        print("fit", *row)
    print(f"wrote {out}")
    return 0


def _run_mipt(args) -> int:
    config = _build_config("mipt", args)
    result = run_mipt(config)
    out = _outdir(config)
    emit_outputs(result.samples, out / "samples", config.fmt)
    emit_outputs(result.summary, out / "summary", config.fmt)
    if result.collapse_table.rows:
        emit_outputs(result.collapse_table, out / "collapse", config.fmt)
    for theta in config.thetas:
        sub = result.summary.select(theta=theta)
        tag = f"{theta:.4g}".replace(".", "p").replace("-", "m")
        line_plot(_series_by(sub, "n", "p_m", "mean_i2"),
                  out / f"mean_i2_theta_{tag}.svg",
                  title=f"mean mutual information, theta={theta:.4g}",
                  xlabel="measurement rate", ylabel="I2 (bits)")
        line_plot(_series_by(sub, "n", "p_m", "fluct_i2"),
                  out / f"fluct_i2_theta_{tag}.svg",
                  title=f"mutual-information fluctuations, theta={theta:.4g}",
                  xlabel="measurement rate", ylabel="std I2 (bits)")
    for theta, res in result.collapse.items():
        flag = " (low confidence)" if res.low_confidence else ""
        print(f"collapse theta={theta:.4g}: p_c={res.p_c:.3f} nu={res.nu:.2f}{flag}")
    print(f"wrote {out}")
    return 0


def _run_kurtosis(args) -> int:
    config = _build_config("kurtosis", args)
    result = run_kurtosis(config)
    out = _outdir(config)
    emit_outputs(result.samples, out / "samples", config.fmt)
    emit_outputs(result.summary, out / "summary", config.fmt)
    emit_outputs(result.fits, out / "fits", config.fmt)
    line_plot(_series_by(result.summary, "n", "n_t", "neg_ln_kurt_combo"),
              out / "kurtosis.svg", title="spin kurtosis decay",
              xlabel="T-gate count", ylabel="-ln Kurt(Sz)")
    for row in result.fits.rows:
        print("fit", *row)
    print(f"wrote {out}")
    return 0


def _run_oracle(args) -> int:
    config = _build_config("oracle", args)
    if args.qubits is None and not args.config:
        config.n_list = [8, 12]
    if args.samples is None and not args.config:
        config.samples = 2000
    config.validate()
    report = run_oracle_checks(config)
    out = _outdir(config)
    emit_outputs(report.table(), out / "oracle_report", config.fmt)
    for check in report.checks:
        print(check.line())
    print(f"wrote {out}")
    return 0


def _run_plot(args) -> int:
    table = read_csv(args.input)
    series = _series_by(table, args.series, args.x, args.y)
    line_plot(series, args.out, title=args.title or "", xlabel=args.x, ylabel=args.y)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qscramble",
        description="Dual-backend random-circuit experiments: entanglement "
                    "fluctuations under T-gate doping and measurement sweeps.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for kind in ("tdoped", "mipt", "kurtosis", "renyi4", "oracle"):
        sub = subs.add_parser(kind, help=f"run the {kind} experiment")
        _add_common(sub)
    plot = subs.add_parser("plot", help="plot a summary CSV as SVG")
    plot.add_argument("input", help="summary CSV file")
    plot.add_argument("--x", required=True, help="x column")
    plot.add_argument("--y", required=True, help="y column")
    plot.add_argument("--series", default="n", help="series column (one polyline each)")
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.add_argument("--title", default="")

    args = parser.parse_args(argv)
    try:
        if args.command in ("tdoped", "renyi4"):
            return _run_tdoped_like(args.command, args)
        if args.command == "mipt":
            return _run_mipt(args)
        if args.command == "kurtosis":
            return _run_kurtosis(args)
        if args.command == "oracle":
            return _run_oracle(args)
        if args.command == "plot":
            return _run_plot(args)
    except InvalidConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
