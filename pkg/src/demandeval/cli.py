"""Command line interface.

Subcommands: ``score`` (metric report for one pair CSV), ``decompose``
(per-step cost attribution), ``sweep`` (score along the alpha trade-off
line), ``simulate`` (generate a demand/forecast pair CSV) and ``experiment``
(reliability/validity studies from a JSON config).

Exit codes: 0 success, 2 bad input or configuration, 1 internal error. Every
file-producing command also writes (or embeds) a run manifest sufficient to
reproduce its outputs exactly.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

from . import __version__
from .csvio import (
    RunManifest,
    decomposition_to_csv,
    parse_pair_csv,
    read_json_config,
    report_to_csv,
    report_to_json,
    report_to_table,
    sweep_to_csv,
    write_pair_csv,
)
from .errors import DemandEvalError
from .experiments import (
    ReliabilityConfig,
    SegmentReliabilityConfig,
    ValidityConfig,
    run_cost_validity,
    run_reliability,
    run_segment_reliability_config,
    run_validity,
)
from .metrics import METRIC_NAMES, compute_all
from .simulate import DemandGenConfig, ErrorInjectionConfig, generate_demand, perturb_forecast
from .series import EvaluationPair
from .spec import SpecParams, spec_alpha_sweep, spec_decompose
from .svg import render_decomposition_svg, render_sweep_svg


def _alpha_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha1", type=float, default=0.75, help="opportunity cost weight")
    parser.add_argument("--alpha2", type=float, default=0.25, help="stock-keeping cost weight")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demandeval",
        description="Forecast-error evaluation for intermittent and lumpy demand.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score one actual/forecast pair")
    p.add_argument("--input", required=True, help="pair CSV (header t,actual,forecast)")
    _alpha_args(p)
    p.add_argument(
        "--metrics",
        default=None,
        help=f"comma-separated subset of: {','.join(METRIC_NAMES)} (default: all)",
    )
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("decompose", help="per-time-step cost attribution")
    p.add_argument("--input", required=True)
    _alpha_args(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", default=None, help="optional stacked-bar SVG path")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("sweep", help="score along alpha1 = 0..1, alpha2 = 1-alpha1")
    p.add_argument("--input", action="append", required=True, help="pair CSV (repeatable)")
    p.add_argument("--grid-size", type=int, default=101)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", default=None, help="optional line-chart SVG path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("simulate", help="generate a synthetic demand/forecast pair")
    p.add_argument("--config", required=True, help="JSON generation config")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("experiment", help="run a reliability/validity study")
    p.add_argument(
        "kind",
        choices=("reliability", "segment-reliability", "validity", "cost-validity"),
    )
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--out", required=True, help="report JSON path")
    p.set_defaults(func=_cmd_experiment)

    return parser


def _load_pair(path: str) -> EvaluationPair:
    return parse_pair_csv(path)


def _params(args: argparse.Namespace) -> SpecParams:
    return SpecParams(alpha1=args.alpha1, alpha2=args.alpha2)


def _manifest(args: argparse.Namespace, command: str, config: dict, seeds: dict, outputs) -> RunManifest:
    return RunManifest(
        command=command,
        version=__version__,
        config=config,
        seeds=seeds,
        outputs=tuple(str(o) for o in outputs),
    )


def _write_sibling_manifest(manifest: RunManifest, out_path: Path) -> None:
    out_path.with_suffix(out_path.suffix + ".manifest.json").write_text(
        manifest.to_json(), encoding="utf-8"
    )


def _cmd_score(args: argparse.Namespace) -> int:
    pair = _load_pair(args.input)
    params = _params(args)
    metrics = None
    if args.metrics:
        metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
        unknown = [m for m in metrics if m not in METRIC_NAMES]
        if unknown:
            raise DemandEvalError(f"unknown metrics: {', '.join(unknown)}")
    report = compute_all(pair, params, metrics)
    if args.format == "table":
        sys.stdout.write(report_to_table(report))
    elif args.format == "csv":
        sys.stdout.write(report_to_csv(report))
    else:
        manifest = _manifest(
            args,
            "score",
            {"input": args.input, "alpha1": params.alpha1, "alpha2": params.alpha2,
             "metrics": list(report.entries)},
            {},
            (),
        )
        sys.stdout.write(report_to_json(report, manifest))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    pair = _load_pair(args.input)
    params = _params(args)
    breakdown = spec_decompose(pair, params)
    out_path = Path(args.out)
    out_path.write_text(decomposition_to_csv(breakdown), encoding="utf-8")
    outputs = [out_path]
    if args.svg:
        Path(args.svg).write_text(render_decomposition_svg(breakdown), encoding="utf-8")
        outputs.append(Path(args.svg))
    manifest = _manifest(
        args,
        "decompose",
        {"input": args.input, "alpha1": params.alpha1, "alpha2": params.alpha2},
        {},
        outputs,
    )
    _write_sibling_manifest(manifest, out_path)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    curves = {}
    for path in args.input:
        label = Path(path).stem
        if label in curves:
            label = f"{label}_{len(curves)}"
        curves[label] = spec_alpha_sweep(_load_pair(path), args.grid_size)
    out_path = Path(args.out)
    out_path.write_text(sweep_to_csv(curves), encoding="utf-8")
    outputs = [out_path]
    if args.svg:
        Path(args.svg).write_text(render_sweep_svg(curves), encoding="utf-8")
        outputs.append(Path(args.svg))
    manifest = _manifest(
        args,
        "sweep",
        {"inputs": list(args.input), "grid_size": args.grid_size},
        {},
        outputs,
    )
    _write_sibling_manifest(manifest, out_path)
    return 0


def _simulate_configs(data: dict) -> tuple[DemandGenConfig, ErrorInjectionConfig, dict]:
    """Build generator configs from the simulate JSON, drawing absent seeds."""
    fields = dict(data)
    error_fields = dict(fields.pop("error", {}))
    seeds_drawn: dict = {}

    if "seed" not in fields:
        fields["seed"] = secrets.randbits(63)
        seeds_drawn["demand_seed_source"] = "entropy"
    if "seed" not in error_fields:
        error_fields["seed"] = secrets.randbits(63)
        seeds_drawn["error_seed_source"] = "entropy"

    try:
        demand = DemandGenConfig(**fields)
    except TypeError as exc:
        raise DemandEvalError(f"demand config: {exc}") from None
    try:
        error = ErrorInjectionConfig(**error_fields)
    except TypeError as exc:
        raise DemandEvalError(f"error config: {exc}") from None
    return demand, error, seeds_drawn


def _cmd_simulate(args: argparse.Namespace) -> int:
    data = read_json_config(args.config)
    demand_cfg, error_cfg, seed_notes = _simulate_configs(data)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    actual = generate_demand(demand_cfg)
    forecast = perturb_forecast(actual, error_cfg)
    pair = EvaluationPair(actual, forecast)

    pair_path = out_dir / "pair.csv"
    write_pair_csv(pair, pair_path)

    manifest = _manifest(
        args,
        "simulate",
        {
            "demand": {
                "n": demand_cfg.n,
                "count_mu": demand_cfg.count_mu,
                "count_sigma": demand_cfg.count_sigma,
                "magnitude_mu": demand_cfg.magnitude_mu,
                "magnitude_sigma": demand_cfg.magnitude_sigma,
                "round_magnitudes": demand_cfg.round_magnitudes,
            },
            "error": {
                "vertical_mu": error_cfg.vertical_mu,
                "vertical_sigma": error_cfg.vertical_sigma,
                "horizontal_mu": error_cfg.horizontal_mu,
                "horizontal_sigma": error_cfg.horizontal_sigma,
            },
        },
        {"demand_seed": demand_cfg.seed, "error_seed": error_cfg.seed, **seed_notes},
        [pair_path],
    )
    (out_dir / "manifest.json").write_text(manifest.to_json(), encoding="utf-8")
    return 0


_EXPERIMENT_RUNNERS = {
    "reliability": (ReliabilityConfig.from_dict, run_reliability),
    "validity": (ValidityConfig.from_dict, run_validity),
    "segment-reliability": (SegmentReliabilityConfig.from_dict, run_segment_reliability_config),
}


def _cmd_experiment(args: argparse.Namespace) -> int:
    data = read_json_config(args.config)
    if args.kind == "cost-validity":
        fields = dict(data)
        cost_params = SpecParams(
            alpha1=fields.pop("cost_alpha1", 0.75), alpha2=fields.pop("cost_alpha2", 0.25)
        )
        metric_params = None
        if "metric_alpha1" in fields or "metric_alpha2" in fields:
            metric_params = SpecParams(
                alpha1=fields.pop("metric_alpha1", 0.75),
                alpha2=fields.pop("metric_alpha2", 0.25),
            )
        config = ReliabilityConfig.from_dict(fields)
        report = run_cost_validity(config, cost_params, metric_params)
    else:
        parse, run = _EXPERIMENT_RUNNERS[args.kind]
        report = run(parse(data))

    out_path = Path(args.out)
    payload = report.to_dict()
    payload["manifest"] = _manifest(
        args, f"experiment {args.kind}", {"config_file": args.config}, {"seed": report.seed},
        [out_path],
    ).to_dict()
    out_path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DemandEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
