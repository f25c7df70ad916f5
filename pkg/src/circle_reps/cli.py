from __future__ import annotations

import argparse
from pathlib import Path
from typing import Any, Mapping, Sequence

from .config_loader import resolve_config
from .io.writers import write_report
from .pipeline.run_manager import Command, run_command
from .utils.logging_utils import configure_logging, get_logger

logger = get_logger(__name__)

TOLERANCE_NAMES = ("unitarity_tol", "commutation_tol", "cluster_tol", "rounding_tol")


def _add_tolerance_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Seed for the random combination.")
    parser.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help=f"Tolerance override, NAME in {', '.join(TOLERANCE_NAMES)}.",
    )


def _add_group_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--continuous",
        action="store_true",
        help="Check against B1-B3 (no base-measure condition).",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circle-reps",
        description="Classify unitary representations of circle-valued function groups.",
    )
    parser.add_argument(
        "-c", "--config", type=Path, help="Path to YAML configuration file."
    )
    parser.add_argument("--log-level", help="Override the package log level.")
    parser.add_argument(
        "-o", "--out", type=Path, help="Write the JSON report here instead of stdout."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Canonical presentation of a weight multiset.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--weights", type=Path, help="Weight file (JSON/CSV/Parquet).")
    source.add_argument(
        "--from-homomorphism",
        type=Path,
        help="Homomorphism matrix or Kwapien operator document (needs --nu).",
    )
    source.add_argument(
        "--from-unitaries", type=Path, help="Commuting unitary family document."
    )
    p.add_argument("--nu", type=Path, help="Arity-1 measure on the row space.")
    p.add_argument("--depth", type=int, help="Classify over {0,1}^depth.")
    p.add_argument("--table", type=Path, help="Per-layer summary table (CSV/Parquet).")
    p.add_argument("--plot-dir", type=Path, help="Directory for the layer profile plot.")
    _add_tolerance_options(p)

    p = sub.add_parser("normalize-chain", help="Layer a list of measures into a chain.")
    p.add_argument("--measures", type=Path, required=True)

    p = sub.add_parser("check-presentation", help="Validate a presentation.")
    p.add_argument("presentation", type=Path)
    p.add_argument("--base", type=Path, help="Base measure for the marginal condition.")
    _add_group_option(p)

    p = sub.add_parser("compare", help="Compare two presentations slot by slot.")
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)
    _add_group_option(p)

    p = sub.add_parser("minimal-measure", help="Minimal base measure of a presentation.")
    p.add_argument("presentation", type=Path)
    _add_group_option(p)

    p = sub.add_parser("kwapien-collapse", help="Collapse and check a Kwapien operator.")
    p.add_argument("operator", type=Path)

    p = sub.add_parser("diagonalize", help="Recover weights from a unitary family.")
    p.add_argument("family", type=Path, nargs="?")
    p.add_argument(
        "--from-weights", type=Path, help="Plant these weights in a random family."
    )
    p.add_argument("--q", type=int, help="Sample denominator for --from-weights.")
    p.add_argument("--bound", type=int, help="Weight bound B for --from-weights.")
    p.add_argument("--plot-dir", type=Path, help="Directory for the phase plot.")
    _add_tolerance_options(p)

    p = sub.add_parser("coarsen", help="Coarsen dyadic weights to a smaller depth.")
    p.add_argument("--weights", type=Path, required=True)
    p.add_argument("--depth", type=int, required=True)

    return parser


def _parse_tolerances(
    parser: argparse.ArgumentParser, items: Sequence[str]
) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or name not in TOLERANCE_NAMES:
            parser.error(f"Invalid --tol {item!r}; expected NAME=VALUE")
        try:
            overrides[name] = float(value)
        except ValueError:
            parser.error(f"Invalid --tol value {value!r}")
    return overrides


def build_command(
    parser: argparse.ArgumentParser, args: argparse.Namespace, cfg: Mapping[str, Any]
) -> Command:
    name = args.command
    inputs: dict[str, Path | None] = {}
    options: dict[str, Any] = {}

    if name == "classify":
        if args.from_homomorphism is not None and args.nu is None:
            parser.error("--from-homomorphism requires --nu")
        inputs = {
            "weights": args.weights,
            "homomorphism": args.from_homomorphism,
            "nu": args.nu,
            "unitaries": args.from_unitaries,
        }
        options = {"depth": args.depth, "table": args.table}
    elif name == "normalize-chain":
        inputs = {"measures": args.measures}
    elif name == "check-presentation":
        inputs = {"presentation": args.presentation, "base": args.base}
    elif name == "compare":
        inputs = {"first": args.first, "second": args.second}
    elif name == "minimal-measure":
        inputs = {"presentation": args.presentation}
    elif name == "kwapien-collapse":
        inputs = {"operator": args.operator}
    elif name == "diagonalize":
        if (args.family is None) == (args.from_weights is None):
            parser.error("diagonalize needs exactly one of FAMILY or --from-weights")
        inputs = {"family": args.family, "from_weights": args.from_weights}
        options = {"q": args.q, "bound": args.bound}
    elif name == "coarsen":
        inputs = {"weights": args.weights}
        options = {"depth": args.depth}

    if hasattr(args, "tol"):
        options["tol"] = _parse_tolerances(parser, args.tol)
        options["seed"] = args.seed
    if hasattr(args, "continuous"):
        options["continuous"] = args.continuous
    if hasattr(args, "plot_dir"):
        plot_dir = args.plot_dir
        viz = cfg.get("visualization", {})
        if plot_dir is None and viz.get("enabled"):
            plot_dir = Path(viz.get("plot_dir", "outputs/plots"))
        options["plot_dir"] = plot_dir
    return Command(name=name, inputs=inputs, options=options, out=args.out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)

    try:
        cfg = resolve_config(args.config)
    except (OSError, ValueError) as exc:
        parser.exit(2, f"circle-reps: cannot load configuration: {exc}\n")

    log_config = cfg.get("logging", {}).get("config")
    configure_logging(Path(log_config) if log_config else None, level=args.log_level)

    command = build_command(parser, args, cfg)
    result = run_command(command, cfg)
    write_report(result.report, command.out, indent=cfg.get("output", {}).get("indent", 2))
    if command.out is not None:
        logger.info("Wrote report to %s", command.out)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
