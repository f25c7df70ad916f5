from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

from ..cantor.dyadic import as_dyadic, classify_at_depth, coarsen_weights
from ..classification.classifier import classify, result_summary
from ..classification.layering import layer_normalize
from ..classification.minimal import minimal_measure
from ..classification.uniqueness import compare_presentations
from ..errors import DomainError, InputFormatError
from ..io.codecs import (
    classification_to_dict,
    family_from_dict,
    matrix_from_dict,
    matrix_to_dict,
    measure_from_dict,
    measure_to_dict,
    measures_from_doc,
    measures_to_doc,
    operator_from_dict,
    presentation_from_dict,
    weights_to_dict,
)
from ..io.readers import read_json, read_weights
from ..io.writers import write_table
from ..measures.algebra import support_witness
from ..model.blocks import WeightMultiset
from ..model.group_types import GroupType
from ..operators.kwapien import (
    collapse,
    induced_weights,
    integrality_check,
    to_homomorphism,
)
from ..representation.validation import validate_presentation
from ..spectral.diagonalize import simultaneous_diagonalize
from ..spectral.family import (
    ToleranceConfig,
    UnitaryFamily,
    check_family,
    sample_family,
)
from ..spectral.weights import extract_weights
from ..utils.logging_utils import get_logger
from ..utils.rationals import format_rational
from .reporting import layer_table
from .visualization import plot_layer_profile, plot_phase_spectrum

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


@dataclass
class Command:
    name: str
    inputs: dict[str, Path | None] = field(default_factory=dict)
    options: dict[str, Any] = field(default_factory=dict)
    out: Path | None = None


@dataclass
class CommandResult:
    exit_code: int
    report: dict[str, Any]


def run_command(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    handler = _HANDLERS.get(command.name)
    if handler is None:
        msg = f"Unknown command: {command.name}"
        raise ValueError(msg)
    logger.info("Running %s", command.name)
    try:
        return handler(command, cfg)
    except DomainError as exc:
        logger.error("%s failed: %s", command.name, exc)
        return CommandResult(EXIT_DOMAIN, {"error": exc.to_dict()})
    except (InputFormatError, OSError, json.JSONDecodeError) as exc:
        logger.error("%s could not read its input: %s", command.name, exc)
        error = {"type": type(exc).__name__, "message": str(exc)}
        return CommandResult(EXIT_INPUT, {"error": error})
    except ValueError as exc:
        logger.error("%s rejected its input: %s", command.name, exc)
        error = {"type": type(exc).__name__, "message": str(exc)}
        return CommandResult(EXIT_INPUT, {"error": error})


# helpers


def _tolerances(command: Command, cfg: Mapping[str, Any]) -> ToleranceConfig:
    merged = dict(cfg.get("tolerances", {}))
    merged.update(command.options.get("tol") or {})
    return ToleranceConfig.from_mapping(
        merged, max_attempts=cfg.get("spectral", {}).get("max_attempts")
    )


def _rng(command: Command, cfg: Mapping[str, Any]) -> np.random.Generator:
    seed = command.options.get("seed")
    if seed is None:
        seed = cfg.get("spectral", {}).get("seed", 0)
    return np.random.default_rng(int(seed))


def _input(command: Command, key: str) -> Path:
    path = command.inputs.get(key)
    if path is None:
        msg = f"{command.name} requires the {key!r} input"
        raise InputFormatError(msg)
    return path


def _diagonalize_family(
    family: UnitaryFamily, command: Command, cfg: Mapping[str, Any]
) -> tuple[dict[str, Any], WeightMultiset]:
    tolerances = _tolerances(command, cfg)
    audit = check_family(family, tolerances)
    diag = simultaneous_diagonalize(family, tolerances, _rng(command, cfg))
    weights = extract_weights(
        diag.phases,
        family.space,
        family.sample_denominator,
        family.weight_bound,
        tolerances,
    )
    plot_dir = command.options.get("plot_dir")
    if plot_dir is not None:
        _safe_plot(
            lambda: plot_phase_spectrum(
                diag.phases, family.space, Path(plot_dir), family.sample_denominator
            )
        )
    report = {
        "family": audit.to_dict(),
        "diagonalization": diag.to_dict(),
        "weights": weights_to_dict(weights),
    }
    return report, weights


def _safe_plot(draw: Callable[[], Path | None]) -> None:
    try:
        path = draw()
        if path is not None:
            logger.info("Wrote %s", path)
    except Exception as exc:  # noqa: BLE001
        logger.warning("Visualization failed: %s", exc)


# handlers


def _load_classify_weights(command: Command, cfg: Mapping[str, Any]) -> WeightMultiset:
    if command.inputs.get("weights") is not None:
        return read_weights(_input(command, "weights"), depth=command.options.get("depth"))
    if command.inputs.get("homomorphism") is not None:
        doc = read_json(_input(command, "homomorphism"))
        if isinstance(doc, Mapping) and "terms" in doc:
            matrix = to_homomorphism(operator_from_dict(doc))
        else:
            matrix = matrix_from_dict(doc)
        nu = measure_from_dict(read_json(_input(command, "nu")))
        return induced_weights(matrix, nu)
    if command.inputs.get("unitaries") is not None:
        family = family_from_dict(read_json(_input(command, "unitaries")))
        _, weights = _diagonalize_family(family, command, cfg)
        return weights
    msg = "classify needs --weights, --from-homomorphism or --from-unitaries"
    raise InputFormatError(msg)


def _run_classify(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    weights = _load_classify_weights(command, cfg)
    depth = command.options.get("depth")
    if depth is not None:
        found = as_dyadic(weights.space).depth
        if found != depth:
            msg = f"--depth {depth} does not match the input depth {found}"
            raise InputFormatError(msg)
        result = classify_at_depth(weights)
    else:
        result = classify(weights)
    logger.info("Classification: %s", result_summary(result))

    table_path = command.options.get("table")
    plot_dir = command.options.get("plot_dir")
    if table_path is not None or plot_dir is not None:
        df = layer_table(result)
        if table_path is not None:
            write_table(df, table_path)
            logger.info("Wrote layer table to %s", table_path)
        if plot_dir is not None:
            _safe_plot(lambda: plot_layer_profile(df, Path(plot_dir)))
    return CommandResult(EXIT_OK, classification_to_dict(result))


def _run_normalize_chain(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    measures = measures_from_doc(read_json(_input(command, "measures")))
    layers = layer_normalize(measures)
    report = measures_to_doc(layers)
    report["chain"] = all(
        support_witness(lower, upper) is None for upper, lower in zip(layers, layers[1:])
    )
    return CommandResult(EXIT_OK, report)


def _group_type(command: Command) -> GroupType:
    return GroupType.CONTINUOUS if command.options.get("continuous") else GroupType.MEASURABLE


def _run_check_presentation(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    presentation = presentation_from_dict(read_json(_input(command, "presentation")))
    if command.inputs.get("base") is not None:
        base = measure_from_dict(read_json(_input(command, "base")), presentation.space)
        presentation = presentation.with_base(base)
    report = validate_presentation(presentation, _group_type(command))
    doc = {"validation": report.to_dict()}
    if report.ok:
        return CommandResult(EXIT_OK, doc)
    first = report.violations()[0]
    doc["error"] = {
        "type": "ConditionViolationError",
        "message": f"Presentation violates {first.condition}",
        "witness": first.to_dict(),
    }
    return CommandResult(EXIT_DOMAIN, doc)


def _run_compare(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    first = presentation_from_dict(read_json(_input(command, "first")))
    second = presentation_from_dict(read_json(_input(command, "second")))
    comparison = compare_presentations(first, second, _group_type(command))
    return CommandResult(EXIT_OK, comparison.to_dict())


def _run_minimal_measure(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    presentation = presentation_from_dict(read_json(_input(command, "presentation")))
    nu = minimal_measure(presentation, _group_type(command))
    return CommandResult(EXIT_OK, measure_to_dict(nu))


def _run_kwapien_collapse(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    operator = operator_from_dict(read_json(_input(command, "operator")))
    rows = collapse(operator)
    check = integrality_check(operator)
    report: dict[str, Any] = {
        "rows": {
            y: {x: format_rational(c) for x, c in row.items()} for y, row in rows.items()
        },
        **check.to_dict(),
    }
    if not check.integral:
        assert check.witness is not None
        report["error"] = {
            "type": "NonIntegralOperatorError",
            "message": "Operator does not map integer functions to integer functions",
            "witness": check.witness.to_dict(),
        }
        return CommandResult(EXIT_DOMAIN, report)
    report["matrix"] = matrix_to_dict(to_homomorphism(operator))
    return CommandResult(EXIT_OK, report)


def _run_diagonalize(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    if command.inputs.get("from_weights") is not None:
        spectral_cfg = cfg.get("spectral", {})
        q = int(command.options.get("q") or spectral_cfg.get("sample_denominator", 64))
        bound = int(command.options.get("bound") or spectral_cfg.get("weight_bound", 16))
        planted = read_weights(_input(command, "from_weights"))
        family = sample_family(planted, q, bound, _rng(command, cfg))
        logger.info("Sampled a d=%d family at q=%d, B=%d", family.dim, q, bound)
    else:
        family = family_from_dict(read_json(_input(command, "family")))
    report, _ = _diagonalize_family(family, command, cfg)
    return CommandResult(EXIT_OK, report)


def _run_coarsen(command: Command, cfg: Mapping[str, Any]) -> CommandResult:
    depth = command.options.get("depth")
    if depth is None:
        msg = "coarsen requires --depth"
        raise InputFormatError(msg)
    weights = read_weights(_input(command, "weights"))
    coarse = coarsen_weights(weights, int(depth))
    logger.info("Coarsened %d points to depth %d", len(weights.space), depth)
    return CommandResult(EXIT_OK, weights_to_dict(coarse))


_HANDLERS: dict[str, Callable[[Command, Mapping[str, Any]], CommandResult]] = {
    "classify": _run_classify,
    "normalize-chain": _run_normalize_chain,
    "check-presentation": _run_check_presentation,
    "compare": _run_compare,
    "minimal-measure": _run_minimal_measure,
    "kwapien-collapse": _run_kwapien_collapse,
    "diagonalize": _run_diagonalize,
    "coarsen": _run_coarsen,
}
