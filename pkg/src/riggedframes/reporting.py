"""Run configuration, experiment orchestration, and report emission.

Reports are plain documents with a fixed key order and floats serialized at
17 significant digits, so identical configurations produce byte-identical
output (timing aside) and golden-file comparison is exact.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import acceptance
from .duality import canonical_dual, dual_bounds, reconstruct, verify_duality
from .errors import InvalidConfigError, WeightSyntaxError
from .hermite import random_test_function
from .kernels import MapSpec, sample_kernel
from .moments import rf_diagnostic
from .operators import ClassifyThresholds, classify, coarse_synthesis_grid, frame_bounds, frame_operator
from .quadrature import (
    RefinementLadder,
    default_ladder,
    default_stage,
    stage_grid,
)
from .weights import expr_to_string, parse_weight

__all__ = [
    "COMMANDS",
    "RunConfig",
    "ReportDocument",
    "load_config",
    "config_from_dict",
    "default_config",
    "config_with_overrides",
    "run",
    "emit",
    "write_report",
]

COMMANDS = ("classify", "bounds", "dual", "reconstruct", "moment-solve", "sweep", "demo")
DEFAULT_SEED = 20240409
THRESHOLD_FIELDS = ("stability", "growth", "rank", "tight", "parseval", "bessel_k_max")


@dataclass(frozen=True)
class RunConfig:
    map_spec: MapSpec
    ladder: RefinementLadder
    thresholds: ClassifyThresholds
    seed: int
    output_path: str = None
    output_format: str = "json"


@dataclass(frozen=True)
class ReportDocument:
    config: dict
    stages: tuple = ()
    labels: tuple = None
    dual: dict = None
    moment: dict = None
    checks: tuple = None
    timing: float = 0.0


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(data)


def _require(condition, path, message):
    if not condition:
        raise InvalidConfigError(f"{path}: {message}")


def _parse_map(data):
    _require(isinstance(data, dict), "map", "must be an object")
    kind = data.get("kind")
    _require(isinstance(kind, str), "map.kind", "must be a string")
    weight = None
    if data.get("weight") is not None:
        _require(isinstance(data["weight"], str), "map.weight", "must be a string")
        try:
            weight = parse_weight(data["weight"])
        except WeightSyntaxError as exc:
            raise InvalidConfigError(f"map.weight: {exc}") from exc
    support = None
    if data.get("bump_support") is not None:
        raw = data["bump_support"]
        _require(
            isinstance(raw, (list, tuple)) and len(raw) == 2,
            "map.bump_support",
            "must be a pair [a, b]",
        )
        support = (float(raw[0]), float(raw[1]))
    custom = data.get("custom_kernel")
    try:
        return MapSpec(kind, weight=weight, bump_support=support, custom_kernel=custom)
    except InvalidConfigError as exc:
        raise InvalidConfigError(f"map: {exc}") from exc


def _parse_ladder(data):
    if data is None:
        return default_ladder(32)
    _require(isinstance(data, dict), "ladder", "must be an object")
    if "n_max" in data:
        _require(
            isinstance(data["n_max"], int) and data["n_max"] >= 8,
            "ladder.n_max",
            "must be an integer >= 8",
        )
        try:
            return default_ladder(data["n_max"])
        except InvalidConfigError as exc:
            raise InvalidConfigError(f"ladder.n_max: {exc}") from exc
    if "stages" in data:
        raw = data["stages"]
        _require(isinstance(raw, list) and raw, "ladder.stages", "must be a nonempty list")
        stages = []
        for i, item in enumerate(raw):
            if isinstance(item, int):
                stages.append(default_stage(item))
                continue
            _require(isinstance(item, dict), f"ladder.stages[{i}]", "must be an int or object")
            _require("N" in item, f"ladder.stages[{i}].N", "is required")
            n = item["N"]
            _require(isinstance(n, int) and n >= 1, f"ladder.stages[{i}].N", "must be a positive integer")
            base = default_stage(n)
            from .quadrature import LadderStage

            try:
                stages.append(
                    LadderStage(
                        truncation=n,
                        half_width=float(item.get("L", base.half_width)),
                        panels=int(item.get("panels", base.panels)),
                        order=int(item.get("order", base.order)),
                    )
                )
            except InvalidConfigError as exc:
                raise InvalidConfigError(f"ladder.stages[{i}]: {exc}") from exc
        try:
            return RefinementLadder(tuple(stages))
        except InvalidConfigError as exc:
            raise InvalidConfigError(f"ladder.stages: {exc}") from exc
    raise InvalidConfigError("ladder: needs either n_max or stages")


def _parse_thresholds(data):
    if data is None:
        return ClassifyThresholds()
    _require(isinstance(data, dict), "thresholds", "must be an object")
    unknown = set(data) - set(THRESHOLD_FIELDS)
    _require(not unknown, "thresholds", f"unknown fields {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key == "bessel_k_max":
            _require(isinstance(value, int) and value >= 0, f"thresholds.{key}", "must be a nonnegative integer")
            kwargs[key] = value
        else:
            _require(
                isinstance(value, (int, float)) and value > 0,
                f"thresholds.{key}",
                "must be a positive number",
            )
            kwargs[key] = float(value)
    return ClassifyThresholds(**kwargs)


def config_from_dict(data):
    _require(isinstance(data, dict), "config", "must be an object")
    _require("map" in data, "map", "is required")
    map_spec = _parse_map(data["map"])
    ladder = _parse_ladder(data.get("ladder"))
    thresholds = _parse_thresholds(data.get("thresholds"))
    seed = data.get("seed", DEFAULT_SEED)
    _require(isinstance(seed, int) and seed >= 0, "seed", "must be a nonnegative integer")
    output_path = None
    output_format = "json"
    if data.get("output") is not None:
        raw = data["output"]
        _require(isinstance(raw, dict), "output", "must be an object")
        output_path = raw.get("path")
        output_format = raw.get("format", "json")
        _require(output_format in ("json", "csv"), "output.format", "must be json or csv")
    return RunConfig(map_spec, ladder, thresholds, seed, output_path, output_format)


def default_config():
    """Fallback configuration: the dirac map on the default 32-ladder."""
    return RunConfig(MapSpec("dirac"), default_ladder(32), ClassifyThresholds(), DEFAULT_SEED)


def config_with_overrides(config, seed=None, stages=None, output_path=None, output_format=None):
    ladder = config.ladder
    if stages is not None:
        try:
            ladder = RefinementLadder(tuple(default_stage(n) for n in stages))
        except InvalidConfigError as exc:
            raise InvalidConfigError(f"stages: {exc}") from exc
    return RunConfig(
        map_spec=config.map_spec,
        ladder=ladder,
        thresholds=config.thresholds,
        seed=config.seed if seed is None else seed,
        output_path=config.output_path if output_path is None else output_path,
        output_format=config.output_format if output_format is None else output_format,
    )


def _echo_map(spec):
    echo = {"kind": spec.kind}
    if spec.weight is not None:
        echo["weight"] = expr_to_string(spec.weight)
    if spec.bump_support is not None:
        echo["bump_support"] = list(spec.bump_support)
    if spec.custom_kernel is not None:
        echo["custom_kernel"] = spec.custom_kernel
    return echo


def _echo_config(config):
    thresholds = config.thresholds
    return {
        "map": _echo_map(config.map_spec),
        "ladder": {
            "stages": [
                {"N": s.truncation, "L": s.half_width, "panels": s.panels, "order": s.order}
                for s in config.ladder.stages
            ]
        },
        "thresholds": {name: getattr(thresholds, name) for name in THRESHOLD_FIELDS},
        "seed": config.seed,
        "output": {"path": config.output_path, "format": config.output_format},
    }


def _stage_rows(report):
    return tuple(
        {
            "N": s.truncation,
            "L": s.half_width,
            "nodes": s.node_count,
            "A": s.lower,
            "B": s.upper,
            "sigma_min": s.sigma_min,
            "sigma_max": s.sigma_max,
            "total": s.total,
            "mu_independent": s.mu_independent,
        }
        for s in report.stages
    )


def _final_kernel(config):
    stage = config.ladder.final_stage
    return sample_kernel(config.map_spec, stage_grid(stage), stage.truncation)


def _dual_section(config):
    kernel = _final_kernel(config)
    pair = canonical_dual(kernel, trials=20, seed=config.seed)
    lower, upper = dual_bounds(pair)
    return {"A_theta": lower, "B_theta": upper, "defect": pair.duality_defect}


def _reconstruct_section(config):
    kernel = _final_kernel(config)
    pair = canonical_dual(kernel, trials=20, seed=config.seed)
    lower, upper = dual_bounds(pair)
    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for _ in range(20):
        f = random_test_function(kernel.truncation, rng)
        worst = max(worst, reconstruct(pair, f)[1], reconstruct(pair, f, swap_roles=True)[1])
    return {"A_theta": lower, "B_theta": upper, "defect": worst}


def _moment_section(config):
    stage = config.ladder.final_stage
    if config.map_spec.kind == "custom":
        kernel = _final_kernel(config)
        if kernel.node_count > kernel.truncation:
            raise InvalidConfigError(
                "moment-solve on a custom kernel needs node count <= truncation"
            )
    else:
        kernel = sample_kernel(
            config.map_spec, coarse_synthesis_grid(stage.truncation), stage.truncation
        )
    score, worst = rf_diagnostic(kernel, kernel.grid.panels)
    return {"score": score, "worst_residual": worst}


def run(command, config):
    """Execute one CLI command and assemble its report document."""
    if command not in COMMANDS:
        raise InvalidConfigError(f"unknown command {command!r}; expected one of {COMMANDS}")
    started = time.perf_counter()
    stages = ()
    labels = None
    dual = None
    moment = None
    checks = None
    if command in ("classify", "bounds", "sweep"):
        report = classify(config.map_spec, config.ladder, config.thresholds)
        stages = _stage_rows(report)
        if command in ("classify", "sweep"):
            labels = tuple(report.labels)
    if command == "dual":
        dual = _dual_section(config)
    if command == "reconstruct":
        dual = _reconstruct_section(config)
    if command in ("moment-solve", "sweep"):
        moment = _moment_section(config)
    if command == "sweep":
        from .errors import NotAFrameError

        try:
            dual = _dual_section(config)
        except NotAFrameError:
            dual = None
    if command == "demo":
        results = acceptance.run_all()
        checks = tuple(
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        )
    return ReportDocument(
        config=_echo_config(config),
        stages=stages,
        labels=labels,
        dual=dual,
        moment=moment,
        checks=checks,
        timing=time.perf_counter() - started,
    )


def _json_value(value):
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return "null"
        return f"{value:.17g}"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_json_value(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit(report, output_format="json"):
    """Serialize a report: JSON with stable key order, or CSV of the stages."""
    if output_format == "json":
        document = {
            "config": report.config,
            "stages": list(report.stages),
            "labels": list(report.labels) if report.labels is not None else None,
            "dual": report.dual,
            "moment": report.moment,
        }
        if report.checks is not None:
            document["checks"] = list(report.checks)
        document["timing"] = report.timing
        return (_json_value(document) + "\n").encode()
    if output_format == "csv":
        header = "N,L,nodes,A,B,sigma_min,sigma_max,total,mu_independent"
        lines = [header]
        for row in report.stages:
            lines.append(
                ",".join(
                    [
                        str(row["N"]),
                        f"{row['L']:.17g}",
                        str(row["nodes"]),
                        f"{row['A']:.17g}",
                        f"{row['B']:.17g}",
                        f"{row['sigma_min']:.17g}",
                        f"{row['sigma_max']:.17g}",
                        "true" if row["total"] else "false",
                        "true" if row["mu_independent"] else "false",
                    ]
                )
            )
        return ("\n".join(lines) + "\n").encode()
    raise InvalidConfigError(f"unknown output format {output_format!r}")


def write_report(report, path, output_format="json"):
    """Atomic write: serialize to a sibling temp file, then rename over."""
    payload = emit(report, output_format)
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, path)
