"""Run configuration: a versioned YAML file plus dotted-name overrides.

The file validates to a pipeline and an I/O plan before any data is read;
unknown keys and unknown versions are rejected rather than ignored.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import yaml

from .augment import AugmentationSpec
from .errors import ConfigError
from .pipeline import PipelineConfig
from .rescale import RescaleSpec
from .windows import parse_window

CONFIG_VERSION = 1

# every leaf key, its expected type, and its default; None means required
_SCHEMA = {
    "input.path": (str, None),
    "input.format": (str, "infer"),  # ts | csv | infer
    "input.split": (str, "infer"),  # train | test | unsplit | infer
    "input.dimension": (int, 0),  # used by --dry-run, 0 = unknown
    "input.length": (int, 0),
    "pipeline.augmentation": (str, ""),
    "pipeline.window": (str, "global"),
    "pipeline.transform": (str, "signature"),
    "pipeline.depth": (int, None),
    "pipeline.rescale": (str, "none"),
    "pipeline.feature_limit": (int, 100000),
    "pipeline.layout": (str, "flat"),
    "normalization.enabled": (bool, False),
    "normalization.stats_path": (str, ""),
    "output.path": (str, None),
    "output.format": (str, "csv"),  # csv | ndjson
    "parallelism.workers": (int, 0),  # 0 = use all available cores
    "seed": (int, 0),
}

OVERRIDE_KEYS = tuple(_SCHEMA)


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    input_format: str
    input_split: str
    input_dimension: int
    input_length: int
    pipeline: PipelineConfig
    normalize: bool
    stats_path: str
    output_path: str
    output_format: str
    workers: int
    seed: int


def _flatten(tree, prefix=""):
    flat = {}
    for key, value in tree.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def _coerce(key, value):
    want, _ = _SCHEMA[key]
    if value is None:
        return None
    if want is bool:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false"):
            return value.lower() == "true"
        raise ConfigError(f"{key} must be a boolean, got {value!r}")
    if want is int:
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{key} must be an integer, got {value!r}") from None
    return str(value)


def load_run_config(path, overrides=None) -> RunConfig:
    """Load and validate a config file, applying dotted-key overrides."""
    try:
        with open(path, encoding="utf-8") as fh:
            tree = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file is not valid YAML: {exc}") from None
    if not isinstance(tree, dict):
        raise ConfigError("config file must contain a mapping of sections")

    version = tree.pop("version", None)
    if version != CONFIG_VERSION:
        raise ConfigError(
            f"unsupported config version {version!r}; this build reads version "
            f"{CONFIG_VERSION}"
        )

    flat = _flatten(tree)
    unknown = set(flat) - set(_SCHEMA)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, value in (overrides or {}).items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown override key {key!r}")
        flat[key] = value

    values = {}
    for key, (want, default) in _SCHEMA.items():
        if key in flat and flat[key] is not None:
            values[key] = _coerce(key, flat[key])
        elif default is not None:
            values[key] = default
        else:
            raise ConfigError(f"missing required config key {key!r}")

    return build_run_config(values)


def build_run_config(values: dict) -> RunConfig:
    """Assemble a validated RunConfig from flat key/value pairs."""
    if values["input.format"] not in ("ts", "csv", "infer"):
        raise ConfigError(
            f"input.format must be ts, csv or infer, got {values['input.format']!r}"
        )
    if values["input.split"] not in ("train", "test", "unsplit", "infer"):
        raise ConfigError(
            f"input.split must be train, test, unsplit or infer, "
            f"got {values['input.split']!r}"
        )
    if values["output.format"] not in ("csv", "ndjson"):
        raise ConfigError(
            f"output.format must be csv or ndjson, got {values['output.format']!r}"
        )
    workers = values["parallelism.workers"]
    if workers < 0:
        raise ConfigError(f"parallelism.workers must be >= 0, got {workers}")
    if workers == 0:
        workers = os.cpu_count() or 1

    seed = values["seed"]
    pipeline = PipelineConfig(
        depth=values["pipeline.depth"],
        augmentation=AugmentationSpec.parse(values["pipeline.augmentation"], seed=seed),
        window=parse_window(values["pipeline.window"]),
        transform=values["pipeline.transform"],
        rescale=RescaleSpec(values["pipeline.rescale"]),
        feature_limit=values["pipeline.feature_limit"],
        layout=values["pipeline.layout"],
    )
    return RunConfig(
        input_path=values["input.path"],
        input_format=values["input.format"],
        input_split=values["input.split"],
        input_dimension=values["input.dimension"],
        input_length=values["input.length"],
        pipeline=pipeline,
        normalize=values["normalization.enabled"],
        stats_path=values["normalization.stats_path"],
        output_path=values["output.path"],
        output_format=values["output.format"],
        workers=workers,
        seed=seed,
    )


def resolve_input_format(config: RunConfig) -> str:
    if config.input_format != "infer":
        return config.input_format
    lower = config.input_path.lower()
    if lower.endswith(".ts"):
        return "ts"
    if lower.endswith(".csv"):
        return "csv"
    raise ConfigError(
        f"cannot infer input format from {config.input_path!r}; "
        "set input.format to ts or csv"
    )
