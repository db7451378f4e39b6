import os
from pathlib import Path
from typing import Any, Literal, Mapping, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.entities.text import SourceKindWeights
from src.errors import InputError

CONFIG_ENV_VAR = "ARCHFUSE_CONFIG"
DEFAULT_CONFIG_FILE = "config.yaml"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class IprSettings(_Section):
    damping: float = Field(0.85, gt=0, lt=1)
    tol: float = Field(1e-9, gt=0)
    max_iter: int = Field(200, ge=1)


class LdaSettings(_Section):
    topics: int = Field(100, ge=1)
    iterations: int = Field(1000, ge=1)
    alpha: Optional[float] = Field(None, gt=0)
    beta: float = Field(0.01, gt=0)
    quantum: float = Field(0.02, gt=0)
    passes: int = Field(5, ge=1)

    @property
    def effective_alpha(self) -> float:
        return self.alpha if self.alpha is not None else 50.0 / self.topics


class TextWeightSettings(_Section):
    filename: float = Field(3.0, gt=0)
    definition: float = Field(2.0, gt=0)
    comment: float = Field(1.0, gt=0)


class TextSettings(_Section):
    weights: TextWeightSettings = Field(default_factory=TextWeightSettings)
    extra_stop_words: str = ""

    @property
    def stop_words(self) -> frozenset[str]:
        return frozenset(w.strip().lower() for w in self.extra_stop_words.split(",") if w.strip())


class FusionSettings(_Section):
    use_text: bool = True
    use_folder: bool = True
    use_entity_importance: bool = True
    use_type_weights: bool = True
    corr_threshold: float = Field(0.8, ge=-1, le=1)
    coef_t_floor: float = Field(0.05, gt=0)
    folder_clamp: float = Field(0.95, ge=0, lt=1)


class OptimizerSettings(_Section):
    budget: int = Field(500, ge=1)
    patience: int = Field(50, ge=1)
    resolution: float = Field(1.0, gt=0)


class RunConfig(_Section):
    deps: Optional[Path] = None
    deps_format: Literal["canonical", "depends"] = "canonical"
    source_root: Optional[Path] = None
    output_dir: Path = Path("out")
    type_weights: Optional[Path] = None
    resolution: float = Field(1.7, gt=0)
    seed: int = 42
    verbose: bool = True
    log_output: bool = False

    ipr: IprSettings = Field(default_factory=IprSettings)
    lda: LdaSettings = Field(default_factory=LdaSettings)
    text: TextSettings = Field(default_factory=TextSettings)
    fusion: FusionSettings = Field(default_factory=FusionSettings)
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)

    @property
    def source_kind_weights(self) -> SourceKindWeights:
        w = self.text.weights
        return SourceKindWeights(filename=w.filename, definition=w.definition, comment=w.comment)

    @classmethod
    def from_flat(cls, flat: Mapping[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(nest_keys(flat))
        except ValidationError as e:
            raise InputError(f"invalid configuration:\n{e}") from e

    def to_flat(self) -> dict[str, Any]:
        return flatten_keys(self.model_dump(mode="json"))

    def with_overrides(self, **flat: Any) -> "RunConfig":
        merged = self.to_flat()
        merged.update(flat)
        return RunConfig.from_flat(merged)


def nest_keys(flat: Mapping[str, Any]) -> dict[str, Any]:
    nested: dict[str, Any] = {}
    for key, value in flat.items():
        node = nested
        *parents, leaf = key.split(".")
        for part in parents:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise InputError(f"config key '{key}' conflicts with a scalar key")
        node[leaf] = value
    return nested


def flatten_keys(nested: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in nested.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten_keys(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def _read_yaml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            content = yaml.safe_load(file) or {}
    except OSError as e:
        raise InputError(f"cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise InputError(f"config file {path} is not valid YAML: {e}") from e
    if not isinstance(content, dict):
        raise InputError(f"config file {path} must hold a mapping of dotted keys")
    return flatten_keys(content)


def load_config(
    path: Optional[Union[str, Path]] = None, overrides: Optional[Mapping[str, Any]] = None
) -> RunConfig:
    """Defaults < config file < overrides; None-valued overrides are ignored."""
    load_dotenv()
    flat: dict[str, Any] = {}

    explicit = path or os.environ.get(CONFIG_ENV_VAR)
    if explicit:
        flat.update(_read_yaml(Path(explicit)))
    elif Path(DEFAULT_CONFIG_FILE).is_file():
        flat.update(_read_yaml(Path(DEFAULT_CONFIG_FILE)))

    for key, value in (overrides or {}).items():
        if value is not None:
            flat[key] = value
    return RunConfig.from_flat(flat)
