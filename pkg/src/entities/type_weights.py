from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from src.entities.model import DEPENDENCY_TYPES

DEFAULT_WEIGHTS_FILE = Path(__file__).resolve().parent.parent / "resources" / "type_weights.txt"

MIN_WEIGHT = 0.1
MAX_WEIGHT = 10.0


@dataclass(frozen=True)
class TypeWeights:
    weights: Mapping[str, float]

    def __post_init__(self):
        missing = [t for t in DEPENDENCY_TYPES if t not in self.weights]
        if missing:
            raise ValueError(f"type weights missing for: {', '.join(missing)}")
        unknown = sorted(set(self.weights) - set(DEPENDENCY_TYPES))
        if unknown:
            raise ValueError(f"unknown dependency types: {', '.join(unknown)}")
        for name, value in self.weights.items():
            if not MIN_WEIGHT <= value <= MAX_WEIGHT:
                raise ValueError(f"weight of {name} = {value} outside [{MIN_WEIGHT}, {MAX_WEIGHT}]")

    def __getitem__(self, dep_type: str) -> float:
        return self.weights[dep_type]

    def __contains__(self, dep_type: str) -> bool:
        return dep_type in self.weights

    @classmethod
    def uniform(cls, value: float = 1.0) -> "TypeWeights":
        return cls({t: value for t in DEPENDENCY_TYPES})

    @classmethod
    def default(cls) -> "TypeWeights":
        return cls.load(DEFAULT_WEIGHTS_FILE)

    @classmethod
    def parse(cls, text: str) -> "TypeWeights":
        weights: dict[str, float] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"line {number}: expected 'TYPE = weight'")
            try:
                weights[name.strip()] = float(value)
            except ValueError as e:
                raise ValueError(f"line {number}: '{value.strip()}' is not a number") from e
        return cls(weights)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "TypeWeights":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dump(self) -> str:
        return "".join(f"{t} = {self.weights[t]:.6g}\n" for t in DEPENDENCY_TYPES)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dump(), encoding="utf-8")
