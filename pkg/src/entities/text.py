from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class SourceKind(str, Enum):
    FILENAME = "Filename"
    DEFINITION = "Definition"
    COMMENT = "Comment"


SOURCE_ORDER = {SourceKind.FILENAME: 0, SourceKind.DEFINITION: 1, SourceKind.COMMENT: 2}


@dataclass(frozen=True)
class WordOccurrence:
    file_id: str
    entity_id: Optional[str]
    source_kind: SourceKind
    word: str
    count: int = 1
    weight: Optional[float] = None

    def sort_key(self):
        return (self.file_id, SOURCE_ORDER[self.source_kind], self.word, self.entity_id or "")


@dataclass(frozen=True)
class SourceKindWeights:
    filename: float = 3.0
    definition: float = 2.0
    comment: float = 1.0

    def __post_init__(self):
        for kind in SourceKind:
            if self[kind] <= 0:
                raise ValueError(f"source-kind weight for {kind.value} must be positive")

    def __getitem__(self, kind: SourceKind) -> float:
        return getattr(self, kind.value.lower())


@dataclass(frozen=True)
class TopicEmbedding:
    file_id: str
    distribution: tuple[float, ...]

    def __post_init__(self):
        values = np.asarray(self.distribution, dtype=float)
        if values.size == 0 or (values < 0).any() or abs(values.sum() - 1.0) > 1e-9:
            raise ValueError(f"topic embedding of '{self.file_id}' is not a distribution")

    @property
    def k(self) -> int:
        return len(self.distribution)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.distribution, dtype=float)
