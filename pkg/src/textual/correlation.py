from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Mapping, Sequence

import numpy as np

from src.entities.text import TopicEmbedding
from src.errors import PipelineError

BLOCK_ROWS = 512


def topic_correlation(a: TopicEmbedding, b: TopicEmbedding) -> float:
    """Pearson correlation of two topic distributions; 0 when either is constant."""
    if a.k != b.k:
        raise PipelineError("TEXTUAL", f"embeddings of different length ({a.k} vs {b.k})")
    x, y = a.as_array(), b.as_array()
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0
    return float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))


@dataclass(frozen=True, eq=False)
class TopicCorrelations:
    """Pearson correlations between the topic embeddings of an ordered file list.

    Only the n x K embeddings are held; correlations are computed when asked for, so memory
    stays linear in the number of files.
    """

    files: tuple[str, ...]
    embeddings: np.ndarray

    @classmethod
    def from_embeddings(cls, embeddings: Sequence[TopicEmbedding]) -> "TopicCorrelations":
        ordered = sorted(embeddings, key=lambda e: e.file_id)
        if len({e.k for e in ordered}) > 1:
            raise PipelineError("TEXTUAL", "embeddings of different length")
        k = ordered[0].k if ordered else 1
        data = np.array([e.as_array() for e in ordered], dtype=float).reshape(len(ordered), k)
        return cls(tuple(e.file_id for e in ordered), data)

    @classmethod
    def neutral(cls, files: Sequence[str]) -> "TopicCorrelations":
        return cls(tuple(sorted(files)), np.ones((len(files), 1)))

    @cached_property
    def index(self) -> dict[str, int]:
        return {f: i for i, f in enumerate(self.files)}

    @cached_property
    def unit_rows(self) -> np.ndarray:
        """Centred rows scaled to unit length; constant rows are zero, so they correlate 0 with everything."""
        centred = self.embeddings - self.embeddings.mean(axis=1, keepdims=True)
        norms = np.linalg.norm(centred, axis=1)
        unit = np.zeros_like(centred)
        varying = np.ptp(self.embeddings, axis=1) > 0 if len(self.files) else np.zeros(0, dtype=bool)
        unit[varying] = centred[varying] / norms[varying, None]
        return unit

    def get(self, a: str, b: str) -> float:
        index = self.index
        if a not in index or b not in index:
            return 0.0
        rows = self.unit_rows
        return float(np.clip(rows[index[a]] @ rows[index[b]], -1.0, 1.0))

    def between(self, pairs: Sequence[tuple[str, str]]) -> np.ndarray:
        """Correlations of many pairs at once; pairs with an unknown file get 0."""
        index = self.index
        known = np.array([a in index and b in index for a, b in pairs], dtype=bool)
        if not known.any():
            return np.zeros(len(pairs))
        rows = self.unit_rows
        left = np.array([index.get(a, 0) for a, _ in pairs])
        right = np.array([index.get(b, 0) for _, b in pairs])
        values = np.clip(np.einsum("ij,ij->i", rows[left], rows[right]), -1.0, 1.0)
        return np.where(known, values, 0.0)

    def _row_blocks(self, block: int) -> Iterator[tuple[int, np.ndarray]]:
        rows = self.unit_rows
        for start in range(0, len(self.files), block):
            yield start, rows[start:start + block] @ rows.T

    def pairs_above(self, threshold: float, block: int = BLOCK_ROWS) -> list[tuple[str, str]]:
        """Unordered pairs (i < j in file order) whose correlation exceeds `threshold`."""
        found = []
        for start, scores in self._row_blocks(block):
            rows, cols = np.nonzero(scores > threshold)
            rows = rows + start
            upper = cols > rows
            found.extend((self.files[i], self.files[j]) for i, j in zip(rows[upper], cols[upper]))
        return found

    def condensed_distances(self) -> np.ndarray:
        """1 - corr for every pair i < j, in scipy's condensed order."""
        n = len(self.files)
        rows = self.unit_rows
        distances = np.empty(n * (n - 1) // 2)
        offset = 0
        for i in range(n - 1):
            span = n - 1 - i
            distances[offset:offset + span] = 1.0 - rows[i + 1:] @ rows[i]
            offset += span
        return np.clip(distances, 0.0, 2.0, out=distances)

    def to_json_dict(self) -> dict[str, Any]:
        return {"files": list(self.files), "embeddings": self.embeddings.tolist()}

    @classmethod
    def from_json_dict(cls, payload: Mapping[str, Any]) -> "TopicCorrelations":
        files = tuple(payload["files"])
        data = np.array(payload["embeddings"], dtype=float)
        return cls(files, data.reshape(len(files), -1) if files else np.ones((0, 1)))
