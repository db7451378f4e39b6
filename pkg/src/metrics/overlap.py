from typing import Iterable, Optional

import numpy as np

from src.entities.architecture import Architecture
from src.errors import MetricError


def overlap_matrix(a: Architecture, b: Architecture, files: Optional[Iterable[str]] = None) -> np.ndarray:
    """Counts |A_i & B_j| over `files` (default: the shared files), rows/columns in name order."""
    rows = {name: i for i, name in enumerate(a.names)}
    cols = {name: j for j, name in enumerate(b.names)}
    la, lb = a.labels(), b.labels()
    matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for f in (a.universe & b.universe) if files is None else files:
        matrix[rows[la[f]], cols[lb[f]]] += 1
    return matrix


def require_same_universe(a: Architecture, b: Architecture, metric: str) -> None:
    if a.universe != b.universe:
        raise MetricError(
            f"{metric} needs architectures over the same files "
            f"({len(a.universe - b.universe)} only in A, {len(b.universe - a.universe)} only in B)"
        )
