import numpy as np

from src.entities.architecture import Architecture
from src.metrics.overlap import overlap_matrix


def c2c_cvg(a: Architecture, b: Architecture, th: float = 0.66) -> float:
    """Share of A's clusters that some cluster of B overlaps by at least th of the larger size."""
    if not 0 < th <= 1:
        raise ValueError(f"threshold {th} outside (0, 1]")
    if len(a) == 0:
        return 0.0
    counts = overlap_matrix(a, b, a.universe & b.universe)
    size_a = np.array([len(m) for m in a.groups])[:, None]
    size_b = np.array([len(m) for m in b.groups])[None, :]
    covered = (counts >= th * np.maximum(size_a, size_b)).any(axis=1) if len(b) else np.zeros(len(a), bool)
    return float(covered.sum()) / len(a) * 100.0
