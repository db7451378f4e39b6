from scipy.special import comb

from src.entities.architecture import Architecture
from src.metrics.overlap import overlap_matrix, require_same_universe


def ari(a: Architecture, b: Architecture) -> float:
    """Adjusted Rand Index over the contingency table of cluster intersections."""
    require_same_universe(a, b, "ARI")
    n = len(a.universe)
    counts = overlap_matrix(a, b)
    index = comb(counts, 2).sum()
    sum_a = comb(counts.sum(axis=1), 2).sum()
    sum_b = comb(counts.sum(axis=0), 2).sum()
    expected = sum_a * sum_b / comb(n, 2) if n >= 2 else 0.0
    maximum = (sum_a + sum_b) / 2.0
    if maximum == expected:
        return 1.0
    return float((index - expected) / (maximum - expected))
