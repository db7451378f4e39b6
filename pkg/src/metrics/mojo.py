import numpy as np
from scipy.optimize import linear_sum_assignment

from src.entities.architecture import Architecture
from src.errors import MetricError
from src.metrics.overlap import overlap_matrix, require_same_universe


def mojo_distance(a: Architecture, b: Architecture) -> int:
    """Minimum number of move and join operations turning A into B.

    Every cluster of A is tagged with its majority group(s) in B. Moves are the elements
    outside the tagged group; joins are the clusters of A left over by a maximum matching
    between clusters and tags.
    """
    require_same_universe(a, b, "MoJo")
    if not a.universe:
        return 0
    counts = overlap_matrix(a, b)
    best = counts.max(axis=1)
    moves = int((counts.sum(axis=1) - best).sum())
    tags = (counts == best[:, None]).astype(np.int64)
    rows, cols = linear_sum_assignment(tags, maximize=True)
    matched = int(tags[rows, cols].sum())
    return moves + len(a) - matched


def max_mojo(b: Architecture) -> int:
    """Largest MoJo distance any partition of B's universe can have from B."""
    n = len(b.universe)
    sizes = sorted((len(m) for m in b.groups), reverse=True) + [0]
    kept = sizes[0]
    surplus = 0
    for t in range(1, len(sizes)):
        surplus += sizes[t - 1] - 1
        if surplus >= sizes[t]:
            kept = min(kept, t + sizes[t])
    return n - kept


def mojo_fm(a: Architecture, b: Architecture) -> float:
    distance = mojo_distance(a, b)
    worst = max_mojo(b)
    if worst == 0:
        if distance == 0:
            return 100.0
        raise MetricError("MoJoFM is undefined: no partition can differ from the target")
    return (1.0 - distance / worst) * 100.0
