import math

from scipy.optimize import linear_sum_assignment

from src.entities.architecture import Architecture
from src.errors import MetricError
from src.metrics.overlap import overlap_matrix


def shared_moves(a: Architecture, b: Architecture) -> int:
    """Reassignments of shared files under the best one-to-one cluster matching."""
    shared = a.universe & b.universe
    if not shared:
        return 0
    counts = overlap_matrix(a, b)
    rows, cols = linear_sum_assignment(counts, maximize=True)
    return len(shared) - int(counts[rows, cols].sum())


def aco(x: Architecture) -> int:
    """Operations to build X from nothing: add and place every file, add every cluster."""
    return 2 * len(x.universe) + len(x)


def mto(a: Architecture, b: Architecture) -> int:
    added = len(b.universe - a.universe)
    removed = len(a.universe - b.universe)
    return abs(len(a) - len(b)) + added + removed + shared_moves(a, b)


def a2a(a: Architecture, b: Architecture) -> float:
    total = aco(a) + aco(b)
    if total == 0:
        return 100.0
    return (1.0 - mto(a, b) / total) * 100.0


def mto_m_max(n_shared: int, nc_a: int, nc_b: int) -> int:
    top = max(nc_a, nc_b)
    if n_shared <= 0 or top <= 0:
        return 0
    return n_shared - math.ceil(n_shared / top)


def a2a_adj(a: Architecture, b: Architecture) -> float:
    """a2a with reassignment and add/remove costs normalized and weighted separately."""
    if not a.universe and not b.universe:
        raise MetricError("a2a_adj of two empty architectures is undefined")
    n_shared = len(a.universe & b.universe)
    n_diff = len(a.universe ^ b.universe)
    nc_a, nc_b = len(a), len(b)
    delta_nc = abs(nc_a - nc_b)

    scale = n_shared + n_diff + max(nc_a, nc_b)
    alpha = (n_shared + min(nc_a, nc_b)) / scale
    beta = (n_diff + delta_nc) / scale

    worst = mto_m_max(n_shared, nc_a, nc_b)
    reassign = shared_moves(a, b) / worst if worst > 0 else 0.0
    add_remove = (n_diff + delta_nc) / (aco(a) + aco(b))
    return max(0.0, (1.0 - alpha * reassign - beta * add_remove) * 100.0)
