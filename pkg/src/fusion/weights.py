from typing import Optional

from src.entities.architecture import Architecture
from src.entities.results import FusionWeights
from src.metrics.a2a import a2a_adj


def _similarity(reference: Architecture, other: Optional[Architecture]) -> float:
    if other is None:
        return 0.0
    return min(1.0, max(0.0, a2a_adj(reference, other) / 100.0))


def assign_weights(
    a_dep: Architecture, a_text: Optional[Architecture], a_folder: Optional[Architecture]
) -> FusionWeights:
    """Weight each supporting source by how closely its recovery agrees with the dependency one.

    A disabled source (None) gets weight 0.
    """
    return FusionWeights(w_text=_similarity(a_dep, a_text), w_folder=_similarity(a_dep, a_folder))
