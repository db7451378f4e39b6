"""Search for dependency-type weights that maximize clustering quality over a corpus."""
import logging
import math
from typing import Sequence

import numpy as np

from src.cluster.modularity import greedy_modularity, modularity
from src.depgraph.importance import compute_importance
from src.entities.file_graph import FileGraph
from src.entities.model import DEPENDENCY_TYPES, DependencyGraph
from src.entities.type_weights import MAX_WEIGHT, MIN_WEIGHT, TypeWeights
from src.errors import PipelineError

logger = logging.getLogger(__name__)

SEARCHED_TYPES = tuple(t for t in DEPENDENCY_TYPES if t != "MixIn")
MIN_IMPROVEMENT = 1e-5


class TypeBasis:
    """File-level edge weights of one graph, split per dependency type.

    File edge weights are linear in the type weights, so a candidate is scored with one
    matrix product instead of re-weighing every entity edge.
    """

    def __init__(self, g: DependencyGraph):
        entities = g.entity_map
        column = {t: i for i, t in enumerate(DEPENDENCY_TYPES)}
        rows: dict[tuple[str, str], np.ndarray] = {}
        for edge in g.edges:
            src, dst = entities[edge.src], entities[edge.dst]
            if src.file_id == dst.file_id:
                continue
            key = (src.file_id, dst.file_id)
            if key not in rows:
                rows[key] = np.zeros(len(DEPENDENCY_TYPES))
            rows[key][column[edge.dep_type]] += edge.multiplicity * (src.importance + dst.importance) / 2.0
        self.nodes = g.file_ids
        self.keys = sorted(rows)
        self.basis = np.array([rows[k] for k in self.keys]) if rows else np.zeros((0, len(DEPENDENCY_TYPES)))

    def file_graph(self, vector: np.ndarray) -> FileGraph:
        return FileGraph(self.nodes, dict(zip(self.keys, (self.basis @ vector).tolist())))


class CorpusObjective:
    def __init__(self, corpus: Sequence[DependencyGraph], resolution: float, damping: float, tol: float, max_iter: int):
        self.resolution = resolution
        self.bases = [TypeBasis(compute_importance(g, damping, tol, max_iter)) for g in corpus]
        self.evaluations = 0

    def __call__(self, vector: np.ndarray) -> float:
        self.evaluations += 1
        scores = []
        for basis in self.bases:
            fg = basis.file_graph(vector)
            if fg.total_weight <= 0:
                scores.append(0.0)
                continue
            scores.append(modularity(fg, greedy_modularity(fg, self.resolution), self.resolution))
        return float(np.mean(scores))


def _as_vector(searched: np.ndarray) -> np.ndarray:
    values = dict(zip(SEARCHED_TYPES, searched))
    return np.array([values.get(t, 1.0) for t in DEPENDENCY_TYPES])


def _as_weights(searched: np.ndarray) -> TypeWeights:
    vector = np.clip(_as_vector(searched), MIN_WEIGHT, MAX_WEIGHT)
    return TypeWeights({t: round(float(w), 6) for t, w in zip(DEPENDENCY_TYPES, vector)})


def optimize_type_weights(
    corpus: Sequence[DependencyGraph],
    budget: int = 500,
    seed: int = 42,
    patience: int = 50,
    resolution: float = 1.0,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 200,
) -> TypeWeights:
    """Random sampling of the weight box, then adaptive log-space refinement of the best sample.

    Stops when the budget is spent or, during refinement, after `patience` evaluations in a row
    that improve the best mean modularity by less than 1e-5. MixIn stays at 1.0.
    """
    if not corpus:
        raise PipelineError("DEPGRAPH", "type-weight optimization needs at least one graph")
    if budget < 1:
        raise PipelineError("DEPGRAPH", "optimization budget must be at least 1")

    objective = CorpusObjective(corpus, resolution, damping, tol, max_iter)
    rng = np.random.default_rng(seed)
    low, high = math.log(MIN_WEIGHT), math.log(MAX_WEIGHT)
    dims = len(SEARCHED_TYPES)

    best_log = rng.uniform(low, high, dims)
    best_score = objective(_as_vector(np.exp(best_log)))
    logger.info(f"[DEPGRAPH] evaluation 1/{budget}: MQ {best_score:.5f}")

    n_random = max(1, budget // 4)
    stale = 0
    for evaluation in range(2, budget + 1):
        if evaluation <= n_random:
            candidate = rng.uniform(low, high, dims)
        else:
            progress = (evaluation - n_random) / max(1, budget - n_random)
            step = 0.05 + 0.95 * (1.0 - progress)
            candidate = np.clip(best_log + rng.normal(0.0, step, dims), low, high)

        score = objective(_as_vector(np.exp(candidate)))
        improvement = score - best_score
        if score > best_score:
            best_log, best_score = candidate, score
            logger.info(f"[DEPGRAPH] evaluation {evaluation}/{budget}: best MQ {best_score:.5f}")

        if evaluation > n_random:
            stale = 0 if improvement >= MIN_IMPROVEMENT else stale + 1
            if stale >= patience:
                logger.info(f"[DEPGRAPH] no improvement >= {MIN_IMPROVEMENT} in {patience} evaluations; stopping")
                break

    logger.info(f"[DEPGRAPH] optimization done after {objective.evaluations} evaluations, MQ {best_score:.5f}")
    return _as_weights(np.exp(best_log))
