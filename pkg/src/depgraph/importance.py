import logging
from dataclasses import replace
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from src.entities.model import DependencyGraph, EntityKind
from src.errors import PipelineError

logger = logging.getLogger(__name__)


def function_subgraph(g: DependencyGraph) -> DependencyGraph:
    functions = tuple(e for e in g.entities if e.kind is EntityKind.FUNCTION)
    ids = {e.id for e in functions}
    edges = tuple(d for d in g.edges if d.src in ids and d.dst in ids)
    return DependencyGraph(functions, edges)


def inverse_pagerank(
    g: DependencyGraph, d: float = 0.85, tol: float = 1e-9, max_iter: int = 200
) -> dict[str, float]:
    """Rank functions by what they reach: score flows from callees back to callers.

    IPR(i) = d * sum_{j in succ(i)} IPR(j) / in_degree(j) + (1 - d) / N, no dangling term.
    Parallel edges count once and self-loops are ignored.
    """
    nodes = sorted(g.entity_map)
    if not nodes:
        raise PipelineError("DEPGRAPH", "no functions to rank")
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)

    pairs = sorted({(index[e.src], index[e.dst]) for e in g.edges if e.src != e.dst})
    if pairs:
        src, dst = (np.array(column) for column in zip(*pairs))
    else:
        src = dst = np.array([], dtype=int)
    in_degree = np.bincount(dst, minlength=n).astype(float)
    data = 1.0 / in_degree[dst] if pairs else np.array([], dtype=float)
    M = sp.csr_matrix((data, (src, dst)), shape=(n, n))

    scores = np.full(n, 1.0 / n)
    teleport = (1.0 - d) / n
    for iteration in range(1, max_iter + 1):
        updated = d * (M @ scores) + teleport
        delta = np.abs(updated - scores).max()
        scores = updated
        if delta < tol:
            break
    else:
        logger.warning(f"[DEPGRAPH] inverse pagerank stopped at max_iter={max_iter} (delta {delta:.3g})")
    logger.debug(f"[DEPGRAPH] inverse pagerank over {n} functions converged after {iteration} iterations")
    return {node: float(scores[i]) for node, i in index.items()}


def propagate_importance(g: DependencyGraph, fn_scores: Mapping[str, float]) -> DependencyGraph:
    """Set importance on every entity from the function scores.

    Files and classes sum the functions they contain transitively; variables and other
    members split their parent's importance evenly with the parent's other non-function members.
    """
    missing = [e.id for e in g.entities if e.kind is EntityKind.FUNCTION and e.id not in fn_scores]
    if missing:
        raise PipelineError("DEPGRAPH", f"no score for {len(missing)} functions, e.g. '{missing[0]}'")

    mass: dict[str, float] = {}

    def function_mass(entity_id: str) -> float:
        if entity_id in mass:
            return mass[entity_id]
        stack, order = [entity_id], []
        while stack:
            current = stack.pop()
            if current in mass:
                continue
            order.append(current)
            stack.extend(c for c in g.children.get(current, ()) if c not in mass)
        for current in reversed(order):
            own = fn_scores[current] if g.entity(current).kind is EntityKind.FUNCTION else 0.0
            mass[current] = own + sum(mass[c] for c in g.children.get(current, ()))
        return mass[entity_id]

    importance: dict[str, float] = {}
    queue = list(g.file_ids)
    for file_id in queue:
        importance[file_id] = function_mass(file_id)
    while queue:
        owner = queue.pop()
        members = [g.entity(c) for c in g.children.get(owner, ())]
        shared_by = sum(1 for m in members if m.kind is not EntityKind.FUNCTION)
        for member in members:
            if member.kind is EntityKind.FUNCTION:
                importance[member.id] = fn_scores[member.id]
            elif member.kind is EntityKind.CLASS:
                importance[member.id] = function_mass(member.id)
            else:
                importance[member.id] = importance[owner] / shared_by
            queue.append(member.id)

    return g.with_entities(replace(e, importance=importance.get(e.id, 0.0)) for e in g.entities)


def uniform_importance(g: DependencyGraph, value: float = 1.0) -> DependencyGraph:
    return g.with_entities(replace(e, importance=value) for e in g.entities)


def compute_importance(g: DependencyGraph, damping: float = 0.85, tol: float = 1e-9, max_iter: int = 200) -> DependencyGraph:
    """Inverse PageRank over the function graph, propagated to every entity."""
    functions = function_subgraph(g)
    if not functions.entities:
        logger.warning("[DEPGRAPH] graph has no functions; every importance is 0")
        return uniform_importance(g, 0.0)
    scores = inverse_pagerank(functions, damping, tol, max_iter)
    return propagate_importance(g, scores)
