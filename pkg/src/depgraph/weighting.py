import logging
from dataclasses import replace
from typing import Mapping, Union

from src.depgraph.importance import compute_importance, uniform_importance
from src.entities.file_graph import FileGraph
from src.entities.model import DependencyGraph
from src.entities.type_weights import TypeWeights
from src.errors import PipelineError

logger = logging.getLogger(__name__)


def weigh_edges(g: DependencyGraph, tw: Union[TypeWeights, Mapping[str, float]]) -> DependencyGraph:
    """weight = multiplicity * type_weight * (impt(src) + impt(dst)) / 2"""
    entities = g.entity_map
    weighted = []
    for edge in g.edges:
        if edge.dep_type not in tw:
            raise PipelineError("DEPGRAPH", f"no type weight for '{edge.dep_type}'")
        src, dst = entities[edge.src].importance, entities[edge.dst].importance
        if src is None or dst is None:
            raise PipelineError("DEPGRAPH", f"importance not set on edge {edge.src} -> {edge.dst}")
        weighted.append(replace(edge, weight=edge.multiplicity * tw[edge.dep_type] * (src + dst) / 2.0))
    return g.with_edges(weighted)


def aggregate_to_files(g: DependencyGraph) -> FileGraph:
    """Sum cross-file edge weights per file pair; pairs whose total is 0 carry no edge."""
    entities = g.entity_map
    edges: dict[tuple[str, str], float] = {}
    for edge in g.edges:
        if edge.weight is None:
            raise PipelineError("DEPGRAPH", f"edge {edge.src} -> {edge.dst} has no weight")
        src_file, dst_file = entities[edge.src].file_id, entities[edge.dst].file_id
        if src_file == dst_file:
            continue
        edges[(src_file, dst_file)] = edges.get((src_file, dst_file), 0.0) + edge.weight
    return FileGraph.build(g.file_ids, {pair: w for pair, w in edges.items() if w > 0})


def build_file_graph(
    g: DependencyGraph,
    tw: TypeWeights,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 200,
    use_entity_importance: bool = True,
    use_type_weights: bool = True,
) -> FileGraph:
    """Importance, edge weighting and file aggregation with the ablation switches applied."""
    ranked = compute_importance(g, damping, tol, max_iter) if use_entity_importance else uniform_importance(g)
    weights = tw if use_type_weights else TypeWeights.uniform()
    fg = aggregate_to_files(weigh_edges(ranked, weights))
    logger.info(f"[DEPGRAPH] file graph: {len(fg.nodes)} files, {len(fg.edges)} weighted edges")
    return fg
