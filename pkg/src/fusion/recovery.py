import logging

from scipy.cluster.hierarchy import cut_tree, linkage

from src.cluster.modularity import greedy_modularity
from src.entities.architecture import Architecture
from src.entities.file_graph import FileGraph
from src.errors import PipelineError
from src.textual.correlation import TopicCorrelations

logger = logging.getLogger(__name__)


def recover_dep_only(fg: FileGraph, resolution: float = 1.7) -> Architecture:
    architecture = greedy_modularity(fg, resolution)
    logger.info(f"[FUSION] dependency-only recovery: {len(architecture)} clusters")
    return architecture


def recover_text_only(correlations: TopicCorrelations, k: int) -> Architecture:
    """Complete-linkage agglomeration on 1 - corr, cut at exactly k clusters."""
    files = correlations.files
    if k < 1:
        raise PipelineError("FUSION", f"cannot cut into {k} clusters")
    if k > len(files):
        raise PipelineError("FUSION", f"cannot cut {len(files)} files into {k} clusters")
    if len(files) == 1:
        return Architecture.from_groups([files])

    tree = linkage(correlations.condensed_distances(), method="complete")
    labels = cut_tree(tree, n_clusters=k).ravel()

    groups: dict[int, list[str]] = {}
    for file_id, label in zip(files, labels):
        groups.setdefault(int(label), []).append(file_id)
    architecture = Architecture.from_groups(groups.values())
    logger.info(f"[FUSION] text-only recovery: {len(architecture)} clusters")
    return architecture
