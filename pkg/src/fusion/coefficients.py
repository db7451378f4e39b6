import logging

from src.entities.file_graph import FileGraph
from src.entities.folder_tree import FolderTree
from src.entities.results import FusionWeights
from src.textual.correlation import TopicCorrelations

logger = logging.getLogger(__name__)


def coef_t(corr: float, w_text: float, floor: float = 0.05) -> float:
    return max(floor, 1.0 + corr * w_text)


def coef_f(w_folder: float, clamp: float = 0.95) -> float:
    return 1.0 / (1.0 - min(w_folder, clamp))


def apply_text_coefficients(
    fg: FileGraph,
    correlations: TopicCorrelations,
    w_text: float,
    corr_threshold: float = 0.8,
    floor: float = 0.05,
) -> FileGraph:
    """Scale every edge by coef_t and link strongly correlated files that have no edge yet."""
    pairs = list(fg.edges)
    corr = correlations.between(pairs)
    edges = {
        pair: fg.edges[pair] * coef_t(float(value), w_text, floor) for pair, value in zip(pairs, corr)
    }
    if w_text <= 0:
        return fg.with_edges(edges)

    typical = fg.median_positive_weight()
    nodes = set(fg.nodes)
    added = 0
    for a, b in correlations.pairs_above(corr_threshold):
        if a not in nodes or b not in nodes or fg.has_link(a, b):
            continue
        weight = typical * coef_t(correlations.get(a, b), w_text, floor)
        edges[(a, b)] = weight
        edges[(b, a)] = weight
        added += 1
    logger.info(f"[FUSION] text coefficients applied, {added} textual links added")
    return fg.with_edges(edges)


def apply_folder_coefficients(
    fg: FileGraph, filtered_tree: FolderTree, w_folder: float, clamp: float = 0.95
) -> FileGraph:
    """Scale edges between files of the same surviving folder by coef_f."""
    factor = coef_f(w_folder, clamp)
    home = {f: folder.path for folder in filtered_tree.folders.values() for f in folder.files}
    edges = {}
    for (src, dst), weight in fg.edges.items():
        same = src in home and home.get(src) == home.get(dst)
        edges[(src, dst)] = weight * factor if same else weight
    return fg.with_edges(edges)


def fuse(
    fg: FileGraph,
    correlations: TopicCorrelations,
    filtered_tree: FolderTree,
    weights: FusionWeights,
    corr_threshold: float = 0.8,
    floor: float = 0.05,
    clamp: float = 0.95,
) -> FileGraph:
    """Final weight = original * coef_t * coef_f, textual links included."""
    textual = apply_text_coefficients(fg, correlations, weights.w_text, corr_threshold, floor)
    return apply_folder_coefficients(textual, filtered_tree, weights.w_folder, clamp)
