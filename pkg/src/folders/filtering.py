import logging
from collections import defaultdict

from src.entities.architecture import Architecture
from src.entities.file_graph import FileGraph
from src.entities.folder_tree import FolderTree, parent_path

logger = logging.getLogger(__name__)

ROOT_CLUSTER = "ROOT"


def _chain(path: str, root: str) -> list[str]:
    chain = [path]
    while path != root:
        path = parent_path(path)
        chain.append(path)
    return chain


def folder_dependencies(tree: FolderTree, fg: FileGraph) -> tuple[dict[str, float], dict[str, float]]:
    """Weighted (inner, inter) dependency mass of every folder subtree."""
    home = {f: folder.path for folder in tree.folders.values() for f in folder.files}
    inner: dict[str, float] = defaultdict(float)
    inter: dict[str, float] = defaultdict(float)
    for (src, dst), weight in fg.edges.items():
        if src not in home or dst not in home:
            continue
        a, b = set(_chain(home[src], tree.root)), set(_chain(home[dst], tree.root))
        for path in a & b:
            inner[path] += weight
        for path in a ^ b:
            inter[path] += weight
    return inner, inter


def filter_folders(tree: FolderTree, fg: FileGraph) -> FolderTree:
    """Merge every non-root folder with more outside than inside dependency weight into its parent.

    Leaves are decided first. Merging keeps each surviving folder's subtree file set, so the
    masses are computed once on the input tree.
    """
    inner, inter = folder_dependencies(tree, fg)
    filtered = tree
    merged = []
    for folder in list(tree.post_order()):
        if folder.path == tree.root:
            continue
        if inter[folder.path] > inner[folder.path]:
            filtered = filtered.merge_into_parent(folder.path)
            merged.append(folder.path)
    logger.info(f"[FOLDERS] merged {len(merged)} of {len(tree.folders) - 1} folders into their parents")
    if merged:
        logger.debug(f"[FOLDERS] merged: {', '.join(merged)}")
    return filtered


def folder_partition(tree: FolderTree) -> Architecture:
    clusters = {
        (ROOT_CLUSTER if folder.path == tree.root else folder.path): folder.files
        for folder in tree.folders.values()
        if folder.files
    }
    return Architecture.from_clusters(clusters)
