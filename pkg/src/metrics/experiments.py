"""Controlled experiments probing how the metrics react to known distortions."""
import logging
from typing import Optional, Sequence

import numpy as np
from sklearn.cluster import KMeans
from sklearn.datasets import make_blobs

from src.entities.architecture import Architecture
from src.metrics.report import compare

logger = logging.getLogger(__name__)


def merge_ground_truth(large: int = 100, small: int = 10, n_small: int = 66) -> Architecture:
    clusters = {"G00": [f"f{i:04d}" for i in range(large)]}
    start = large
    for k in range(1, n_small + 1):
        clusters[f"G{k:02d}"] = [f"f{i:04d}" for i in range(start, start + small)]
        start += small
    return Architecture.from_clusters(clusters)


def merge_experiment(
    ground_truth: Optional[Architecture] = None, order: Optional[Sequence[str]] = None, th: float = 0.1
) -> list[dict]:
    """Merge clusters one at a time into the largest one and score every step against the truth.

    `order` fixes which clusters are absorbed; by default the smallest go first.
    """
    truth = ground_truth or merge_ground_truth()
    sizes = truth.sizes()
    largest = max(truth.names, key=lambda name: (sizes[name], name))
    if order is None:
        order = sorted((n for n in truth.names if n != largest), key=lambda n: (sizes[n], n))

    clusters = {name: set(members) for name, members in truth.clusters.items()}
    rows = []
    for step in range(len(order) + 1):
        if step:
            clusters[largest] |= clusters.pop(order[step - 1])
        current = Architecture.from_clusters(clusters)
        report = compare(current, truth, th)
        rows.append({"step": step, "clusters": len(current), **{k: v for k, v in report.as_dict().items() if k != "c2c_extra"}})
    logger.info(f"[METRICS] merge experiment: {len(rows)} steps from {len(truth)} clusters")
    return rows


def nine_cluster_points(seed: int = 42, per_cluster: int = 100):
    grid = np.array([(x, y) for x in (0.0, 10.0, 20.0) for y in (0.0, 10.0, 20.0)])
    points, labels = make_blobs(
        n_samples=[per_cluster] * len(grid), centers=grid, cluster_std=0.5, random_state=seed
    )
    return points, labels


def nine_cluster_experiment(seed: int = 42, k_max: int = 30, th: float = 0.66) -> list[dict]:
    """Cluster nine planted blobs with k-means for k = 1..k_max and score each result."""
    points, labels = nine_cluster_points(seed)
    files = [f"p{i:04d}" for i in range(len(points))]
    truth = Architecture.from_labels({f: f"T{label}" for f, label in zip(files, labels)})
    rows = []
    for k in range(1, k_max + 1):
        found = KMeans(n_clusters=k, n_init=10, random_state=seed).fit_predict(points)
        recovered = Architecture.from_labels({f: f"K{label}" for f, label in zip(files, found)})
        report = compare(recovered, truth, th)
        rows.append({"k": k, "clusters": len(recovered), **{m: v for m, v in report.as_dict().items() if m != "c2c_extra"}})
    logger.info(f"[METRICS] nine-cluster experiment: k = 1..{k_max}")
    return rows
