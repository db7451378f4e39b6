import csv
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

from src.entities.architecture import Architecture
from src.entities.config import RunConfig
from src.entities.results import MetricReport
from src.entities.type_weights import TypeWeights
from src.errors import InputError, PipelineError
from src.depgraph.optimizer import optimize_type_weights
from src.metrics.experiments import merge_experiment, nine_cluster_experiment
from src.metrics.report import SWEEP_THRESHOLDS, compare, format_table, write_csv
from src.pipeline.pipeline import Recovery, RecoveryPipeline, load_graph

logger = logging.getLogger(__name__)

EXPERIMENTS = ("merge", "nine-cluster")


def cmd_recover(config: RunConfig) -> Recovery:
    pipeline = RecoveryPipeline(config)
    result = pipeline.recover()
    pipeline.write_outputs(result)
    return result


def read_architecture(path: Union[str, Path]) -> Architecture:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"architecture file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            return Architecture.from_json(text)
        return Architecture.from_rsf(text)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e


def cmd_evaluate(
    recovered: Union[str, Path],
    ground_truth: Union[str, Path],
    th: float = 0.66,
    project: Optional[str] = None,
    csv_path: Optional[Union[str, Path]] = None,
    all_thresholds: bool = False,
) -> MetricReport:
    a, b = read_architecture(recovered), read_architecture(ground_truth)
    report = compare(a, b, th, SWEEP_THRESHOLDS if all_thresholds else ())
    name = project or Path(recovered).stem
    print(format_table([(name, report)]))
    if csv_path is not None:
        write_csv([(name, report)], csv_path)
    return report


def read_manifest(path: Union[str, Path]) -> list[Path]:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"corpus manifest not found: {path}")
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            entry = Path(line)
            entries.append(entry if entry.is_absolute() else path.parent / entry)
    return entries


def cmd_optimize_weights(
    config: RunConfig, manifest: Optional[Union[str, Path]], output: Union[str, Path]
) -> TypeWeights:
    if manifest is None:
        logger.warning("[DEPGRAPH] no corpus manifest given; writing the shipped default weights")
        weights = TypeWeights.default()
    else:
        entries = read_manifest(manifest)
        if not entries:
            raise InputError(f"corpus manifest {manifest} lists no dependency files")
        corpus = [load_graph(entry, config.deps_format) for entry in entries]
        settings = config.optimizer
        weights = optimize_type_weights(
            corpus,
            budget=settings.budget,
            seed=config.seed,
            patience=settings.patience,
            resolution=settings.resolution,
            damping=config.ipr.damping,
            tol=config.ipr.tol,
            max_iter=config.ipr.max_iter,
        )
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    weights.save(output)
    logger.info(f"[DEPGRAPH] type weights written to {output}")
    return weights


def cmd_sweep(
    config: RunConfig, gammas: Sequence[float], output: Optional[Union[str, Path]] = None
) -> list[tuple[float, int]]:
    """Cluster count per resolution; the weighted graph and topic model are computed once."""
    if not gammas:
        raise InputError("sweep needs at least one resolution")
    if any(g <= 0 for g in gammas):
        raise InputError("resolutions must be positive")
    pipeline = RecoveryPipeline(config)
    rows = [(float(gamma), len(pipeline.recover(gamma).architecture)) for gamma in gammas]

    path = Path(output) if output is not None else Path(config.output_dir) / "sweep.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["gamma", "cluster_count"])
        writer.writerows(rows)
    logger.info(f"[PIPELINE] sweep over {len(rows)} resolutions written to {path}")
    return rows


def cmd_experiment(name: str, seed: int = 42, output: Optional[Union[str, Path]] = None) -> list[dict]:
    if name == "merge":
        rows = merge_experiment()
    elif name == "nine-cluster":
        rows = nine_cluster_experiment(seed)
    else:
        raise InputError(f"unknown experiment '{name}' (choose from {', '.join(EXPERIMENTS)})")
    if not rows:
        raise PipelineError("METRICS", f"experiment '{name}' produced no rows")
    if output is not None:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    return rows
