import csv
import logging
from pathlib import Path
from typing import Iterable, Sequence, Union

from src.entities.architecture import Architecture
from src.entities.results import METRIC_FIELDS, MetricReport
from src.errors import MetricError
from src.metrics.a2a import a2a, a2a_adj
from src.metrics.ari import ari
from src.metrics.c2c import c2c_cvg
from src.metrics.mojo import mojo_fm

logger = logging.getLogger(__name__)

SWEEP_THRESHOLDS = (0.66, 0.50, 0.33, 0.10)
CSV_HEADER = ("project",) + METRIC_FIELDS


def compare(
    recovered: Architecture, truth: Architecture, th: float = 0.66, thresholds: Sequence[float] = ()
) -> MetricReport:
    """All five metrics of `recovered` against `truth`.

    MoJoFM and ARI are computed on the shared files; the other metrics use both
    architectures whole.
    """
    shared = recovered.universe & truth.universe
    if not shared:
        raise MetricError("the architectures share no files")
    if shared != recovered.universe or shared != truth.universe:
        logger.warning(
            f"[METRICS] universes differ: {len(shared)} shared, "
            f"{len(recovered.universe - shared)} only recovered, {len(truth.universe - shared)} only in ground truth"
        )
    a, b = recovered.restrict(shared), truth.restrict(shared)
    return MetricReport(
        mojofm=mojo_fm(a, b),
        a2a=a2a(recovered, truth),
        c2c_cvg=c2c_cvg(recovered, truth, th),
        ari=ari(a, b) * 100.0,
        a2a_adj=a2a_adj(recovered, truth),
        c2c_threshold=th,
        c2c_extra={t: c2c_cvg(recovered, truth, t) for t in thresholds},
    )


def format_table(rows: Iterable[tuple[str, MetricReport]]) -> str:
    rows = list(rows)
    header = ["project", "MoJoFM", "a2a", "c2c_cvg", "ARI", "a2a_adj"]
    body = [[name] + [f"{getattr(r, f):.2f}" for f in METRIC_FIELDS] for name, r in rows]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in [header] + body]
    for name, report in rows:
        for t, value in sorted(report.c2c_extra.items(), reverse=True):
            lines.append(f"{name}: c2c_cvg@{t:.2f} = {value:.2f}")
    return "\n".join(lines)


def write_csv(rows: Iterable[tuple[str, MetricReport]], path: Union[str, Path]) -> None:
    path = Path(path)
    new_file = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if new_file:
            writer.writerow(CSV_HEADER)
        for name, report in rows:
            writer.writerow(report.row(name))
