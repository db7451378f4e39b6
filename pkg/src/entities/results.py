from dataclasses import asdict, dataclass, field
from typing import Optional

METRIC_FIELDS = ("mojofm", "a2a", "c2c_cvg", "ari", "a2a_adj")


@dataclass(frozen=True)
class FusionWeights:
    w_text: float = 0.0
    w_folder: float = 0.0

    def __post_init__(self):
        for name in ("w_text", "w_folder"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} = {value} outside [0, 1]")


@dataclass(frozen=True)
class MetricReport:
    """All five similarity scores on a percent scale (ARI in [-100, 100])."""

    mojofm: float
    a2a: float
    c2c_cvg: float
    ari: float
    a2a_adj: float
    c2c_threshold: float = 0.66
    c2c_extra: dict = field(default_factory=dict)

    def row(self, project: str) -> list:
        return [project] + [round(getattr(self, name), 4) for name in METRIC_FIELDS]

    def as_dict(self) -> dict:
        return asdict(self)
