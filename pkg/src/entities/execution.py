import json
from dataclasses import asdict, dataclass, field
from typing import Dict


@dataclass
class Execution:
    """Provenance of one recovery run: enough to re-run and to audit it."""

    config: Dict = field(default_factory=dict)
    digests: Dict[str, str] = field(default_factory=dict)
    fusion_weights: Dict[str, float] = field(default_factory=dict)
    cluster_count: int = 0
    modularity: float = 0.0
    source_clusters: Dict[str, int] = field(default_factory=dict)
    skipped: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"
