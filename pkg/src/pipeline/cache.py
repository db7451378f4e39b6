import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

logger = logging.getLogger(__name__)


class ArtifactCache:
    """JSON intermediate artifacts under <output_dir>/cache, one file per (kind, key)."""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def _path(self, kind: str, key: str) -> Path:
        return self.directory / f"{kind}-{key[:16]}.json"

    def get(self, kind: str, key: str) -> Optional[Any]:
        path = self._path(kind, key)
        if not path.is_file():
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"[PIPELINE] ignoring unreadable cache entry {path.name}: {e}")
            return None
        if payload.get("key") != key:
            return None
        logger.debug(f"[PIPELINE] cache hit: {path.name}")
        return payload["value"]

    def put(self, kind: str, key: str, value: Any) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        self._path(kind, key).write_text(json.dumps({"key": key, "value": value}), encoding="utf-8")
