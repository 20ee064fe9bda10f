"""
On-disk series cache
One JSON file per recursion key under a cache directory
"""

import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from realbetti.engine.series import TruncatedSeries, series_from_json, series_to_json
from realbetti.schemas import CacheStats
from realbetti.utils.logger import logger


class DiskCache:
    """
    Directory of `<key>.json` files, each holding one truncated series

    Usage:
        cache = DiskCache(settings.cache_dir)
        cache.put("g2a1r2d1N15v1", series)
        cache.get("g2a1r2d1N15v1")
    """

    suffix = ".json"

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}{self.suffix}"

    def __contains__(self, key: str) -> bool:
        return self._path(key).exists()

    def get(self, key: str) -> Optional[TruncatedSeries]:
        """Cached series, or None when missing or unreadable"""
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return series_from_json(path.read_text(encoding="utf-8"))
        except (OSError, ValidationError, ValueError) as e:
            logger.warning(f"Ignoring unreadable cache entry {path.name}: {e}")
            return None

    def put(self, key: str, series: TruncatedSeries) -> None:
        """Write through a temporary file and an atomic rename"""
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=self.directory, prefix=f".{key}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(series_to_json(series))
            os.replace(tmp_name, self._path(key))
        except OSError as e:
            logger.warning(f"Cache write failed for {key}: {e}")
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)

    def clear(self) -> int:
        """Remove every cache entry; returns the number of files removed"""
        if not self.directory.exists():
            return 0
        removed = 0
        for path in self.directory.glob(f"*{self.suffix}"):
            path.unlink()
            removed += 1
        logger.info(f"Removed {removed} cache entries from {self.directory}")
        return removed

    def stats(self) -> CacheStats:
        files = list(self.directory.glob(f"*{self.suffix}")) if self.directory.exists() else []
        return CacheStats(
            directory=str(self.directory),
            files=len(files),
            bytes=sum(path.stat().st_size for path in files),
        )
