"""Content-addressed JSON cache for expensive CLI results."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "SLARC_CACHE"


def cache_key(operation: str, params: dict, field: str, version: str) -> str:
    blob = json.dumps({"op": operation, "params": params, "field": field, "version": version},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    """Files ``<dir>/<key[:2]>/<key>.json``; a disabled cache stores nothing."""

    def __init__(self, directory: str | os.PathLike | None):
        self.dir = Path(directory) if directory else None
        if self.dir is not None:
            try:
                self.dir.mkdir(parents=True, exist_ok=True)
                probe = self.dir / ".probe"
                probe.write_text("")
                probe.unlink()
            except OSError as exc:
                log.warning("cache directory %s is not writable (%s); caching disabled", self.dir, exc)
                self.dir = None

    @classmethod
    def from_settings(cls, directory: str | None, disabled: bool) -> "Cache":
        if disabled:
            return cls(None)
        return cls(directory or os.environ.get(ENV_VAR) or None)

    @property
    def enabled(self) -> bool:
        return self.dir is not None

    def _path(self, key: str) -> Path:
        assert self.dir is not None
        return self.dir / key[:2] / f"{key}.json"

    def get(self, key: str):
        """The stored value, or None when absent or unreadable."""
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with path.open() as fh:
                entry = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError):
            log.warning("ignoring corrupt cache entry %s", path)
            return None
        if not isinstance(entry, dict) or entry.get("key") != key or "value" not in entry:
            log.warning("ignoring malformed cache entry %s", path)
            return None
        return entry["value"]

    def put(self, key: str, value) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            tmp.write_text(json.dumps({"key": key, "value": value}, sort_keys=True))
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s (%s)", path, exc)


def cache_get(cache: Cache, key: str):
    return cache.get(key)


def cache_put(cache: Cache, key: str, value) -> None:
    cache.put(key, value)
