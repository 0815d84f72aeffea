"""On-disk result cache: JSON payloads beside an index file.

The index maps a key string to ``{"file", "sha256"}``.  Reads recompute the
hash; a mismatch or unreadable payload evicts the entry, so corrupt data is
never returned.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

log = logging.getLogger("tlcheck.cache")

ENV_VAR = "TLCHECK_CACHE_DIR"
INDEX = "index.json"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "tlcheck"


def make_key(kind: str, spec: str, domain: str, u, N, extra: str = "") -> str:
    return f"{kind}|{spec}|{domain}|u={u}|N={N}|{extra}"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    path: Path
    sha256: str


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class ResultCache:
    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0
        self.evictions = 0

    # index -------------------------------------------------------------
    def _index_path(self) -> Path:
        return self.root / INDEX

    def _load_index(self) -> dict:
        try:
            return json.loads(self._index_path().read_text())
        except FileNotFoundError:
            return {}
        except (OSError, ValueError) as exc:
            log.warning("cache index %s unreadable (%s); starting fresh", self._index_path(), exc)
            return {}

    def _save_index(self, index: dict):
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            tmp = self._index_path().with_suffix(".tmp")
            tmp.write_text(json.dumps(index, indent=1, sort_keys=True))
            tmp.replace(self._index_path())
        except OSError as exc:
            raise OSError(f"cannot write cache index {self._index_path()}: {exc}") from exc

    # entries -----------------------------------------------------------
    def entry(self, key: str) -> Optional[CacheEntry]:
        rec = self._load_index().get(key)
        if rec is None:
            return None
        return CacheEntry(key, self.root / rec["file"], rec["sha256"])

    def store(self, key: str, payload) -> CacheEntry:
        data = json.dumps(payload, sort_keys=True).encode()
        digest = _digest(data)
        path = self.root / f"{_digest(key.encode())[:32]}.json"
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as exc:
            raise OSError(f"cannot write cache payload {path}: {exc}") from exc
        index = self._load_index()
        index[key] = {"file": path.name, "sha256": digest}
        self._save_index(index)
        return CacheEntry(key, path, digest)

    def evict(self, key: str):
        index = self._load_index()
        rec = index.pop(key, None)
        if rec is not None:
            self.evictions += 1
            try:
                (self.root / rec["file"]).unlink()
            except FileNotFoundError:
                pass
            self._save_index(index)

    def load(self, key: str):
        """Verified payload, or None (missing or evicted as corrupt)."""
        ent = self.entry(key)
        if ent is None:
            return None
        try:
            data = ent.path.read_bytes()
        except OSError:
            log.warning("cache payload %s unreadable; evicting", ent.path)
            self.evict(key)
            return None
        if _digest(data) != ent.sha256:
            log.warning("cache payload %s failed hash check; evicting", ent.path)
            self.evict(key)
            return None
        return json.loads(data)

    def get_or_compute(self, key: str, compute: Callable[[], object]):
        payload = self.load(key)
        if payload is not None:
            self.hits += 1
            log.info("cache hit %s", key)
            return payload
        self.misses += 1
        log.info("cache miss %s", key)
        payload = compute()
        self.store(key, payload)
        return payload
