"""JSON-backed append-only cache of exact counts."""
from __future__ import annotations

import json
import logging
import os
import random
import threading
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_ENV = "STAIRPOLY_CACHE_DIR"


def default_cache_path() -> Path:
    root = os.environ.get(CACHE_ENV)
    base = Path(root) if root else Path.home() / ".cache" / "stairpoly"
    return base / "counts.json"


def make_key(kind: str, n: int, t: int, zeros=()) -> str:
    zs = ";".join(f"{r},{s}" for r, s in sorted(zeros))
    return f"{kind}|{n}|{t}|{zs}"


class ResultCache:
    """
    Map (kind, n, t, zeros) -> int, persisted as decimal strings. Entries are
    never overwritten; IO failures degrade to an in-memory cache.
    """

    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        if self.path is not None and self.path.exists():
            try:
                raw = json.loads(self.path.read_text())
                self._data = {k: int(v) for k, v in raw.get("entries", {}).items()}
            except (OSError, ValueError) as exc:
                log.warning("ignoring unreadable cache %s: %s", self.path, exc)

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, key):
        return self._data.get(key)

    def put(self, key: str, value: int):
        with self._lock:
            old = self._data.get(key)
            if old is not None and old != value:
                raise ValueError(f"cache entry {key} already holds {old}, refusing {value}")
            self._data[key] = int(value)

    def get_or_compute(self, key: str, thunk):
        hit = self._data.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        value = int(thunk())
        self.put(key, value)
        return value

    def save(self):
        if self.path is None:
            return
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self._lock:
                # merge with whatever another process appended meanwhile
                merged = {}
                if self.path.exists():
                    try:
                        merged = json.loads(self.path.read_text()).get("entries", {})
                    except ValueError:
                        merged = {}
                merged.update({k: str(v) for k, v in self._data.items()})
                tmp = self.path.with_suffix(".tmp")
                tmp.write_text(json.dumps({"version": 1, "entries": dict(sorted(merged.items()))},
                                          indent=0))
                tmp.replace(self.path)
        except OSError as exc:
            log.warning("could not write cache %s: %s", self.path, exc)

    def verify_sample(self, recompute, fraction=0.05, seed=0):
        """
        Recompute a random sample of entries with ``recompute(key)``; return
        the keys whose stored value disagrees.
        """
        keys = sorted(self._data)
        if not keys:
            return []
        rng = random.Random(seed)
        k = max(1, round(len(keys) * fraction))
        bad = []
        for key in rng.sample(keys, k):
            if recompute(key) != self._data[key]:
                bad.append(key)
        return bad
