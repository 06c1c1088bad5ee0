"""Persistent memo of canonical certificates, keyed by orbit-normalized sets.

Entries live in a single sqlite file.  Only the process that owns the cache
writes to it (workers hand results back), and every row carries a digest of
its payload so damaged rows are detected, recomputed and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import sqlite3
from pathlib import Path

from . import autengine
from .autengine import Certificate
from .grouplib import GroupSpec

log = logging.getLogger(__name__)

CACHE_ENV = "CAYLEYCI_CACHE_DIR"
FORMAT_VERSION = 1


def default_cache_path() -> Path:
    base = os.environ.get(CACHE_ENV)
    root = Path(base) if base else Path.home() / ".cache" / "cayleyci"
    return root / "certificates.sqlite"


def cache_key(spec: GroupSpec, rep: tuple[int, ...]) -> str:
    text = f"v{FORMAT_VERSION}|{spec.kind}|{spec.n}|{','.join(map(str, rep))}"
    return hashlib.sha256(text.encode()).hexdigest()


def _encode(cert: Certificate, aut_order: int) -> str:
    return json.dumps({"v": cert.vertex_count, "arcs": cert.arcs, "aut": aut_order},
                      separators=(",", ":"))


def _decode(payload: str) -> tuple[Certificate, int]:
    d = json.loads(payload)
    return Certificate(d["v"], tuple(tuple(a) for a in d["arcs"])), d["aut"]


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()


class CertificateCache:
    def __init__(self, path: str | os.PathLike | None = None, *, verify_fraction: float = 0.0,
                 seed: int = 0):
        self.path = Path(path) if path is not None else default_cache_path()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._db = sqlite3.connect(self.path)
        self._db.execute("CREATE TABLE IF NOT EXISTS certs (key TEXT PRIMARY KEY, payload TEXT, digest TEXT)")
        self.verify_fraction = verify_fraction
        self._rng = random.Random(seed)
        self.lookups = 0
        self.hits = 0
        self.verified = 0
        self.repaired = 0

    def get(self, spec: GroupSpec, rep: tuple[int, ...]):
        """(certificate, aut order) or None."""
        self.lookups += 1
        key = cache_key(spec, rep)
        row = self._db.execute("SELECT payload, digest FROM certs WHERE key = ?", (key,)).fetchone()
        if row is None:
            return None
        payload, digest = row
        try:
            if _digest(payload) != digest:
                raise ValueError("digest mismatch")
            value = _decode(payload)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt cache entry for %s %s (%s); recomputing", spec, rep, exc)
            self.repaired += 1
            return None
        if self.verify_fraction and self._rng.random() < self.verify_fraction:
            self.verified += 1
            fresh = self._compute(spec, rep)
            if fresh != value:
                log.warning("stale cache entry for %s %s; overwriting", spec, rep)
                self.repaired += 1
                self.put(spec, rep, *fresh)
                value = fresh
        self.hits += 1
        return value

    @staticmethod
    def _compute(spec, rep):
        from .citester import _cayley_cached
        res = autengine.analyze(_cayley_cached(spec, rep))
        return res.certificate, res.order

    def put(self, spec: GroupSpec, rep: tuple[int, ...], cert: Certificate, aut_order: int) -> None:
        payload = _encode(cert, aut_order)
        with self._db:
            self._db.execute("INSERT OR REPLACE INTO certs VALUES (?, ?, ?)",
                             (cache_key(spec, rep), payload, _digest(payload)))

    @property
    def hit_rate(self) -> float:
        return self.hits / self.lookups if self.lookups else 0.0

    def __len__(self):
        return self._db.execute("SELECT COUNT(*) FROM certs").fetchone()[0]

    def close(self) -> None:
        self._db.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
