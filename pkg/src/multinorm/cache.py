"""Optional on-disk cache for cohomology groups.

Off by default.  When enabled (CLI ``--cache DIR``), computed cohomology
groups are stored as versioned binary blobs: an 8-byte magic, a SHA-256
checksum, then a pickle payload.  Entries failing the magic, checksum or
unpickling are silently discarded and recomputed; writes are atomic
(temp file + rename), so concurrent runs over a shared directory are
safe.
"""

from __future__ import annotations

import hashlib
import os
import pickle
import tempfile
from contextlib import contextmanager
from pathlib import Path

MAGIC = b"MNCOH001"

_active: "CohCache | None" = None


def group_digest(G) -> str:
    h = hashlib.sha256(repr((G.order, G.mul)).encode())
    return h.hexdigest()[:20]


def lattice_digest(M) -> str:
    h = hashlib.sha256(repr((M.rank, M.action)).encode())
    return h.hexdigest()[:20]


class CohCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, G, M, n) -> Path:
        name = f"{group_digest(G)}-{lattice_digest(M)}-h{n}.blob"
        return self.directory / name

    def get(self, G, M, n):
        path = self.path(G, M, n)
        try:
            raw = path.read_bytes()
        except OSError:
            return None
        if len(raw) < len(MAGIC) + 32 or raw[:len(MAGIC)] != MAGIC:
            return None
        digest = raw[len(MAGIC):len(MAGIC) + 32]
        payload = raw[len(MAGIC) + 32:]
        if hashlib.sha256(payload).digest() != digest:
            return None
        try:
            return pickle.loads(payload)
        except Exception:
            return None

    def put(self, G, M, n, value) -> None:
        path = self.path(G, M, n)
        payload = pickle.dumps(value, protocol=pickle.HIGHEST_PROTOCOL)
        blob = MAGIC + hashlib.sha256(payload).digest() + payload
        fd, tmp = tempfile.mkstemp(dir=str(self.directory), suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(blob)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass


def cache_fetch(G, M, n, compute):
    """Route a cohomology computation through the active cache, if any."""
    cache = _active
    if cache is None:
        return compute(G, M, n)
    hit = cache.get(G, M, n)
    if hit is not None:
        return hit
    value = compute(G, M, n)
    cache.put(G, M, n, value)
    return value


@contextmanager
def use_cache(directory):
    """Enable the disk cache inside a ``with`` block."""
    global _active
    previous = _active
    _active = CohCache(directory) if directory else None
    try:
        yield _active
    finally:
        _active = previous
