"""Content-addressed sqlite cache for verification reports.

Keys are the sha256 of the canonical JSON form of a request, so a hit
returns exactly the payload an uncached run would produce.

Usage::

    from pongalg.store import ResultCache

    cache = ResultCache()                     # in-memory
    key = cache.put("homology", {"m": 4}, '{"ok": true}')
    cache.get(key)                            # '{"ok": true}'
"""

from __future__ import annotations

import json
import logging
import sqlite3
import time
from pathlib import Path

from .reports import canonical_json, sha256_text

logger = logging.getLogger(__name__)

_SCHEMA_SQL = """
CREATE TABLE IF NOT EXISTS results (
    key      TEXT PRIMARY KEY,
    command  TEXT NOT NULL,
    request  TEXT NOT NULL,
    created  REAL NOT NULL,
    payload  TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS idx_results_command ON results(command);

CREATE TABLE IF NOT EXISTS _changelog (
    seq   INTEGER PRIMARY KEY AUTOINCREMENT,
    ts    REAL NOT NULL,
    op    TEXT NOT NULL,
    key   TEXT NOT NULL,
    data  TEXT
);
"""


def request_key(request: dict) -> str:
    return sha256_text(canonical_json(request))


class ResultCache:
    """Reports keyed by request hash, with a changelog of writes and clears."""

    def __init__(self, db_path: str | Path = ":memory:") -> None:
        if db_path != ":memory:":
            Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        self._db = sqlite3.connect(str(db_path))
        self._db.execute("PRAGMA journal_mode=WAL")
        self._db.executescript(_SCHEMA_SQL)
        self._db.commit()
        self.hits = 0
        self.misses = 0

    def _log(self, op: str, key: str, data: dict | None = None) -> None:
        self._db.execute(
            "INSERT INTO _changelog (ts, op, key, data) VALUES (?, ?, ?, ?)",
            (time.time(), op, key, json.dumps(data) if data else None),
        )

    def get(self, key: str) -> str | None:
        row = self._db.execute("SELECT payload FROM results WHERE key = ?", (key,)).fetchone()
        if row is None:
            self.misses += 1
            return None
        self.hits += 1
        logger.debug("cache hit %s", key[:12])
        return row[0]

    def put(self, command: str, request: dict, payload: str) -> str:
        key = request_key(request)
        self._db.execute(
            "INSERT OR REPLACE INTO results (key, command, request, created, payload) VALUES (?, ?, ?, ?, ?)",
            (key, command, canonical_json(request), time.time(), payload),
        )
        self._log("result.put", key, {"command": command})
        self._db.commit()
        return key

    def keys(self, command: str | None = None) -> list[str]:
        if command is None:
            rows = self._db.execute("SELECT key FROM results ORDER BY key").fetchall()
        else:
            rows = self._db.execute(
                "SELECT key FROM results WHERE command = ? ORDER BY key", (command,)
            ).fetchall()
        return [r[0] for r in rows]

    def clear(self) -> int:
        """Delete every stored result. Returns rows deleted."""
        cur = self._db.execute("DELETE FROM results")
        self._log("result.clear", "*", {"rows": cur.rowcount})
        self._db.commit()
        return cur.rowcount

    def changelog(self, since_seq: int = 0, limit: int = 100) -> list[tuple]:
        """(seq, ts, op, key, data) rows with seq > since_seq."""
        return self._db.execute(
            "SELECT seq, ts, op, key, data FROM _changelog WHERE seq > ? ORDER BY seq LIMIT ?",
            (since_seq, limit),
        ).fetchall()

    def close(self) -> None:
        self._db.close()

    def __len__(self) -> int:
        return self._db.execute("SELECT COUNT(*) FROM results").fetchone()[0]
