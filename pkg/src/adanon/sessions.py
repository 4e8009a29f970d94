"""Optional on-disk persistence for pseudonym sessions."""

from __future__ import annotations

import json
import re
import threading
from pathlib import Path

from .errors import CorruptSessionError
from .pseudonymizer import PseudonymSession

_SAFE_ID = re.compile(r"^[A-Za-z0-9._-]{1,64}$")


def _filename(session_id: str) -> str:
    if not _SAFE_ID.match(session_id):
        raise ValueError("session ids are limited to 64 filename-safe characters")
    return f"{session_id}.json"


class SessionStore:
    """Loads and saves sessions as JSON files; writes serialize per store."""

    def __init__(self, state_dir: str | Path):
        self.state_dir = Path(state_dir)
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def load(self, session_id: str) -> PseudonymSession:
        """Return the stored session, or a fresh one for an unknown id."""
        path = self.state_dir / _filename(session_id)
        if not path.exists():
            fresh = PseudonymSession.new(session_id)
            return fresh
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            salt = bytes.fromhex(raw["salt"])
            mapping = {
                (entry["category"], entry["surface"]): entry["replacement"]
                for entry in raw["mapping"]
            }
            created_at = float(raw["created_at"])
            stored_id = raw["session_id"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CorruptSessionError(f"cannot decode session file {path}: {exc}") from exc
        if stored_id != session_id:
            raise CorruptSessionError(f"session file {path} belongs to {stored_id!r}")
        return PseudonymSession(
            session_id=stored_id, salt=salt, mapping=mapping, created_at=created_at
        )

    def save(self, session: PseudonymSession) -> Path:
        path = self.state_dir / _filename(session.session_id)
        body = {
            "session_id": session.session_id,
            "salt": session.salt.hex(),
            "created_at": session.created_at,
            "mapping": [
                {"category": category, "surface": surface, "replacement": replacement}
                for (category, surface), replacement in sorted(session.mapping.items())
            ],
        }
        with self._lock:
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(body, ensure_ascii=False, indent=2), encoding="utf-8")
            tmp.replace(path)
        return path
