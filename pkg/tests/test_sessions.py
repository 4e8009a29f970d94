import json

import pytest

from adanon.errors import CorruptSessionError
from adanon.pseudonymizer import PseudonymSession
from adanon.sessions import SessionStore


def test_save_load_round_trip(tmp_path):
    store = SessionStore(tmp_path)
    session = PseudonymSession.new("alpha")
    session.mapping[("personal_basic", "Nora Quist")] = "Alex Morgan"
    session.mapping[("property", "4532")] = "9921"
    store.save(session)

    loaded = store.load("alpha")
    assert loaded.session_id == "alpha"
    assert loaded.salt == session.salt
    assert loaded.mapping == session.mapping
    assert loaded.created_at == pytest.approx(session.created_at)


def test_unknown_id_creates_fresh_session(tmp_path):
    store = SessionStore(tmp_path)
    fresh = store.load("nobody")
    assert fresh.session_id == "nobody"
    assert fresh.mapping == {}
    other = store.load("nobody")
    assert other.salt != fresh.salt  # nothing was saved; a new salt each time


def test_corrupt_file_raises_not_resets(tmp_path):
    store = SessionStore(tmp_path)
    (tmp_path / "broken.json").write_text("{nope")
    with pytest.raises(CorruptSessionError):
        store.load("broken")
    # file untouched
    assert (tmp_path / "broken.json").read_text() == "{nope"


def test_mismatched_session_id_is_corrupt(tmp_path):
    store = SessionStore(tmp_path)
    session = PseudonymSession.new("first")
    path = store.save(session)
    payload = json.loads(path.read_text())
    payload["session_id"] = "other"
    (tmp_path / "first.json").write_text(json.dumps(payload))
    with pytest.raises(CorruptSessionError):
        store.load("first")


def test_unsafe_session_ids_rejected(tmp_path):
    store = SessionStore(tmp_path)
    with pytest.raises(ValueError):
        store.load("../escape")
    with pytest.raises(ValueError):
        store.load("")
