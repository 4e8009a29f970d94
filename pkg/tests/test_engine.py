import random

import pytest

import adanon.engine as engine_mod
from adanon.config import AppConfig, build_engine
from adanon.engine import Engine, Mode, apply_user_edit, replace_text
from adanon.errors import AdanonError, BadIndexError, EmptyInputError
from adanon.pseudonymizer import PseudonymSession
from adanon.recognizer.llm import LlmClientConfig, write_fixture
from adanon.recognizer.prompts import build_prompt
from adanon.recognizer.rules import load_rule_pack
from adanon.recognizer.spans import Source
from adanon.tradeoff import build_frontier

from conftest import make_normalized


@pytest.fixture(scope="module")
def engine():
    return build_engine(AppConfig())


@pytest.fixture
def session():
    return PseudonymSession(session_id="t", salt=bytes(range(16)))


def toy_engine(table, rule_pack):
    normalized = make_normalized({"A": (1.0, 0.2), "B": (0.5, 1.0), "C": (0.0, 0.0)})
    return Engine(
        table=table,
        normalized=normalized,
        frontier=build_frontier(normalized),
        rule_pack=rule_pack,
    )


def test_mode_validation():
    with pytest.raises(ValueError):
        Mode.privacy_only(1.5)
    with pytest.raises(ValueError):
        Mode.full(-0.1, 0.5)
    with pytest.raises(ValueError):
        Mode.dp(0.0)
    assert Mode.automatic().kind == "automatic"


def test_full_zero_privacy_is_noop(engine, session):
    text = "mail me at me@example.test today"
    result = engine.run(text, Mode.full(0.0, 1.0), session=session)
    assert replace_text(result) == text
    assert result.doc.changes == ()
    assert result.doc.achieved == (0.0, 1.0)


def test_full_max_privacy_replaces_seeded_email(engine, session):
    text = "mail me at me@example.test today"
    result = engine.run(text, Mode.full(1.0, 0.0), session=session)
    assert "me@example.test" not in result.doc.output_text
    assert result.doc.output_text.startswith("mail me at ")
    assert result.doc.output_text.endswith(" today")
    assert len(result.doc.changes) == 1


def test_automatic_on_toy_frontier(engine):
    toy = toy_engine(engine.table, engine.rule_pack)
    plan = toy.plan_for(Mode.automatic())
    assert plan.categories == frozenset({"A"})


def test_anonymize_all_flag(engine):
    toy = toy_engine(engine.table, engine.rule_pack)
    toy.anonymize_all = True
    assert toy.plan_for(Mode.automatic()).categories == frozenset({"A", "B"})


def test_empty_text_rejected(engine, session):
    with pytest.raises(EmptyInputError):
        engine.run("", Mode.automatic(), session=session)


def test_privacy_only_monotone_categories(engine):
    previous = frozenset()
    for x in (0.0, 0.25, 0.5, 0.75, 1.0):
        selected = engine.plan_for(Mode.privacy_only(x)).categories
        assert previous <= selected
        previous = selected


def test_mode_equivalence_on_vertices(engine):
    for vertex in engine.frontier.vertices:
        full = engine.plan_for(Mode.full(vertex.privacy, vertex.utility))
        only = engine.plan_for(Mode.privacy_only(vertex.privacy))
        assert full.categories == only.categories == vertex.selected


def test_recognition_cache_hits(engine, monkeypatch, session):
    calls = []
    real = engine_mod.recognize_rules

    def counting(text, pack, table):
        calls.append(text)
        return real(text, pack, table)

    monkeypatch.setattr(engine_mod, "recognize_rules", counting)
    fresh = Engine(
        table=engine.table,
        normalized=engine.normalized,
        frontier=engine.frontier,
        rule_pack=engine.rule_pack,
    )
    text = "ping 10.0.0.1 now"
    fresh.run(text, Mode.full(1.0, 0.0), session=session)
    fresh.run(text, Mode.full(0.3, 0.9), session=session)
    fresh.run(text, Mode.automatic(), session=session)
    assert len(calls) == 1


def test_replaced_categories_subset_of_plan(engine):
    rng = random.Random(2)
    text = "write to a@b.test or call (555) 123-4567, card 4532 0151 1283 0366"
    for _ in range(10):
        x, y = rng.random(), rng.random()
        result = engine.run(text, Mode.full(x, y), session=PseudonymSession.new())
        assert result.plan is not None
        for region in result.doc.changes:
            assert region.category in result.plan.categories
        # every planned category with a recognized span yields a replacement
        recognized = {s.category for s in result.spans}
        replaced = {c.category for c in result.doc.changes}
        assert (recognized & result.plan.categories) == replaced


def test_labels_match_changes(engine, session):
    text = "card 4532 0151 1283 0366 and mail a@b.test"
    result = engine.run(text, Mode.full(1.0, 0.0), session=session)
    assert len(result.labels) == len(result.doc.changes)
    for label, region in zip(result.labels, result.doc.changes):
        assert label.replacement == region.replacement
        assert label.category == region.category


def test_dp_mode_produces_uniform_shape(engine, session):
    result = engine.run("the plan for the week", Mode.dp(0.01), session=session, dp_seed=5)
    assert result.plan is None
    assert all(label.type_name == "DP-perturbed" for label in result.labels)
    assert len(result.labels) == len(result.doc.changes)
    assert result.spans == ()


def test_dp_requires_vocab(engine, session):
    bare = Engine(
        table=engine.table,
        normalized=engine.normalized,
        frontier=engine.frontier,
        rule_pack=engine.rule_pack,
        vocab=None,
    )
    with pytest.raises(AdanonError):
        bare.run("text", Mode.dp(1.0), session=session)


def test_llm_backend_through_engine(engine, tmp_path, session):
    text = "I am Greta Holm and I live in Oslo"
    config = LlmClientConfig(endpoint=f"fixture://{tmp_path}", model_name="fx")
    messages = build_prompt(text).as_messages()
    write_fixture(tmp_path, "fx", messages, "I am (Greta Holm)[Name] and I live in (Oslo)[Address]")
    fresh = Engine(
        table=engine.table,
        normalized=engine.normalized,
        frontier=engine.frontier,
        rule_pack=engine.rule_pack,
        llm_config=config,
    )
    result = fresh.run(text, Mode.full(1.0, 0.0), backend="llm", session=session)
    assert "Greta Holm" not in result.doc.output_text
    assert "Oslo" not in result.doc.output_text
    assert {s.source for s in result.spans} == {Source.LLM}


def test_llm_backend_without_config(engine, session):
    fresh = Engine(
        table=engine.table,
        normalized=engine.normalized,
        frontier=engine.frontier,
        rule_pack=engine.rule_pack,
    )
    with pytest.raises(AdanonError):
        fresh.run("text", Mode.automatic(), backend="llm", session=session)


def test_unknown_backend(engine, session):
    with pytest.raises(ValueError):
        engine.run("text", Mode.automatic(), backend="carrier-pigeon", session=session)


def test_apply_user_edit_shifts_regions(engine, session):
    text = "mail a@b.test or c@d.test please"
    result = engine.run(text, Mode.full(1.0, 0.0), session=session)
    assert len(result.doc.changes) == 2
    edited = apply_user_edit(result, 0, "Alex")
    assert edited.doc.output_text.startswith("mail Alex or ")
    first, second = edited.doc.changes
    assert first.replacement == "Alex"
    assert first.source is Source.USER_EDIT
    assert edited.doc.output_text[second.start : second.end] == second.replacement
    assert edited.doc.output_text.endswith(" please")


def test_apply_user_edit_restoring_original_warns(engine, session):
    text = "mail a@b.test please"
    result = engine.run(text, Mode.full(1.0, 0.0), session=session)
    edited = apply_user_edit(result, 0, "a@b.test")
    assert any("restores sensitive text" in w for w in edited.doc.warnings)
    assert "a@b.test" in edited.doc.output_text


def test_apply_user_edit_bad_index(engine, session):
    result = engine.run("no entities at all", Mode.full(1.0, 0.0), session=session)
    with pytest.raises(BadIndexError):
        apply_user_edit(result, 0, "x")


def test_replace_text_deterministic_for_fixed_session(engine):
    text = "mail a@b.test or call (555) 123-4567"
    salt = bytes(range(16))
    one = engine.run(text, Mode.full(1.0, 0.0), session=PseudonymSession("s1", salt))
    two = engine.run(text, Mode.full(1.0, 0.0), session=PseudonymSession("s2", salt))
    assert replace_text(one) == replace_text(two)
