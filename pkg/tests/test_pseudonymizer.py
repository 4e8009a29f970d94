import hashlib
import hmac
import random
import re
from datetime import datetime

import pytest

from adanon.errors import ExhaustedRetriesError, InconsistentDocError, SpanMismatchError
from adanon.pseudonymizer import (
    AnonymizedDoc,
    PseudonymGenerator,
    PseudonymSession,
    builtin_names,
    diff,
    generate_replacement,
    pseudonymize,
    restore,
)
from adanon.recognizer.spans import EntitySpan, Source
from adanon.tradeoff import SelectionPlan, TargetPoint

from conftest import make_random_doc


def make_plan(categories) -> SelectionPlan:
    return SelectionPlan(
        categories=frozenset(categories),
        achieved=(0.5, 0.5),
        snapped_point=TargetPoint(0.5, 0.5),
    )


@pytest.fixture
def session():
    return PseudonymSession(session_id="t", salt=bytes(range(16)))


def test_same_surface_same_replacement(session):
    first = generate_replacement("Alice Chen", "personal_basic", "Name", session)
    second = generate_replacement("Alice Chen", "personal_basic", "Name", session)
    assert first == second


def test_name_index_matches_independent_keyed_hash(session):
    names = builtin_names()
    surface = "Alice Chen"
    out = generate_replacement(surface, "personal_basic", "Name", session)
    # independent recomputation of the keyed index
    message = f"personal_basic\x1f{surface}\x1f0\x1f0".encode()
    digest = hmac.new(session.salt, message, hashlib.sha256).digest()
    assert out == names[int.from_bytes(digest, "big") % len(names)]
    assert out in names


def test_phone_format_preserved(session):
    out = generate_replacement("(123) 456-7890", "personal_basic", "Phone Number", session)
    assert re.fullmatch(r"\(\d{3}\) \d{3}-\d{4}", out)
    assert out != "(123) 456-7890"


def test_digit_positions_and_nondigits_preserved(session):
    surface = "1234 5678 9012 3456"
    out = generate_replacement(surface, "property", "Bank Card Number", session)
    assert len(out) == len(surface)
    for a, b in zip(surface, out):
        assert a.isdigit() == b.isdigit()
        if not a.isdigit():
            assert a == b
    assert any(a != b for a, b in zip(surface, out) if a.isdigit())


def test_email_replacement_uses_safe_domain(session):
    out = generate_replacement("john.doe@example.com", "personal_basic", "Email Address", session)
    assert out.endswith("@example.org")
    assert out != "john.doe@example.com"


def test_date_shift_is_calendar_valid_and_session_constant(session):
    out1 = generate_replacement("January 1, 1980", "personal_basic", "Date of Birth", session)
    parsed = datetime.strptime(out1, "%B %d, %Y")
    delta = (parsed - datetime(1980, 1, 1)).days
    assert 30 <= delta <= 365
    out2 = generate_replacement("March 5, 1990", "personal_basic", "Date of Birth", session)
    delta2 = (datetime.strptime(out2, "%B %d, %Y") - datetime(1990, 3, 5)).days
    assert delta2 == delta


def test_placeholder_for_unhandled_types(session):
    assert generate_replacement("Initech", "education_work", "Employer", session) == "[Employer]"


def test_placeholder_collision_appends_counter(session):
    out = generate_replacement("[Employer]", "education_work", "Employer", session)
    assert out == "[Employer 2]"


def test_injectivity_within_category(session):
    # Half the list size, so collisions happen and must resolve via retries.
    generator = PseudonymGenerator(name_lists={"name": builtin_names()})
    seen = {}
    for i in range(16):
        surface = f"Person {i}"
        out = generator.replacement(surface, "personal_basic", "Name", session)
        seen[surface] = out
    assert len(set(seen.values())) == len(seen)


def test_exhausted_retries_with_degenerate_list(session):
    generator = PseudonymGenerator(name_lists={"name": ("Only Option",)})
    assert generator.replacement("Somebody", "personal_basic", "Name", session) == "Only Option"
    with pytest.raises(ExhaustedRetriesError):
        generator.replacement("Somebody Else", "personal_basic", "Name", session)


def test_realistic_checksums_flag(session):
    from adanon.recognizer.rules import luhn_valid

    surface = "4532 0151 1283 0366"
    safe = PseudonymGenerator().replacement(surface, "property", "Bank Card Number", session)
    assert not luhn_valid(safe.replace(" ", ""))

    other = PseudonymSession(session_id="r", salt=bytes(range(16)))
    realistic = PseudonymGenerator(realistic_checksums=True).replacement(
        surface, "property", "Bank Card Number", other
    )
    assert luhn_valid(realistic.replace(" ", ""))
    assert realistic != surface


def test_empty_surface_rejected(session):
    with pytest.raises(ValueError):
        generate_replacement("", "personal_basic", "Name", session)


def _spans_for(text: str, pairs):
    spans = []
    for surface, type_name, category in pairs:
        start = text.find(surface)
        spans.append(
            EntitySpan(
                start=start,
                end=start + len(surface),
                surface=surface,
                type_name=type_name,
                category=category,
                source=Source.RULES,
            )
        )
    return sorted(spans, key=lambda s: s.start)


def test_pseudonymize_empty_plan_is_noop(session):
    text = "email me at a@b.test"
    spans = _spans_for(text, [("a@b.test", "Email Address", "personal_basic")])
    doc = pseudonymize(text, spans, make_plan([]), session)
    assert doc.output_text == text
    assert doc.changes == ()


def test_pseudonymize_is_selective(session):
    text = "Nora Quist pays with 4532 0151 1283 0366 monthly"
    spans = _spans_for(
        text,
        [
            ("Nora Quist", "Name", "personal_basic"),
            ("4532 0151 1283 0366", "Bank Card Number", "property"),
        ],
    )
    doc = pseudonymize(text, spans, make_plan(["property"]), session)
    assert len(doc.changes) == 1
    assert doc.changes[0].category == "property"
    assert doc.output_text.startswith("Nora Quist pays with ")
    assert "4532 0151 1283 0366" not in doc.output_text
    assert doc.output_text.endswith(" monthly")


def test_pseudonymize_rejects_mismatched_span(session):
    span = EntitySpan(0, 4, "Nora", "Name", "personal_basic", Source.RULES)
    with pytest.raises(SpanMismatchError):
        pseudonymize("Vera said hi", [span], make_plan(["personal_basic"]), session)


def test_change_offsets_refer_to_output(session):
    text = "id 110101199003078515 end"
    spans = _spans_for(text, [("110101199003078515", "ID Card", "personal_identity")])
    doc = pseudonymize(text, spans, make_plan(["personal_identity"]), session)
    region = doc.changes[0]
    assert doc.output_text[region.start : region.end] == region.replacement


def test_restore_and_diff_round_trip(session):
    text = "Nora Quist lives at 9 Elm Road and likes tea"
    spans = _spans_for(text, [("Nora Quist", "Name", "personal_basic")])
    doc = pseudonymize(text, spans, make_plan(["personal_basic"]), session)
    assert restore(doc) == text
    entries = diff(text, doc)
    assert entries == [("Nora Quist", doc.changes[0].replacement, "personal_basic")]


def test_diff_rejects_tampered_doc(session):
    text = "Nora Quist waves"
    spans = _spans_for(text, [("Nora Quist", "Name", "personal_basic")])
    doc = pseudonymize(text, spans, make_plan(["personal_basic"]), session)
    shifted = AnonymizedDoc(
        output_text=doc.output_text,
        changes=(
            doc.changes[0].__class__(
                start=doc.changes[0].start + 1,
                end=doc.changes[0].end + 1,
                replacement=doc.changes[0].replacement,
                category=doc.changes[0].category,
                type_name=doc.changes[0].type_name,
            ),
        ),
        achieved=doc.achieved,
        warnings=doc.warnings,
        originals=doc.originals,
    )
    with pytest.raises(InconsistentDocError):
        diff(text, shifted)


def test_unchanged_doc_diff_empty(session):
    doc = pseudonymize("plain text", [], make_plan([]), session)
    assert diff("plain text", doc) == []


def test_randomized_selectivity_and_round_trip():
    rng = random.Random(4242)
    for i in range(150):
        session = PseudonymSession(session_id=f"s{i}", salt=rng.randbytes(16))
        text, spans = make_random_doc(rng)
        categories = {s.category for s in spans}
        selected = frozenset(c for c in categories if rng.random() < 0.6)
        doc = pseudonymize(text, spans, make_plan(selected), session)
        assert restore(doc) == text
        for span in spans:
            if span.category not in selected:
                assert span.surface in doc.output_text
        assert len(doc.changes) == sum(1 for s in spans if s.category in selected)
        for region in doc.changes:
            assert doc.output_text[region.start : region.end] == region.replacement


def test_consistency_across_documents_same_session():
    rng = random.Random(11)
    session = PseudonymSession(session_id="shared", salt=rng.randbytes(16))
    text = "Nora Quist met Nora Quist at the Nora Quist fan club"
    spans = []
    start = 0
    while True:
        idx = text.find("Nora Quist", start)
        if idx == -1:
            break
        spans.append(EntitySpan(idx, idx + 10, "Nora Quist", "Name", "personal_basic", Source.RULES))
        start = idx + 1
    doc = pseudonymize(text, spans, make_plan(["personal_basic"]), session)
    replacements = {c.replacement for c in doc.changes}
    assert len(replacements) == 1
