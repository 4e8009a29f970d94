import random

import pytest

from adanon.taxonomy import NormalizedScoreTable, load_taxonomy, normalize


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\nACCEPTANCE {name}: {report.outcome.upper()}")


@pytest.fixture(scope="session")
def table():
    return load_taxonomy()


@pytest.fixture(scope="session")
def normalized(table):
    return normalize(table)


def make_normalized(pairs):
    """NormalizedScoreTable from {category: (p_hat, m_hat)}."""
    cats = tuple(pairs)
    return NormalizedScoreTable(
        categories=cats,
        p_hat={c: pairs[c][0] for c in cats},
        m_hat={c: pairs[c][1] for c in cats},
        names={c: c for c in cats},
    )


@pytest.fixture
def toy_table():
    # Three categories with one zero-mass entry; the worked example everywhere.
    return make_normalized({"A": (1.0, 0.2), "B": (0.5, 1.0), "C": (0.0, 0.0)})


SEEDABLE_ENTITIES = [
    # (type_name, category, surface factory)
    ("Name", "personal_basic", lambda rng: rng.choice(
        ["Nora Quist", "Abel Trent", "Vera Lindqvist", "Omar Castell"])),
    ("Phone Number", "personal_basic", lambda rng: "(%03d) %03d-%04d" % (
        rng.randint(200, 989), rng.randint(200, 989), rng.randint(0, 9999))),
    ("Email Address", "personal_basic", lambda rng: "user%d@host%d.test" % (
        rng.randint(1, 999), rng.randint(1, 9))),
    ("Date of Birth", "personal_basic", lambda rng: "%s %d, %d" % (
        rng.choice(["January", "March", "July", "October"]), rng.randint(1, 28),
        rng.randint(1950, 2005))),
    ("Bank Card Number", "property", lambda rng: " ".join(
        "%04d" % rng.randint(0, 9999) for _ in range(4))),
    ("Employer", "education_work", lambda rng: rng.choice(
        ["Initech", "Globex", "Vandelay Industries"])),
    ("Diagnosis", "medical", lambda rng: rng.choice(["asthma", "anemia", "migraine"])),
]

FILLER_WORDS = "the plan for next week covers travel budget and a short report".split()


def make_random_doc(rng: random.Random, n_entities: int | None = None):
    """Synthetic document with known entity spans; returns (text, spans)."""
    from adanon.recognizer.spans import EntitySpan, Source

    n_entities = rng.randint(1, 6) if n_entities is None else n_entities
    pieces = []
    spans = []
    length = 0
    for _ in range(n_entities):
        filler = " ".join(rng.choice(FILLER_WORDS) for _ in range(rng.randint(2, 6))) + " "
        pieces.append(filler)
        length += len(filler)
        type_name, category, factory = rng.choice(SEEDABLE_ENTITIES)
        surface = factory(rng)
        spans.append(
            EntitySpan(
                start=length,
                end=length + len(surface),
                surface=surface,
                type_name=type_name,
                category=category,
                source=Source.RULES,
            )
        )
        pieces.append(surface)
        length += len(surface)
        pieces.append(" ")
        length += 1
    pieces.append("done.")
    return "".join(pieces), spans


def random_normalized(rng: random.Random, max_categories: int = 20) -> NormalizedScoreTable:
    n = rng.randint(1, max_categories)
    pairs = {}
    for i in range(n):
        p = rng.choice([0.0, 1.0, rng.random(), rng.random()])
        m = rng.choice([0.0, 1.0, rng.random(), rng.random()])
        pairs[f"c{i}"] = (p, m)
    if all(p == 0.0 for p, _ in pairs.values()):
        pairs["c0"] = (1.0, pairs["c0"][1])
    return make_normalized(pairs)
