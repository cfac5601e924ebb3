from collections import Counter

import pytest

from gaw.rng import Rng
from gaw.text import (
    CONNECTIVE,
    PREDICATE,
    SUBJECT,
    Lexicon,
    LexiconError,
    MissingPoolError,
    SentenceTemplate,
    TemplateError,
    default_lexicon_text,
    default_templates_text,
    gen_text,
    parse_lexicon,
    parse_templates,
)


def test_singleton_pools_force_the_sentence():
    lex = Lexicon(("COUNT",), ("OLD",))
    t = SentenceTemplate.parse("THE {S} IS {P}.")
    assert gen_text(lex, [t], [], 1, Rng(5)) == ["THE COUNT IS OLD."]


def test_template_parse_slots():
    t = SentenceTemplate.parse("EIN {S} IST {P} {C} KEIN {S} IST {P}.")
    assert t.slots == ("EIN ", SUBJECT, " IST ", PREDICATE, " ", CONNECTIVE, " KEIN ", SUBJECT, " IST ", PREDICATE, ".")


def test_template_brace_escape():
    t = SentenceTemplate.parse("{{{S}}} {P}")
    assert t.slots == ("{", SUBJECT, "} ", PREDICATE)


@pytest.mark.parametrize("text", ["ONLY {S}", "ONLY {P}", "{S} {X} {P}", "{S} {P", "{S} } {P}"])
def test_bad_templates(text):
    with pytest.raises(TemplateError):
        SentenceTemplate.parse(text)


def test_lexicon_invariants():
    with pytest.raises(LexiconError):
        Lexicon((), ("A",))
    with pytest.raises(LexiconError):
        Lexicon(("A", "A"), ("B",))


def test_missing_connectives():
    lex = Lexicon(("A",), ("B",))
    with pytest.raises(MissingPoolError):
        gen_text(lex, [SentenceTemplate.parse("{S} {C} {P}")], [], 1, Rng(1))


def test_deterministic():
    lex, conns = parse_lexicon(default_lexicon_text())
    tpls = parse_templates(default_templates_text())
    a = gen_text(lex, tpls, conns, 4, Rng(11))
    assert a == gen_text(lex, tpls, conns, 4, Rng(11))
    assert len(a) == 4


def test_subject_frequencies_uniform():
    subjects = tuple(f"S{i}" for i in range(10))
    lex = Lexicon(subjects, ("P",))
    out = gen_text(lex, [SentenceTemplate.parse("{S} {P}")], [], 10_000, Rng(2))
    counts = Counter(s.split()[0] for s in out)
    assert set(counts) == set(subjects)
    for c in counts.values():
        assert 0.08 <= c / 10_000 <= 0.12


def test_every_sentence_matches_its_template_pattern():
    lex, conns = parse_lexicon(default_lexicon_text())
    tpls = parse_templates(default_templates_text())
    patterns = [t.pattern(lex, conns) for t in tpls]
    for sentence in gen_text(lex, tpls, conns, 500, Rng(8)):
        assert any(p.fullmatch(sentence) for p in patterns), sentence


def test_template_choice_uniform():
    lex = Lexicon(("A",), ("B",))
    tpls = [SentenceTemplate.parse(f"{i} {{S}} {{P}}") for i in range(4)]
    out = gen_text(lex, tpls, [], 8000, Rng(4))
    counts = Counter(s[0] for s in out)
    assert all(0.22 <= c / 8000 <= 0.28 for c in counts.values())


def test_parse_lexicon_sections():
    lex, conns = parse_lexicon("# c\n[subjects]\nA\nB\n\n[predicates]\nX\n[connectives]\nAND\n")
    assert lex.subjects == ("A", "B") and lex.predicates == ("X",) and conns == ("AND",)
    with pytest.raises(LexiconError):
        parse_lexicon("A\n[subjects]\nB\n")
    with pytest.raises(LexiconError):
        parse_lexicon("[verbs]\nrun\n")


def test_parse_templates_reports_line():
    with pytest.raises(TemplateError, match="line 2"):
        parse_templates("{S} {P}\n{S} only\n")
