"""Stochastic sentences: lexicon words drawn into fixed grammatical templates.

Template DSL: literal text with ``{S}`` (subject), ``{P}`` (predicate)
and ``{C}`` (connective) placeholders, one template per line.
``{{`` and ``}}`` escape literal braces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .rng import Rng

SUBJECT, PREDICATE, CONNECTIVE = "SUBJECT", "PREDICATE", "CONNECTIVE"
_PLACEHOLDERS = {"S": SUBJECT, "P": PREDICATE, "C": CONNECTIVE}
_TOKEN_RE = re.compile(r"\{\{|\}\}|\{([^{}]*)\}|[{}]")


class TemplateError(ValueError):
    pass


class LexiconError(ValueError):
    pass


class MissingPoolError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    subjects: tuple
    predicates: tuple

    def __post_init__(self):
        for name in ("subjects", "predicates"):
            words = tuple(getattr(self, name))
            if not words:
                raise LexiconError(f"lexicon has no {name}")
            dupes = sorted({w for w in words if words.count(w) > 1})
            if dupes:
                raise LexiconError(f"duplicate {name}: {dupes}")
            object.__setattr__(self, name, words)


@dataclass(frozen=True)
class SentenceTemplate:
    """Ordered slots: literal strings or one of SUBJECT / PREDICATE / CONNECTIVE."""

    slots: tuple

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if SUBJECT not in self.slots or PREDICATE not in self.slots:
            raise TemplateError("a template needs at least one {S} and one {P}")

    @classmethod
    def parse(cls, text: str) -> "SentenceTemplate":
        slots, literal, pos = [], [], 0
        for m in _TOKEN_RE.finditer(text):
            literal.append(text[pos:m.start()])
            pos = m.end()
            tok = m.group(0)
            if tok in ("{{", "}}"):
                literal.append(tok[0])
                continue
            name = m.group(1)
            if name is None or name not in _PLACEHOLDERS:
                raise TemplateError(f"bad placeholder {tok!r} at offset {m.start()} in {text!r}")
            if "".join(literal):
                slots.append("".join(literal))
            literal = []
            slots.append(_PLACEHOLDERS[name])
        literal.append(text[pos:])
        if "".join(literal):
            slots.append("".join(literal))
        return cls(tuple(slots))

    def uses(self, kind: str) -> bool:
        return kind in self.slots

    def pattern(self, lexicon: Lexicon, connectives: Sequence[str] = ()) -> re.Pattern:
        """Regex matching exactly the sentences this template can produce."""
        pools = {SUBJECT: lexicon.subjects, PREDICATE: lexicon.predicates, CONNECTIVE: tuple(connectives)}
        parts = []
        for slot in self.slots:
            if slot in pools:
                parts.append("(?:" + "|".join(re.escape(w) for w in pools[slot]) + ")")
            else:
                parts.append(re.escape(slot))
        return re.compile("".join(parts))


def gen_text(
    lexicon: Lexicon,
    templates: Sequence[SentenceTemplate],
    connectives: Sequence[str],
    n_sentences: int,
    rng: Rng,
) -> list[str]:
    """Each sentence: pick a template uniformly, then fill its slots left to right."""
    if n_sentences < 1:
        raise ValueError("n_sentences must be >= 1")
    if not templates:
        raise MissingPoolError("no templates given")
    connectives = tuple(connectives)
    if not connectives and any(t.uses(CONNECTIVE) for t in templates):
        raise MissingPoolError("a template uses {C} but the connective pool is empty")
    pools = {SUBJECT: lexicon.subjects, PREDICATE: lexicon.predicates, CONNECTIVE: connectives}
    out = []
    for _ in range(n_sentences):
        template = templates[rng.next_int(0, len(templates) - 1)] if len(templates) > 1 else templates[0]
        words = []
        for slot in template.slots:
            pool = pools.get(slot)
            words.append(slot if pool is None else pool[rng.next_int(0, len(pool) - 1)])
        out.append("".join(words))
    return out


def parse_lexicon(text: str) -> tuple[Lexicon, tuple]:
    """Sectioned word list: ``[subjects]``, ``[predicates]``, optional ``[connectives]``.

    One entry per line; blank lines and ``#`` comments are ignored.
    Returns the lexicon and the connective pool.
    """
    sections = {"subjects": [], "predicates": [], "connectives": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in sections:
                raise LexiconError(f"line {lineno}: unknown section [{current}]")
            continue
        if current is None:
            raise LexiconError(f"line {lineno}: entry before any section header")
        sections[current].append(line)
    return Lexicon(tuple(sections["subjects"]), tuple(sections["predicates"])), tuple(sections["connectives"])


def parse_templates(text: str) -> list[SentenceTemplate]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            out.append(SentenceTemplate.parse(line.strip()))
        except TemplateError as exc:
            raise TemplateError(f"line {lineno}: {exc}") from None
    if not out:
        raise TemplateError("no templates found")
    return out


def default_lexicon_text() -> str:
    return resources.files("gaw.data").joinpath("castle_lexicon.txt").read_text(encoding="utf-8")


def default_templates_text() -> str:
    return resources.files("gaw.data").joinpath("castle_templates.txt").read_text(encoding="utf-8")
