"""Rule-based letter-to-sound fallback for out-of-vocabulary words.

The table is an ordered list of rewrite rules ``pattern / left / right ->
phones``. Scanning left to right, the engine applies, at each position, the
matching rule with the longest pattern (ties broken by file order) and
advances past the matched letters. The table ships as a data file so the
mapping is byte-reproducible.

Context atoms:
  ``#``  word boundary (start in left contexts, end in right contexts)
  ``V``  one of a e i o u
  ``C``  a consonant letter (anything in a-z except a e i o u y)
  other  a literal letter

A left context may start with ``*V``, meaning "a vowel letter occurs
somewhere earlier in the word" (used for silent final e); any remaining
atoms match the letters immediately before the pattern.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arpabet import PHONEMES, VOWELS

_VOWEL_LETTERS = frozenset("aeiou")
_CONSONANT_LETTERS = frozenset("bcdfghjklmnpqrstvwxz")

DEFAULT_RULES_RESOURCE = "g2p_rules.tsv"


class RuleLoadError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    pattern: str
    left: str
    right: str
    phones: tuple[str, ...]


def _atom_matches(atom: str, char: str | None) -> bool:
    if atom == "#":
        return char is None
    if char is None:
        return False
    if atom == "V":
        return char in _VOWEL_LETTERS
    if atom == "C":
        return char in _CONSONANT_LETTERS
    return char == atom


def _left_ok(word: str, start: int, ctx: str) -> bool:
    if ctx.startswith("*V"):
        if not any(c in _VOWEL_LETTERS for c in word[:start]):
            return False
        ctx = ctx[2:]
    pos = start - 1
    for atom in reversed(ctx):
        char = word[pos] if pos >= 0 else None
        if not _atom_matches(atom, char):
            return False
        pos -= 1
    return True


def _right_ok(word: str, end: int, ctx: str) -> bool:
    pos = end
    for atom in ctx:
        char = word[pos] if pos < len(word) else None
        if not _atom_matches(atom, char):
            return False
        pos += 1
    return True


class RuleTable:
    """Immutable ordered rewrite-rule table."""

    def __init__(self, rules: list[Rule]):
        self._rules = tuple(rules)
        by_first: dict[str, list[tuple[int, Rule]]] = {}
        for order, rule in enumerate(self._rules):
            by_first.setdefault(rule.pattern[0], []).append((order, rule))
        self._by_first = by_first

    def __len__(self) -> int:
        return len(self._rules)

    def _best_rule(self, word: str, i: int) -> Rule | None:
        best: tuple[int, int, Rule] | None = None  # (-len, order, rule)
        for order, rule in self._by_first.get(word[i], ()):
            if not word.startswith(rule.pattern, i):
                continue
            if not _left_ok(word, i, rule.left):
                continue
            if not _right_ok(word, i + len(rule.pattern), rule.right):
                continue
            key = (-len(rule.pattern), order, rule)
            if best is None or key[:2] < best[:2]:
                best = key
        return best[2] if best else None

    @functools.lru_cache(maxsize=65536)
    def transcribe(self, word: str) -> tuple[str, ...]:
        """Deterministic pronunciation for a lowercase word.

        Output phones satisfy the running-text invariants: the first vowel
        carries stress 1, later vowels 0, consonants no digit. Words that
        yield no phones at all (e.g. bare apostrophes) map to a schwa.
        """
        raw: list[str] = []
        i = 0
        while i < len(word):
            rule = self._best_rule(word, i)
            if rule is None:
                i += 1
                continue
            raw.extend(rule.phones)
            i += len(rule.pattern)
        if not raw:
            return ("AH0",)
        out: list[str] = []
        seen_vowel = False
        for phone in raw:
            if phone in VOWELS:
                out.append(phone + ("0" if seen_vowel else "1"))
                seen_vowel = True
            else:
                out.append(phone)
        return tuple(out)


def parse_rules(lines, source="<rules>") -> RuleTable:
    rules: list[Rule] = []
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise RuleLoadError(f"{source}:{line_no}: expected 4 tab-separated fields")
        pattern, left, right, phones_text = fields
        if not pattern:
            raise RuleLoadError(f"{source}:{line_no}: empty pattern")
        left = "" if left == "-" else left
        right = "" if right == "-" else right
        phones: tuple[str, ...]
        if phones_text == "_":
            phones = ()
        else:
            phones = tuple(phones_text.split())
            for phone in phones:
                if phone not in PHONEMES:
                    raise RuleLoadError(f"{source}:{line_no}: unknown phone {phone!r}")
        rules.append(Rule(pattern, left, right, phones))
    if not rules:
        raise RuleLoadError(f"{source}: no rules found")
    return RuleTable(rules)


def load_rules(path: str | Path) -> RuleTable:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh, source=str(path))


@functools.lru_cache(maxsize=1)
def default_rules() -> RuleTable:
    """The rule table bundled with the package."""
    text = (
        resources.files("voxsync.frontend")
        .joinpath("data", DEFAULT_RULES_RESOURCE)
        .read_text(encoding="utf-8")
    )
    return parse_rules(text.splitlines(), source=DEFAULT_RULES_RESOURCE)


def g2p_fallback(word: str) -> tuple[str, ...]:
    """Transcribe with the bundled rule table."""
    return default_rules().transcribe(word)
