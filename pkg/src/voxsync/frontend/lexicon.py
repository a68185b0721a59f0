"""Pronunciation lexicon layers: the CMU dictionary and the custom override file.

Lookups always consult layers in the fixed order custom > cmu > g2p; the
first layer that knows the word wins.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .arpabet import is_valid_symbol
from .g2p import RuleTable

Pronunciation = tuple[str, ...]

_VARIANT = re.compile(r"^(.*)\((\d+)\)$")


class LexiconError(ValueError):
    pass


class ParseError(LexiconError):
    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class InvalidPhoneme(LexiconError):
    def __init__(self, symbol: str, path=None, line_no=None):
        where = f"{path}:{line_no}: " if path is not None else ""
        super().__init__(f"{where}invalid phoneme {symbol!r}")
        self.symbol = symbol
        self.path = path
        self.line_no = line_no


def _check_pronunciation(phones: list[str], path, line_no: int) -> Pronunciation:
    if not phones:
        raise ParseError(path, line_no, "entry has no pronunciation")
    for symbol in phones:
        if not is_valid_symbol(symbol):
            raise InvalidPhoneme(symbol, path, line_no)
    return tuple(phones)


def load_cmu_dict(path: str | Path) -> dict[str, Pronunciation]:
    """Load a cmudict-format plain-text file.

    ``;;;`` comment lines are skipped, variant entries like ``READ(2)`` are
    ignored (first pronunciation wins), and head words are lowercased.
    """
    entries: dict[str, Pronunciation] = {}
    path = Path(path)
    with open(path, encoding="utf-8", errors="replace") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith(";;;"):
                continue
            fields = line.split()
            if len(fields) < 2:
                raise ParseError(path, line_no, f"malformed entry: {line!r}")
            word, phones = fields[0], fields[1:]
            if _VARIANT.match(word):
                continue
            word = word.lower()
            pron = _check_pronunciation(phones, path, line_no)
            if word not in entries:
                entries[word] = pron
    return entries


def load_custom_lexicon(path: str | Path) -> dict[str, Pronunciation]:
    """Load the tab-separated override lexicon: ``word<TAB>PH PH ...``.

    ``#`` comment lines are skipped; when a word appears twice the last
    line wins.
    """
    entries: dict[str, Pronunciation] = {}
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if "\t" not in line:
                raise ParseError(path, line_no, "expected word<TAB>pronunciation")
            word, _, pron_text = line.partition("\t")
            word = word.strip().lower()
            phones = pron_text.split()
            if not word:
                raise ParseError(path, line_no, "empty word field")
            entries[word] = _check_pronunciation(phones, path, line_no)
    return entries


@dataclass(frozen=True)
class LexiconStack:
    """Three pronunciation layers consulted strictly in priority order."""

    custom: dict[str, Pronunciation]
    cmu: dict[str, Pronunciation]
    g2p_rules: RuleTable

    def lookup(self, word: str) -> tuple[Pronunciation, str]:
        """Resolve a lowercase word, returning (phones, source layer name)."""
        hit = self.custom.get(word)
        if hit is not None:
            return hit, "custom"
        hit = self.cmu.get(word)
        if hit is not None:
            return hit, "cmu"
        return self.g2p_rules.transcribe(word), "g2p"
