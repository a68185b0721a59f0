"""Turn normalized text into an ARPAbet unit sequence via the lexicon stack."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexicon import LexiconStack
from .normalize import NormalizedText

PHONE = "phone"
WORD_BOUNDARY = "word_boundary"
PAUSE = "pause"


@dataclass(frozen=True)
class Unit:
    symbol: str  # ARPAbet symbol for phones, "" for structural units
    kind: str  # "phone" | "word_boundary" | "pause"


@dataclass(frozen=True)
class PhonemeSequence:
    units: tuple[Unit, ...]
    # Per resolved word: (surface, lexicon layer that produced it).
    word_sources: tuple[tuple[str, str], ...] = field(default=())

    def phones(self) -> tuple[str, ...]:
        return tuple(u.symbol for u in self.units if u.kind == PHONE)


def phonemize(text: NormalizedText, lex: LexiconStack) -> PhonemeSequence:
    """Resolve each word through custom > cmu > g2p and interleave structure.

    A word boundary goes between adjacent words; every retained punctuation
    mark maps to a single pause class, with runs collapsed so no two pause
    units are adjacent.
    """
    units: list[Unit] = []
    sources: list[tuple[str, str]] = []
    prev_was_word = False
    for token in text.tokens:
        if token.kind == "punctuation":
            if units and units[-1].kind != PAUSE:
                units.append(Unit("", PAUSE))
            prev_was_word = False
            continue
        pron, source = lex.lookup(token.surface)
        sources.append((token.surface, source))
        if prev_was_word:
            units.append(Unit("", WORD_BOUNDARY))
        units.extend(Unit(symbol, PHONE) for symbol in pron)
        prev_was_word = True
    return PhonemeSequence(tuple(units), tuple(sources))
