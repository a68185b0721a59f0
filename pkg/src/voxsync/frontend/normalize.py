"""Text normalization: raw request text to a clean token stream.

Rules, pinned for reproducibility:
  * Unicode NFC, then lowercase.
  * Word tokens match [a-z']+; runs of digits up to six long are expanded to
    English cardinal words; longer numeric runs are dropped.
  * Retained punctuation { . , ! ? ; : } becomes single-character tokens.
  * Every other character is dropped and acts as a token separator.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

MAX_TEXT_CHARS = 1000

PUNCTUATION = frozenset(".,!?;:")

_SCAN = re.compile(r"[a-z']+|[0-9]+|[.,!?;:]")

_ONES = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen",
]
_TENS = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety",
]


class NormalizationError(ValueError):
    pass


class TextTooLong(NormalizationError):
    pass


class EmptyAfterNormalization(NormalizationError):
    """Raised when no word token survives normalization."""


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str  # "word" | "punctuation"


@dataclass(frozen=True)
class NormalizedText:
    tokens: tuple[Token, ...]

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens if t.kind == "word")

    def render(self) -> str:
        """Space-joined surface forms; normalizing the result is a no-op."""
        return " ".join(t.surface for t in self.tokens)


def spell_cardinal(n: int) -> list[str]:
    """English cardinal words for 0 <= n < 1_000_000, one word per list item."""
    if not 0 <= n < 1_000_000:
        raise ValueError(f"cardinal out of supported range: {n}")
    if n < 20:
        return [_ONES[n]]
    if n < 100:
        tens, rest = divmod(n, 10)
        return [_TENS[tens]] + ([_ONES[rest]] if rest else [])
    if n < 1000:
        hundreds, rest = divmod(n, 100)
        return [_ONES[hundreds], "hundred"] + (spell_cardinal(rest) if rest else [])
    thousands, rest = divmod(n, 1000)
    return spell_cardinal(thousands) + ["thousand"] + (spell_cardinal(rest) if rest else [])


def normalize_text(raw: str) -> NormalizedText:
    """Normalize raw text into word and punctuation tokens.

    Raises TextTooLong beyond the 1000-character service bound and
    EmptyAfterNormalization when nothing pronounceable remains.
    """
    if len(raw) > MAX_TEXT_CHARS:
        raise TextTooLong(f"text is {len(raw)} characters, limit is {MAX_TEXT_CHARS}")
    lowered = unicodedata.normalize("NFC", raw).lower()
    tokens: list[Token] = []
    for match in _SCAN.finditer(lowered):
        chunk = match.group(0)
        if chunk[0] in PUNCTUATION:
            tokens.append(Token(chunk, "punctuation"))
        elif chunk[0].isdigit():
            if len(chunk) <= 6:
                tokens.extend(Token(w, "word") for w in spell_cardinal(int(chunk)))
        else:
            tokens.append(Token(chunk, "word"))
    if not any(t.kind == "word" for t in tokens):
        raise EmptyAfterNormalization("no word token remains after normalization")
    return NormalizedText(tuple(tokens))
