"""ARPAbet phoneme inventory and symbol validation.

The inventory is the 39-phoneme set used by the CMU Pronouncing Dictionary:
15 vowels (which carry a stress digit 0/1/2 in running pronunciations) and
24 consonants (which never do).
"""

from __future__ import annotations

VOWELS = frozenset(
    "AA AE AH AO AW AY EH ER EY IH IY OW OY UH UW".split()
)

CONSONANTS = frozenset(
    "B CH D DH F G HH JH K L M N NG P R S SH T TH V W Y Z ZH".split()
)

PHONEMES = VOWELS | CONSONANTS

STRESS_DIGITS = ("0", "1", "2")

# Every legal running-text symbol: consonants bare, vowels with a stress digit.
ALL_SYMBOLS = tuple(sorted(CONSONANTS) + [v + d for v in sorted(VOWELS) for d in STRESS_DIGITS])


def base_phone(symbol: str) -> str:
    """Strip a trailing stress digit, if any."""
    if symbol and symbol[-1] in "012":
        return symbol[:-1]
    return symbol


def is_vowel_symbol(symbol: str) -> bool:
    return base_phone(symbol) in VOWELS


def is_valid_symbol(symbol: str) -> bool:
    """True iff symbol is a stressed vowel (e.g. AH0) or a bare consonant (e.g. K)."""
    if symbol in CONSONANTS:
        return True
    if len(symbol) >= 2 and symbol[-1] in "012":
        return symbol[:-1] in VOWELS
    return False
