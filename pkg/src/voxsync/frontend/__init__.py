"""Text frontend: normalization, lexicons, and grapheme-to-phoneme fallback."""

from importlib import resources

from .arpabet import ALL_SYMBOLS, CONSONANTS, PHONEMES, VOWELS, base_phone, is_valid_symbol, is_vowel_symbol
from .g2p import RuleTable, default_rules, g2p_fallback, load_rules
from .lexicon import (
    InvalidPhoneme,
    LexiconError,
    LexiconStack,
    ParseError,
    load_cmu_dict,
    load_custom_lexicon,
)
from .normalize import (
    EmptyAfterNormalization,
    MAX_TEXT_CHARS,
    NormalizationError,
    NormalizedText,
    TextTooLong,
    Token,
    normalize_text,
    spell_cardinal,
)
from .phonemize import PAUSE, PHONE, WORD_BOUNDARY, PhonemeSequence, Unit, phonemize


def bundled_path(name: str) -> str:
    """Filesystem path of a bundled frontend data file."""
    return str(resources.files("voxsync.frontend").joinpath("data", name))


def default_stack(custom_path=None, cmu_path=None) -> LexiconStack:
    """Lexicon stack backed by the bundled data files unless overridden."""
    custom = load_custom_lexicon(custom_path or bundled_path("custom_lexicon.tsv"))
    cmu = load_cmu_dict(cmu_path or bundled_path("cmudict.small"))
    return LexiconStack(custom=custom, cmu=cmu, g2p_rules=default_rules())
