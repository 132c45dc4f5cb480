"""Heuristic syllable counter (vowel groups with silent-e handling)."""

import re

_VOWEL_GROUP = re.compile(r"[aeiouy]+")
_LETTERS = re.compile(r"[a-z]+")
_VOWELS = frozenset("aeiouy")


def count_syllables(word: str) -> int:
    """Count syllables in one word; always at least 1.

    Counts maximal vowel-letter groups, subtracting a trailing silent e.
    A final -le preceded by a consonant keeps its e ("table" -> 2).
    """
    w = "".join(_LETTERS.findall(word.lower()))
    if not w:
        return 1
    groups = len(_VOWEL_GROUP.findall(w))
    if w.endswith("e") and not (
        len(w) >= 3 and w.endswith("le") and w[-3] not in _VOWELS
    ):
        groups -= 1
    return max(1, groups)
