"""Region helpers shared by the Snowball-style stemmers."""

from __future__ import annotations


def _after_vowel_consonant(word: str, vowels, start: int) -> int:
    for i in range(start + 1, len(word)):
        if word[i] not in vowels and word[i - 1] in vowels:
            return i + 1
    return len(word)


def standard_r1r2(word: str, vowels, start: int = 0) -> tuple[int, int]:
    """Return the start offsets of R1 and R2.

    R1 begins after the first non-vowel that follows a vowel; R2 applies
    the same rule inside R1.  ``start`` forces R1 to a given offset.
    """
    r1 = start if start else _after_vowel_consonant(word, vowels, 0)
    r2 = _after_vowel_consonant(word, vowels, r1)
    return r1, r2
