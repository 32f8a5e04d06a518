"""English suffix-stripping stemmer (the Porter2 / Snowball "english" algorithm)."""

from __future__ import annotations

from ._regions import standard_r1r2

VOWELS = frozenset("aeiouy")
DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
LI_ENDINGS = frozenset("cdeghkmnrt")

EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}
# invariant after step 1a
POST_1A = frozenset(
    ["inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"]
)

STEP2 = (
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
)
STEP3 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)
STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate",
    "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
)


def _is_vowel(ch: str) -> bool:
    return ch in VOWELS


def _longest(word: str, suffixes):
    for suffix in sorted(suffixes, key=len, reverse=True):
        if word.endswith(suffix):
            return suffix
    return None


def _ends_short_syllable(word: str) -> bool:
    if len(word) == 2:
        return _is_vowel(word[0]) and not _is_vowel(word[1])
    if len(word) >= 3:
        a, b, c = word[-3], word[-2], word[-1]
        return (
            not _is_vowel(a)
            and _is_vowel(b)
            and not _is_vowel(c)
            and c not in "wxY"
        )
    return False


def _is_short(word: str, r1: int) -> bool:
    return r1 >= len(word) and _ends_short_syllable(word)


def _mark_consonant_y(word: str) -> str:
    chars = list(word)
    if chars and chars[0] == "y":
        chars[0] = "Y"
    for i in range(1, len(chars)):
        if chars[i] == "y" and chars[i - 1] in VOWELS:
            chars[i] = "Y"
    return "".join(chars)


def _regions(word: str) -> tuple[int, int]:
    for prefix in ("gener", "commun", "arsen"):
        if word.startswith(prefix):
            r1 = len(prefix)
            _, r2 = standard_r1r2(word, VOWELS, start=r1)
            return r1, r2
    return standard_r1r2(word, VOWELS)


def _step0(word: str) -> str:
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            return word[: -len(suffix)]
    return word


def _step1a(word: str) -> str:
    suffix = _longest(word, ("sses", "ied", "ies", "us", "ss", "s"))
    if suffix == "sses":
        return word[:-2]
    if suffix in ("ied", "ies"):
        return word[:-3] + ("i" if len(word) > 4 else "ie")
    if suffix == "s":
        stem = word[:-1]
        if any(_is_vowel(ch) for ch in stem[:-1]):
            return stem
    return word


def _step1b(word: str, r1: int) -> str:
    suffix = _longest(word, ("eed", "eedly", "ed", "edly", "ing", "ingly"))
    if suffix is None:
        return word
    if suffix in ("eed", "eedly"):
        if len(word) - len(suffix) >= r1:
            return word[: -len(suffix)] + "ee"
        return word
    stem = word[: -len(suffix)]
    if not any(_is_vowel(ch) for ch in stem):
        return word
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if stem.endswith(DOUBLES):
        return stem[:-1]
    if _is_short(stem, r1):
        return stem + "e"
    return stem


def _step1c(word: str) -> str:
    if len(word) > 2 and word[-1] in "yY" and not _is_vowel(word[-2]):
        return word[:-1] + "i"
    return word


def _step2(word: str, r1: int) -> str:
    for suffix, repl in STEP2:
        if word.endswith(suffix):
            if len(word) - len(suffix) < r1:
                return word
            stem = word[: -len(suffix)]
            if suffix == "ogi" and not stem.endswith("l"):
                return word
            if suffix == "li" and (not stem or stem[-1] not in LI_ENDINGS):
                return word
            return stem + repl
    return word


def _step3(word: str, r1: int, r2: int) -> str:
    for suffix, repl in STEP3:
        if word.endswith(suffix):
            start = len(word) - len(suffix)
            if start < r1 or (suffix == "ative" and start < r2):
                return word
            return word[:start] + repl
    return word


def _step4(word: str, r2: int) -> str:
    suffix = _longest(word, STEP4)
    if suffix is None:
        return word
    start = len(word) - len(suffix)
    if start < r2:
        return word
    if suffix == "ion" and (start == 0 or word[start - 1] not in "st"):
        return word
    return word[:start]


def _step5(word: str, r1: int, r2: int) -> str:
    last = len(word) - 1
    if word.endswith("e"):
        if last >= r2 or (last >= r1 and not _ends_short_syllable(word[:-1])):
            return word[:-1]
    elif word.endswith("l"):
        if last >= r2 and word[-2:-1] == "l":
            return word[:-1]
    return word


def stem(word: str) -> str:
    """Return the stem of a lowercase English word."""
    if len(word) <= 2:
        return word
    if word in EXCEPTIONS:
        return EXCEPTIONS[word]
    word = word.lstrip("'")
    word = _mark_consonant_y(word)
    r1, r2 = _regions(word)

    word = _step0(word)
    word = _step1a(word)
    if word in POST_1A:
        return word
    word = _step1b(word, r1)
    word = _step1c(word)
    word = _step2(word, r1)
    word = _step3(word, r1, r2)
    word = _step4(word, r2)
    word = _step5(word, r1, r2)
    return word.replace("Y", "y")
