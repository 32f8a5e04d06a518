"""Spanish suffix-stripping stemmer (the Snowball "spanish" algorithm)."""

from __future__ import annotations

from ._regions import standard_r1r2

VOWELS = frozenset("aeiouáéíóúü")
ACUTE = str.maketrans("áéíóú", "aeiou")

PRONOUNS = (
    "selas", "selos", "sela", "selo", "las", "les", "los", "nos", "me", "se",
    "la", "le", "lo",
)
PRONOUN_HOSTS_ACCENTED = ("iéndo", "ándo", "ár", "ér", "ír")
PRONOUN_HOSTS = ("ando", "iendo", "ar", "er", "ir")

STEP1_GROUPS = (
    (("amientos", "imientos", "amiento", "imiento", "anzas", "ismos", "ables",
      "ibles", "istas", "anza", "icos", "icas", "ismo", "able", "ible", "ista",
      "osos", "osas", "ico", "ica", "oso", "osa"), "plain"),
    (("aciones", "adoras", "adores", "ancias", "adora", "ación", "acion",
      "antes", "ancia", "ador", "ante"), "ic"),
    (("logías", "logía"), "log"),
    (("uciones", "ución", "ucion"), "u"),
    (("encias", "encia"), "ente"),
    (("amente",), "amente"),
    (("mente",), "mente"),
    (("idades", "idad"), "idad"),
    (("ivas", "ivos", "iva", "ivo"), "iva"),
)

STEP2A = ("yeron", "yendo", "yamos", "yais", "yan", "yen", "yas", "yes", "ya",
          "ye", "yo", "yó")
STEP2B_GU = ("emos", "éis", "en", "es")
STEP2B = (
    "aríamos", "eríamos", "iríamos", "iéramos", "iésemos", "aríais", "aremos",
    "eríais", "eremos", "iríais", "iremos", "ierais", "ieseis", "asteis",
    "isteis", "ábamos", "áramos", "ásemos", "arían", "arías", "aréis", "erían",
    "erías", "eréis", "irían", "irías", "iréis", "ieran", "iesen", "ieron",
    "iendo", "ieras", "ieses", "abais", "arais", "aseis", "íamos", "arán",
    "arás", "aría", "erán", "erás", "ería", "irán", "irás", "iría", "iera",
    "iese", "aste", "iste", "aban", "aran", "asen", "aron", "ando", "abas",
    "adas", "idas", "aras", "ases", "íais", "ados", "idos", "amos", "imos",
    "ará", "aré", "erá", "eré", "irá", "iré", "aba", "ada", "ida", "ara",
    "ase", "ían", "ado", "ido", "ías", "áis", "ía", "ad", "ed", "id", "an",
    "ió", "ar", "er", "ir", "as", "ís",
)
RESIDUAL = ("os", "a", "o", "á", "í", "ó")


def _rv(word: str) -> int:
    if len(word) < 2:
        return len(word)
    if word[1] not in VOWELS:
        for i in range(2, len(word)):
            if word[i] in VOWELS:
                return i + 1
        return len(word)
    if word[0] in VOWELS:
        for i in range(2, len(word)):
            if word[i] not in VOWELS:
                return i + 1
        return len(word)
    return min(3, len(word))


def _ending(word: str, suffixes, region: int):
    """Longest suffix in ``suffixes``; None if absent or not inside ``region``."""
    for suffix in sorted(suffixes, key=len, reverse=True):
        if word.endswith(suffix):
            return suffix if len(word) - len(suffix) >= region else None
    return None


def _ending_within(word: str, suffixes, region: int):
    """Longest suffix in ``suffixes`` lying wholly inside ``region``."""
    for suffix in sorted(suffixes, key=len, reverse=True):
        if word.endswith(suffix) and len(word) - len(suffix) >= region:
            return suffix
    return None


def _in(word: str, suffix: str, region: int) -> bool:
    return word.endswith(suffix) and len(word) - len(suffix) >= region


def _step0(word: str, rv: int) -> str:
    pronoun = _ending(word, PRONOUNS, 0)
    if pronoun is None:
        return word
    base = word[: -len(pronoun)]
    host = _ending(base, PRONOUN_HOSTS_ACCENTED + PRONOUN_HOSTS + ("yendo",), rv)
    if host is None:
        return word
    if host in PRONOUN_HOSTS_ACCENTED:
        return base[: -len(host)] + host.translate(ACUTE)
    if host == "yendo" and not base[: -len(host)].endswith("u"):
        return word
    return base


def _step1(word: str, r1: int, r2: int) -> str:
    longest = None
    for suffixes, rule in STEP1_GROUPS:
        for suffix in suffixes:
            if word.endswith(suffix) and (longest is None or len(suffix) > len(longest[0])):
                longest = (suffix, rule)
    if longest is None:
        return word
    suffix, rule = longest
    start = len(word) - len(suffix)
    base = word[:start]

    if rule == "amente":
        if start < r1:
            return word
        word = base
        if _in(word, "iv", r2):
            word = word[:-2]
            if _in(word, "at", r2):
                word = word[:-2]
        else:
            for tail in ("os", "ic", "ad"):
                if _in(word, tail, r2):
                    return word[:-2]
        return word

    if start < r2:
        return word
    if rule == "plain":
        return base
    if rule == "ic":
        return base[:-2] if _in(base, "ic", r2) else base
    if rule == "log":
        return base + "log"
    if rule == "u":
        return base + "u"
    if rule == "ente":
        return base + "ente"
    if rule == "mente":
        for tail in ("ante", "able", "ible"):
            if _in(base, tail, r2):
                return base[: -len(tail)]
        return base
    if rule == "idad":
        for tail in ("abil", "ic", "iv"):
            if _in(base, tail, r2):
                return base[: -len(tail)]
        return base
    if rule == "iva":
        return base[:-2] if _in(base, "at", r2) else base
    return word


def _step2a(word: str, rv: int) -> str:
    suffix = _ending_within(word, STEP2A, rv)
    if suffix and word[: -len(suffix)].endswith("u"):
        return word[: -len(suffix)]
    return word


def _step2b(word: str, rv: int) -> str:
    suffix = _ending_within(word, STEP2B_GU + STEP2B, rv)
    if suffix is None:
        return word
    base = word[: -len(suffix)]
    if suffix in STEP2B_GU and base.endswith("gu"):
        base = base[:-1]
    return base


def _step3(word: str, rv: int) -> str:
    suffix = _ending(word, RESIDUAL, rv)
    if suffix:
        return word[: -len(suffix)]
    for suffix in ("e", "é"):
        if _in(word, suffix, rv):
            word = word[:-1]
            if word.endswith("gu") and len(word) - 1 >= rv:
                word = word[:-1]
            return word
    return word


def stem(word: str) -> str:
    """Return the stem of a lowercase Spanish word."""
    rv = _rv(word)
    r1, r2 = standard_r1r2(word, VOWELS)

    word = _step0(word, rv)
    stemmed = _step1(word, r1, r2)
    if stemmed == word:
        stemmed = _step2a(word, rv)
        if stemmed == word:
            stemmed = _step2b(word, rv)
    word = _step3(stemmed, rv)
    return word.translate(ACUTE)
