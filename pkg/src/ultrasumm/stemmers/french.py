"""French suffix-stripping stemmer (the Snowball "french" algorithm)."""

from __future__ import annotations

from ._regions import standard_r1r2

VOWELS = frozenset("aeiouyâàëéêèïîôûù")

STEP1 = {
    "plain": ("ances", "iqUes", "ismes", "ables", "istes", "ance", "iqUe", "isme",
              "able", "iste", "eux"),
    "atrice": ("atrices", "ateurs", "ations", "atrice", "ateur", "ation"),
    "logie": ("logies", "logie"),
    "usion": ("usions", "utions", "usion", "ution"),
    "ence": ("ences", "ence"),
    "ement": ("ements", "ement"),
    "ite": ("ités", "ité"),
    "if": ("ives", "ifs", "ive", "if"),
    "eaux": ("eaux",),
    "aux": ("aux",),
    "euse": ("euses", "euse"),
    "issement": ("issements", "issement"),
    "amment": ("amment",),
    "emment": ("emment",),
    "ment": ("ments", "ment"),
}

STEP2A = (
    "issaIent", "issantes", "iraIent", "issante", "issants", "issions", "irions",
    "issais", "issait", "issant", "issent", "issiez", "issons", "irais", "irait",
    "irent", "iriez", "irons", "iront", "isses", "issez", "îmes", "îtes", "irai",
    "iras", "irez", "isse", "ies", "ira", "ît", "ie", "ir", "is", "it", "i",
)
STEP2B_PLAIN = (
    "eraIent", "erions", "èrent", "erais", "erait", "eriez", "erons", "eront",
    "erai", "eras", "erez", "ées", "era", "iez", "ée", "és", "er", "ez", "é",
)
STEP2B_A = (
    "assions", "assent", "assiez", "aIent", "antes", "asses", "âmes", "âtes",
    "ante", "ants", "asse", "ais", "ait", "ant", "ât", "ai", "as", "a",
)


def _mark(word: str) -> str:
    """Flag letters that must not count as vowels.

    u/i between vowels, y next to a vowel and u after q are upper-cased;
    diaeresis vowels are split into a consonant marker H plus the vowel.
    Rewrites are tried left to right and a position is re-examined after
    each rewrite, so an earlier vowel claims the letter after it first.
    """
    chars = list(word)
    i = 0
    while i < len(chars):
        ch = chars[i]
        nxt = chars[i + 1] if i + 1 < len(chars) else ""
        after = chars[i + 2] if i + 2 < len(chars) else ""
        if ch in VOWELS and nxt and (
            (nxt in "ui" and after and after in VOWELS) or nxt == "y"
        ):
            chars[i + 1] = nxt.upper()
        elif ch == "ë":
            chars[i : i + 1] = ["H", "e"]
        elif ch == "ï":
            chars[i : i + 1] = ["H", "i"]
        elif ch == "y" and nxt and nxt in VOWELS:
            chars[i] = "Y"
        elif ch == "q" and nxt == "u":
            chars[i + 1] = "U"
        else:
            i += 1
    return "".join(chars)


def _unmark(word: str) -> str:
    word = word.replace("He", "ë").replace("Hi", "ï").replace("H", "")
    return word.replace("I", "i").replace("U", "u").replace("Y", "y")


def _rv(word: str) -> int:
    if word[:3] in ("par", "col", "tap"):
        return 3
    if len(word) >= 2 and word[0] in VOWELS and word[1] in VOWELS:
        return min(3, len(word))
    for i in range(1, len(word)):
        if word[i] in VOWELS:
            return i + 1
    return len(word)


def _in(word: str, suffix: str, region: int) -> bool:
    return word.endswith(suffix) and len(word) - len(suffix) >= region


def _longest(word: str, suffixes):
    for suffix in sorted(suffixes, key=len, reverse=True):
        if word.endswith(suffix):
            return suffix
    return None


def _step1(word: str, rv: int, r1: int, r2: int):
    """Return (new word, rule fired, was something removed)."""
    best = None
    for rule, suffixes in STEP1.items():
        suffix = _longest(word, suffixes)
        if suffix and (best is None or len(suffix) > len(best[1])):
            best = (rule, suffix)
    if best is None:
        return word, None, False
    rule, suffix = best
    start = len(word) - len(suffix)
    base = word[:start]

    if rule == "plain":
        return (base, rule, True) if start >= r2 else (word, None, False)
    if rule == "atrice":
        if start < r2:
            return word, None, False
        if base.endswith("ic"):
            base = base[:-2] if len(base) - 2 >= r2 else base[:-2] + "iqU"
        return base, rule, True
    if rule == "logie":
        return (base + "log", rule, True) if start >= r2 else (word, None, False)
    if rule == "usion":
        return (base + "u", rule, True) if start >= r2 else (word, None, False)
    if rule == "ence":
        return (base + "ent", rule, True) if start >= r2 else (word, None, False)
    if rule == "ement":
        if start < rv:
            return word, None, False
        if _in(base, "iv", r2):
            base = base[:-2]
            if _in(base, "at", r2):
                base = base[:-2]
        elif base.endswith("eus"):
            if len(base) - 3 >= r2:
                base = base[:-3]
            elif len(base) - 3 >= r1:
                base = base[:-3] + "eux"
        elif base.endswith(("abl", "iqU")):
            if len(base) - 3 >= r2:
                base = base[:-3]
        elif base.endswith(("ièr", "Ièr")):
            if len(base) - 3 >= rv:
                base = base[:-3] + "i"
        return base, rule, True
    if rule == "ite":
        if start < r2:
            return word, None, False
        if base.endswith("abil"):
            base = base[:-4] if len(base) - 4 >= r2 else base[:-4] + "abl"
        elif base.endswith("ic"):
            base = base[:-2] if len(base) - 2 >= r2 else base[:-2] + "iqU"
        elif _in(base, "iv", r2):
            base = base[:-2]
        return base, rule, True
    if rule == "if":
        if start < r2:
            return word, None, False
        if _in(base, "at", r2):
            base = base[:-2]
            if base.endswith("ic"):
                base = base[:-2] if len(base) - 2 >= r2 else base[:-2] + "iqU"
        return base, rule, True
    if rule == "eaux":
        return base + "eau", rule, True
    if rule == "aux":
        return (base + "al", rule, True) if start >= r1 else (word, None, False)
    if rule == "euse":
        if start >= r2:
            return base, rule, True
        if start >= r1:
            return base + "eux", rule, True
        return word, None, False
    if rule == "issement":
        if start >= r1 and base and base[-1] not in VOWELS:
            return base, rule, True
        return word, None, False
    if rule == "amment":
        return (base + "ant", rule, True) if start >= rv else (word, None, False)
    if rule == "emment":
        return (base + "ent", rule, True) if start >= rv else (word, None, False)
    if rule == "ment":
        if start >= rv and base and base[-1] in VOWELS and len(base) - 1 >= rv:
            return base, rule, True
        return word, None, False
    return word, None, False


def _ending_within(word: str, suffixes, region: int):
    for suffix in sorted(suffixes, key=len, reverse=True):
        if word.endswith(suffix) and len(word) - len(suffix) >= region:
            return suffix
    return None


def _step2a(word: str, rv: int):
    suffix = _ending_within(word, STEP2A, rv)
    if suffix is None:
        return word, False
    start = len(word) - len(suffix)
    if start - 1 >= rv and word[start - 1] not in VOWELS and word[start - 1] != "H":
        return word[:start], True
    return word, False


def _step2b(word: str, rv: int, r2: int):
    suffix = _ending_within(word, ("ions",) + STEP2B_PLAIN + STEP2B_A, rv)
    if suffix is None:
        return word, False
    start = len(word) - len(suffix)
    if suffix == "ions":
        return (word[:start], True) if start >= r2 else (word, False)
    if suffix in STEP2B_PLAIN:
        return word[:start], True
    base = word[:start]
    if base.endswith("e") and len(base) - 1 >= rv:
        base = base[:-1]
    return base, True


def _step4(word: str, rv: int, r2: int) -> str:
    if len(word) >= 2 and word.endswith("s"):
        if word.endswith("His") or word[-2] not in "aiouès":
            word = word[:-1]
    suffix = _ending_within(word, ("ière", "Ière", "ier", "Ier", "ion", "e"), rv)
    if suffix is None:
        return word
    start = len(word) - len(suffix)
    if suffix == "ion":
        if start >= r2 and start - 1 >= rv and word[start - 1] in "st":
            return word[:start]
        return word
    if suffix == "e":
        return word[:start]
    return word[:start] + "i"


def _undouble(word: str) -> str:
    if word.endswith(("enn", "onn", "ett", "ell", "eill")):
        return word[:-1]
    return word


def _unaccent(word: str) -> str:
    i = len(word)
    while i > 0 and word[i - 1] not in VOWELS:
        i -= 1
    if i < len(word) and i > 0 and word[i - 1] in "éè":
        return word[: i - 1] + "e" + word[i:]
    return word


def stem(word: str) -> str:
    """Return the stem of a lowercase French word."""
    word = _mark(word)
    rv = _rv(word)
    r1, r2 = standard_r1r2(word, VOWELS)

    word, rule, removed = _step1(word, rv, r1, r2)
    # an -ment ending counts as removed only if a verb step then fires
    if not removed or rule in ("amment", "emment", "ment"):
        word, removed = _step2a(word, rv)
        if not removed:
            word, removed = _step2b(word, rv, r2)

    if removed:
        if word.endswith("Y"):
            word = word[:-1] + "i"
        elif word.endswith("ç"):
            word = word[:-1] + "c"
    else:
        word = _step4(word, rv, r2)

    word = _undouble(word)
    word = _unaccent(word)
    return _unmark(word)
