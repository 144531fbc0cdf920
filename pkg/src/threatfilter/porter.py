"""Porter suffix-stripping stemmer.

Port of the classic ANSI C reference implementation (Porter, 1980,
"An algorithm for suffix stripping", Program 14(3), pp. 130-137),
including the two conventional departures of the canonical C version
(step 2: -bli -> -ble instead of -abli -> -able, and the extra
-logi -> -log rule).  Output agrees with the published reference
vocabulary / output word lists.

Lowercase ASCII input is assumed; the tokenizer in this package only
ever produces lowercase alphanumeric tokens.
"""

from __future__ import annotations

_VOWELS = "aeiou"


class _Buffer:
    """Mutable word buffer with the index conventions of the C original.

    ``b[0..k]`` is the live region of the word; ``j`` marks the start of
    a candidate suffix after a successful ``ends`` test.
    """

    __slots__ = ("b", "k", "j")

    def __init__(self, word: str):
        self.b = word
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        # number of consonant-vowel sequences in b[0..j]
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def double_cons(self, j: int) -> bool:
        if j < 1:
            return False
        if self.b[j] != self.b[j - 1]:
            return False
        return self.cons(j)

    def cvc(self, i: int) -> bool:
        # consonant-vowel-consonant ending at i, last consonant not w/x/y
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return False
        self.j = self.k - length
        return True

    def set_to(self, s: str) -> None:
        self.b = self.b[: self.j + 1] + s + self.b[self.j + len(s) + 1 :]
        self.k = self.j + len(s)

    def replace_if_m(self, s: str) -> None:
        if self.m() > 0:
            self.set_to(s)


def _step1ab(w: _Buffer) -> None:
    # plurals and -ed / -ing
    if w.b[w.k] == "s":
        if w.ends("sses"):
            w.k -= 2
        elif w.ends("ies"):
            w.set_to("i")
        elif w.b[w.k - 1] != "s":
            w.k -= 1
    if w.ends("eed"):
        if w.m() > 0:
            w.k -= 1
    elif (w.ends("ed") or w.ends("ing")) and w.vowel_in_stem():
        w.k = w.j
        if w.ends("at"):
            w.set_to("ate")
        elif w.ends("bl"):
            w.set_to("ble")
        elif w.ends("iz"):
            w.set_to("ize")
        elif w.double_cons(w.k):
            if w.b[w.k - 1] not in "lsz":
                w.k -= 1
        elif w.m() == 1 and w.cvc(w.k):
            w.set_to("e")


def _step1c(w: _Buffer) -> None:
    # terminal y -> i when there is another vowel in the stem
    if w.ends("y") and w.vowel_in_stem():
        w.b = w.b[: w.k] + "i" + w.b[w.k + 1 :]


_STEP2_RULES = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3_RULES = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}


def _step2(w: _Buffer) -> None:
    # double suffixes to single ones: -ization -> -ize etc.
    for suffix, repl in _STEP2_RULES.get(w.b[w.k - 1], ()):
        if w.ends(suffix):
            w.replace_if_m(repl)
            return


def _step3(w: _Buffer) -> None:
    # -ic-, -full, -ness etc.
    for suffix, repl in _STEP3_RULES.get(w.b[w.k], ()):
        if w.ends(suffix):
            w.replace_if_m(repl)
            return


_STEP4_SUFFIXES = {
    "a": ("al",),
    "c": ("ance", "ence"),
    "e": ("er",),
    "i": ("ic",),
    "l": ("able", "ible"),
    "n": ("ant", "ement", "ment", "ent"),
    "o": ("ion", "ou"),
    "s": ("ism",),
    "t": ("ate", "iti"),
    "u": ("ous",),
    "v": ("ive",),
    "z": ("ize",),
}


def _step4(w: _Buffer) -> None:
    # -ant, -ence etc. taken off when the stem measure is > 1
    for suffix in _STEP4_SUFFIXES.get(w.b[w.k - 1], ()):
        if w.ends(suffix):
            if suffix == "ion" and w.b[w.j] not in "st":
                continue
            if w.m() > 1:
                w.k = w.j
            return


def _step5(w: _Buffer) -> None:
    # remove final -e when measure > 1; -ll -> -l when measure > 1
    w.j = w.k
    if w.b[w.k] == "e":
        a = w.m()
        if a > 1 or (a == 1 and not w.cvc(w.k - 1)):
            w.k -= 1
    if w.b[w.k] == "l" and w.double_cons(w.k) and w.m() > 1:
        w.k -= 1


def stem(word: str) -> str:
    """Return the Porter stem of ``word``; words of length <= 2 pass through."""
    if len(word) <= 2:
        return word
    w = _Buffer(word)
    _step1ab(w)
    _step1c(w)
    _step2(w)
    _step3(w)
    _step4(w)
    _step5(w)
    return w.b[: w.k + 1]
