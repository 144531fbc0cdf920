"""Message-to-feature pipeline.

A message is reduced to lowercase alphanumeric tokens (split on whitespace
and punctuation), short and purely numeric tokens are dropped, stopwords
removed, the survivors Porter-stemmed, and contiguous 1..3-stem n-grams
emitted with term frequencies.  Subject and body are processed separately
so n-grams never bridge the two.
"""

from __future__ import annotations

import re
from pathlib import Path

from .corpus import RawEmail
from .porter import stem
from .stopwords import DEFAULT_STOPWORDS

# a feature is an ordered tuple of 1..3 stems; its arity is len()
Feature = tuple[str, ...]
FeatureVector = dict[Feature, int]

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

MIN_TOKEN_LENGTH = 4


class StopList:
    """Immutable set of stopwords with case-insensitive membership."""

    def __init__(self, words=()):
        self._words = frozenset(w.lower() for w in words if w)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._words

    def __len__(self) -> int:
        return len(self._words)

    def __eq__(self, other) -> bool:
        return isinstance(other, StopList) and self._words == other._words

    def __hash__(self) -> int:
        return hash(self._words)

    @property
    def words(self) -> frozenset[str]:
        return self._words

    @classmethod
    def default(cls) -> "StopList":
        return cls(DEFAULT_STOPWORDS)

    @classmethod
    def from_file(cls, path: str | Path) -> "StopList":
        """One word per line; blank lines and '#' comments ignored."""
        words = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            entry = line.split("#", 1)[0].strip().lower()
            if entry:
                words.append(entry)
        return cls(words)


def tokenize(text: str, min_length: int = MIN_TOKEN_LENGTH) -> list[str]:
    """Lowercase alphanumeric tokens, dropping short and purely numeric ones.

    Every whitespace or punctuation character is a split point; mixed
    alphanumerics ("ak47") survive, digit-only runs do not.
    """
    tokens = []
    for tok in _TOKEN_RE.findall(text.lower()):
        if len(tok) < min_length or tok.isdigit():
            continue
        tokens.append(tok)
    return tokens


def remove_stopwords(tokens: list[str], stops: StopList) -> list[str]:
    return [t for t in tokens if t not in stops]


def stem_tokens(tokens: list[str]) -> list[str]:
    return [stem(t) for t in tokens]


def _add_ngrams(counts: FeatureVector, stems: list[str], max_arity: int) -> None:
    for n in range(1, max_arity + 1):
        for i in range(len(stems) - n + 1):
            feature = tuple(stems[i : i + n])
            counts[feature] = counts.get(feature, 0) + 1


def extract_features(
    email: RawEmail,
    stops: StopList,
    max_arity: int = 3,
    min_length: int = MIN_TOKEN_LENGTH,
) -> FeatureVector:
    """Term-frequency vector of contiguous 1..max_arity stem n-grams.

    Only subject and body contribute; other header fields are ignored.
    """
    if max_arity not in (1, 2, 3):
        raise ValueError(f"max_arity must be 1, 2 or 3, got {max_arity}")
    counts: FeatureVector = {}
    for segment in (email.subject, email.body):
        stems = stem_tokens(remove_stopwords(tokenize(segment, min_length), stops))
        _add_ngrams(counts, stems, max_arity)
    return counts
