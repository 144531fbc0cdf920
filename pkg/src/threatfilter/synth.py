"""Deterministic synthetic corpus generator.

Real threat-email corpora are not publicly distributable, so this module
fabricates one: threat messages drawn from templated threat-lexicon
phrase pools, normal messages from spam and business/personal pools, with
deliberate vocabulary overlap between the classes.  Every message is
plainly marked synthetic via an X-Synthetic header.  Content is capped at
200 words per message.

The threat class comes in three registers, engineered so the scoring
approaches separate:

* overt: verbatim threat phrases and threat-only keywords; every
  approach catches these;
* business-toned: one phrase buried in the polite vocabulary that
  dominates normal mail, so single-keyword evidence averages out weak;
* scattered: the phrase keywords appear apart from each other, so the
  contiguous multi-keyword feature is absent and only keyword-context
  matching collects the evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .corpus import Label, LabeledEmail, parse_email

MAX_WORDS = 200

# multi-word threat phrases, usually inserted verbatim so their n-grams
# recur.  The first three are "core": every threat message carries one.
# Phrase constituents never appear in normal mail.
THREAT_PHRASES = (
    "bomb blast",
    "explosive device",
    "suicide attack",
    "hostage crisis",
    "weapons cache",
    "chemical agent",
    "detonate charges",
    "armed assault",
    "terror strike",
    "ransom demand",
)
CORE_PHRASES = THREAT_PHRASES[:3]

# single keywords that only ever appear in threat messages
THREAT_WORDS = ("militants", "detonator", "ammunition", "insurgents")

# pressure words common to demands, phishing spam, and billing mail;
# their class prevalence is balanced, so they are weak evidence
AMBIGUOUS_WORDS = ("urgent", "deadline", "security", "payment", "account")

# polite register: (word, inclusion rate in normal mail, rate in the
# disguised threat registers).  High normal prevalence makes these strong
# normal evidence, and disguised threats reuse them as camouflage.
POLITE_WORDS = (
    ("please", 0.85, 0.40),
    ("contact", 0.65, 0.35),
    ("information", 0.60, 0.35),
    ("thanks", 0.50, 0.25),
    ("hello", 0.50, 0.30),
    ("sincerely", 0.45, 0.30),
    ("regards", 0.40, 0.25),
    ("attention", 0.40, 0.30),
    ("message", 0.35, 0.30),
    ("response", 0.35, 0.30),
    ("address", 0.30, 0.25),
    ("details", 0.30, 0.25),
)

SPAM_WORDS = (
    "offer", "discount", "winner", "lottery", "prize", "bonus",
    "casino", "cheap", "deal", "subscribe", "promotion", "limited",
    "exclusive", "free", "trial", "membership", "coupon", "savings",
)

LEGIT_WORDS = (
    "meeting", "project", "report", "schedule", "budget", "review",
    "conference", "agenda", "presentation", "invoice", "client",
    "office", "lunch", "weekend", "family", "birthday", "travel",
    "flight", "hotel", "holiday",
)

# connective filler; all entries are too short to become features
_FILLER = ("the", "to", "of", "in", "at", "for", "we", "you", "our", "is", "be", "on", "and")

_SENDERS = ("alpha", "bravo", "delta", "echo", "lima", "nova", "orion", "sierra")
_DOMAINS = ("example.com", "example.org", "example.net", "mail.example")


@dataclass(frozen=True)
class CorpusSpec:
    n_threat: int = 1600
    n_spam: int = 2700
    n_legitimate: int = 2700
    seed: int = 0
    body_sentences: tuple[int, int] = (4, 9)

    def total(self) -> int:
        return self.n_threat + self.n_spam + self.n_legitimate


def _sentence(rng: random.Random, units: list[str]) -> str:
    """Join content units with short filler into one sentence."""
    words: list[str] = []
    for unit in units:
        if words and rng.random() < 0.7:
            words.append(rng.choice(_FILLER))
        words.append(unit)
    text = " ".join(words)
    return text[0].upper() + text[1:] + "."


def _draw(rng: random.Random, pool: tuple[str, ...], lo: int, hi: int) -> list[str]:
    return [rng.choice(pool) for _ in range(rng.randint(lo, hi))]


def _polite(rng: random.Random, disguised: bool) -> list[str]:
    out = []
    for word, p_normal, p_threat in POLITE_WORDS:
        if rng.random() < (p_threat if disguised else p_normal):
            out.append(word)
    return out


def _compose(rng: random.Random, units: list[str], spec: CorpusSpec) -> str:
    rng.shuffle(units)
    lo, hi = spec.body_sentences
    n_sentences = max(1, min(rng.randint(lo, hi), len(units)))
    sentences = []
    bounds = [round(i * len(units) / n_sentences) for i in range(n_sentences + 1)]
    for a, b in zip(bounds, bounds[1:]):
        if b > a:
            sentences.append(_sentence(rng, units[a:b]))
    body = " ".join(sentences)
    words = body.split()
    if len(words) > MAX_WORDS:
        body = " ".join(words[:MAX_WORDS])
    return body


def _threat_units(rng: random.Random) -> tuple[list[str], str]:
    style = rng.random()
    units: list[str] = []
    if style < 0.35:
        # overt: verbatim phrases plus threat-only keywords
        units += [rng.choice(CORE_PHRASES)]
        units += _draw(rng, THREAT_PHRASES, 1, 3)
        units += _draw(rng, THREAT_WORDS, 1, 3)
        units += _draw(rng, AMBIGUOUS_WORDS, 1, 2)
        subject = rng.choice(THREAT_PHRASES)
    elif style < 0.70:
        # business-toned demand: one phrase buried in polite language,
        # under an innocuous subject
        units += [rng.choice(CORE_PHRASES)]
        units += _polite(rng, disguised=True)
        units += _draw(rng, AMBIGUOUS_WORDS, 1, 2)
        units += _draw(rng, LEGIT_WORDS, 1, 2)
        subject = " ".join(_draw(rng, LEGIT_WORDS, 2, 2))
    else:
        # scattered: the phrase keywords appear apart from each other
        phrase_words = rng.choice(CORE_PHRASES).split()
        units += phrase_words
        if rng.random() < 0.5:
            units += [rng.choice(THREAT_PHRASES).split()[0]]
        units += _polite(rng, disguised=True)
        units += _draw(rng, AMBIGUOUS_WORDS, 1, 2)
        units += _draw(rng, LEGIT_WORDS, 1, 2)
        subject = " ".join(_draw(rng, LEGIT_WORDS, 2, 2))
    return units, subject


def _spam_units(rng: random.Random) -> tuple[list[str], str]:
    units = _draw(rng, SPAM_WORDS, 4, 8)
    units += _polite(rng, disguised=False)
    units += _draw(rng, AMBIGUOUS_WORDS, 1, 2)
    subject = " ".join(_draw(rng, SPAM_WORDS, 2, 3))
    return units, subject


def _legit_units(rng: random.Random) -> tuple[list[str], str]:
    units = _draw(rng, LEGIT_WORDS, 4, 8)
    units += _polite(rng, disguised=False)
    units += _draw(rng, AMBIGUOUS_WORDS, 0, 2)
    subject = " ".join(_draw(rng, LEGIT_WORDS, 2, 3))
    return units, subject


_BUILDERS = {
    Label.THREAT: _threat_units,
    Label.SPAM: _spam_units,
    Label.LEGITIMATE: _legit_units,
}


def _message_text(rng: random.Random, label: Label, spec: CorpusSpec) -> str:
    units, subject = _BUILDERS[label](rng)
    body = _compose(rng, units, spec)
    sender = f"{rng.choice(_SENDERS)}{rng.randrange(100)}@{rng.choice(_DOMAINS)}"
    return (
        f"From: {sender}\n"
        f"To: recipient@example.com\n"
        f"Subject: {subject}\n"
        f"X-Synthetic: threatfilter gen-corpus seed={spec.seed}\n"
        f"\n"
        f"{body}\n"
    )


def _plan(spec: CorpusSpec) -> tuple[tuple[Label, int], ...]:
    if spec.n_threat < 1 or spec.n_spam + spec.n_legitimate < 1:
        raise ValueError("need both classes for downstream training")
    return (
        (Label.THREAT, spec.n_threat),
        (Label.SPAM, spec.n_spam),
        (Label.LEGITIMATE, spec.n_legitimate),
    )


def generate_messages(spec: CorpusSpec) -> list[LabeledEmail]:
    """All messages of a synthetic corpus, deterministic in the spec."""
    rng = random.Random(spec.seed)
    messages: list[LabeledEmail] = []
    for label, count in _plan(spec):
        for index in range(count):
            source_id = f"{label.value}/{label.value}-{index:05d}.txt"
            text = _message_text(rng, label, spec)
            messages.append(LabeledEmail(parse_email(text, source_id), label))
    return messages


def write_corpus(root: str | Path, spec: CorpusSpec) -> dict[str, int]:
    """Write the synthetic corpus tree under root; returns per-label counts.

    Identical spec values produce byte-identical trees, matching
    generate_messages message for message.
    """
    root = Path(root)
    plan = _plan(spec)
    rng = random.Random(spec.seed)
    counts: dict[str, int] = {}
    for label, count in plan:
        subdir = root / label.value
        subdir.mkdir(parents=True, exist_ok=True)
        for index in range(count):
            text = _message_text(rng, label, spec)
            (subdir / f"{label.value}-{index:05d}.txt").write_text(text, encoding="utf-8")
        counts[label.value] = count
    return counts
