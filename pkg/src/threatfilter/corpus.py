"""Message parsing, labeled corpus loading, and stratified train/test splits.

Corpus layout on disk::

    <root>/threat/<file>       one plain-text message per file
    <root>/spam/<file>
    <root>/legitimate/<file>

Messages are "headers, blank line, body" text.  MIME structure is not
decoded; attachments and markup are treated as opaque body text.  Files
are read as UTF-8 with invalid byte sequences replaced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class BinaryLabel(Enum):
    THREAT = "threat"
    NORMAL = "normal"


class Label(Enum):
    THREAT = "threat"
    SPAM = "spam"
    LEGITIMATE = "legitimate"

    @property
    def binary(self) -> BinaryLabel:
        """Spam and legitimate mail collectively form the normal class."""
        return BinaryLabel.THREAT if self is Label.THREAT else BinaryLabel.NORMAL


@dataclass(frozen=True)
class RawEmail:
    headers: tuple[tuple[str, str], ...]
    subject: str
    body: str
    source_id: str = ""

    def header(self, name: str) -> str | None:
        """Value of the first header with this name, case-insensitive."""
        low = name.lower()
        for key, value in self.headers:
            if key.lower() == low:
                return value
        return None


@dataclass(frozen=True)
class LabeledEmail:
    email: RawEmail
    label: Label


@dataclass(frozen=True)
class CorpusSplit:
    train: list[LabeledEmail]
    test: list[LabeledEmail]
    ratio: float
    seed: int


class CorpusError(Exception):
    """Raised when a corpus directory cannot be read."""


def _is_header_line(line: str) -> bool:
    name, sep, _ = line.partition(":")
    return bool(sep) and bool(name) and not any(ch.isspace() for ch in name)


def parse_email(text: str, source_id: str = "") -> RawEmail:
    """Parse "headers, blank line, body" text into a RawEmail.

    Parsing is total.  Without a blank-line separator the whole input is
    body; a line that is neither a header nor a continuation starts the
    body.  Continuation lines (leading whitespace) fold into the previous
    header value with a single space.
    """
    text = text.replace("\r\n", "\n")
    lines = text.split("\n")
    try:
        blank = next(i for i, line in enumerate(lines) if line == "")
    except StopIteration:
        return RawEmail(headers=(), subject="", body=text, source_id=source_id)

    headers: list[tuple[str, str]] = []
    body = "\n".join(lines[blank + 1 :])
    for i in range(blank):
        line = lines[i]
        if line[:1].isspace() and headers:
            name, value = headers[-1]
            headers[-1] = (name, f"{value} {line.strip()}".strip())
        elif _is_header_line(line):
            name, _, value = line.partition(":")
            headers.append((name, value.strip()))
        else:
            # malformed header line: the body starts here
            body = "\n".join(lines[i:])
            break

    subject = ""
    for name, value in headers:
        if name.lower() == "subject":
            subject = value
            break
    return RawEmail(headers=tuple(headers), subject=subject, body=body, source_id=source_id)


def render_email(email: RawEmail) -> str:
    """Canonical text form; ``parse_email(render_email(e))`` reproduces ``e``."""
    head = "".join(f"{name}: {value}\n" for name, value in email.headers)
    return f"{head}\n{email.body}"


_LABEL_DIRS = {label.value: label for label in Label}


@dataclass
class CorpusLoadResult:
    emails: list[LabeledEmail]
    skipped_dirs: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.emails)

    def __iter__(self):
        return iter(self.emails)


def load_corpus(root: str | Path) -> CorpusLoadResult:
    """Load every message under root/{threat,spam,legitimate}/.

    Returns the emails in lexicographic path order plus the names of any
    unknown subdirectories that were skipped.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root not found: {root}")

    skipped = [p.name for p in sorted(root.iterdir()) if p.is_dir() and p.name not in _LABEL_DIRS]
    emails: list[LabeledEmail] = []
    for dirname in sorted(_LABEL_DIRS):
        subdir = root / dirname
        if not subdir.is_dir():
            continue
        for path in sorted(p for p in subdir.rglob("*") if p.is_file()):
            try:
                text = path.read_text(encoding="utf-8", errors="replace")
            except OSError as exc:
                raise CorpusError(f"unreadable corpus file: {path}") from exc
            source_id = path.relative_to(root).as_posix()
            emails.append(LabeledEmail(parse_email(text, source_id), _LABEL_DIRS[dirname]))
    return CorpusLoadResult(emails=emails, skipped_dirs=skipped)


def split_corpus(corpus: list[LabeledEmail], ratio: float, seed: int) -> CorpusSplit:
    """Deterministic stratified split: per label, floor(ratio * n) go to train.

    Shuffling within each label class is a Fisher-Yates shuffle keyed by
    (seed, label), so the split is reproducible and independent of corpus
    file naming beyond its order.
    """
    if not corpus:
        raise ValueError("cannot split an empty corpus")
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"split ratio must be within [0, 1], got {ratio}")

    train: list[LabeledEmail] = []
    test: list[LabeledEmail] = []
    for label in Label:
        members = [m for m in corpus if m.label is label]
        rng = random.Random(f"{seed}:{label.value}")
        rng.shuffle(members)
        cut = int(ratio * len(members))
        train.extend(members[:cut])
        test.extend(members[cut:])
    return CorpusSplit(train=train, test=test, ratio=ratio, seed=seed)
