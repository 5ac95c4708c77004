"""Labeled text corpora: loading, FASTA parsing, tokenizing, synthesis.

Two on-disk formats are supported. ``jsonl`` holds one UTF-8 JSON object
per line with required string keys ``id``, ``author`` and ``text``.
``dir`` is a directory whose immediate subdirectories are labels, each
file inside being one document. A loaded :class:`Corpus` is immutable and
its document order is stable across loads of the same input.

The synthetic generator builds corpora whose labels leave a character
frequency signature, so frequency-digest distances carry label
information without any external dataset.
"""

from __future__ import annotations

import json
import random
import string
import unicodedata
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "Corpus",
    "CorpusFormatError",
    "Document",
    "SynthSpec",
    "label_signature",
    "load_corpus",
    "parse_fasta",
    "save_jsonl",
    "synth_corpus",
    "tokenize",
]


class CorpusFormatError(ValueError):
    """Raised for malformed corpus inputs (bad JSON lines, missing keys, duplicate ids)."""


@dataclass(frozen=True, slots=True)
class Document:
    id: str
    label: str
    body: str


@dataclass(frozen=True, slots=True)
class Corpus:
    """An ordered, immutable collection of labeled documents with unique ids."""

    documents: tuple[Document, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "documents", tuple(self.documents))
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusFormatError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(doc.label for doc in self.documents)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


def load_corpus(path: str | Path, fmt: str = "jsonl") -> Corpus:
    """Load a labeled corpus from ``path`` in the given format ("jsonl" or "dir")."""
    base = Path(path)
    if fmt == "jsonl":
        return _load_jsonl(base)
    if fmt == "dir":
        return _load_dir(base)
    raise ValueError(f"unknown corpus format {fmt!r}")


def _load_jsonl(path: Path) -> Corpus:
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise CorpusFormatError(f"{path}:{lineno}: expected a JSON object")
            for key in ("id", "author", "text"):
                if key not in record:
                    raise CorpusFormatError(f"{path}:{lineno}: missing field {key!r}")
                if not isinstance(record[key], str):
                    raise CorpusFormatError(f"{path}:{lineno}: field {key!r} must be a string")
            if record["id"] in seen:
                raise CorpusFormatError(f"{path}:{lineno}: duplicate id {record['id']!r}")
            seen.add(record["id"])
            documents.append(Document(id=record["id"], label=record["author"], body=record["text"]))
    return Corpus(tuple(documents))


def _load_dir(base: Path) -> Corpus:
    if not base.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {base}")
    documents: list[Document] = []
    for label_dir in sorted(p for p in base.iterdir() if p.is_dir()):
        for doc_path in sorted(p for p in label_dir.iterdir() if p.is_file()):
            documents.append(
                Document(
                    id=f"{label_dir.name}/{doc_path.name}",
                    label=label_dir.name,
                    body=doc_path.read_text(encoding="utf-8"),
                )
            )
    return Corpus(tuple(documents))


def save_jsonl(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus in the jsonl schema; round-trips through load_corpus."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for doc in corpus:
            handle.write(
                json.dumps(
                    {"id": doc.id, "author": doc.label, "text": doc.body},
                    ensure_ascii=False,
                )
            )
            handle.write("\n")


def parse_fasta(stream: str) -> list[tuple[str, str]]:
    """Parse FASTA text into (header, sequence) records.

    A record starts at a ``>`` header line; its sequence is the
    concatenation of the following lines with all whitespace removed,
    case preserved. Sequence data before any header is an error.
    """
    records: list[tuple[str, str]] = []
    header: str | None = None
    parts: list[str] = []
    for line in stream.splitlines():
        if line.startswith(">"):
            if header is not None:
                records.append((header, "".join(parts)))
            header = line[1:].strip()
            parts = []
            continue
        chunk = "".join(line.split())
        if not chunk:
            continue
        if header is None:
            raise CorpusFormatError("sequence data before any FASTA header")
        parts.append(chunk)
    if header is not None:
        records.append((header, "".join(parts)))
    return records


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace, strip punctuation off token edges, drop empties.

    Case is preserved and interior punctuation is kept, so "don't" stays
    one token while "world!" becomes "world".
    """
    tokens = []
    for raw in text.split():
        start = 0
        end = len(raw)
        while start < end and unicodedata.category(raw[start]).startswith("P"):
            start += 1
        while end > start and unicodedata.category(raw[end - 1]).startswith("P"):
            end -= 1
        if end > start:
            tokens.append(raw[start:end])
    return tokens


_ALPHABET = string.ascii_lowercase
_SIGNATURE_SIZE = 3
MAX_SYNTH_LABELS = len(_ALPHABET) // _SIGNATURE_SIZE


@dataclass(frozen=True, slots=True)
class SynthSpec:
    """Parameters for synthetic corpus generation.

    ``skew`` in (0, 1] is the probability that a character is drawn from
    the label's signature instead of uniformly from the alphabet. The same
    seed always yields a byte-identical corpus.
    """

    n_labels: int
    docs_per_label: int
    doc_length: int
    skew: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_labels < 1 or self.docs_per_label < 1 or self.doc_length < 1:
            raise ValueError("n_labels, docs_per_label and doc_length must be positive")
        if not 0 < self.skew <= 1:
            raise ValueError(f"skew must be in (0, 1], got {self.skew}")


def label_signature(index: int) -> str:
    """The signature characters of the index-th synthetic label.

    Signatures are disjoint 3-letter slices of the lowercase alphabet;
    within a signature the first character is drawn most often (4:2:1).
    """
    if not 0 <= index < MAX_SYNTH_LABELS:
        raise ValueError(f"label index {index} outside 0..{MAX_SYNTH_LABELS - 1}")
    return _ALPHABET[index * _SIGNATURE_SIZE : (index + 1) * _SIGNATURE_SIZE]


def synth_corpus(spec: SynthSpec) -> Corpus:
    """Generate a deterministic corpus with per-label character signatures."""
    if spec.n_labels > MAX_SYNTH_LABELS:
        raise ValueError(
            f"n_labels {spec.n_labels} exceeds the {MAX_SYNTH_LABELS} available signatures"
        )
    rng = random.Random(spec.seed)
    documents: list[Document] = []
    for label_index in range(spec.n_labels):
        label = f"author{label_index:02d}"
        sig = label_signature(label_index)
        for doc_index in range(spec.docs_per_label):
            chars = []
            for _ in range(spec.doc_length):
                if rng.random() < spec.skew:
                    # 4:2:1 weighting across the signature's three characters
                    roll = rng.random()
                    if roll < 4 / 7:
                        chars.append(sig[0])
                    elif roll < 6 / 7:
                        chars.append(sig[1])
                    else:
                        chars.append(sig[2])
                else:
                    chars.append(rng.choice(_ALPHABET))
            documents.append(
                Document(id=f"{label}-{doc_index:03d}", label=label, body="".join(chars))
            )
    return Corpus(tuple(documents))
