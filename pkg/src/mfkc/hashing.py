"""Most-frequent-K-characters string hashing.

A string is digested down to its K most frequent characters together with
their occurrence counts. Entries are ordered by count, descending;
characters with equal counts keep the order of their first occurrence in
the input. When a string has fewer than K distinct characters the
remaining slots are NULL padding with count 0, so every digest has exactly
K entries.

The canonical text form writes each entry as the character followed by its
decimal count, with the literal token ``NULL0`` for padding: ``research``
digests to ``r2e2`` at K=2, and ``a`` digests to ``a1NULL0``.

All functions here are pure and the returned values are immutable, so they
are safe to call and share from any number of threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CharUnit",
    "FreqHash",
    "HashDecodeError",
    "HashEntry",
    "PADDING",
    "count_frequencies",
    "decode_hash",
    "encode_hash",
    "max_k_freq_hash",
]


class CharUnit(Enum):
    """What counts as one character: Unicode scalar values or UTF-8 bytes."""

    SCALAR = "scalar"
    BYTE = "byte"


class HashDecodeError(ValueError):
    """Raised when hash text does not match the encoded grammar."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset


@dataclass(frozen=True, slots=True)
class HashEntry:
    """One digest slot: a character with its count, or NULL padding.

    ``symbol`` is None exactly when the entry is padding, and padding
    always carries count 0; real entries carry a single character and a
    count of at least 1.
    """

    symbol: str | None
    count: int

    def __post_init__(self) -> None:
        if self.symbol is None:
            if self.count != 0:
                raise ValueError(f"padding entry must have count 0, got {self.count}")
        else:
            if len(self.symbol) != 1:
                raise ValueError(f"symbol must be one character, got {self.symbol!r}")
            if self.count < 1:
                raise ValueError(f"real entry needs count >= 1, got {self.count}")

    @property
    def is_padding(self) -> bool:
        return self.symbol is None


# Padding is stateless, share one instance.
PADDING = HashEntry(None, 0)


@dataclass(frozen=True, slots=True)
class FreqHash:
    """Digest of a string: its top-K characters with counts, padded to K entries.

    Construction validates what can be checked from the entries alone:
    real entries precede all padding, their counts are non-increasing, and
    their symbols are distinct.
    """

    entries: tuple[HashEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("a digest needs at least one entry")
        prev_count: int | None = None
        seen: set[str] = set()
        in_padding = False
        for entry in self.entries:
            if entry.is_padding:
                in_padding = True
                continue
            if in_padding:
                raise ValueError("real entries must precede all padding")
            if entry.symbol in seen:
                raise ValueError(f"duplicate symbol {entry.symbol!r}")
            seen.add(entry.symbol)
            if prev_count is not None and entry.count > prev_count:
                raise ValueError("entry counts must be non-increasing")
            prev_count = entry.count

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def real_entries(self) -> tuple[HashEntry, ...]:
        return tuple(e for e in self.entries if not e.is_padding)


def count_frequencies(
    text: str, unit: CharUnit = CharUnit.SCALAR
) -> dict[str, tuple[int, int]]:
    """Count symbol occurrences in ``text``.

    Returns a mapping from symbol to ``(count, first_index)`` in
    first-occurrence order. Counting is case-sensitive and applies no
    normalization. In BYTE mode the text is read as its UTF-8 bytes and
    each byte is reported as the character with that code point;
    ``first_index`` is then a byte offset.
    """
    if unit is CharUnit.BYTE:
        data = text.encode("utf-8")
        return {chr(b): (n, data.index(b)) for b, n in Counter(data).items()}
    return {ch: (n, text.index(ch)) for ch, n in Counter(text).items()}


def max_k_freq_hash(text: str, k: int, unit: CharUnit = CharUnit.SCALAR) -> FreqHash:
    """Digest ``text`` to its ``k`` most frequent symbols.

    Equal counts are broken by first occurrence, so a string whose
    characters all appear once digests to its first ``k`` distinct
    characters. Strings with fewer than ``k`` distinct symbols (the empty
    string included) get NULL padding for the remaining slots.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    freq = count_frequencies(text, unit)
    ranked = sorted(freq.items(), key=lambda item: (-item[1][0], item[1][1]))
    entries = [HashEntry(symbol, count) for symbol, (count, _) in ranked[:k]]
    entries.extend([PADDING] * (k - len(entries)))
    return FreqHash(tuple(entries))


def encode_hash(h: FreqHash) -> str:
    """Render a digest in its text form, e.g. ``r2e2`` or ``a1NULL0``."""
    return "".join(
        "NULL0" if e.is_padding else f"{e.symbol}{e.count}" for e in h.entries
    )


_NULL_TOKEN = "NULL0"


def decode_hash(s: str) -> FreqHash:
    """Parse the text form produced by :func:`encode_hash`.

    The text form is ambiguous when digit characters appear as symbols:
    the digest of ``"0101"`` encodes to ``"0212"``, which also reads as a
    single entry, 212 zeros. The parser prefers the reading with the most
    entries, which recovers every digest over non-digit symbols and the
    natural reading of digit-heavy inputs such as binary strings. Counts
    are decimal with no leading zeros; raises :class:`HashDecodeError`
    with the offending offset when no valid reading exists.
    """
    n = len(s)
    if n == 0:
        raise HashDecodeError(0, "empty hash text")

    deepest_offset = 0
    deepest_message = "expected an entry"

    def note(pos: int, message: str) -> None:
        nonlocal deepest_offset, deepest_message
        if pos >= deepest_offset:
            deepest_offset = pos
            deepest_message = message

    def parse(
        pos: int, prev_count: int | None, used: set[str], padded: bool
    ) -> list[HashEntry] | None:
        if pos == n:
            return []
        if s.startswith(_NULL_TOKEN, pos):
            rest = parse(pos + len(_NULL_TOKEN), prev_count, used, True)
            if rest is not None:
                return [PADDING, *rest]
        symbol = s[pos]
        if padded:
            note(pos, "real entry after padding")
            return None
        if symbol in used:
            note(pos, f"symbol {symbol!r} repeated")
            return None
        start = pos + 1
        end = start
        while end < n and "0" <= s[end] <= "9":
            end += 1
        if end == start:
            note(start, "expected count digits after symbol")
            return None
        if s[start] == "0":
            note(start, "count 0 on a real symbol")
            return None
        for stop in range(start + 1, end + 1):
            count = int(s[start:stop])
            if prev_count is not None and count > prev_count:
                note(start, "count exceeds the preceding entry's count")
                break
            used.add(symbol)
            rest = parse(stop, count, used, False)
            used.discard(symbol)
            if rest is not None:
                return [HashEntry(symbol, count), *rest]
        return None

    entries = parse(0, None, set(), False)
    if entries is None:
        raise HashDecodeError(deepest_offset, deepest_message)
    return FreqHash(tuple(entries))
