"""Reference string distances: Levenshtein, Hamming, Jaccard, Tanimoto.

These are the conventional comparison functions the digest distance is
measured against. All are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BitVector",
    "bit_vectors",
    "hamming",
    "jaccard_distance",
    "jaccard_index",
    "levenshtein",
    "symbol_set",
    "tanimoto_distance",
    "tanimoto_distance_str",
    "tanimoto_similarity",
    "tanimoto_similarity_str",
]


def levenshtein(s1: str, s2: str) -> int:
    """Minimum number of single-character insertions, deletions and
    substitutions (unit costs) turning ``s1`` into ``s2``.

    Dynamic programming over two rolling rows, so memory is proportional
    to the shorter string.
    """
    if len(s1) < len(s2):
        s1, s2 = s2, s1
    if not s2:
        return len(s1)
    previous = list(range(len(s2) + 1))
    for i, c1 in enumerate(s1, 1):
        current = [i]
        add = current.append
        last = i
        row = iter(previous)
        diag = next(row)
        for up, c2 in zip(row, s2):
            value = diag if c1 == c2 else diag + 1
            if up + 1 < value:
                value = up + 1
            if last + 1 < value:
                value = last + 1
            add(value)
            last = value
            diag = up
        previous = current
    return previous[-1]


def hamming(s1: str, s2: str, mode: str = "min-length") -> int:
    """Count of positions whose characters differ.

    ``min-length`` (default) compares only the first min(len) positions;
    ``padded`` additionally counts the length difference as mismatches.
    """
    if mode not in ("min-length", "padded"):
        raise ValueError(f"unknown hamming mode {mode!r}")
    mismatches = sum(a != b for a, b in zip(s1, s2))
    if mode == "padded":
        mismatches += abs(len(s1) - len(s2))
    return mismatches


def symbol_set(text: str, mode: str = "char-set") -> frozenset[str]:
    """The set a string contributes to Jaccard comparison.

    ``char-set`` is the set of distinct characters; ``bigram-set`` is the
    set of adjacent character pairs (empty for strings shorter than 2).
    """
    if mode == "char-set":
        return frozenset(text)
    if mode == "bigram-set":
        return frozenset(text[i : i + 2] for i in range(len(text) - 1))
    raise ValueError(f"unknown symbol set mode {mode!r}")


def jaccard_index(s1: str, s2: str, mode: str = "char-set") -> float:
    """Set overlap ratio |A n B| / |A u B|, defined as 1 when both sets are empty."""
    a = symbol_set(s1, mode)
    b = symbol_set(s2, mode)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def jaccard_distance(s1: str, s2: str, mode: str = "char-set") -> float:
    return 1.0 - jaccard_index(s1, s2, mode)


@dataclass(frozen=True, slots=True)
class BitVector:
    """Fixed-length bit string, most significant bit first.

    Stored as a nonnegative integer whose binary expansion (padded to
    ``length`` bits) is the bit sequence. Built from a string via its
    UTF-8 bytes, 8 bits per byte, MSB first.
    """

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_string(cls, text: str, pad_to_bytes: int = 0) -> "BitVector":
        """Bits of the UTF-8 encoding, zero-padded at the end to ``pad_to_bytes``."""
        data = text.encode("utf-8")
        nbytes = max(len(data), pad_to_bytes)
        data = data + b"\x00" * (nbytes - len(data))
        return cls(value=int.from_bytes(data, "big"), length=nbytes * 8)

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        value = 0
        length = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {bit!r}")
            value = (value << 1) | bit
            length += 1
        return cls(value=value, length=length)

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))


def bit_vectors(s1: str, s2: str) -> tuple[BitVector, BitVector]:
    """Both strings as bit vectors, zero-padded to the longer byte length."""
    width = max(len(s1.encode("utf-8")), len(s2.encode("utf-8")))
    return BitVector.from_string(s1, width), BitVector.from_string(s2, width)


def tanimoto_similarity(x: BitVector, y: BitVector) -> float:
    """Bitwise AND-sum over OR-sum; two all-zero vectors count as identical (1.0)."""
    if x.length != y.length:
        raise ValueError(
            f"bit lengths differ ({x.length} vs {y.length}); build both with bit_vectors()"
        )
    union = (x.value | y.value).bit_count()
    if union == 0:
        return 1.0
    return (x.value & y.value).bit_count() / union


def tanimoto_distance(x: BitVector, y: BitVector) -> float:
    """-log2 of the similarity; +inf when the vectors share no set bit."""
    similarity = tanimoto_similarity(x, y)
    if similarity == 0.0:
        return math.inf
    if similarity == 1.0:
        return 0.0
    return -math.log2(similarity)


def tanimoto_similarity_str(s1: str, s2: str) -> float:
    return tanimoto_similarity(*bit_vectors(s1, s2))


def tanimoto_distance_str(s1: str, s2: str) -> float:
    return tanimoto_distance(*bit_vectors(s1, s2))
