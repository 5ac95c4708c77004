"""Distance between two strings computed from their frequency digests.

Two digests are compared character by character: every character present
in both contributes to a similarity total, and the distance is
``limit - similarity``, floored at 0 by default. A distance equal to
``limit`` therefore means the two digests share no character at all.

This is a dissimilarity score, not a metric: a string's distance to
itself is ``limit`` minus (roughly) its top-K character mass, which is
usually nonzero. See :func:`distance_str` for the exact self-distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .hashing import CharUnit, FreqHash, max_k_freq_hash

__all__ = [
    "DistanceSpec",
    "MfkcResult",
    "Variant",
    "distance_str",
    "mfkc_distance",
    "mfkc_similarity",
]


class Variant(Enum):
    """How a matched character contributes to similarity.

    SUM_MATCH adds both sides' counts; MIN_OVERLAP adds only the
    overlapping portion, ``min(count1, count2)``.
    """

    SUM_MATCH = "sum"
    MIN_OVERLAP = "min"


@dataclass(frozen=True, slots=True)
class DistanceSpec:
    """Configuration bundle for digest-based distances.

    ``limit`` is the distance ceiling; ``clamp`` floors the distance at 0
    when the similarity exceeds the limit. ``unit`` selects the character
    model used when hashing raw strings.
    """

    k: int = 2
    limit: float = 10.0
    variant: Variant = Variant.SUM_MATCH
    clamp: bool = True
    unit: CharUnit = CharUnit.SCALAR

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not self.limit > 0:
            raise ValueError(f"limit must be positive, got {self.limit}")


_DEFAULT_SPEC = DistanceSpec()


@dataclass(frozen=True, slots=True)
class MfkcResult:
    """Outcome of one distance computation.

    ``distance`` is ``limit - similarity``, floored at 0 when clamping is
    enabled. ``clamped`` records whether the similarity exceeded the
    limit, i.e. whether the raw value would have been negative.
    """

    distance: float
    similarity: float
    clamped: bool


def mfkc_similarity(
    h1: FreqHash, h2: FreqHash, variant: Variant = Variant.SUM_MATCH
) -> float:
    """Similarity between two digests of equal K.

    Each character appearing in both digests contributes once (symbols
    within one digest are distinct, so at most one entry on the other side
    can match). Padding never matches padding or anything else.
    """
    if h1.k != h2.k:
        raise ValueError(f"digest K mismatch: {h1.k} vs {h2.k}")
    counts2 = {e.symbol: e.count for e in h2.entries if e.symbol is not None}
    total = 0
    for entry in h1.entries:
        if entry.symbol is None:
            continue
        other = counts2.get(entry.symbol)
        if other is None:
            continue
        total += entry.count + other if variant is Variant.SUM_MATCH else min(entry.count, other)
    return float(total)


def mfkc_distance(
    h1: FreqHash, h2: FreqHash, spec: DistanceSpec = _DEFAULT_SPEC
) -> MfkcResult:
    """Distance between two digests: ``limit - similarity``.

    ``limit`` is returned exactly when the digests share no character.
    With ``spec.clamp`` (the default) the result stays within
    ``[0, limit]``; without it the raw, possibly negative value is
    returned. Both digests must have ``spec.k`` entries.
    """
    if h1.k != spec.k or h2.k != spec.k:
        raise ValueError(f"digests have k {h1.k} and {h2.k}, spec requires {spec.k}")
    similarity = mfkc_similarity(h1, h2, spec.variant)
    raw = spec.limit - similarity
    distance = max(0.0, raw) if spec.clamp else raw
    return MfkcResult(distance=distance, similarity=similarity, clamped=similarity > spec.limit)


def distance_str(s1: str, s2: str, spec: DistanceSpec = _DEFAULT_SPEC) -> MfkcResult:
    """Hash both strings and return their digest distance.

    Self-distance is generally nonzero: under MIN_OVERLAP,
    ``distance_str(s, s)`` is ``max(0, limit - m)`` where ``m`` is the sum
    of s's top-k counts, and under SUM_MATCH it is ``max(0, limit - 2m)``.
    """
    h1 = max_k_freq_hash(s1, spec.k, spec.unit)
    h2 = max_k_freq_hash(s2, spec.k, spec.unit)
    return mfkc_distance(h1, h2, spec)
