"""k-NN author attribution over pluggable string distances.

Documents are classified by majority vote among their nearest training
documents, with distances computed on whole document bodies. Evaluation
uses stratified k-fold cross-validation; per-fold accuracy, RMSE and RAE
are reported along with a confusion matrix. All outputs are deterministic
functions of (corpus, configuration, seed).

RMSE and RAE treat a classification as a one-indicator-per-label vector:
the predicted label's cell is 1, all others 0, likewise for the true
label. RMSE is the root mean square over all (instance, label) cells; RAE
normalizes total absolute error by the error of always predicting each
label's mean indicator.
"""

from __future__ import annotations

import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass
from time import perf_counter_ns
from typing import Callable, Iterable, Sequence

from .baselines import hamming, jaccard_distance, levenshtein, tanimoto_distance_str
from .corpus import Corpus, Document
from .distance import DistanceSpec, Variant, distance_str
from .hashing import CharUnit

__all__ = [
    "DistanceFn",
    "EvalReport",
    "FoldMetrics",
    "StratificationError",
    "SweepReport",
    "SweepRow",
    "accuracy",
    "builtin_distances",
    "cross_validate",
    "k_sweep",
    "knn_classify",
    "rae",
    "rmse",
    "stratified_folds",
]


@dataclass(frozen=True)
class DistanceFn:
    """A named document distance: deterministic, symmetric, nonnegative."""

    name: str
    fn: Callable[[str, str], float]


def builtin_distances(spec: DistanceSpec | None = None) -> dict[str, DistanceFn]:
    """The shipped distances, keyed by CLI method name.

    ``spec`` configures the digest distance (k, limit, variant, unit); the
    baselines ignore it.
    """
    spec = spec or DistanceSpec()
    return {
        "mfkc": DistanceFn("mfkc", lambda a, b: distance_str(a, b, spec).distance),
        "levenshtein": DistanceFn("levenshtein", lambda a, b: float(levenshtein(a, b))),
        "hamming": DistanceFn("hamming", lambda a, b: float(hamming(a, b))),
        "jaccard": DistanceFn("jaccard", jaccard_distance),
        "tanimoto": DistanceFn("tanimoto", tanimoto_distance_str),
    }


class StratificationError(ValueError):
    """A label has fewer documents than the requested fold count."""

    def __init__(self, label: str, have: int, folds: int):
        super().__init__(
            f"label {label!r} has {have} documents, fewer than the {folds} folds required"
        )
        self.label = label


def accuracy(predictions: Sequence[tuple[str, str]]) -> float:
    """Fraction of (true, predicted) pairs that agree."""
    if not predictions:
        raise ValueError("no predictions")
    return sum(t == p for t, p in predictions) / len(predictions)


def _label_list(predictions: Sequence[tuple[str, str]], labels: Iterable[str]) -> list[str]:
    label_list = sorted(set(labels))
    observed = {lab for pair in predictions for lab in pair}
    missing = observed - set(label_list)
    if missing:
        raise ValueError(f"labels {sorted(missing)} appear in predictions but not in the label set")
    return label_list


def rmse(predictions: Sequence[tuple[str, str]], labels: Iterable[str]) -> float:
    """Root mean square error over one-hot indicator cells."""
    if not predictions:
        raise ValueError("no predictions")
    label_list = _label_list(predictions, labels)
    total = 0.0
    for true, predicted in predictions:
        for label in label_list:
            diff = (1.0 if predicted == label else 0.0) - (1.0 if true == label else 0.0)
            total += diff * diff
    return math.sqrt(total / (len(predictions) * len(label_list)))


def rae(predictions: Sequence[tuple[str, str]], labels: Iterable[str]) -> float:
    """Relative absolute error over one-hot indicator cells.

    Total absolute error divided by the absolute error of always
    predicting each label's mean indicator. Undefined (raises) when all
    true labels are identical, since the normalizer is then zero.
    """
    if not predictions:
        raise ValueError("no predictions")
    label_list = _label_list(predictions, labels)
    n = len(predictions)
    freq = Counter(true for true, _ in predictions)
    numerator = 0.0
    denominator = 0.0
    for true, predicted in predictions:
        for label in label_list:
            true_cell = 1.0 if true == label else 0.0
            pred_cell = 1.0 if predicted == label else 0.0
            numerator += abs(pred_cell - true_cell)
            denominator += abs(true_cell - freq[label] / n)
    if denominator == 0.0:
        raise ValueError("RAE is undefined: all true labels are identical")
    return numerator / denominator


def knn_classify(
    query: Document,
    train: Sequence[Document],
    k_neighbors: int,
    d: DistanceFn,
) -> str:
    """Majority-vote label of the query's k nearest training documents.

    Distance ties are broken by earlier training position; vote ties go to
    the tied label whose nearest member is closest, then earliest.
    """
    if not train:
        raise ValueError("empty training set")
    if k_neighbors < 1:
        raise ValueError(f"k_neighbors must be >= 1, got {k_neighbors}")
    scored = sorted(
        ((d.fn(query.body, doc.body), position) for position, doc in enumerate(train))
    )
    top = scored[:k_neighbors]
    votes = Counter(train[position].label for _, position in top)
    best = max(votes.values())
    tied = [label for label, count in votes.items() if count == best]
    if len(tied) == 1:
        return tied[0]
    return min(
        tied,
        key=lambda label: min(
            (dist, position) for dist, position in top if train[position].label == label
        ),
    )


def stratified_folds(corpus: Corpus, folds: int, seed: int = 0) -> list[list[int]]:
    """Partition document indices into stratified folds, deterministic in seed.

    Every label's documents are shuffled then dealt round-robin, so each
    fold holds at least one document of every label.
    """
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    by_label: dict[str, list[int]] = {}
    for index, doc in enumerate(corpus):
        by_label.setdefault(doc.label, []).append(index)
    for label in sorted(by_label):
        if len(by_label[label]) < folds:
            raise StratificationError(label, len(by_label[label]), folds)
    rng = random.Random(seed)
    fold_indices: list[list[int]] = [[] for _ in range(folds)]
    for label in sorted(by_label):
        indices = by_label[label][:]
        rng.shuffle(indices)
        for position, index in enumerate(indices):
            fold_indices[position % folds].append(index)
    for fold in fold_indices:
        fold.sort()
    return fold_indices


@dataclass(frozen=True, slots=True)
class FoldMetrics:
    accuracy: float
    rmse: float
    rae: float


@dataclass(frozen=True)
class EvalReport:
    """Cross-validation outcome: per-fold metrics, aggregates, confusion matrix.

    ``confusion[i][j]`` counts documents of true label ``labels[i]``
    predicted as ``labels[j]``, accumulated over all folds. ``aggregate``
    maps each metric to its mean and sample standard deviation across
    folds. RAE is NaN for single-label corpora, where it is undefined.
    """

    config: dict
    labels: tuple[str, ...]
    per_fold: tuple[FoldMetrics, ...]
    confusion: tuple[tuple[int, ...], ...]
    aggregate: dict

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "per_fold": [
                {"fold": i, "accuracy": m.accuracy, "rmse": m.rmse, "rae": m.rae}
                for i, m in enumerate(self.per_fold)
            ],
            "aggregate": self.aggregate,
            "confusion": {
                "labels": list(self.labels),
                "counts": [list(row) for row in self.confusion],
            },
        }

    def to_tsv(self) -> str:
        lines = ["fold\taccuracy\trmse\trae"]
        for i, m in enumerate(self.per_fold):
            lines.append(f"{i}\t{m.accuracy:.6g}\t{m.rmse:.6g}\t{m.rae:.6g}")
        return "\n".join(lines) + "\n"


def _mean_std(values: Sequence[float]) -> dict:
    if any(math.isnan(v) for v in values):
        return {"mean": math.nan, "std": math.nan}
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return {"mean": mean, "std": std}


def cross_validate(
    corpus: Corpus,
    folds: int,
    k_neighbors: int,
    d: DistanceFn,
    seed: int = 0,
) -> EvalReport:
    """Stratified k-fold cross-validation of k-NN classification.

    Each document is tested exactly once; metrics are computed on test
    predictions only. Deterministic in (corpus, folds, k_neighbors,
    distance, seed).
    """
    fold_indices = stratified_folds(corpus, folds, seed)
    docs = corpus.documents
    labels = tuple(sorted(corpus.labels))
    label_pos = {label: i for i, label in enumerate(labels)}
    confusion = [[0] * len(labels) for _ in labels]
    per_fold: list[FoldMetrics] = []
    for test_indices in fold_indices:
        test_set = set(test_indices)
        train = [doc for i, doc in enumerate(docs) if i not in test_set]
        predictions = [
            (docs[i].label, knn_classify(docs[i], train, k_neighbors, d))
            for i in test_indices
        ]
        for true, predicted in predictions:
            confusion[label_pos[true]][label_pos[predicted]] += 1
        fold_rae = (
            rae(predictions, labels)
            if len({t for t, _ in predictions}) > 1
            else math.nan
        )
        per_fold.append(
            FoldMetrics(accuracy(predictions), rmse(predictions, labels), fold_rae)
        )
    aggregate = {
        "accuracy": _mean_std([m.accuracy for m in per_fold]),
        "rmse": _mean_std([m.rmse for m in per_fold]),
        "rae": _mean_std([m.rae for m in per_fold]),
    }
    config = {
        "distance": d.name,
        "folds": folds,
        "k_neighbors": k_neighbors,
        "seed": seed,
        "documents": len(docs),
        "labels": len(labels),
    }
    return EvalReport(
        config=config,
        labels=labels,
        per_fold=tuple(per_fold),
        confusion=tuple(tuple(row) for row in confusion),
        aggregate=aggregate,
    )


class _TimedFn:
    """Wraps a distance function, accumulating call count and wall time."""

    __slots__ = ("fn", "calls", "total_ns")

    def __init__(self, fn: Callable[[str, str], float]):
        self.fn = fn
        self.calls = 0
        self.total_ns = 0

    def __call__(self, a: str, b: str) -> float:
        started = perf_counter_ns()
        result = self.fn(a, b)
        self.total_ns += perf_counter_ns() - started
        self.calls += 1
        return result


@dataclass(frozen=True, slots=True)
class SweepRow:
    k: int
    mean_accuracy: float
    mean_pair_time_ns: float


@dataclass(frozen=True)
class SweepReport:
    """Digest-size sweep: accuracy and per-pair cost for each swept k."""

    config: dict
    rows: tuple[SweepRow, ...]

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "rows": [
                {
                    "k": r.k,
                    "mean_accuracy": r.mean_accuracy,
                    "mean_pair_time_ns": r.mean_pair_time_ns,
                }
                for r in self.rows
            ],
        }

    def to_tsv(self) -> str:
        lines = ["k\tmean_accuracy\tmean_pair_time_ns"]
        for r in self.rows:
            lines.append(f"{r.k}\t{r.mean_accuracy:.6g}\t{r.mean_pair_time_ns:.6g}")
        return "\n".join(lines) + "\n"


def k_sweep(
    corpus: Corpus,
    k_values: Sequence[int],
    folds: int = 10,
    k_neighbors: int = 5,
    variant: Variant = Variant.SUM_MATCH,
    seed: int = 0,
    limit: float = 10.0,
    unit: CharUnit = CharUnit.SCALAR,
) -> SweepReport:
    """Cross-validate the digest distance once per k.

    Fold assignment depends only on (corpus, folds, seed), so it is shared
    across k values and accuracy differences are attributable to k alone.
    Per-pair wall time is averaged over every distance call in the run.
    """
    if not k_values:
        raise ValueError("k_values must be non-empty")
    rows: list[SweepRow] = []
    for k in k_values:
        spec = DistanceSpec(k=k, limit=limit, variant=variant, unit=unit)
        timed = _TimedFn(lambda a, b, s=spec: distance_str(a, b, s).distance)
        report = cross_validate(
            corpus, folds, k_neighbors, DistanceFn(f"mfkc-k{k}", timed), seed
        )
        rows.append(
            SweepRow(
                k=k,
                mean_accuracy=report.aggregate["accuracy"]["mean"],
                mean_pair_time_ns=timed.total_ns / timed.calls,
            )
        )
    config = {
        "k_values": list(k_values),
        "folds": folds,
        "k_neighbors": k_neighbors,
        "variant": variant.value,
        "seed": seed,
        "limit": limit,
        "documents": len(corpus),
    }
    return SweepReport(config=config, rows=tuple(rows))
