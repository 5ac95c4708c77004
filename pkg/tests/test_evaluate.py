import math

import pytest

from mfkc.corpus import Corpus, Document, SynthSpec, synth_corpus
from mfkc.distance import DistanceSpec, Variant
from mfkc.evaluate import (
    DistanceFn,
    StratificationError,
    accuracy,
    builtin_distances,
    cross_validate,
    k_sweep,
    knn_classify,
    rae,
    rmse,
    stratified_folds,
)

LEV = builtin_distances()["levenshtein"]


def doc(i, label, body=""):
    return Document(id=str(i), label=label, body=body)


def two_label_corpus(per_label=10, length=60, seed=3):
    return synth_corpus(SynthSpec(2, per_label, length, skew=0.9, seed=seed))


class TestKnnClassify:
    def test_single_training_doc_forces_vote(self):
        assert knn_classify(doc(0, "?", "zzz"), [doc(1, "A", "abc")], 1, LEV) == "A"
        assert knn_classify(doc(0, "?", "zzz"), [doc(1, "A", "abc")], 5, LEV) == "A"

    def test_identical_twin_wins_at_one_neighbor(self):
        train = [doc(1, "A", "hello"), doc(2, "B", "world"), doc(3, "C", "help")]
        assert knn_classify(doc(0, "?", "world"), train, 1, LEV) == "B"

    def test_majority_vote(self):
        distances = {"a": 1.0, "b": 2.0, "c": 3.0}
        by_body = DistanceFn("table", lambda q, t: distances[t])
        train = [doc(1, "A", "a"), doc(2, "B", "b"), doc(3, "B", "c")]
        assert knn_classify(doc(0, "?", "q"), train, 3, by_body) == "B"

    def test_vote_tie_broken_by_nearest_member(self):
        distances = {"a": 2.0, "b": 1.0, "c": 3.0, "d": 4.0}
        by_body = DistanceFn("table", lambda q, t: distances[t])
        train = [doc(1, "A", "a"), doc(2, "B", "b"), doc(3, "B", "c"), doc(4, "A", "d")]
        # 2 votes each; B's nearest (1.0) beats A's nearest (2.0).
        assert knn_classify(doc(0, "?", "q"), train, 4, by_body) == "B"

    def test_distance_tie_broken_by_position(self):
        flat = DistanceFn("flat", lambda q, t: 5.0)
        train = [doc(1, "A", "x"), doc(2, "B", "y"), doc(3, "B", "z")]
        assert knn_classify(doc(0, "?", "q"), train, 1, flat) == "A"

    def test_empty_training_set(self):
        with pytest.raises(ValueError):
            knn_classify(doc(0, "?", "x"), [], 1, LEV)


class TestMetrics:
    def test_accuracy(self):
        assert accuracy([("A", "A"), ("B", "B")]) == 1.0
        assert accuracy([("A", "B"), ("B", "A")]) == 0.0
        assert accuracy([("A", "A"), ("A", "A"), ("A", "B"), ("B", "B")]) == 0.75

    def test_accuracy_empty(self):
        with pytest.raises(ValueError):
            accuracy([])

    def test_rmse_perfect(self):
        assert rmse([("A", "A"), ("B", "B")], ["A", "B"]) == 0.0

    def test_rmse_one_miss(self):
        value = rmse([("A", "A"), ("B", "A")], ["A", "B"])
        assert value == pytest.approx(math.sqrt(2 / 4))

    def test_rae_perfect(self):
        assert rae([("A", "A"), ("B", "B")], ["A", "B"]) == 0.0

    def test_rae_all_wrong_balanced_binary(self):
        assert rae([("A", "B"), ("B", "A")], ["A", "B"]) == 2.0

    def test_rae_degenerate_denominator(self):
        with pytest.raises(ValueError, match="identical"):
            rae([("A", "A"), ("A", "A")], ["A", "B"])

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError):
            rmse([("A", "C")], ["A", "B"])

    def test_agreement_between_metrics(self):
        preds = [("A", "A"), ("B", "B"), ("A", "A")]
        labels = ["A", "B"]
        assert accuracy(preds) == 1.0
        assert rmse(preds, labels) == 0.0
        assert rae(preds, labels) == 0.0


class TestStratifiedFolds:
    def test_partition_is_disjoint_and_complete(self):
        corpus = two_label_corpus(per_label=10)
        folds = stratified_folds(corpus, 5, seed=1)
        seen = [i for fold in folds for i in fold]
        assert sorted(seen) == list(range(len(corpus)))

    def test_each_fold_has_every_label(self):
        corpus = two_label_corpus(per_label=10)
        for fold in stratified_folds(corpus, 5, seed=1):
            assert {corpus.documents[i].label for i in fold} == corpus.labels

    def test_thin_label_rejected(self):
        docs = tuple(doc(i, "A", "x") for i in range(10)) + (doc(99, "B", "y"),)
        with pytest.raises(StratificationError, match="'B'"):
            stratified_folds(Corpus(docs), 2)

    def test_deterministic(self):
        corpus = two_label_corpus()
        assert stratified_folds(corpus, 5, seed=9) == stratified_folds(corpus, 5, seed=9)


class TestCrossValidate:
    def test_ten_docs_ten_folds_tests_one_each(self):
        docs = tuple(doc(i, "A", "ab" * (i + 1)) for i in range(10))
        report = cross_validate(Corpus(docs), 10, 1, LEV, seed=0)
        assert len(report.per_fold) == 10
        assert sum(sum(row) for row in report.confusion) == 10
        # Single-label corpus: RAE is undefined, accuracy is forced to 1.
        assert all(m.accuracy == 1.0 for m in report.per_fold)
        assert all(math.isnan(m.rae) for m in report.per_fold)

    def test_deterministic(self):
        corpus = two_label_corpus()
        spec = DistanceSpec(variant=Variant.MIN_OVERLAP)
        d = builtin_distances(spec)["mfkc"]
        assert cross_validate(corpus, 5, 3, d, seed=4) == cross_validate(corpus, 5, 3, d, seed=4)

    def test_confusion_rows_sum_to_corpus_size(self):
        corpus = two_label_corpus()
        report = cross_validate(corpus, 5, 3, LEV, seed=0)
        assert sum(sum(row) for row in report.confusion) == len(corpus)

    def test_skewed_synthetic_corpus_classifies_well(self):
        corpus = synth_corpus(SynthSpec(3, 20, 300, skew=1.0, seed=5))
        d = builtin_distances(DistanceSpec(k=2))["mfkc"]
        report = cross_validate(corpus, 10, 5, d, seed=5)
        assert report.aggregate["accuracy"]["mean"] > 0.9

    def test_report_serialization_shapes(self):
        corpus = two_label_corpus()
        report = cross_validate(corpus, 5, 3, LEV, seed=0)
        payload = report.to_json_dict()
        assert set(payload) == {"config", "per_fold", "aggregate", "confusion"}
        assert len(payload["per_fold"]) == 5
        assert payload["confusion"]["labels"] == sorted(corpus.labels)
        tsv = report.to_tsv().splitlines()
        assert tsv[0] == "fold\taccuracy\trmse\trae"
        assert len(tsv) == 6


class TestKSweep:
    def test_single_k_single_row(self):
        corpus = two_label_corpus(per_label=6, length=40)
        report = k_sweep(corpus, [1], folds=3, k_neighbors=3, seed=2)
        assert len(report.rows) == 1
        assert report.rows[0].k == 1
        assert report.rows[0].mean_pair_time_ns > 0

    def test_accuracy_rises_with_k_on_skewed_corpus(self):
        corpus = synth_corpus(SynthSpec(4, 12, 300, skew=0.9, seed=6))
        report = k_sweep(
            corpus, [1, 2, 3], folds=4, k_neighbors=5,
            variant=Variant.MIN_OVERLAP, seed=6,
        )
        by_k = {row.k: row.mean_accuracy for row in report.rows}
        assert by_k[3] >= by_k[1]

    def test_per_pair_time_grows_with_k(self):
        corpus = synth_corpus(SynthSpec(2, 12, 400, skew=0.9, seed=8))
        report = k_sweep(corpus, [1, 2, 4, 8], folds=4, k_neighbors=3, seed=8)
        times = [row.mean_pair_time_ns for row in report.rows]
        assert times == sorted(times)

    def test_empty_k_values_rejected(self):
        with pytest.raises(ValueError):
            k_sweep(two_label_corpus(), [])

    def test_serialization(self):
        corpus = two_label_corpus(per_label=6, length=40)
        report = k_sweep(corpus, [1, 2], folds=3, k_neighbors=3, seed=2)
        payload = report.to_json_dict()
        assert [row["k"] for row in payload["rows"]] == [1, 2]
        tsv = report.to_tsv().splitlines()
        assert tsv[0] == "k\tmean_accuracy\tmean_pair_time_ns"
        assert len(tsv) == 3


class TestBuiltinDistances:
    def test_all_methods_present(self):
        assert set(builtin_distances()) == {"mfkc", "levenshtein", "hamming", "jaccard", "tanimoto"}

    def test_determinism_and_symmetry_by_sampling(self):
        import random

        rng = random.Random(0)
        alphabet = "abcdef "
        for d in builtin_distances().values():
            for _ in range(25):
                a = "".join(rng.choices(alphabet, k=rng.randrange(0, 12)))
                b = "".join(rng.choices(alphabet, k=rng.randrange(0, 12)))
                first = d.fn(a, b)
                assert first == d.fn(a, b)
                assert first == d.fn(b, a)
                assert first >= 0
