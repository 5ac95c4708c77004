"""Most-frequent-K-characters string hashing and distance toolkit.

Digest a string to its K most frequent characters with counts, compare
digests to get a fast dissimilarity score, and measure that score against
the classic baselines (Levenshtein, Hamming, Jaccard, Tanimoto) with a
k-NN author-attribution harness and a timing harness.
"""

from .baselines import (
    BitVector,
    bit_vectors,
    hamming,
    jaccard_distance,
    jaccard_index,
    levenshtein,
    symbol_set,
    tanimoto_distance,
    tanimoto_distance_str,
    tanimoto_similarity,
    tanimoto_similarity_str,
)
from .bench import (
    BenchReport,
    BenchRow,
    RatioEntry,
    bench_suite,
    gen_workload,
    time_distance,
    time_mfkc_prehashed,
)
from .corpus import (
    Corpus,
    CorpusFormatError,
    Document,
    SynthSpec,
    label_signature,
    load_corpus,
    parse_fasta,
    save_jsonl,
    synth_corpus,
    tokenize,
)
from .distance import (
    DistanceSpec,
    MfkcResult,
    Variant,
    distance_str,
    mfkc_distance,
    mfkc_similarity,
)
from .evaluate import (
    DistanceFn,
    EvalReport,
    FoldMetrics,
    StratificationError,
    SweepReport,
    SweepRow,
    accuracy,
    builtin_distances,
    cross_validate,
    k_sweep,
    knn_classify,
    rae,
    rmse,
    stratified_folds,
)
from .hashing import (
    CharUnit,
    FreqHash,
    HashDecodeError,
    HashEntry,
    count_frequencies,
    decode_hash,
    encode_hash,
    max_k_freq_hash,
)

__version__ = "0.1.0"
