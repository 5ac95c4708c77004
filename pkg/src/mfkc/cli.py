"""Command-line front end.

Subcommands: hash, dist, matrix, eval, sweep, bench. Global flags mirror
the distance configuration (--k, --limit, --variant, --unit, --seed,
--format) and are accepted after any subcommand.

Exit codes are a stable contract: 0 success, 2 I/O or corpus failure,
64 usage error, 65 data error (e.g. a label too thin to stratify).
Output goes to stdout as TSV (default) or JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Callable, Sequence

from .bench import bench_suite
from .corpus import Corpus, CorpusFormatError, SynthSpec, load_corpus, parse_fasta, synth_corpus
from .distance import DistanceSpec, Variant, distance_str
from .evaluate import (
    DistanceFn,
    StratificationError,
    builtin_distances,
    cross_validate,
    k_sweep,
)
from .hashing import CharUnit, encode_hash, max_k_freq_hash

__all__ = ["main"]

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 64
EXIT_DATA = 65

_METHODS = ("mfkc", "levenshtein", "hamming", "jaccard", "tanimoto")
_BENCH_FUNCTIONS = ("jaccard", "mfkc", "mfkc-prehashed", "levenshtein")


class _UsageError(ValueError):
    """Bad flags or arguments; maps to exit code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="digest size (default 2)")
    common.add_argument("--limit", type=float, default=10.0, help="distance ceiling (default 10)")
    common.add_argument("--variant", choices=("sum", "min"), default="sum",
                        help="similarity accumulation rule (default sum)")
    common.add_argument("--unit", choices=("scalar", "byte"), default="scalar",
                        help="character model (default scalar)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv",
                        help="output format (default tsv)")
    return common


def build_parser() -> _Parser:
    parser = _Parser(prog="mfkc", description="Most-frequent-K-characters string distance toolkit")
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_hash = sub.add_parser("hash", parents=[common], help="print digests, one per input")
    p_hash.add_argument("inputs", nargs="*", help="strings to hash")
    p_hash.add_argument("--file", help="file with one input string per line")
    p_hash.add_argument("--fasta", help="FASTA file; each record's sequence is hashed")
    p_hash.set_defaults(handler=_cmd_hash)

    p_dist = sub.add_parser("dist", parents=[common], help="distance between two strings")
    p_dist.add_argument("s1")
    p_dist.add_argument("s2")
    p_dist.add_argument("--method", choices=_METHODS, default="mfkc")
    p_dist.add_argument("--verbose", action="store_true",
                        help="also print the similarity where the method defines one")
    p_dist.set_defaults(handler=_cmd_dist)

    p_matrix = sub.add_parser("matrix", parents=[common], help="pairwise distance matrix")
    p_matrix.add_argument("--file", required=True, help="file with one input string per line")
    p_matrix.add_argument("--method", choices=_METHODS, default="mfkc")
    p_matrix.set_defaults(handler=_cmd_matrix)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="k-NN cross-validation over a labeled corpus")
    _add_corpus_flags(p_eval)
    p_eval.add_argument("--method", choices=_METHODS, default="mfkc")
    p_eval.add_argument("--folds", type=int, default=10)
    p_eval.add_argument("--neighbors", type=int, default=5)
    p_eval.set_defaults(handler=_cmd_eval)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="sweep the digest size K and report accuracy and cost")
    _add_corpus_flags(p_sweep)
    p_sweep.add_argument("--k-values", required=True, help="comma-separated K values")
    p_sweep.add_argument("--folds", type=int, default=10)
    p_sweep.add_argument("--neighbors", type=int, default=5)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_bench = sub.add_parser("bench", parents=[common], help="time distance functions")
    p_bench.add_argument("--sizes", default="256,512,1024", help="comma-separated string lengths")
    p_bench.add_argument("--reps", type=int, default=50)
    p_bench.add_argument("--functions", default=",".join(_BENCH_FUNCTIONS),
                         help=f"comma-separated subset of {', '.join(_BENCH_FUNCTIONS)}")
    p_bench.set_defaults(handler=_cmd_bench)
    return parser


def _add_corpus_flags(parser: _Parser) -> None:
    parser.add_argument("--corpus", help="path to a labeled corpus")
    parser.add_argument("--corpus-format", choices=("dir", "jsonl"), default="jsonl")
    parser.add_argument("--synth",
                        help="synthetic corpus spec, e.g. labels=4,docs=40,len=400,skew=0.9")


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    if value == math.inf:
        return "inf"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return f"{value:.6g}"


def _spec_from(args) -> DistanceSpec:
    variant = Variant.SUM_MATCH if args.variant == "sum" else Variant.MIN_OVERLAP
    unit = CharUnit.SCALAR if args.unit == "scalar" else CharUnit.BYTE
    return DistanceSpec(k=args.k, limit=args.limit, variant=variant, clamp=True, unit=unit)


def _read_lines(path: str) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def _parse_csv_ints(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise _UsageError(f"{flag} expects comma-separated integers, got {text!r}") from exc
    if not values:
        raise _UsageError(f"{flag} expects at least one value")
    return values


def _parse_synth(text: str, default_seed: int) -> SynthSpec:
    fields = {"labels": 4, "docs": 40, "len": 400, "skew": 0.9, "seed": default_seed}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, raw = part.partition("=")
        if key not in fields or not raw:
            raise _UsageError(f"bad synth spec item {part!r} (keys: labels, docs, len, skew, seed)")
        try:
            fields[key] = float(raw) if key == "skew" else int(raw)
        except ValueError as exc:
            raise _UsageError(f"bad synth spec value {part!r}") from exc
    return SynthSpec(
        n_labels=fields["labels"],
        docs_per_label=fields["docs"],
        doc_length=fields["len"],
        skew=fields["skew"],
        seed=fields["seed"],
    )


def _corpus_from(args) -> Corpus:
    if (args.corpus is None) == (args.synth is None):
        raise _UsageError("exactly one of --corpus or --synth is required")
    if args.synth is not None:
        return synth_corpus(_parse_synth(args.synth, args.seed))
    return load_corpus(args.corpus, args.corpus_format)


def _distance_from(args, spec: DistanceSpec) -> DistanceFn:
    return builtin_distances(spec)[args.method]


def _similarity_for(args, spec: DistanceSpec) -> float | None:
    from .baselines import jaccard_index, tanimoto_similarity_str

    if args.method == "mfkc":
        return distance_str(args.s1, args.s2, spec).similarity
    if args.method == "jaccard":
        return jaccard_index(args.s1, args.s2)
    if args.method == "tanimoto":
        return tanimoto_similarity_str(args.s1, args.s2)
    return None


def _cmd_hash(args) -> int:
    if not args.inputs and args.file is None and args.fasta is None:
        raise _UsageError("provide input strings, --file, or --fasta")
    spec = _spec_from(args)  # validates --k and --limit
    records: list[tuple[str, str]] = [(text, text) for text in args.inputs]
    if args.file is not None:
        records.extend((line, line) for line in _read_lines(args.file))
    if args.fasta is not None:
        fasta_text = Path(args.fasta).read_text(encoding="utf-8")
        records.extend(parse_fasta(fasta_text))
    rows = [
        (name, encode_hash(max_k_freq_hash(text, spec.k, spec.unit)))
        for name, text in records
    ]
    if args.format == "json":
        print(json.dumps([{"id": name, "hash": digest} for name, digest in rows], indent=2))
    else:
        for name, digest in rows:
            print(f"{name}\t{digest}")
    return EXIT_OK


def _cmd_dist(args) -> int:
    spec = _spec_from(args)
    d = _distance_from(args, spec)
    distance = d.fn(args.s1, args.s2)
    similarity = _similarity_for(args, spec) if (args.verbose or args.format == "json") else None
    if args.format == "json":
        print(json.dumps(
            {"method": args.method, "distance": distance, "similarity": similarity},
            indent=2,
        ))
    elif args.verbose and similarity is not None:
        print(f"{_fmt(distance)}\t{_fmt(similarity)}")
    else:
        print(_fmt(distance))
    return EXIT_OK


def _cmd_matrix(args) -> int:
    spec = _spec_from(args)
    inputs = _read_lines(args.file)
    if len(inputs) < 2:
        raise _UsageError(f"matrix needs at least 2 inputs, got {len(inputs)}")
    d = _distance_from(args, spec)
    size = len(inputs)
    matrix = [[0.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = d.fn(inputs[i], inputs[j])
            matrix[i][j] = value
            matrix[j][i] = value
    if args.format == "json":
        print(json.dumps({"method": args.method, "inputs": inputs, "matrix": matrix}, indent=2))
    else:
        print("\t" + "\t".join(inputs))
        for name, row in zip(inputs, matrix):
            print(name + "\t" + "\t".join(_fmt(v) for v in row))
    return EXIT_OK


def _cmd_eval(args) -> int:
    spec = _spec_from(args)
    corpus = _corpus_from(args)
    report = cross_validate(corpus, args.folds, args.neighbors, _distance_from(args, spec), args.seed)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.to_tsv(), end="")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = _spec_from(args)
    corpus = _corpus_from(args)
    k_values = _parse_csv_ints(args.k_values, "--k-values")
    report = k_sweep(
        corpus,
        k_values,
        folds=args.folds,
        k_neighbors=args.neighbors,
        variant=spec.variant,
        seed=args.seed,
        limit=spec.limit,
        unit=spec.unit,
    )
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.to_tsv(), end="")
    return EXIT_OK


def _cmd_bench(args) -> int:
    spec = _spec_from(args)
    sizes = _parse_csv_ints(args.sizes, "--sizes")
    names = [name.strip() for name in args.functions.split(",") if name.strip()]
    if not names:
        raise _UsageError("--functions expects at least one function name")
    report = bench_suite(names, sizes, reps=args.reps, seed=args.seed, spec=spec)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.to_tsv(), end="")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # raised by argparse for usage errors and --help
        return int(exc.code or 0)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (OSError, UnicodeDecodeError, CorpusFormatError) as exc:
        print(f"mfkc: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StratificationError as exc:
        print(f"mfkc: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, KeyError) as exc:
        print(f"mfkc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
