"""Command line for embed-ingest.

Exit codes: 0 success, 1 internal error, 2 invalid input or model.
"""

import argparse
import sys

from . import __version__
from .embedders import HASHED_NGRAM, UnknownModelError
from .ingest import IngestError, embed_pairs


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="embed-ingest",
        description="Sample paraphrase pairs from a Quora-format TSV and write "
        "two embedding JSONL corpora (question1 -> corpus A, question2 -> corpus B).",
    )
    parser.add_argument("--version", action="version", version=f"embed-ingest {__version__}")
    parser.add_argument("--input", required=True, help="paraphrase TSV with a header row")
    parser.add_argument(
        "--model",
        default=HASHED_NGRAM,
        help=f"embedding model: {HASHED_NGRAM!r} (offline default) or a "
        "sentence-transformers model name such as all-MiniLM-L6-v2",
    )
    parser.add_argument("--n", type=int, required=True, help="number of pairs to sample")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    parser.add_argument("--out-a", required=True, help="output JSONL for corpus A")
    parser.add_argument("--out-b", required=True, help="output JSONL for corpus B")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        written = embed_pairs(args.input, args.model, args.n, args.seed, args.out_a, args.out_b)
    except (IngestError, UnknownModelError) as exc:
        print(f"embed-ingest: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"embed-ingest: internal error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written} pairs to {args.out_a} and {args.out_b}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
