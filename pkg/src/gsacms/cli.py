"""Command-line front end.

    gsacms build-gsa --input docs.fa [--reference ref.fa] --output out.gsa
    gsacms build-ms  --input docs.fa --output out.ecms
    gsacms stats     --input docs.fa
    gsacms validate  --input docs.fa [--gsa out.gsa]

Exit status: 0 on success, 1 when validation finds a mismatch, 2 on usage or
I/O errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass

import numpy as np

from . import seqio
from ._backend import BACKEND
from .alphabet import InputFormatError
from .cms_store import DEFAULT_PRED_SAMPLE, dump_store
from .gsa_builder import BuildStats, Collection, build_ecms, build_gsa
from .matching_stats import AugmentationError
from .oracles import naive_gsa
from .reference_index import DEFAULT_BLOCK_SIZE
from .suffix_kernels import InvariantError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
VALIDATE_LIMIT = 1 << 20

log = logging.getLogger("gsacms")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    reference: str | None = None
    output: str | None = None
    fmt: str = "binary"
    input_format: str = "auto"
    block_size: int = DEFAULT_BLOCK_SIZE
    pred_sample: int = DEFAULT_PRED_SAMPLE
    heuristic: bool = True
    validate: bool = False
    stats: bool = False
    workers: int = 1
    gsa: str | None = None

    def check(self) -> None:
        if self.block_size < 1:
            raise UsageError("--block-size must be >= 1")
        if self.pred_sample < 1:
            raise UsageError("--pred-sample must be >= 1")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.command in ("build-gsa", "build-ms") and not self.output:
            raise UsageError(f"{self.command} needs --output")


def _load(cfg: RunConfig):
    docs = seqio.ingest_many(cfg.inputs, cfg.input_format)
    ref = None
    if cfg.reference:
        recs = seqio.ingest(cfg.reference, cfg.input_format)
        if len(recs) != 1:
            raise UsageError(f"reference {cfg.reference} holds {len(recs)} sequences, expected 1")
        ref = recs[0]
    return Collection.from_sequences(docs), ref


def _build_kwargs(cfg: RunConfig) -> dict:
    return dict(block_size=cfg.block_size, pred_sample=cfg.pred_sample,
                heuristic=cfg.heuristic, workers=cfg.workers)


def _oracle_check(col: Collection, gsa: np.ndarray) -> bool:
    if col.N > VALIDATE_LIMIT:
        raise UsageError(f"validation is limited to {VALIDATE_LIMIT} symbols; input has {col.N}")
    want = np.asarray(naive_gsa(col.docs), dtype=np.int64).reshape(-1, 2)
    got = np.asarray(gsa, dtype=np.int64).reshape(-1, 2)
    if got.shape != want.shape:
        log.error("validation: %d pairs, expected %d", len(got), len(want))
        return False
    bad = np.flatnonzero((got != want).any(axis=1))
    if len(bad):
        k = int(bad[0])
        log.error("validation: %d rows differ, first at row %d: got %s, expected %s",
                  len(bad), k, tuple(got[k].tolist()), tuple(want[k].tolist()))
        return False
    return True


def format_stats(stats: BuildStats) -> str:
    return "\n".join(f"{k}\t{v}" for k, v in stats.as_dict().items())


def run(cfg: RunConfig) -> int:
    cfg.check()
    col, ref = _load(cfg)
    if cfg.command == "build-ms":
        _, _, store, stats = build_ecms(col, ref, **_build_kwargs(cfg))
        with open(cfg.output, "wb") as fh:
            dump_store(store, fh)
        if cfg.stats:
            print(format_stats(stats))
        return EXIT_OK

    if cfg.command == "validate" and cfg.gsa:
        return EXIT_OK if _oracle_check(col, seqio.read_gsa(cfg.gsa)) else EXIT_MISMATCH

    res = build_gsa(col, ref, **_build_kwargs(cfg))
    if cfg.command == "build-gsa":
        seqio.write_gsa(res.gsa, cfg.output, cfg.fmt)
    if cfg.command == "stats" or cfg.stats:
        print(format_stats(res.stats))
    if cfg.command == "validate" or cfg.validate:
        if not _oracle_check(col, res.gsa):
            return EXIT_MISMATCH
        log.info("validation passed (%d suffixes)", col.N)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", action="append", required=True,
                        help="document file (FASTA or one sequence per line); repeatable")
    common.add_argument("-r", "--reference", help="reference sequence file (default: first document)")
    common.add_argument("--input-format", choices=["auto", "fasta", "raw"], default="auto")
    common.add_argument("-b", "--block-size", type=int, default=DEFAULT_BLOCK_SIZE,
                        help="LCP block size for the contraction shortcut")
    common.add_argument("--pred-sample", type=int, default=DEFAULT_PRED_SAMPLE,
                        help="sampling rate of the insert-head predecessor layer")
    common.add_argument("--no-heuristic", action="store_true",
                        help="always contract through PSV/NSV jumps")
    common.add_argument("-j", "--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gsacms", description="Generalized suffix arrays of similar strings.")
    p.add_argument("--version", action="version", version=f"%(prog)s (kernels: {BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("build-gsa", parents=[common], help="write the generalized suffix array")
    g.add_argument("-o", "--output")
    g.add_argument("-f", "--format", choices=["binary", "tsv"], default="binary")
    g.add_argument("--validate", action="store_true", help="compare with a brute-force sort (inputs <= 1 MB)")
    g.add_argument("--stats", action="store_true")

    ms = sub.add_parser("build-ms", parents=[common], help="write the enhanced compressed matching statistics")
    ms.add_argument("-o", "--output")
    ms.add_argument("--stats", action="store_true")

    sub.add_parser("stats", parents=[common], help="print collection and construction statistics")

    v = sub.add_parser("validate", parents=[common], help="check a GSA (built or from --gsa) by brute force")
    v.add_argument("--gsa", help="existing GSA file to check instead of building one")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    cfg = RunConfig(
        command=args.command, inputs=args.input, reference=args.reference,
        output=getattr(args, "output", None), fmt=getattr(args, "format", "binary"),
        input_format=args.input_format, block_size=args.block_size,
        pred_sample=args.pred_sample, heuristic=not args.no_heuristic,
        validate=getattr(args, "validate", False), stats=getattr(args, "stats", False),
        workers=args.workers, gsa=getattr(args, "gsa", None),
    )
    try:
        return run(cfg)
    except (UsageError, OSError, seqio.IngestError, InputFormatError, AugmentationError, ValueError) as exc:
        print(f"gsacms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"gsacms: internal error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
