"""Command-line entry point: ``speechtrees <command> ...``.

Exit status is 0 on success, 1 on bad usage and 2 on unreadable or
inconsistent data.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from . import __version__
from .augment import ConfigError, augment_corpus, load_config
from .scoring import (
    AlignmentError,
    format_dysfluency_report,
    format_pos_report,
    format_score,
    propagate_re,
    read_restart_starts,
    score_brackets,
    score_dysfluency,
    score_pos,
)
from .transcripts import (
    TaggedFileError,
    corpus_stats,
    read_tagged_file,
    read_transcript,
)
from .treebank import TreeParseError, parse_trees, write_trees, yield_leaves

CONFIG_ENV = "SPEECHTREES_CONFIG"
DEFAULT_SEED = 17

DATA_ERRORS = (TreeParseError, AlignmentError, ConfigError, TaggedFileError, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def _read_trees(path):
    try:
        return parse_trees(_read(path))
    except TreeParseError as exc:
        raise TreeParseError(f"{path}: {exc.args[0]}", exc.offset) from None


def _looks_like_trees(text: str) -> bool:
    return text.lstrip().startswith("(")


def _tag_sentences(path, propagate=False):
    """Tag sequences from either a tagged file or a tree file."""
    text = _read(path)
    if _looks_like_trees(text):
        trees = parse_trees(text)
        return [propagate_re(t) if propagate else yield_leaves(t) for t in trees]
    return read_tagged_file(text)


def cmd_augment(args) -> int:
    config_path = args.config or os.environ.get(CONFIG_ENV)
    config = load_config(config_path)
    explicit = set()
    if config_path:
        with open(config_path, encoding="utf-8") as fh:
            explicit = set(json.load(fh))
    trees = _read_trees(args.input)
    if not trees:
        raise TreeParseError(f"{args.input}: no trees found", 0)
    result = augment_corpus(
        trees, config, seed=args.seed, epoch=args.epoch,
        iterations=args.iterations, workers=args.workers,
    )
    with _open_out(args.output) as fh:
        write_trees(result.trees, fh)
    manifest = {
        "tool": "speechtrees",
        "version": __version__,
        "input": args.input,
        "output": args.output,
        "seed": args.seed,
        "epoch": args.epoch,
        "iterations": args.iterations,
        "config_path": config_path,
        "config_hash": config.digest(),
        "config": config.to_dict(),
        "defaults_used": sorted(set(config.to_dict()) - explicit),
        "input_trees": len(trees),
        "output_trees": len(result.trees),
        "grouping_counts": dict(sorted(result.category_counts().items())),
        "drawn_counts": dict(sorted(result.drawn_counts().items())),
    }
    manifest_path = args.manifest or f"{args.output}.manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_score_pos(args) -> int:
    gold = _tag_sentences(args.gold, propagate=True)
    pred = _tag_sentences(args.pred, propagate=True)
    report = score_pos(gold, pred, strip_re_tags=args.strip_re)
    _emit(args, report.to_dict(), format_pos_report(report))
    return 0


def cmd_score_evalb(args) -> int:
    gold = _read_trees(args.gold)
    pred = _read_trees(args.pred)
    kwargs = {"strip_function_tags": not args.keep_function_tags}
    if args.keep_punct:
        kwargs["punctuation_tags"] = ()
    score = score_brackets(gold, pred, **kwargs)
    _emit(args, score.to_dict(), format_score("brackets", score))
    return 0


def cmd_score_dysfluency(args) -> int:
    gold = _tag_sentences(args.gold, propagate=True)
    pred = _read_trees(args.pred)
    starts = read_restart_starts(_read(args.restarts)) if args.restarts else None
    report = score_dysfluency(gold, pred, starts)
    _emit(args, report.to_dict(), format_dysfluency_report(report, by_length=args.by_length))
    return 0


def _flags(tok) -> str:
    names = [name for name, on in (
        ("REP", tok.is_repetition), ("PART", tok.is_partial), ("RES", tok.is_restart_end)
    ) if on]
    return "|".join(names) or "O"


def cmd_tokenize(args) -> int:
    utterances = read_transcript(_read(args.input))
    with _open_out(args.output) as fh:
        fh.write("\n".join(
            "".join(f"{tok.token}\t{_flags(tok)}\n" for tok in utt) for utt in utterances
        ))
    return 0


def cmd_stats(args) -> int:
    text = _read(args.input)
    lines = [line for line in text.splitlines() if line.strip()]
    if lines and all("\t" in line for line in lines):
        sentences = read_tagged_file(text)
    else:
        sentences = read_transcript(text)
    stats = corpus_stats(sentences)
    payload = {
        "sentences": stats.sentences,
        "tokens": stats.tokens,
        "mean_length": stats.mean_length,
        "std_length": stats.std_length,
    }
    if args.json:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = "# sents\t# tokens\ttokens/sent\n" + stats.as_row() + "\n"
    with _open_out(args.output) as fh:
        fh.write(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="speechtrees", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("augment", help="write a dysfluency-augmented copy of a treebank")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--config", help=f"JSON config (default: ${CONFIG_ENV}, else built-in rates)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--epoch", type=int, default=0)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--manifest", help="manifest path (default: OUTPUT.manifest.json)")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("score-pos", help="per-tag POS precision/recall/F1 and accuracy")
    p.add_argument("--gold", required=True, help="tagged file or tree file")
    p.add_argument("--pred", required=True, help="tagged file or tree file")
    p.add_argument("--strip-re", action="store_true", help="score X_RE as X")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score_pos)

    p = sub.add_parser("score-evalb", help="labelled bracket precision/recall/F1")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--keep-punct", action="store_true", help="do not delete punctuation")
    p.add_argument("--keep-function-tags", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score_evalb)

    p = sub.add_parser("score-dysfluency", help="repetition and restart detection")
    p.add_argument("--gold", required=True, help="tagged file with _RE tags")
    p.add_argument("--pred", required=True, help="parser output trees")
    p.add_argument("--restarts", help="gold restart starts, one line per sentence")
    p.add_argument("--by-length", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score_dysfluency)

    p = sub.add_parser("tokenize", help="flag transcript markup token by token")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("stats", help="sentence and token counts")
    p.add_argument("--input", required=True, help="tagged file or raw transcript")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "iterations", 1) < 1:
        parser.error("--iterations must be at least 1")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except (*DATA_ERRORS, ValueError) as exc:
        print(f"speechtrees: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
