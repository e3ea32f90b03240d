"""Command-line interface: ``msort <subcommand> ...``.

Each subcommand runs one library pipeline and prints the result as
``--format text`` (default), ``tsv`` or ``json``.  Relative resource
paths that do not exist are looked up in ``$MSORT_DATA_DIR`` and then in
the data shipped with the package, so ``msort coded --lexicon
events_lexicon.tsv events.txt`` works from any directory.

Exit status is 0 on success, 1 on input errors (reported as a single
``msort: error: <kind>: <detail>`` line on stderr) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
from pathlib import Path
from typing import Sequence, TextIO

from msort import __version__, render
from msort.codes import load_remap_table
from msort.engine import annotate, group_keywords, msort, msort_pairs, sort_annotations
from msort.errors import MsortError, ParseError
from msort.features import (derive_thesaurus, infer_hierarchy, load_feature_dictionary,
                            msort_by_features, similarity)
from msort.lexicon import KeyPolicy, load_lexicon
from msort.paths import load_thesaurus, msort_by_path
from msort.resources import (DEFAULT_MARKERS, DEFAULT_REMAP, find_file, load_markers,
                             open_text)

FORMATS = ("text", "tsv", "json")


class StrictWarning(MsortError):
    pass


def existing_file(value: str) -> Path:
    if value == "-":
        return Path("-")
    path = find_file(value)
    if path is None:
        raise argparse.ArgumentTypeError(f"file not found: {value}")
    return path


def csv_list(value: str) -> list[str]:
    items = [v.strip() for v in value.split(",")]
    if not all(items):
        raise argparse.ArgumentTypeError(f"empty item in list {value!r}")
    return items


def prefix_length(value: str) -> int:
    n = int(value)
    if not 1 <= n <= 10:
        raise argparse.ArgumentTypeError("prefix length must be in 1..10")
    return n


def positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--strict", action="store_true",
                   help="treat warnings (unmatched codes, unknown words) as errors")
    p.add_argument("--version", action="version", version=f"msort {__version__}")


def _add_lexicon(p, required=True):
    p.add_argument("--lexicon", type=existing_file, required=required,
                   help="word<TAB>code lexicon")
    p.add_argument("--remap", type=existing_file, default=None,
                   help=f"remap rules (default: shipped {DEFAULT_REMAP})")
    p.add_argument("--no-remap", action="store_true",
                   help="use lexicon codes as they are")


def _add_grouping(p):
    p.add_argument("--markers", type=existing_file, default=None,
                   help=f"marker table (default: shipped {DEFAULT_MARKERS})")
    p.add_argument("--no-dedup", action="store_true",
                   help="keep repeated words within a group")
    p.add_argument("--keep-empty", action="store_true",
                   help="keep marker groups that received no words")
    p.add_argument("--payload-tiebreak", action="store_true",
                   help="order equal codes by numeric payload, largest first")


def _add_dict(p, priority=True):
    p.add_argument("--dict", type=existing_file, required=True, dest="dictionary",
                   help="feature dictionary TSV")
    if priority:
        p.add_argument("--priority", type=csv_list, default=None,
                       help="comma-separated feature order (default: file order)")
        p.add_argument("--value-order", choices=("lexicographic", "lexicon"),
                       default="lexicographic")
        _add_lexicon(p, required=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msort",
                                     description="Sort words into meaning order.")
    parser.add_argument("--version", action="version", version=f"msort {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("coded", help="meaning-sort words with a coded lexicon")
    _add_lexicon(p)
    _add_grouping(p)
    p.add_argument("--stage", choices=("annotated", "sorted", "grouped"),
                   default="grouped", help="which pipeline stage to print")
    p.add_argument("input", nargs="?", type=existing_file, default=Path("-"))
    _add_common(p)

    p = sub.add_parser("keywords", help="meaning-sort, then line-split by code prefix")
    _add_lexicon(p)
    _add_grouping(p)
    p.add_argument("--prefix-length", type=prefix_length, default=3)
    p.add_argument("input", nargs="?", type=existing_file, default=Path("-"))
    _add_common(p)

    p = sub.add_parser("pairs", help="sort TSV records by the codes of key columns")
    _add_lexicon(p)
    p.add_argument("--keys", type=csv_list, required=True,
                   help="comma-separated key columns, most significant first")
    p.add_argument("--policy", choices=[k.value for k in KeyPolicy],
                   default=KeyPolicy.MINIMUM_CODE.value)
    p.add_argument("input", nargs="?", type=existing_file, default=Path("-"))
    _add_common(p)

    p = sub.add_parser("path", help="meaning-sort words with a definition-path thesaurus")
    p.add_argument("--thesaurus", type=existing_file, required=True)
    p.add_argument("--marker-depth", type=positive_int, default=3)
    p.add_argument("--sibling-order", choices=("lexicographic", "lexicon"),
                   default="lexicographic")
    _add_lexicon(p, required=False)
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("input", nargs="?", type=existing_file, default=Path("-"))
    _add_common(p)

    p = sub.add_parser("features", help="sort a feature dictionary by a feature priority")
    _add_dict(p)
    _add_common(p)

    p = sub.add_parser("derive", help="derive a tree thesaurus from a feature dictionary")
    _add_dict(p)
    _add_common(p)

    p = sub.add_parser("hierarchy", help="infer superordinate/subordinate pairs")
    _add_dict(p, priority=False)
    _add_common(p)

    p = sub.add_parser("sim", help="feature-overlap similarity between words")
    _add_dict(p, priority=False)
    p.add_argument("words", nargs="*",
                   help="words to compare pairwise (default: every pair)")
    _add_common(p)
    return parser


# ------------------------------------------------------------------ helpers

class Context:
    def __init__(self, args, stdin: TextIO, stderr: TextIO):
        self.args = args
        self.stdin = stdin
        self.stderr = stderr
        self.warnings: list[str] = []

    def warn(self, message: str):
        self.warnings.append(message)
        self.stderr.write(f"msort: warning: {message}\n")

    def open(self, path: Path):
        if str(path) == "-":
            return _NoClose(self.stdin)
        return open_text(path)

    def remap_table(self):
        if self.args.no_remap:
            return None
        path = self.args.remap or find_file(DEFAULT_REMAP)
        with self.open(path) as fh:
            return load_remap_table(fh, str(path))

    def lexicon(self):
        remap = self.remap_table()
        path = self.args.lexicon
        with self.open(path) as fh:
            lex = load_lexicon(fh, remap, str(path))
        for w in lex.warnings:
            self.warn(w)
        return lex

    def markers(self):
        return load_markers(str(self.args.markers or DEFAULT_MARKERS))

    def words(self):
        path = self.args.input
        out = []
        with self.open(path) as fh:
            for raw in fh:
                line = raw.rstrip("\r\n")
                if not line.strip():
                    continue
                word, _, payload = line.partition("\t")
                out.append((word.strip(), payload if _ else None))
        return out

    def dictionary(self):
        path = self.args.dictionary
        with self.open(path) as fh:
            return load_feature_dictionary(fh, str(path))

    def value_lexicon(self):
        if getattr(self.args, "value_order", None) == "lexicon" or \
                getattr(self.args, "sibling_order", None) == "lexicon":
            if self.args.lexicon is None:
                raise UsageError("--lexicon is required for lexicon ordering")
            return self.lexicon()
        return None


class _NoClose:
    def __init__(self, stream):
        self.stream = stream

    def __enter__(self):
        return self.stream

    def __exit__(self, *exc):
        return False


class UsageError(Exception):
    pass


def _grouped_out(result, fmt, ctx):
    for it in result.unknowns:
        ctx.warn(f"unknown word {it.word!r}")
    return render.render_grouped(result, fmt)


def cmd_coded(ctx):
    a = ctx.args
    lex = ctx.lexicon()
    markers = ctx.markers()
    words = ctx.words()
    if a.stage == "grouped":
        result = msort(words, lex, markers, dedup=not a.no_dedup,
                       drop_empty=not a.keep_empty, payload_tiebreak=a.payload_tiebreak)
        return _grouped_out(result, a.format, ctx)
    rows, unknowns = annotate(words, lex)
    for it in unknowns:
        ctx.warn(f"unknown word {it.word!r}")
    if a.stage == "annotated":
        return {"text": render.annotations_text, "tsv": render.annotations_tsv,
                "json": render.annotations_json}[a.format](rows)
    rows = sort_annotations(rows, markers, a.payload_tiebreak)
    return {"text": render.sorted_rows_text, "tsv": render.sorted_rows_tsv,
            "json": render.sorted_rows_json}[a.format](rows)


def cmd_keywords(ctx):
    a = ctx.args
    result = group_keywords(ctx.words(), ctx.lexicon(), ctx.markers(), a.prefix_length,
                            dedup=not a.no_dedup, drop_empty=not a.keep_empty,
                            payload_tiebreak=a.payload_tiebreak)
    return _grouped_out(result, a.format, ctx)


def cmd_pairs(ctx):
    a = ctx.args
    lex = ctx.lexicon()
    with ctx.open(a.input) as fh:
        reader = csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        columns = list(reader.fieldnames or [])
        rows = list(reader)
    ordered = msort_pairs(rows, lex, a.keys, KeyPolicy(a.policy), columns=columns)
    for name in a.keys:
        missing = sorted({r[name] for r in rows if r[name] not in lex})
        for w in missing:
            ctx.warn(f"unknown word {w!r} in column {name!r}")
    return {"text": render.records_text, "tsv": render.records_tsv,
            "json": render.records_json}[a.format](columns, ordered)


def cmd_path(ctx):
    a = ctx.args
    with ctx.open(a.thesaurus) as fh:
        th = load_thesaurus(fh, str(a.thesaurus))
    result = msort_by_path(ctx.words(), th, a.marker_depth,
                           sibling_lexicon=ctx.value_lexicon(), dedup=not a.no_dedup)
    return _grouped_out(result, a.format, ctx)


def cmd_features(ctx):
    a = ctx.args
    d = ctx.dictionary()
    order = msort_by_features(d, a.priority, ctx.value_lexicon())
    return {"text": render.ranking_text, "tsv": render.ranking_tsv,
            "json": render.ranking_json}[a.format](d, order)


def cmd_derive(ctx):
    a = ctx.args
    root = derive_thesaurus(ctx.dictionary(), a.priority, ctx.value_lexicon())
    return {"text": render.tree_text, "tsv": render.tree_tsv,
            "json": render.tree_json}[a.format](root)


def cmd_hierarchy(ctx):
    d = ctx.dictionary()
    index = {w: i for i, w in enumerate(d.entries)}
    pairs = sorted(infer_hierarchy(d), key=lambda p: (index[p[0]], index[p[1]]))
    return {"text": render.hierarchy_text, "tsv": render.hierarchy_tsv,
            "json": render.hierarchy_json}[ctx.args.format](pairs)


def cmd_sim(ctx):
    d = ctx.dictionary()
    words = ctx.args.words or list(d.entries)
    if len(words) == 1:
        words = words * 2
    scores = [(w1, w2, similarity(d, w1, w2))
              for w1, w2 in itertools.combinations(words, 2)]
    return {"text": render.similarity_text, "tsv": render.similarity_tsv,
            "json": render.similarity_json}[ctx.args.format](scores)


COMMANDS = {
    "coded": cmd_coded, "keywords": cmd_keywords, "pairs": cmd_pairs,
    "path": cmd_path, "features": cmd_features, "derive": cmd_derive,
    "hierarchy": cmd_hierarchy, "sim": cmd_sim,
}


def _error(stderr, kind, detail):
    stderr.write(f"msort: error: {kind}: {detail}\n")


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = Context(args, stdin, stderr)
    try:
        output = COMMANDS[args.command](ctx)
        if args.strict and ctx.warnings:
            raise StrictWarning(f"{len(ctx.warnings)} warning(s) with --strict")
    except UsageError as exc:
        parser.print_usage(stderr)
        _error(stderr, "usage", exc)
        return 2
    except ParseError as exc:
        _error(stderr, "parse", exc)
        return 1
    except StrictWarning as exc:
        _error(stderr, "strict", exc)
        return 1
    except (MsortError, ValueError) as exc:
        _error(stderr, type(exc).__name__, exc)
        return 1
    except OSError as exc:
        _error(stderr, "io", exc)
        return 1
    stdout.write(output)
    stdout.flush()
    return 0


def main():
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    if hasattr(sys.stdin, "reconfigure"):
        sys.stdin.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()
