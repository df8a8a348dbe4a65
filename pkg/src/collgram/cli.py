"""Command-line interface.

    collgram index build CORPUS... -o INDEX
    collgram index info INDEX
    collgram profile --index INDEX TEXT...      (or --manifest FILE)
    collgram compare PROFILES...                (NAME=PATH or CSV with a group column)

Exit codes: 0 success, 1 usage error, 2 data error, 3 only degenerate
statistics.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings
from pathlib import Path
from typing import Optional

from ._validation import to_tokens
from .association import Thresholds
from .index import (
    IndexBuildError,
    IndexLoadError,
    count_tokens,
    index_from_counts,
    load_index,
    merge_counts,
    save_index,
)
from .profiler import ConfigurationError, ExtractionPolicy, UntaggedInputWarning, profile_collection
from .report import (
    comparisons_to_csv,
    means_to_csv,
    plot_data_csv,
    profiles_to_csv,
    profiles_to_json,
    profiles_to_markdown,
    read_profiles_csv,
    report_to_json,
    report_to_markdown,
)
from .stats import MEASURES, compare_all
from .tokens import TaggedParseError

log = logging.getLogger("collgram")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _nonneg_int(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _pos_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "markdown"), default=None)
    common.add_argument("--decimals", type=_nonneg_int, default=2)
    common.add_argument("-v", "--verbose", action="store_true")

    tokenizing = argparse.ArgumentParser(add_help=False)
    tokenizing.add_argument("--tagged", choices=("plain", "vertical", "underscore"), default="plain",
                            help="input layout (default: plain text)")
    tokenizing.add_argument("--fold-case", type=_on_off, default=None, metavar="{on,off}",
                            help="lowercase words (default: on, or the index's setting)")

    parser = _Parser(prog="collgram", description="Score text bigrams against a reference corpus (MI, t-score) and compare groups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    index = sub.add_parser("index", help="build or inspect a reference index")
    isub = index.add_subparsers(dest="index_command", parser_class=_Parser)
    isub.required = True
    build = isub.add_parser("build", parents=[common, tokenizing], help="count a reference corpus")
    build.add_argument("corpus", nargs="*", type=Path)
    build.add_argument("-o", "--output", type=Path, default=None,
                       help="index file (default: $COLLGRAM_INDEX)")
    build.add_argument("--min-count", type=_pos_int, default=1)
    build.add_argument("--source", default=None, help="free-text description stored in the index")
    info = isub.add_parser("info", parents=[common], help="summarise an index file")
    info.add_argument("index", type=Path, nargs="?")

    profile = sub.add_parser("profile", parents=[common, tokenizing], help="profile texts against an index")
    profile.add_argument("texts", nargs="*", type=Path)
    profile.add_argument("--index", type=Path, default=None, help="default: $COLLGRAM_INDEX")
    profile.add_argument("--manifest", type=Path, help="TSV of text_id, group, path")
    profile.add_argument("--mi-threshold", type=float, default=5.0)
    profile.add_argument("--t-threshold", type=float, default=6.0)
    profile.add_argument("--denominator", choices=("all", "attested"), default="all")
    profile.add_argument("--n-basis", choices=("tokens", "bigrams"), default="tokens")
    profile.add_argument("-o", "--output", type=Path)

    compare = sub.add_parser("compare", parents=[common], help="paired comparison of profile groups")
    compare.add_argument("profiles", nargs="+",
                         help="NAME=PATH per group, or profile CSVs carrying a group column")
    compare.add_argument("--groups", help="comma-separated group order (rows/columns of the table)")
    compare.add_argument("--out-dir", type=Path, help="also write every table to this directory")
    compare.add_argument("--plot-data", type=Path, help="write group means and standard errors as CSV")
    return parser


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _index_path(arg: Optional[Path]) -> Path:
    if arg is not None:
        return arg
    env = os.environ.get("COLLGRAM_INDEX")
    if not env:
        raise UsageError("no index given (use --index or set COLLGRAM_INDEX)")
    return Path(env)


def cmd_index_build(args) -> int:
    if not args.corpus:
        raise UsageError("index build needs at least one corpus file")
    output = _index_path(args.output)
    fold = True if args.fold_case is None else args.fold_case
    # each file is counted on its own; file boundaries act as sentence breaks
    parts = (count_tokens(to_tokens(_read_text(p), args.tagged, fold), fold) for p in args.corpus)
    source = args.source if args.source is not None else " ".join(p.name for p in args.corpus)
    index = index_from_counts(merge_counts(parts), fold, args.min_count, source)
    save_index(index, output)
    print(f"tokens={index.total_tokens} bigrams={index.total_bigram_tokens} "
          f"vocabulary={index.vocabulary_size} distinct_bigrams={len(index)} -> {output}")
    return EXIT_OK


def cmd_index_info(args) -> int:
    index = load_index(_index_path(args.index))
    info = {
        "version": index.version,
        "tokens": index.total_tokens,
        "bigrams": index.total_bigram_tokens,
        "vocabulary": index.vocabulary_size,
        "distinct_bigrams": len(index),
        "fold_case": index.fold_case,
        "min_count": index.min_count,
        "built": index.built,
        "source": index.source,
    }
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _read_manifest(path: Path) -> list[tuple[str, str, Path]]:
    entries = []
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(f"{path}:{lineno}: expected text_id<TAB>group<TAB>path")
        text_id, group, rel = fields
        entries.append((text_id, group, (path.parent / rel) if not Path(rel).is_absolute() else Path(rel)))
    if not entries:
        raise DataError(f"{path}: manifest lists no texts")
    return entries


def cmd_profile(args) -> int:
    if args.manifest is None and not args.texts:
        raise UsageError("profile needs text files or --manifest")
    if args.manifest is not None and args.texts:
        raise UsageError("give text files or --manifest, not both")
    index = load_index(_index_path(args.index))
    fold = index.fold_case if args.fold_case is None else args.fold_case
    thresholds = Thresholds(args.mi_threshold, args.t_threshold)
    policy = ExtractionPolicy(fold_case=fold)

    if args.manifest is not None:
        entries = _read_manifest(args.manifest)
    else:
        entries = [(p.stem, None, p) for p in args.texts]

    # ids must be unique within a group; the same text recurs across groups
    by_group: dict = {}
    for text_id, group, path in entries:
        by_group.setdefault(group, []).append((text_id, path))

    results = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UntaggedInputWarning)
        for group, items in by_group.items():
            texts = [(tid, to_tokens(_read_text(p), args.tagged, fold)) for tid, p in items]
            try:
                profiles = profile_collection(texts, index, thresholds, policy, args.denominator, args.n_basis)
            except ValueError as exc:
                if isinstance(exc, ConfigurationError):
                    raise
                raise DataError(f"{exc}" + (f" in group {group!r}" if group else "")) from None
            results.update({(group, p.text_id): p for p in profiles})
    if caught:
        log.warning("%s", caught[0].message)

    ordered = [results[g, tid] for tid, g, _ in entries]
    groups = [g for _, g, _ in entries] if args.manifest is not None else None
    for (tid, g, _), p in zip(entries, ordered):
        if p.empty:
            log.warning("text %s%s has no bigrams to divide by; percentages left empty",
                        tid, f" ({g})" if g else "")

    fmt = args.format or "csv"
    if fmt == "csv":
        text = profiles_to_csv(ordered, args.decimals, groups)
    elif fmt == "json":
        text = profiles_to_json(ordered, groups)
    else:
        text = profiles_to_markdown(ordered, args.decimals, groups)
    _emit(text, args.output)
    return EXIT_OK


def _load_groups(specs: list[str]) -> dict:
    groups: dict = {}
    for spec in specs:
        name, sep, path = spec.partition("=")
        if sep and name and not Path(spec).exists():
            rows = read_profiles_csv(_read_text(Path(path)))
            groups.setdefault(name, []).extend(p for p, _ in rows)
            continue
        path = Path(spec)
        rows = read_profiles_csv(_read_text(path))
        for profile, group in rows:
            groups.setdefault(group or path.stem, []).append(profile)
    for name, profiles in groups.items():
        ids = [p.text_id for p in profiles]
        dup = sorted({i for i in ids if ids.count(i) > 1})
        if dup:
            raise DataError(f"group {name!r} repeats text ids: {', '.join(dup)}")
    return groups


def cmd_compare(args) -> int:
    try:
        groups = _load_groups(args.profiles)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    order = [g.strip() for g in args.groups.split(",")] if args.groups else list(groups)
    unknown = [g for g in order if g not in groups]
    if unknown:
        raise UsageError(f"--groups names unknown groups: {', '.join(unknown)}")
    if len(order) < 2:
        raise UsageError("compare needs at least two groups")

    id_sets = {g: {p.text_id for p in groups[g]} for g in order}
    everything = set().union(*id_sets.values())
    orphans = []
    for g in order:
        orphans += [f"{g}:{tid}" for tid in sorted(everything - id_sets[g])]
    if orphans:
        raise DataError("text ids are not aligned across groups; missing: " + ", ".join(orphans))

    excluded = sorted(f"{g}:{p.text_id}" for g in order for p in groups[g] if p.empty)
    for item in excluded:
        log.warning("excluded from statistics (no bigrams): %s", item)
    tables = [compare_all({g: groups[g] for g in order}, m, order) for m in MEASURES]

    fmt = args.format or "markdown"
    if fmt == "markdown":
        out = report_to_markdown(tables, args.decimals, excluded)
    elif fmt == "json":
        out = report_to_json(tables, excluded)
    else:
        out = means_to_csv([m for t in tables for m in t.means], args.decimals) + "\n" \
            + comparisons_to_csv(tables, args.decimals)
    sys.stdout.write(out)

    means = [m for t in tables for m in t.means]
    if args.plot_data is not None:
        args.plot_data.write_text(plot_data_csv(means), encoding="utf-8")
    if args.out_dir is not None:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        (args.out_dir / "group_means.csv").write_text(means_to_csv(means, args.decimals), encoding="utf-8")
        (args.out_dir / "comparisons.csv").write_text(comparisons_to_csv(tables, args.decimals), encoding="utf-8")
        (args.out_dir / "comparisons.json").write_text(report_to_json(tables, excluded), encoding="utf-8")
        (args.out_dir / "plot_data.csv").write_text(plot_data_csv(means), encoding="utf-8")
        (args.out_dir / "report.md").write_text(report_to_markdown(tables, args.decimals, excluded), encoding="utf-8")

    if all(t.all_degenerate for t in tables):
        log.warning("every comparison is degenerate")
        return EXIT_DEGENERATE
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler_ = logging.StreamHandler(sys.stderr)
    handler_.setFormatter(logging.Formatter("collgram: %(levelname)s: %(message)s"))
    log.addHandler(handler_)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    handler = {
        ("index", "build"): cmd_index_build,
        ("index", "info"): cmd_index_info,
        ("profile", None): cmd_profile,
        ("compare", None): cmd_compare,
    }[args.command, getattr(args, "index_command", None)]
    try:
        return handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"collgram: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, IndexLoadError, IndexBuildError, ConfigurationError, TaggedParseError) as exc:
        print(f"collgram: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    finally:
        log.removeHandler(handler_)


if __name__ == "__main__":
    sys.exit(main())
