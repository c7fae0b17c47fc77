"""Command line interface: translate queries, validate banks, corpus stats.

Exit codes: 0 success, 1 load/environment error, 2 no translation found,
3 validation violations.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .azee import print_az
from .bank import Bank, BankLoadError, load_bank, validate
from .partitions import DirectoryParseSource
from .translate import (
    AntiMatch,
    DerivationStep,
    EmptyQueryError,
    ExactMatch,
    NoTranslationError,
    TranslateConfig,
    TranslationCandidate,
    translate,
)

EXIT_OK = 0
EXIT_LOAD_ERROR = 1
EXIT_NO_TRANSLATION = 2
EXIT_VIOLATIONS = 3


def derivation_summary(step: DerivationStep) -> str:
    if isinstance(step, ExactMatch):
        return f"exact(a{step.alignment_id})"
    if isinstance(step, AntiMatch):
        subs = ", ".join(
            f"{address}<-{derivation_summary(cand.derivation)}"
            for address, cand in step.substitutions
        )
        return f"antimatch(a{step.alignment_id}; {subs})"
    units = ", ".join(derivation_summary(u.derivation) for u in step.units)
    return f"fallback[{len(step.units)}]({units})"


def derivation_json(step: DerivationStep) -> dict:
    if isinstance(step, ExactMatch):
        return {"type": "exact", "alignment": step.alignment_id}
    if isinstance(step, AntiMatch):
        return {
            "type": "antimatch",
            "alignment": step.alignment_id,
            "substitutions": [
                {"address": str(address), "candidate": candidate_json(cand)}
                for address, cand in step.substitutions
            ],
        }
    return {
        "type": "fallback",
        "chunks": [list(c) for c in step.partition.chunks],
        "units": [candidate_json(u) for u in step.units],
    }


def candidate_json(cand: TranslationCandidate) -> dict:
    return {
        "azee": print_az(cand.expr),
        "fallbacks": cand.fallback_count,
        "depth": cand.depth,
        "derivation": derivation_json(cand.derivation),
    }


def _load(args) -> Bank:
    alignments = args.alignments
    if alignments is None:
        for name in ("alignments.txt", "alignments.json"):
            candidate = Path(args.bank) / name
            if candidate.exists():
                alignments = candidate
                break
        else:
            raise BankLoadError(f"no alignments file found in {args.bank}")
    return load_bank(args.bank, alignments)


def _queries(args) -> list[str]:
    if getattr(args, "query", None) is not None:
        return [args.query]
    lines = Path(args.queries).read_text(encoding="utf-8").split("\n")
    return [line.strip() for line in lines if line.strip()]


def cmd_translate(args) -> int:
    try:
        bank = _load(args)
        queries = _queries(args)
    except (BankLoadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    parses = DirectoryParseSource(Path(args.parses)) if args.parses else None
    cfg = TranslateConfig(
        max_results=args.max_results,
        max_depth=args.max_depth,
        max_partitions=args.max_partitions,
    )
    any_missing = False
    for query in queries:
        try:
            candidates = translate(bank, query, parses, cfg)
        except (NoTranslationError, EmptyQueryError) as exc:
            any_missing = True
            if args.format == "json":
                print(json.dumps({"query": query, "error": str(exc)}, ensure_ascii=False))
            else:
                print(f"query: {query}\n  no translation")
            continue
        if args.format == "json":
            for cand in candidates:
                obj = {"query": query}
                obj.update(candidate_json(cand))
                print(json.dumps(obj, ensure_ascii=False))
        else:
            print(f"query: {query}")
            for k, cand in enumerate(candidates, start=1):
                print(
                    f"-- candidate {k}  fallbacks={cand.fallback_count} depth={cand.depth}"
                    f"  {derivation_summary(cand.derivation)}"
                )
                print(print_az(cand.expr), end="")
    return EXIT_NO_TRANSLATION if any_missing else EXIT_OK


def cmd_validate(args) -> int:
    try:
        bank = _load(args)
    except (BankLoadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    violations = validate(bank)
    for v in violations:
        tag = "warning" if v.kind == "maximisation" else "violation"
        print(f"{v.kind} {tag}: {v.message} (alignments {', '.join(map(str, v.alignment_ids))})")
    hard = [v for v in violations if v.kind == "uniqueness"]
    print(f"{len(bank)} alignments checked, {len(hard)} violations")
    return EXIT_VIOLATIONS if hard else EXIT_OK


def cmd_stats(args) -> int:
    try:
        bank = _load(args)
        queries = _queries(args)
    except (BankLoadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    parses = DirectoryParseSource(Path(args.parses)) if args.parses else None
    cfg = TranslateConfig(
        max_results=args.max_results,
        max_depth=args.max_depth,
        max_partitions=args.max_partitions,
    )
    counts = []
    fallbacks = []
    print("candidates\tmean_fallbacks\tquery")
    for query in queries:
        try:
            candidates = translate(bank, query, parses, cfg)
        except (NoTranslationError, EmptyQueryError):
            candidates = []
        counts.append(len(candidates))
        per_query = [c.fallback_count for c in candidates]
        fallbacks.extend(per_query)
        mean_fb = sum(per_query) / len(per_query) if per_query else 0.0
        print(f"{len(candidates)}\t{mean_fb:.2f}\t{query}")
    if counts:
        print(
            f"queries: {len(counts)}  candidates min/mean/max: "
            f"{min(counts)}/{sum(counts) / len(counts):.2f}/{max(counts)}  "
            f"mean fallbacks per candidate: "
            f"{(sum(fallbacks) / len(fallbacks)) if fallbacks else 0.0:.2f}"
        )
    else:
        print("queries: 0")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="azeemt",
        description="Example-based translation from French text to AZee expressions",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, queries=True):
        p.add_argument("--bank", required=True, help="corpus directory")
        p.add_argument("--alignments", default=None, help="alignment file (default: <bank>/alignments.txt)")
        p.add_argument("--parses", default=None, help="directory of CoNLL-U parses")
        p.add_argument("--max-results", type=int, default=8)
        p.add_argument("--max-depth", type=int, default=6)
        p.add_argument("--max-partitions", type=int, default=8)
        if queries:
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--query", help="one query to translate")
            group.add_argument("--queries", help="file with one query per line")

    p_translate = sub.add_parser("translate", help="translate queries against a bank")
    common(p_translate)
    p_translate.add_argument("--format", choices=("text", "json"), default="text")
    p_translate.set_defaults(func=cmd_translate)

    p_validate = sub.add_parser("validate", help="check corpus principles")
    common(p_validate, queries=False)
    p_validate.set_defaults(func=cmd_validate)

    p_stats = sub.add_parser("stats", help="per-query candidate statistics")
    common(p_stats, queries=False)
    p_stats.add_argument("--queries", required=True, help="file with one query per line")
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
