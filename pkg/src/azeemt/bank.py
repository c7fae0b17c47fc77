"""Loading, validating and indexing the bank of text-to-AZee alignments.

Each alignment pairs a French text segment with one node of an AZee
discourse expression.  Two on-disk encodings are read:

* the record format, one record per line, five whitespace-separated
  fields: ``TEXT_ID START LEN AZ_FILE LINE`` where START/LEN are 0-based
  character offset and length into the text file and LINE is the 1-based
  line of the aligned node in the AZee file;
* a JSON array of ``{"text_id", "segment", "az_file", "az_line"}``
  objects where the segment text is stored verbatim (authoritative; the
  text file is then optional).

A loaded Bank is immutable: lookups may run concurrently from any number
of threads.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .azee import AzExpr, AzNode, AzeeSyntaxError, NoNodeAtLineError, node_at, node_at_line, parse_az
from .matching import MatchCandidate, score
from .tokens import TokenizedText, comparison_key, lenient_signature, tokenize

log = logging.getLogger(__name__)


class BankLoadError(Exception):
    pass


class MissingFileError(BankLoadError):
    def __init__(self, file_id: str):
        self.file_id = file_id
        super().__init__(f"missing corpus file: {file_id}")


class OffsetOutOfRangeError(BankLoadError):
    pass


class BankParseError(BankLoadError):
    def __init__(self, file_id: str, line: int | None, message: str):
        self.file_id = file_id
        self.line = line
        where = f"{file_id}:{line}" if line is not None else file_id
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Alignment:
    id: int
    text_file_id: str
    char_start: int
    char_len: int
    az_file_id: str
    az_line: int
    segment_text: str
    segment_tokens: TokenizedText
    az_subtree: AzNode


@dataclass(frozen=True)
class Violation:
    kind: str  # "uniqueness" or "maximisation"
    message: str
    alignment_ids: tuple[int, ...]


@dataclass
class Bank:
    """Loaded corpus; treat as read-only after construction."""

    alignments: tuple[Alignment, ...] = ()
    exact_index: dict = field(default_factory=dict)  # signature -> [ids]
    token_index: dict = field(default_factory=dict)  # comparison key -> [ids]
    expressions: dict = field(default_factory=dict)  # az file id -> AzExpr

    def __len__(self) -> int:
        return len(self.alignments)


def _uniqueness_key(tt: TokenizedText) -> tuple[str, ...]:
    # normalized content tokens, articles kept: "the same text segment"
    return tuple(t.normalized for t in tt.tokens if not t.is_punct)


def _index(alignments: list[Alignment], expressions: dict) -> Bank:
    exact_index: dict = {}
    token_index: dict = {}
    for a in alignments:
        exact_index.setdefault(lenient_signature(a.segment_tokens), []).append(a.id)
        for key in {comparison_key(t) for t in a.segment_tokens.tokens if not t.is_punct}:
            token_index.setdefault(key, []).append(a.id)
    for ids in token_index.values():
        ids.sort()
    return Bank(tuple(alignments), exact_index, token_index, expressions)


def bank_from_pairs(pairs) -> Bank:
    """Build an in-memory bank from (segment text, AZee text) pairs.

    Convenience for experiments and tests; file ids are synthesized.
    """
    alignments = []
    expressions = {}
    seen = set()
    for i, (segment, az_text) in enumerate(pairs):
        expr = parse_az(az_text)
        file_id = f"<pair-{i}>"
        expressions[file_id] = expr
        tt = tokenize(segment)
        key = (_uniqueness_key(tt), expr.root)
        if key in seen:
            continue
        seen.add(key)
        alignments.append(
            Alignment(
                id=len(alignments),
                text_file_id=file_id,
                char_start=0,
                char_len=len(segment),
                az_file_id=file_id,
                az_line=1,
                segment_text=segment,
                segment_tokens=tt,
                az_subtree=expr.root,
            )
        )
    return _index(alignments, expressions)


def _parse_record_lines(text: str, file_id: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 5:
            raise BankParseError(file_id, lineno, f"expected 5 fields, got {len(fields)}")
        text_id, start_s, len_s, az_file, az_line_s = fields
        try:
            start, length, az_line = int(start_s), int(len_s), int(az_line_s)
        except ValueError:
            raise BankParseError(file_id, lineno, "non-integer offset, length or line")
        yield text_id, start, length, az_file, az_line, None


def _parse_json_records(text: str, file_id: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BankParseError(file_id, exc.lineno, f"bad JSON: {exc.msg}")
    if not isinstance(data, list):
        raise BankParseError(file_id, None, "JSON bank must be an array of objects")
    for i, obj in enumerate(data):
        try:
            yield obj["text_id"], None, None, obj["az_file"], int(obj["az_line"]), obj["segment"]
        except (KeyError, TypeError) as exc:
            raise BankParseError(file_id, None, f"record {i}: {exc}")


def load_bank(corpus_dir: Path | str, alignment_file: Path | str) -> Bank:
    corpus_dir = Path(corpus_dir)
    alignment_file = Path(alignment_file)
    if not alignment_file.exists():
        raise MissingFileError(str(alignment_file))
    raw = alignment_file.read_text(encoding="utf-8")

    if raw.lstrip().startswith("["):
        records = _parse_json_records(raw, alignment_file.name)
    else:
        records = _parse_record_lines(raw, alignment_file.name)

    texts: dict[str, str | None] = {}
    expressions: dict[str, AzExpr] = {}
    alignments: list[Alignment] = []
    seen = set()

    def read_text_file(text_id: str, required: bool) -> str | None:
        if text_id not in texts:
            path = corpus_dir / text_id
            if not path.exists():
                if required:
                    raise MissingFileError(text_id)
                texts[text_id] = None
            else:
                texts[text_id] = path.read_text(encoding="utf-8")
        if texts[text_id] is None and required:
            raise MissingFileError(text_id)
        return texts[text_id]

    for record_no, (text_id, start, length, az_file, az_line, segment) in enumerate(records):
        record = f"record {record_no} ({text_id})"
        if segment is None:
            body = read_text_file(text_id, required=True)
            if start < 0 or length < 1 or start + length > len(body):
                raise OffsetOutOfRangeError(
                    f"{record}: offset {start} length {length} outside text of {len(body)} chars"
                )
            segment = body[start : start + length]
        else:
            # JSON record: the stored segment is authoritative, offsets are
            # recovered from the text file when it is present
            body = read_text_file(text_id, required=False)
            if body is None:
                start = 0
            else:
                start = body.find(segment)
                if start < 0:
                    raise BankParseError(
                        text_id, None, f"{record}: segment not found in text file"
                    )
            length = len(segment)

        if az_file not in expressions:
            az_path = corpus_dir / az_file
            if not az_path.exists():
                raise MissingFileError(az_file)
            try:
                expressions[az_file] = parse_az(az_path.read_text(encoding="utf-8"))
            except AzeeSyntaxError as exc:
                raise BankParseError(az_file, exc.line, str(exc))
        expr = expressions[az_file]
        try:
            subtree = node_at(expr, node_at_line(expr, az_line))
        except NoNodeAtLineError:
            raise NoNodeAtLineError(f"{record}: no node at line {az_line} of {az_file}")

        tt = tokenize(segment)
        key = (_uniqueness_key(tt), subtree)
        if key in seen:
            continue  # identical (segment, subtree) pairs collapse to one
        seen.add(key)
        alignments.append(
            Alignment(
                id=len(alignments),
                text_file_id=text_id,
                char_start=start,
                char_len=length,
                az_file_id=az_file,
                az_line=az_line,
                segment_text=segment,
                segment_tokens=tt,
                az_subtree=subtree,
            )
        )

    bank = _index(alignments, expressions)
    log.info("loaded %d alignments from %s", len(bank), alignment_file)
    return bank


# ---------------------------------------------------------------------------
# validation


def validate(bank: Bank) -> list[Violation]:
    """Check the corpus principles that are machine checkable.

    Uniqueness: one normalized segment must not map to structurally
    different subtrees.  Maximisation (warning only): an alignment should
    not target a node whose parent is aligned to the same segment.
    """
    violations: list[Violation] = []

    by_segment: dict[tuple, list[Alignment]] = {}
    for a in bank.alignments:
        by_segment.setdefault(_uniqueness_key(a.segment_tokens), []).append(a)
    for key, group in by_segment.items():
        distinct = []
        for a in group:
            if not any(a.az_subtree == d.az_subtree for d in distinct):
                distinct.append(a)
        if len(distinct) > 1:
            violations.append(
                Violation(
                    "uniqueness",
                    f"segment {' '.join(key)!r} aligned to {len(distinct)} different expressions",
                    tuple(a.id for a in group),
                )
            )

    by_file: dict[str, list[tuple[Alignment, tuple]]] = {}
    for a in bank.alignments:
        expr = bank.expressions.get(a.az_file_id)
        if expr is None:
            continue
        addr = node_at_line(expr, a.az_line)
        by_file.setdefault(a.az_file_id, []).append((a, addr.path))
    for entries in by_file.values():
        for a, path in entries:
            if not path:
                continue
            for b, parent_path in entries:
                # lenient comparison: an article or punctuation mark must not
                # hide that the parent covers the same text
                if parent_path == path[:-1] and lenient_signature(
                    a.segment_tokens
                ) == lenient_signature(b.segment_tokens):
                    violations.append(
                        Violation(
                            "maximisation",
                            f"alignment {a.id} covers the same segment as its parent node "
                            f"(alignment {b.id}); align the larger expression",
                            (a.id, b.id),
                        )
                    )

    violations.sort(key=lambda v: (v.kind != "uniqueness", v.alignment_ids))
    return violations


# ---------------------------------------------------------------------------
# lookup


def exact_match_ids(bank: Bank, query: TokenizedText) -> tuple[int, ...]:
    return tuple(bank.exact_index.get(lenient_signature(query), ()))


def exact_lookup(bank: Bank, query: TokenizedText) -> set[AzNode]:
    """Expressions aligned to segments that flexibly equal the query."""
    return {bank.alignments[i].az_subtree for i in exact_match_ids(bank, query)}


def antimatchable(bank: Bank, query: TokenizedText) -> list[MatchCandidate]:
    """Scored candidates for every alignment sharing at least one content
    token with the query, exact matches excluded, in alignment order."""
    exact = set(exact_match_ids(bank, query))
    ids: set[int] = set()
    for t in query.tokens:
        if not t.is_punct:
            ids.update(bank.token_index.get(comparison_key(t), ()))
    out = []
    for i in sorted(ids - exact):
        a = bank.alignments[i]
        s = score(a.segment_tokens, query)
        out.append(MatchCandidate(i, s.common, s.length, s.ratio))
    return out
