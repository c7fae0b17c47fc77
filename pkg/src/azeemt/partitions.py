"""Candidate partitions of a query into contiguous chunks.

When a dependency parse of the query is available, chunk boundaries are
restricted to syntactic unit boundaries: at every node of the tree, the
node's child subtrees plus the node's own token form an ordered sequence
of units, and cutting out any contiguous run of units splits the query
into at most three chunks (left rest / the run / right rest).  This keeps
chunks syntactically coherent and never explodes into a word-by-word
split.

Without a parse, a cruder fallback proposes splits at punctuation, then
bipartitions and tripartitions ordered by how balanced they are.

Parses come as CoNLL-U, one file per sentence, looked up by a short hash
of the sentence (see sentence_key)."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Protocol

from .tokens import TokenizedText

CONLLU_COLUMNS = 10


class MalformedConlluError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CycleDetectedError(ValueError):
    def __init__(self, sentence_id: str):
        self.sentence_id = sentence_id
        super().__init__(f"dependency cycle in sentence {sentence_id!r}")


class TooShortError(ValueError):
    pass


@dataclass(frozen=True)
class DepToken:
    form: str
    head: Optional[int]  # 0-based index of the head, None for the root
    deprel: str


@dataclass(frozen=True)
class DepTree:
    tokens: tuple[DepToken, ...]
    sentence_id: str = ""

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Partition:
    """Contiguous, ordered, covering chunks as half-open token ranges."""

    chunks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.chunks) < 2:
            raise ValueError("a partition needs at least 2 chunks")
        for k, (s, e) in enumerate(self.chunks):
            if e <= s:
                raise ValueError(f"empty chunk {k}")
            if k and s != self.chunks[k - 1][1]:
                raise ValueError("chunks must be adjacent and ordered")


# ---------------------------------------------------------------------------
# CoNLL-U


def load_parse(conllu_text: str) -> list[DepTree]:
    """Parse CoNLL-U text into one DepTree per sentence.

    Multiword-token ranges (``3-4``) and empty nodes (``5.1``) are
    skipped; ``# sent_id`` comments are honored.
    """
    trees: list[DepTree] = []
    rows: list[tuple[int, str, int, str]] = []  # (line, form, head, deprel)
    sent_id = ""
    sent_count = 0

    def flush(at_line: int):
        nonlocal rows, sent_id, sent_count
        if not rows:
            return
        n = len(rows)
        tokens = []
        roots = 0
        for line, form, head, deprel in rows:
            if head < 0 or head > n:
                raise MalformedConlluError(f"head {head} out of range 0..{n}", line)
            if head == 0:
                roots += 1
            tokens.append(DepToken(form, None if head == 0 else head - 1, deprel))
        if roots != 1:
            raise MalformedConlluError(f"expected exactly 1 root, found {roots}", rows[0][0])
        sid = sent_id or f"s{sent_count + 1}"
        for start in range(n):
            seen = set()
            i: Optional[int] = start
            while i is not None:
                if i in seen:
                    raise CycleDetectedError(sid)
                seen.add(i)
                i = tokens[i].head
        trees.append(DepTree(tuple(tokens), sid))
        rows = []
        sent_id = ""
        sent_count += 1

    for lineno, raw in enumerate(conllu_text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            if line[1:].split("=", 1)[0].strip() == "sent_id" and "=" in line:
                sent_id = line.split("=", 1)[1].strip()
            continue
        cols = line.split("\t")
        if len(cols) != CONLLU_COLUMNS:
            raise MalformedConlluError(
                f"expected {CONLLU_COLUMNS} tab-separated columns, got {len(cols)}", lineno
            )
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword token / empty node
        try:
            token_id = int(cols[0])
            head = int(cols[6])
        except ValueError:
            raise MalformedConlluError(f"non-integer ID or HEAD: {cols[0]!r}/{cols[6]!r}", lineno)
        if token_id != len(rows) + 1:
            raise MalformedConlluError(f"token id {token_id} out of sequence", lineno)
        if not cols[1]:
            raise MalformedConlluError("empty FORM", lineno)
        rows.append((lineno, cols[1], head, cols[7]))
    flush(len(conllu_text.split("\n")))
    return trees


# ---------------------------------------------------------------------------
# dependency-guided enumeration


def _subtree_spans(tree: DepTree) -> tuple[list[list[int]], list[tuple[int, int, int]]]:
    n = len(tree.tokens)
    children: list[list[int]] = [[] for _ in range(n)]
    for i, tok in enumerate(tree.tokens):
        if tok.head is not None:
            children[tok.head].append(i)
    lo = list(range(n))
    hi = list(range(n))
    size = [1] * n
    # process nodes bottom-up: repeatedly fold leaves into their head
    state = [len(children[i]) for i in range(n)]
    stack = [i for i in range(n) if state[i] == 0]
    while stack:
        i = stack.pop()
        h = tree.tokens[i].head
        if h is not None:
            lo[h] = min(lo[h], lo[i])
            hi[h] = max(hi[h], hi[i])
            size[h] += size[i]
            state[h] -= 1
            if state[h] == 0:
                stack.append(h)
    spans = [(lo[i], hi[i] + 1, size[i]) for i in range(n)]
    return children, spans


def enumerate_partitions(tree: DepTree, max_partitions: int) -> list[Partition]:
    """Partitions whose chunks respect dependency-unit boundaries.

    Ordered coarsest first (fewest chunks, then longest-left); at most
    max_partitions are returned.  A split into all single tokens is only
    kept when nothing else exists.
    """
    n = len(tree.tokens)
    if n < 2 or max_partitions < 1:
        return []
    children, spans = _subtree_spans(tree)

    cuts: set[tuple[int, int]] = set()
    for node in range(n):
        units = sorted(
            [(spans[c][0], spans[c][1]) for c in children[node]] + [(node, node + 1)]
        )
        # contiguity: each unit an interval, units tiling the node's span
        if any(spans[c][1] - spans[c][0] != spans[c][2] for c in children[node]):
            continue
        if any(units[k][1] != units[k + 1][0] for k in range(len(units) - 1)):
            continue
        for a in range(len(units)):
            for b in range(a, len(units)):
                s, e = units[a][0], units[b][1]
                if not (s == 0 and e == n):
                    cuts.add((s, e))

    seen = set()
    partitions = []
    for s, e in cuts:
        chunks = []
        if s > 0:
            chunks.append((0, s))
        chunks.append((s, e))
        if e < n:
            chunks.append((e, n))
        # a prefix cut and the complementary suffix cut give the same split
        if tuple(chunks) not in seen:
            seen.add(tuple(chunks))
            partitions.append(Partition(tuple(chunks)))

    partitions.sort(key=lambda p: (len(p.chunks), tuple(s - e for s, e in p.chunks)))
    kept = [p for p in partitions if len(p.chunks) < n]
    singletons = [p for p in partitions if len(p.chunks) == n]
    result = kept if kept else singletons
    return result[:max_partitions]


# ---------------------------------------------------------------------------
# parse-free fallback


def fallback_chunks(query: TokenizedText) -> list[Partition]:
    """Partitions proposed when no dependency parse is available.

    Punctuation boundaries come first (punctuation sticks to the chunk on
    its left), then every bipartition and tripartition of the content
    tokens, most balanced first.  Raises TooShortError below two content
    tokens.
    """
    n = len(query.tokens)
    content = [i for i, t in enumerate(query.tokens) if not t.is_punct]
    m = len(content)
    if m < 2:
        raise TooShortError("cannot partition fewer than 2 content tokens")

    # slot k = boundary before content token k; chunk ends swallow any
    # punctuation that follows the previous content token
    slots = {k: content[k] for k in range(1, m)}

    def build(cut_slots: list[int]) -> Partition:
        bounds = [0] + [slots[k] for k in cut_slots] + [n]
        return Partition(tuple((bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)))

    partitions: list[Partition] = []
    punct_slots = [
        k for k in range(1, m) if any(query.tokens[i].is_punct for i in range(content[k - 1] + 1, content[k]))
    ]
    if punct_slots:
        partitions.append(build(punct_slots))

    bi = sorted(range(1, m), key=lambda k: (abs(m - 2 * k), -k))
    partitions.extend(build([k]) for k in bi)

    tri = sorted(
        ((k, l) for k in range(1, m) for l in range(k + 1, m)),
        key=lambda kl: (
            max(kl[0], kl[1] - kl[0], m - kl[1]) - min(kl[0], kl[1] - kl[0], m - kl[1]),
            -kl[0],
            -kl[1],
        ),
    )
    partitions.extend(build(list(kl)) for kl in tri)

    out = []
    seen = set()
    for p in partitions:
        if p.chunks not in seen:
            seen.add(p.chunks)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# parse sources


def sentence_key(tt: TokenizedText) -> str:
    """Stable lookup key for a tokenized sentence.

    sha1 of the normalized (lowercased, NFC) token surfaces joined with
    single spaces, truncated to 16 hex digits.  Parse exporters name their
    CoNLL-U output files ``<key>.conllu`` to be found here.
    """
    joined = " ".join(t.normalized for t in tt.tokens)
    return hashlib.sha1(joined.encode("utf-8")).hexdigest()[:16]


class ParseSource(Protocol):
    def lookup(self, tt: TokenizedText) -> Optional[DepTree]: ...


@dataclass(frozen=True)
class DirectoryParseSource:
    """Finds per-sentence CoNLL-U files named by sentence_key in a directory."""

    directory: Path

    def lookup(self, tt: TokenizedText) -> Optional[DepTree]:
        path = Path(self.directory) / f"{sentence_key(tt)}.conllu"
        if not path.exists():
            return None
        trees = load_parse(path.read_text(encoding="utf-8"))
        return trees[0] if trees else None


@dataclass(frozen=True)
class MappingParseSource:
    """In-memory sentence_key -> DepTree mapping."""

    trees: dict

    def lookup(self, tt: TokenizedText) -> Optional[DepTree]:
        return self.trees.get(sentence_key(tt))


def tree_matches_tokens(tree: DepTree, tt: TokenizedText) -> bool:
    """True when the parse tokens line up with the tokenizer's output."""
    import unicodedata

    if len(tree.tokens) != len(tt.tokens):
        return False
    return all(
        unicodedata.normalize("NFC", d.form).lower() == t.normalized
        for d, t in zip(tree.tokens, tt.tokens)
    )
