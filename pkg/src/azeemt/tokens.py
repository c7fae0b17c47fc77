"""Word-level tokenization and the lenient token comparison used by matching.

Tokens are produced OpenNMT-style: whitespace splits first, then leading
and trailing punctuation is detached, apostrophes become tokens of their
own ("n'est" -> "n", "'", "est") and hyphenated compounds stay whole
("couvre-feu", "stations-service").  This exact behaviour is what makes
segment lengths come out right against the reference corpus counts
(see tests).

Comparison is deliberately loose for punctuation (any punctuation token
matches any other) and for articles of the same grammatical role
(le/la/l'/les, un/une, du).
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass

_CHUNK = re.compile(r"\S+")

# closed list; "de la" cannot show up as a single token so only "du"
# represents the partitive role here
_ARTICLE_GROUPS = {
    "le": "def",
    "la": "def",
    "les": "def",
    "l": "def",
    "l'": "def",
    "un": "indef",
    "une": "indef",
    "du": "part",
}

_APOSTROPHES = "'’"


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    is_punct: bool
    is_article: bool


@dataclass(frozen=True)
class TokenizedText:
    source: str
    tokens: tuple[Token, ...]
    char_spans: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def text(self) -> str:
        """Substring of the source covered by the tokens."""
        if not self.char_spans:
            return ""
        return self.source[self.char_spans[0][0] : self.char_spans[-1][1]]


def _is_word_char(c: str) -> bool:
    return c.isalnum()


def _make_token(surface: str) -> Token:
    normalized = unicodedata.normalize("NFC", surface).lower()
    is_punct = not any(_is_word_char(c) for c in surface)
    is_article = not is_punct and normalized in _ARTICLE_GROUPS
    return Token(surface, normalized, is_punct, is_article)


def _split_chunk(chunk: str) -> list[tuple[int, int]]:
    parts = []
    i, n = 0, len(chunk)
    while i < n:
        if _is_word_char(chunk[i]):
            j = i + 1
            while j < n:
                c = chunk[j]
                if _is_word_char(c):
                    j += 1
                elif c in "-_" and j + 1 < n and _is_word_char(chunk[j + 1]):
                    j += 1  # hyphen/underscore joins a compound
                elif (
                    c in ".,"
                    and chunk[j - 1].isdigit()
                    and j + 1 < n
                    and chunk[j + 1].isdigit()
                ):
                    j += 1  # decimal/thousands separator inside a number
                else:
                    break
            parts.append((i, j))
            i = j
        else:
            # every other character, apostrophes included, stands alone
            parts.append((i, i + 1))
            i += 1
    return parts


def tokenize(text: str) -> TokenizedText:
    tokens = []
    spans = []
    for m in _CHUNK.finditer(text):
        for s, e in _split_chunk(m.group()):
            start = m.start() + s
            end = m.start() + e
            tokens.append(_make_token(text[start:end]))
            spans.append((start, end))
    return TokenizedText(text, tuple(tokens), tuple(spans))


def slice_tokens(tt: TokenizedText, start: int, end: int) -> TokenizedText:
    return TokenizedText(tt.source, tt.tokens[start:end], tt.char_spans[start:end])


def article_group(token: Token) -> str | None:
    return _ARTICLE_GROUPS.get(token.normalized) if token.is_article else None


def tokens_flexibly_equal(a: Token, b: Token) -> bool:
    if a.normalized == b.normalized:
        return True
    if a.is_punct or b.is_punct:
        return a.is_punct and b.is_punct
    ga, gb = article_group(a), article_group(b)
    return ga is not None and ga == gb


def comparison_key(token: Token) -> str:
    """Equivalence class of a token under tokens_flexibly_equal."""
    if token.is_punct:
        return "\x00punct"
    group = article_group(token)
    if group is not None:
        return f"\x00art:{group}"
    return token.normalized


def content_tokens(tt: TokenizedText) -> list[Token]:
    return [t for t in tt.tokens if not t.is_punct]


def common_token_count(q: TokenizedText, t: TokenizedText) -> int:
    """Multiset intersection size over content tokens, flexible equality."""
    cq = Counter(comparison_key(tok) for tok in content_tokens(q))
    ct = Counter(comparison_key(tok) for tok in content_tokens(t))
    return sum((cq & ct).values())


def lenient_signature(tt: TokenizedText) -> tuple[str, ...]:
    """Key under which two segments count as the same for exact matching.

    Punctuation and articles are dropped entirely: matching is allowed to
    be flexible about both, including an article present on one side only
    ("la présidente" matches the query "présidente").
    """
    return tuple(
        t.normalized for t in tt.tokens if not t.is_punct and not t.is_article
    )
