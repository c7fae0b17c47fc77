"""Scoring and anti-match span computation for near-matching segments.

A bank segment that shares tokens with the query is scored with
(common tokens, segment length, common/length).  Candidates are ranked
by most common tokens first, then best ratio, then shortest segment.
The ranking key is a configuration point so other metric sets can be
plugged in (e.g. a part-of-speech filter on the spans).

The differing parts are recovered with a longest-common-subsequence
over tokens under flexible equality.  Each maximal run of unmatched
tokens yields one (anti-match, correction) pair: the anti-match is the
leftover segment side, the correction the leftover query side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from .tokens import TokenizedText, common_token_count, comparison_key


class MatchFailure(Exception):
    """A candidate cannot be used for anti-matching."""


class TooManyGaps(MatchFailure):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"{count} anti-match spans (at most 2 are supported)")


class DegenerateCorrection(MatchFailure):
    def __init__(self):
        super().__init__("correction is not shorter than the query")


class Score(NamedTuple):
    common: int
    length: int
    ratio: float


class GapPair(NamedTuple):
    anti: tuple[int, int]  # token range in the segment, half-open
    correction: tuple[int, int]  # token range in the query, half-open


@dataclass(frozen=True)
class MatchCandidate:
    alignment_id: int
    common: int
    length: int
    ratio: float
    anti_spans: Optional[tuple[GapPair, ...]] = None


def score(segment: TokenizedText, query: TokenizedText) -> Score:
    common = common_token_count(segment, query)
    length = len(segment.tokens)  # punctuation counts toward length
    return Score(common, length, common / length if length else 0.0)


RankKey = Callable[[MatchCandidate], tuple]


def default_rank_key(c: MatchCandidate) -> tuple:
    # ratio breaks ties before length; alignment id makes the order total
    return (-c.common, -c.ratio, c.length, c.alignment_id)


def rank(
    candidates: Sequence[MatchCandidate], key: RankKey | None = None
) -> list[MatchCandidate]:
    return sorted(candidates, key=key or default_rank_key)


# ---------------------------------------------------------------------------
# LCS over token equivalence classes


def _lcs_suffix_table(a: Sequence[str], b: Sequence[str]) -> list[list[int]]:
    n, m = len(a), len(b)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = table[i], table[i + 1]
        for j in range(m - 1, -1, -1):
            if a[i] == b[j]:
                row[j] = below[j + 1] + 1
            else:
                row[j] = max(below[j], row[j + 1])
    return table


def lcs_pairs(a: Sequence[str], b: Sequence[str]) -> list[tuple[int, int]]:
    """The lexicographically first maximum matching between a and b.

    Each round takes the smallest (i, j) whose match still completes to a
    maximum-length common subsequence, so the result is the lex-least of
    all maximum matchings.
    """
    table = _lcs_suffix_table(a, b)
    pairs = []
    i = j = 0
    remaining = table[0][0]
    while remaining:
        found = None
        for i2 in range(i, len(a)):
            for j2 in range(j, len(b)):
                if a[i2] == b[j2] and table[i2 + 1][j2 + 1] + 1 == remaining:
                    found = (i2, j2)
                    break
            if found:
                break
        pairs.append(found)
        i, j = found[0] + 1, found[1] + 1
        remaining -= 1
    return pairs


def compute_antimatch(
    segment: TokenizedText, query: TokenizedText
) -> tuple[GapPair, ...]:
    """Gap decomposition of segment vs. query.

    Returns one (anti, correction) span pair per maximal unmatched run;
    an exact match yields no pairs.  Raises TooManyGaps for more than two
    pairs and DegenerateCorrection when a correction would be at least as
    long as the whole query, which would break recursion progress.
    """
    a = [comparison_key(t) for t in segment.tokens]
    b = [comparison_key(t) for t in query.tokens]
    pairs = lcs_pairs(a, b)

    gaps: list[GapPair] = []
    prev_i = prev_j = 0
    for i, j in pairs + [(len(a), len(b))]:
        if i > prev_i or j > prev_j:
            gaps.append(GapPair((prev_i, i), (prev_j, j)))
        prev_i, prev_j = i + 1, j + 1

    if len(gaps) > 2:
        raise TooManyGaps(len(gaps))
    for gap in gaps:
        if gap.correction[1] - gap.correction[0] >= len(query.tokens):
            raise DegenerateCorrection()
    return tuple(gaps)
