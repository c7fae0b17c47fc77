"""The recursive translation engine.

A query is translated by, in order of preference:

1. exact match: bank segments that flexibly equal the whole query;
2. anti-match substitution: a near-matching segment is used as a
   template; the differing segment parts (anti-matches) are located in
   its aligned expression and replaced by translations of the differing
   query parts (corrections);
3. partition fallback: the query is split into chunks (dependency-guided
   when a parse is available), the chunks are translated separately and
   concatenated in source order under a ``sign-supported-spoken`` rule.

All three result sets contribute; candidates are deduplicated and
ordered best first (fewest fallbacks, shallowest derivation).  Recursion
always terminates: corrections and chunks are strictly shorter than
their query, every query is a contiguous token range of either the
original query or a bank segment (a finite set, memoized), and the
recursion depth is capped.  A candidate keeps its full derivation trace,
from which its expression can be replayed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Union

from .azee import AzExpr, NodeAddress, Rule, ListNode, find_nodes_matching, substitute
from .bank import Bank, antimatchable, exact_lookup, exact_match_ids
from .matching import MatchFailure, RankKey, compute_antimatch, rank
from .partitions import (
    Partition,
    ParseSource,
    TooShortError,
    enumerate_partitions,
    fallback_chunks,
    tree_matches_tokens,
)
from .tokens import TokenizedText, slice_tokens, tokenize

log = logging.getLogger(__name__)

SSS_RULE = "sign-supported-spoken"
COMBINATION_CAP = 32  # substitution/unit combinations kept per template


class EmptyQueryError(ValueError):
    pass


class NoTranslationError(LookupError):
    def __init__(self, query: str):
        self.query = query
        super().__init__(f"no translation found for {query!r}")


class TooFewUnitsError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatch:
    alignment_id: int


@dataclass(frozen=True)
class AntiMatch:
    alignment_id: int
    substitutions: tuple[tuple[NodeAddress, "TranslationCandidate"], ...]


@dataclass(frozen=True)
class Fallback:
    partition: Partition
    units: tuple["TranslationCandidate", ...]


DerivationStep = Union[ExactMatch, AntiMatch, Fallback]


@dataclass(frozen=True)
class TranslationCandidate:
    expr: AzExpr
    derivation: DerivationStep
    fallback_count: int
    depth: int


@dataclass(frozen=True)
class TranslateConfig:
    max_results: int = 8
    max_depth: int = 6
    max_partitions: int = 8
    rank_key: Optional[RankKey] = None  # candidate ranking override

    def __post_init__(self):
        if min(self.max_results, self.max_depth, self.max_partitions) < 1:
            raise ValueError("all bounds must be at least 1")


def make_sss(units: list[AzExpr]) -> AzExpr:
    """Concatenate unit expressions in source order under one rule."""
    if len(units) < 2:
        raise TooFewUnitsError(f"need at least 2 units, got {len(units)}")
    items = tuple(u.root for u in units)
    return AzExpr(Rule(SSS_RULE, (("units", ListNode(items)),)))


def _candidate(expr: AzExpr, derivation: DerivationStep) -> TranslationCandidate:
    if isinstance(derivation, ExactMatch):
        return TranslationCandidate(expr, derivation, 0, 0)
    if isinstance(derivation, AntiMatch):
        subs = [c for _, c in derivation.substitutions]
        fb = sum(c.fallback_count for c in subs)
        depth = 1 + max(c.depth for c in subs)
        return TranslationCandidate(expr, derivation, fb, depth)
    fb = 1 + sum(u.fallback_count for u in derivation.units)
    depth = 1 + max(u.depth for u in derivation.units)
    return TranslationCandidate(expr, derivation, fb, depth)


def replay_derivation(bank: Bank, step: DerivationStep) -> AzExpr:
    """Rebuild the expression a derivation describes (for auditing)."""
    if isinstance(step, ExactMatch):
        return AzExpr(bank.alignments[step.alignment_id].az_subtree)
    if isinstance(step, AntiMatch):
        expr = AzExpr(bank.alignments[step.alignment_id].az_subtree)
        for address, candidate in step.substitutions:
            expr = substitute(expr, address, replay_derivation(bank, candidate.derivation).root)
        return expr
    return make_sss([replay_derivation(bank, u.derivation) for u in step.units])


class _Session:
    """One translate() call: shares the bank, config and memo table."""

    def __init__(self, bank: Bank, parses: Optional[ParseSource], cfg: TranslateConfig):
        self.bank = bank
        self.parses = parses
        self.cfg = cfg
        self.memo: dict = {}

    def tr(self, tt: TokenizedText, depth: int, allow_fallback: bool) -> list[TranslationCandidate]:
        limited = depth >= self.cfg.max_depth
        # a result computed at the depth cap is exact-matches only and must
        # not be reused by a shallower call, hence the flag in the key
        key = (tuple(t.normalized for t in tt.tokens), allow_fallback, limited)
        hit = self.memo.get(key)
        if hit is not None:
            return hit

        collected: list[TranslationCandidate] = []
        for aid in exact_match_ids(self.bank, tt):
            collected.append(
                _candidate(AzExpr(self.bank.alignments[aid].az_subtree), ExactMatch(aid))
            )
        if not limited:
            self._antimatch_into(collected, tt, depth)
            if allow_fallback and len([t for t in tt.tokens if not t.is_punct]) >= 2:
                self._fallback_into(collected, tt, depth)

        result = _finalize(collected, self.cfg.max_results)
        self.memo[key] = result
        return result

    # -- strategy 2: anti-match substitution --------------------------------

    def _antimatch_into(self, collected, tt: TokenizedText, depth: int) -> None:
        candidates = rank(antimatchable(self.bank, tt), key=self.cfg.rank_key)
        for mc in candidates:
            if len(collected) >= self.cfg.max_results:
                return
            alignment = self.bank.alignments[mc.alignment_id]
            try:
                gaps = compute_antimatch(alignment.segment_tokens, tt)
            except MatchFailure:
                continue
            if not gaps:
                continue

            template = AzExpr(alignment.az_subtree)
            addresses: list[NodeAddress] = []
            options: list[list[TranslationCandidate]] = []
            for (anti_start, anti_end), (corr_start, corr_end) in gaps:
                if anti_end == anti_start or corr_end == corr_start:
                    break  # pure insertion/deletion: nothing to locate/translate
                anti_tt = slice_tokens(alignment.segment_tokens, anti_start, anti_end)
                corr_tt = slice_tokens(tt, corr_start, corr_end)
                # the anti-match translation only serves to locate a node in
                # the template, so the fallback strategy is pointless there
                anti_translations = self.tr(anti_tt, depth + 1, allow_fallback=False)
                if not anti_translations:
                    break
                found = find_nodes_matching(template, [c.expr for c in anti_translations])
                if len(found) != 1:
                    break  # the node must be unique to know what to replace
                corrections = self.tr(corr_tt, depth + 1, allow_fallback=True)
                if not corrections:
                    break
                addresses.append(found[0])
                options.append(corrections)
            else:
                if any(
                    a.is_prefix_of(b) or b.is_prefix_of(a)
                    for i, a in enumerate(addresses)
                    for b in addresses[i + 1 :]
                ):
                    continue  # nested replacement targets are ill-defined
                for combo in itertools.islice(itertools.product(*options), COMBINATION_CAP):
                    expr = template
                    for address, chosen in zip(addresses, combo):
                        expr = substitute(expr, address, chosen.expr.root)
                    collected.append(
                        _candidate(expr, AntiMatch(mc.alignment_id, tuple(zip(addresses, combo))))
                    )
                    if len(collected) >= self.cfg.max_results:
                        return

    # -- strategy 3: partition fallback --------------------------------------

    def _partitions_for(self, tt: TokenizedText) -> list[Partition]:
        if self.parses is not None:
            tree = self.parses.lookup(tt)
            if tree is not None:
                if tree_matches_tokens(tree, tt):
                    return enumerate_partitions(tree, self.cfg.max_partitions)
                log.warning(
                    "parse for %r does not line up with the tokenizer; ignoring it",
                    tt.text(),
                )
        try:
            return fallback_chunks(tt)[: self.cfg.max_partitions]
        except TooShortError:
            return []

    def _fallback_into(self, collected, tt: TokenizedText, depth: int) -> None:
        # every partition is tried: a later, finer partition may still give
        # the candidate with the fewest fallbacks overall
        for partition in self._partitions_for(tt):
            unit_options: list[list[TranslationCandidate]] = []
            for s, e in partition.chunks:
                chunk = slice_tokens(tt, s, e)
                if all(t.is_punct for t in chunk.tokens):
                    break  # punctuation-only chunk cannot be translated
                units = self.tr(chunk, depth + 1, allow_fallback=True)
                if not units:
                    break
                unit_options.append(units)
            else:
                for combo in itertools.islice(itertools.product(*unit_options), COMBINATION_CAP):
                    expr = make_sss([c.expr for c in combo])
                    collected.append(_candidate(expr, Fallback(partition, tuple(combo))))


def _finalize(collected: list[TranslationCandidate], cap: int) -> list[TranslationCandidate]:
    ordered = sorted(
        enumerate(collected), key=lambda ic: (ic[1].fallback_count, ic[1].depth, ic[0])
    )
    out = []
    seen = set()
    for _, cand in ordered:
        if cand.expr not in seen:
            seen.add(cand.expr)
            out.append(cand)
        if len(out) >= cap:
            break
    return out


# ---------------------------------------------------------------------------
# public entry points


def translate(
    bank: Bank,
    query: str,
    parses: Optional[ParseSource] = None,
    cfg: Optional[TranslateConfig] = None,
) -> list[TranslationCandidate]:
    """Translate a French query against the bank.

    Returns candidates best first.  Raises EmptyQueryError when the query
    has no content tokens and NoTranslationError when all strategies fail.
    """
    cfg = cfg or TranslateConfig()
    tt = tokenize(query)
    if not any(not t.is_punct for t in tt.tokens):
        raise EmptyQueryError(f"nothing to translate in {query!r}")
    results = _Session(bank, parses, cfg).tr(tt, depth=0, allow_fallback=True)
    if not results:
        raise NoTranslationError(query)
    return results


def translate_exact(bank: Bank, query_tokens: TokenizedText) -> set[AzExpr]:
    return {AzExpr(node) for node in exact_lookup(bank, query_tokens)}


def translate_by_antimatch(
    bank: Bank, query_tokens: TokenizedText, cfg: Optional[TranslateConfig] = None
) -> list[TranslationCandidate]:
    cfg = cfg or TranslateConfig()
    session = _Session(bank, None, cfg)
    collected: list[TranslationCandidate] = []
    session._antimatch_into(collected, query_tokens, depth=0)
    return _finalize(collected, cfg.max_results)


def translate_by_partition(
    bank: Bank,
    query_tokens: TokenizedText,
    parses: Optional[ParseSource] = None,
    cfg: Optional[TranslateConfig] = None,
) -> list[TranslationCandidate]:
    cfg = cfg or TranslateConfig()
    session = _Session(bank, parses, cfg)
    collected: list[TranslationCandidate] = []
    session._fallback_into(collected, query_tokens, depth=0)
    return _finalize(collected, cfg.max_results)
