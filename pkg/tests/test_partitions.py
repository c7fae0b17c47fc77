import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from azeemt import (
    CycleDetectedError,
    DepToken,
    DepTree,
    MalformedConlluError,
    MappingParseSource,
    Partition,
    TooShortError,
    enumerate_partitions,
    fallback_chunks,
    load_parse,
    sentence_key,
    tokenize,
)
from azeemt.partitions import DirectoryParseSource, tree_matches_tokens

from conftest import FIXTURES, random_dep_tree

COUVRE_FEU = "Le couvre-feu cette semaine n'est pas encore arrêté"


@pytest.fixture(scope="module")
def couvre_feu_tree():
    trees = load_parse((FIXTURES / "couvrefeu.conllu").read_text(encoding="utf-8"))
    assert len(trees) == 1
    return trees[0]


def test_load_parse_couvre_feu(couvre_feu_tree):
    tree = couvre_feu_tree
    assert tree.sentence_id == "couvre-feu"
    assert len(tree.tokens) == 10
    assert [t.form for t in tree.tokens][:2] == ["Le", "couvre-feu"]
    assert sum(1 for t in tree.tokens if t.head is None) == 1
    assert tree_matches_tokens(tree, tokenize(COUVRE_FEU))


def test_load_parse_empty():
    assert load_parse("") == []
    assert load_parse("\n\n# just a comment\n") == []


def test_load_parse_multiple_sentences():
    text = (
        "# sent_id = one\n1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n\n"
        "1\tb\t_\t_\t_\t_\t2\tdep\t_\t_\n2\tc\t_\t_\t_\t_\t0\troot\t_\t_\n"
    )
    trees = load_parse(text)
    assert [t.sentence_id for t in trees] == ["one", "s2"]
    assert len(trees[1].tokens) == 2


def test_load_parse_skips_multiword_and_empty_nodes():
    text = (
        "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tde\t_\t_\t_\t_\t2\tcase\t_\t_\n"
        "2\tle\t_\t_\t_\t_\t0\troot\t_\t_\n"
        "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
    )
    trees = load_parse(text)
    assert len(trees) == 1 and len(trees[0].tokens) == 2


@pytest.mark.parametrize(
    "text",
    [
        "1\ta\t_\t_\t_\t_\t5\tdep\t_\t_\n",  # head out of range
        "1\ta\t_\t_\t_\t_\t0\troot\n",  # wrong column count
        "1\ta\t_\t_\t_\t_\tx\tdep\t_\t_\n",  # non-integer head
        "2\ta\t_\t_\t_\t_\t0\troot\t_\t_\n",  # id out of sequence
        "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n",  # two roots
    ],
)
def test_load_parse_malformed(text):
    with pytest.raises(MalformedConlluError):
        load_parse(text)


def test_load_parse_cycle():
    text = (
        "1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n"
        "2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n"
        "3\tc\t_\t_\t_\t_\t0\troot\t_\t_\n"
    )
    with pytest.raises(CycleDetectedError):
        load_parse(text)


# ---------------------------------------------------------------------------
# dependency-guided partitions


def test_couvre_feu_reference_partitions(couvre_feu_tree):
    partitions = {p.chunks for p in enumerate_partitions(couvre_feu_tree, 100)}
    # the three chunkings reported for this sentence
    assert ((0, 2), (2, 10)) in partitions  # le couvre-feu | rest
    assert ((0, 7), (7, 9), (9, 10)) in partitions  # ... n'est | pas encore | arrêté
    assert ((0, 2), (2, 4), (4, 10)) in partitions  # le couvre-feu | cette semaine | rest
    # the flat five-way split is never proposed
    assert ((0, 2), (2, 4), (4, 6), (6, 7), (7, 10)) not in partitions
    assert all(len(p) <= 3 for p in partitions)


def test_enumerate_is_capped_and_coarsest_first(couvre_feu_tree):
    partitions = enumerate_partitions(couvre_feu_tree, 5)
    assert len(partitions) == 5
    sizes = [len(p.chunks) for p in partitions]
    assert sizes == sorted(sizes)
    # left-longest first within the same chunk count
    two = [p for p in partitions if len(p.chunks) == 2]
    first_lens = [c[0][1] - c[0][0] for c in (p.chunks for p in two)]
    assert first_lens == sorted(first_lens, reverse=True)


def test_two_token_flat_tree_single_bipartition():
    tree = DepTree((DepToken("a", 1, "dep"), DepToken("b", None, "root")), "t")
    partitions = enumerate_partitions(tree, 10)
    assert [p.chunks for p in partitions] == [((0, 1), (1, 2))]


def test_partition_invariants():
    with pytest.raises(ValueError):
        Partition(((0, 2),))  # one chunk is not a partition
    with pytest.raises(ValueError):
        Partition(((0, 2), (3, 4)))  # hole
    with pytest.raises(ValueError):
        Partition(((0, 0), (0, 2)))  # empty chunk


@given(st.integers(0, 10_000), st.integers(2, 9))
@settings(max_examples=200)
def test_enumerated_partitions_cover_and_respect_units(seed, n):
    rng = random.Random(seed)
    tree = random_dep_tree(rng, n)
    boundaries = _unit_boundaries(tree)
    for p in enumerate_partitions(tree, 50):
        assert p.chunks[0][0] == 0 and p.chunks[-1][1] == n
        for k in range(1, len(p.chunks)):
            assert p.chunks[k - 1][1] == p.chunks[k][0]
        for s, e in p.chunks:
            assert e - s < n  # strictly smaller than the query
        for s, e in p.chunks[:-1]:
            assert e in boundaries


def _unit_boundaries(tree):
    """Every point where a subtree span or a head token starts or ends."""
    n = len(tree.tokens)
    children = [[] for _ in range(n)]
    for i, t in enumerate(tree.tokens):
        if t.head is not None:
            children[t.head].append(i)
    lo, hi = list(range(n)), list(range(n))
    for i in sorted(range(n), key=lambda i: -_depth(tree, i)):
        h = tree.tokens[i].head
        if h is not None:
            lo[h] = min(lo[h], lo[i])
            hi[h] = max(hi[h], hi[i])
    points = set()
    for i in range(n):
        points.update((lo[i], hi[i] + 1, i, i + 1))
    return points


def _depth(tree, i):
    d = 0
    while tree.tokens[i].head is not None:
        i = tree.tokens[i].head
        d += 1
    return d


# ---------------------------------------------------------------------------
# parse-free fallback


def test_fallback_splits_at_colon_first():
    tt = tokenize("Alsace : de grands chefs ont vendu leur vaisselle")
    partitions = fallback_chunks(tt)
    first = partitions[0]
    # the first proposal cuts at the punctuation boundary, colon on the left
    assert first.chunks[0] == (0, 2)
    assert [t.surface for t in tt.tokens[0:2]] == ["Alsace", ":"]


def test_fallback_includes_adverb_split():
    tt = tokenize("la présidente parle nerveusement")
    chunk_sets = [p.chunks for p in fallback_chunks(tt)]
    assert ((0, 3), (3, 4)) in chunk_sets  # la présidente parle | nerveusement


def test_fallback_too_short():
    with pytest.raises(TooShortError):
        fallback_chunks(tokenize("Alsace"))
    with pytest.raises(TooShortError):
        fallback_chunks(tokenize("Alsace !"))


def test_fallback_balanced_bipartition_first_after_punct():
    tt = tokenize("un deux trois quatre")
    partitions = fallback_chunks(tt)
    assert partitions[0].chunks == ((0, 2), (2, 4))


@given(st.integers(0, 10_000))
@settings(max_examples=200)
def test_fallback_partitions_cover(seed):
    rng = random.Random(seed)
    words = [rng.choice(["le", "chat", "dort", ",", "ici", "très", "bien", "."]) for _ in range(rng.randint(1, 9))]
    tt = tokenize(" ".join(words))
    content = sum(1 for t in tt.tokens if not t.is_punct)
    if content < 2:
        with pytest.raises(TooShortError):
            fallback_chunks(tt)
        return
    n = len(tt.tokens)
    for p in fallback_chunks(tt):
        assert p.chunks[0][0] == 0 and p.chunks[-1][1] == n
        for s, e in p.chunks:
            assert any(not tt.tokens[i].is_punct for i in range(s, e))


# ---------------------------------------------------------------------------
# parse sources


def test_directory_parse_source(tmp_path):
    tt = tokenize(COUVRE_FEU)
    content = (FIXTURES / "couvrefeu.conllu").read_text(encoding="utf-8")
    (tmp_path / f"{sentence_key(tt)}.conllu").write_text(content, encoding="utf-8")
    source = DirectoryParseSource(tmp_path)
    tree = source.lookup(tt)
    assert tree is not None and len(tree.tokens) == 10
    assert source.lookup(tokenize("autre phrase")) is None


def test_mapping_parse_source(couvre_feu_tree):
    tt = tokenize(COUVRE_FEU)
    source = MappingParseSource({sentence_key(tt): couvre_feu_tree})
    assert source.lookup(tt) is couvre_feu_tree


def test_sentence_key_case_insensitive():
    assert sentence_key(tokenize("Le Couvre-Feu")) == sentence_key(tokenize("le couvre-feu"))
    assert sentence_key(tokenize("a b")) != sentence_key(tokenize("a c"))
