import random
from pathlib import Path

import pytest

from azeemt import Bank, bank_from_pairs, load_bank, parse_az

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ALSACE_SENTENCE = (
    "Alsace : de grands chefs ont vendu leur vaisselle pour les plus modestes "
    "comme ici dans la banlieue de Gerstheim."
)

# bank rows the similarity scores are calibrated against
SIMILARITY_SEGMENTS = [
    "le superéthanol n'est proposé que dans 1 000 stations-service en france , "
    "comme ici dans la banlieue de bordeaux .",
    "comme ici dans la banlieue de bordeaux",
    "la banlieue de bordeaux",
    "situé dans la province du guizhou , en chine , le mont fanjing attire de "
    "nombreux touristes venus découvrir la richesse de ce paysage montagneux .",
    "la villa noailles à hyères dans le var est un château cubiste construit dans "
    "les années folles , à la demande d'un couple de mécènes avant-gardiste .",
]

SIMILARITY_QUERY = "dans la banlieue de Gerstheim"


@pytest.fixture(scope="session")
def alsace_bank() -> Bank:
    return load_bank(FIXTURES / "alsace", FIXTURES / "alsace" / "alignments.txt")


@pytest.fixture(scope="session")
def ministre_bank() -> Bank:
    return load_bank(FIXTURES / "ministre", FIXTURES / "ministre" / "alignments.txt")


@pytest.fixture(scope="session")
def similarity_bank() -> Bank:
    return bank_from_pairs(
        (seg, f":seg{i + 1}\n") for i, seg in enumerate(SIMILARITY_SEGMENTS)
    )


@pytest.fixture(scope="session")
def alsace_exprs():
    """The aligned expressions of the end-to-end fixture corpus."""
    out = {}
    for key in ["alsace", "chefs", "vendu_vaisselle", "modestes", "banlieue_bordeaux", "gerstheim"]:
        out[key] = parse_az((FIXTURES / "alsace" / f"{key}.az").read_text(encoding="utf-8"))
    return out


def write_corpus(directory: Path, files: dict, records: list[str]) -> Path:
    """Materialize a corpus directory; returns the alignment file path."""
    directory.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        (directory / name).write_text(content, encoding="utf-8")
    alignment_file = directory / "alignments.txt"
    alignment_file.write_text("\n".join(records) + "\n", encoding="utf-8")
    return alignment_file


# ---------------------------------------------------------------------------
# random structure generators (shared by property tests)

_NAMES = ["info-about", "side-info", "président", "parler", "chef cuisinier", "zone", "là"]
_LABELS = ["topic", "info", "sig", "elt", "items", "cat"]
_SYMBOLS = [".G", ".E", ".R", ".S", ".T"]


def random_az_node(rng: random.Random, depth: int = 0):
    from azeemt import Atom, ListNode, Rule

    roll = rng.random()
    if depth >= 3 or roll < 0.3:
        if rng.random() < 0.3:
            return Atom(rng.choice(_SYMBOLS)[1:])
        return Rule(rng.choice(_NAMES))
    if roll < 0.45:
        return ListNode(
            tuple(random_az_node(rng, depth + 1) for _ in range(rng.randint(0, 3)))
        )
    n_args = rng.randint(0, 3)
    labels = [rng.choice(_LABELS) for _ in range(n_args)]
    return Rule(
        rng.choice(_NAMES),
        tuple((label, random_az_node(rng, depth + 1)) for label in labels),
    )


def random_dep_tree(rng: random.Random, n: int):
    from azeemt import DepToken, DepTree

    order = list(range(n))
    rng.shuffle(order)
    head = [None] * n
    for k in range(1, n):
        head[order[k]] = order[rng.randrange(k)]
    forms = [rng.choice(["le", "chat", "dort", "ici", "très", "bien"]) for _ in range(n)]
    return DepTree(
        tuple(DepToken(forms[i], head[i], "dep") for i in range(n)), "random"
    )
