"""AZee discourse expressions and their textual format.

An AZee expression is a tree of production-rule applications, lists and
atoms.  The textual format is indentation based (2-space unit, one node
per line):

    :info-about             rule application ":NAME"
      'topic                argument label "'LABEL", one level deeper
        :président          the argument value, one level below its label
      'info
        :nerveusement
          'sig
            :parler

``list`` introduces a list node whose items follow one level deeper, and
lines starting with ``.`` are atoms (e.g. fingerspelled letters).  Rule
names may contain spaces and accented characters.

All trees are immutable after construction and safe to share between
threads.  Structural equality (``==``) ignores the recorded source lines.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

INDENT = "  "


class AzeeSyntaxError(ValueError):
    """Raised when AZee text cannot be parsed. Carries the 1-based line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(AzeeSyntaxError):
    pass


class BadIndentationError(AzeeSyntaxError):
    pass


class OrphanArgumentLabelError(AzeeSyntaxError):
    """A 'label line with no enclosing rule application."""


class DanglingLabelError(AzeeSyntaxError):
    """A 'label line with no value subtree under it."""


class NoNodeAtLineError(LookupError):
    pass


class BadAddressError(LookupError):
    pass


def _nfc(s: str) -> str:
    # names are compared by codepoint after NFC so accented input from
    # different sources (composed vs decomposed) compares stably
    return unicodedata.normalize("NFC", s)


@dataclass(frozen=True)
class Atom:
    symbol: str
    source_line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "symbol", _nfc(self.symbol))
        if not self.symbol or any(c.isspace() for c in self.symbol):
            raise ValueError(f"atom symbol must be a single token: {self.symbol!r}")


@dataclass(frozen=True)
class ListNode:
    items: tuple["AzNode", ...] = ()
    source_line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Rule:
    name: str
    args: tuple[tuple[str, "AzNode"], ...] = ()
    source_line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "name", _nfc(self.name))
        object.__setattr__(
            self, "args", tuple((_nfc(label), value) for label, value in self.args)
        )
        if not self.name or self.name != self.name.strip() or "\n" in self.name:
            raise ValueError(f"bad rule name: {self.name!r}")
        for label, _ in self.args:
            if not label or label != label.strip() or "\n" in label:
                raise ValueError(f"bad argument label: {label!r}")


AzNode = Union[Rule, ListNode, Atom]


@dataclass(frozen=True)
class AzExpr:
    root: AzNode


@dataclass(frozen=True)
class NodeAddress:
    """Path from the root: a string step selects a rule argument by label,
    an integer step selects a rule argument or list item by position.

    Labels are used when unique among the node's arguments, positions
    otherwise, so an address produced by a tree walk always resolves back
    to the node it came from.
    """

    path: tuple[Union[str, int], ...] = ()

    def __str__(self) -> str:
        if not self.path:
            return "/"
        return "/" + "/".join(str(step) for step in self.path)

    def is_prefix_of(self, other: "NodeAddress") -> bool:
        return self.path == other.path[: len(self.path)]


# ---------------------------------------------------------------------------
# parsing


def parse_az(text: str) -> AzExpr:
    """Parse AZee text into an expression tree.

    Each node records the 1-based line it starts on.  Blank lines are
    skipped; indentation must be spaces in whole multiples of two.
    """
    if not text.strip():
        raise EmptyInputError("empty input")

    entries: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip()
        if not line:
            continue
        indent = len(line) - len(line.lstrip())
        lead = line[:indent]
        if "\t" in lead:
            raise BadIndentationError("tab in indentation", lineno)
        if indent % len(INDENT) != 0:
            raise BadIndentationError(f"indentation of {indent} is not a multiple of 2", lineno)
        entries.append((lineno, indent // len(INDENT), line[indent:]))

    if entries[0][1] != 0:
        raise BadIndentationError("first node must not be indented", entries[0][0])

    pos = 0

    def parse_node(depth: int) -> AzNode:
        nonlocal pos
        lineno, d, content = entries[pos]
        assert d == depth
        if content.startswith(":"):
            name = _nfc(content[1:]).strip()
            if not name:
                raise AzeeSyntaxError("empty rule name", lineno)
            pos += 1
            args = []
            while pos < len(entries) and entries[pos][1] == depth + 1:
                l_line, _, l_content = entries[pos]
                if not l_content.startswith("'"):
                    raise BadIndentationError(
                        "expected an argument label under the rule", l_line
                    )
                label = _nfc(l_content[1:]).strip()
                if not label:
                    raise AzeeSyntaxError("empty argument label", l_line)
                pos += 1
                if pos >= len(entries) or entries[pos][1] != depth + 2:
                    raise DanglingLabelError(f"label '{label} has no value", l_line)
                args.append((label, parse_node(depth + 2)))
            return Rule(name, tuple(args), source_line=lineno)
        if content == "list":
            pos += 1
            items = []
            while pos < len(entries) and entries[pos][1] == depth + 1:
                if entries[pos][2].startswith("'"):
                    raise OrphanArgumentLabelError(
                        "argument label inside a list", entries[pos][0]
                    )
                items.append(parse_node(depth + 1))
            return ListNode(tuple(items), source_line=lineno)
        if content.startswith("."):
            symbol = content[1:]
            if not symbol or any(c.isspace() for c in symbol):
                raise AzeeSyntaxError(f"bad atom symbol {symbol!r}", lineno)
            pos += 1
            return Atom(symbol, source_line=lineno)
        if content.startswith("'"):
            raise OrphanArgumentLabelError("argument label with no enclosing rule", lineno)
        raise AzeeSyntaxError(f"unrecognized line {content!r}", lineno)

    root = parse_node(0)
    if pos < len(entries):
        lineno, depth, _ = entries[pos]
        if depth == 0:
            raise AzeeSyntaxError("more than one top-level node", lineno)
        raise BadIndentationError("line does not attach to any node", lineno)
    return AzExpr(root)


def print_az(expr: AzExpr) -> str:
    """Render the canonical text form; parse_az(print_az(e)) equals e."""
    out: list[str] = []

    def emit(node: AzNode, depth: int) -> None:
        pad = INDENT * depth
        if isinstance(node, Rule):
            out.append(f"{pad}:{node.name}")
            for label, value in node.args:
                out.append(f"{INDENT * (depth + 1)}'{label}")
                emit(value, depth + 2)
        elif isinstance(node, ListNode):
            out.append(f"{pad}list")
            for item in node.items:
                emit(item, depth + 1)
        else:
            out.append(f"{pad}.{node.symbol}")

    emit(expr.root, 0)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# addressing and rewriting


def walk(expr: AzExpr) -> Iterator[tuple[NodeAddress, AzNode]]:
    """Yield (address, node) pairs in pre-order."""

    def visit(node: AzNode, path: tuple):
        yield NodeAddress(path), node
        if isinstance(node, Rule):
            labels = [label for label, _ in node.args]
            for i, (label, value) in enumerate(node.args):
                step: Union[str, int] = label if labels.count(label) == 1 else i
                yield from visit(value, path + (step,))
        elif isinstance(node, ListNode):
            for i, item in enumerate(node.items):
                yield from visit(item, path + (i,))

    yield from visit(expr.root, ())


def node_at(expr: AzExpr, address: NodeAddress) -> AzNode:
    node = expr.root
    for step in address.path:
        if isinstance(node, Rule):
            if isinstance(step, str):
                matches = [value for label, value in node.args if label == step]
                if len(matches) != 1:
                    raise BadAddressError(f"label {step!r} not unique at {node.name!r}")
                node = matches[0]
                continue
            if isinstance(step, int) and 0 <= step < len(node.args):
                node = node.args[step][1]
                continue
        elif isinstance(node, ListNode):
            if isinstance(step, int) and 0 <= step < len(node.items):
                node = node.items[step]
                continue
        raise BadAddressError(f"cannot take step {step!r} at {type(node).__name__}")
    return node


def node_at_line(expr: AzExpr, line: int) -> NodeAddress:
    """Address of the node that starts on the given 1-based source line."""
    for address, node in walk(expr):
        if node.source_line == line:
            return address
    raise NoNodeAtLineError(f"no node starts at line {line}")


def subtree_equal(a: AzNode, b: AzNode) -> bool:
    """Structural equality; source lines are ignored."""
    return a == b


def substitute(expr: AzExpr, at: NodeAddress, replacement: AzNode) -> AzExpr:
    """Return a new tree with the node at ``at`` replaced.

    The input tree is left untouched; nodes off the path are shared.
    """

    def rebuild(node: AzNode, path: tuple) -> AzNode:
        if not path:
            return replacement
        step, rest = path[0], path[1:]
        if isinstance(node, Rule):
            if isinstance(step, str):
                hits = [i for i, (label, _) in enumerate(node.args) if label == step]
                if len(hits) != 1:
                    raise BadAddressError(f"label {step!r} not unique at {node.name!r}")
                idx = hits[0]
            elif isinstance(step, int) and 0 <= step < len(node.args):
                idx = step
            else:
                raise BadAddressError(f"cannot take step {step!r} at rule {node.name!r}")
            args = tuple(
                (label, rebuild(value, rest) if i == idx else value)
                for i, (label, value) in enumerate(node.args)
            )
            return Rule(node.name, args, source_line=node.source_line)
        if isinstance(node, ListNode):
            if not (isinstance(step, int) and 0 <= step < len(node.items)):
                raise BadAddressError(f"cannot take step {step!r} at list")
            items = tuple(
                rebuild(item, rest) if i == step else item
                for i, item in enumerate(node.items)
            )
            return ListNode(items, source_line=node.source_line)
        raise BadAddressError(f"cannot take step {step!r} at atom")

    return AzExpr(rebuild(expr.root, at.path))


def find_nodes_matching(expr: AzExpr, targets: Iterable[AzExpr]) -> list[NodeAddress]:
    """Addresses of all nodes structurally equal to any target, pre-order."""
    wanted = {t.root for t in targets}
    return [address for address, node in walk(expr) if node in wanted]
