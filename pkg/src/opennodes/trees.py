"""Syntax trees, the bracketed interchange format, and open-node counting.

A tree is an ordered rooted structure whose leaves are the sentence
tokens, represented as nested tuples with str leaves.  The root is
always an internal node (bare token sequences get wrapped), so the
counting rule's outermost list exists for every sentence.

Counting rule: walking from the root down to a leaf, descending into any
child costs 1, and descending into the (j+1)-th child costs j more.  A
leaf reached through 0-based child indices c_1..c_d therefore holds

    u = d + sum(c_k)

open nodes while it is being processed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import EmptyInput, ParseError

# A node is a token (leaf) or a non-empty tuple of child nodes.
Node = Union[str, tuple]


def _validate(node: Node) -> int:
    """Return the leaf count below node, raising on malformed structure."""
    if isinstance(node, str):
        return 1
    if not isinstance(node, tuple) or len(node) == 0:
        raise ValueError(f"internal nodes must be non-empty tuples, got {node!r}")
    return sum(_validate(child) for child in node)


@dataclass(frozen=True)
class SyntaxTree:
    """Ordered rooted tree over a sentence; leaves in word order."""

    root: tuple

    def __post_init__(self):
        if not isinstance(self.root, tuple) or len(self.root) == 0:
            raise ValueError("root must be a non-empty internal node")
        _validate(self.root)

    def leaves(self) -> list[str]:
        out: list[str] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, str):
                out.append(node)
            else:
                stack.extend(reversed(node))
        return out

    @property
    def n_leaves(self) -> int:
        return len(self.leaves())

    def to_nested(self):
        """Nested lists with str leaves (the JSONL `tree` schema)."""

        def conv(node):
            return node if isinstance(node, str) else [conv(c) for c in node]

        return conv(self.root)

    @classmethod
    def from_nested(cls, nested) -> "SyntaxTree":
        """Build from nested lists; the top level must be a list."""
        if not isinstance(nested, list):
            raise ValueError("top level of a nested tree must be a list")

        def conv(node):
            if isinstance(node, str):
                return node
            if isinstance(node, list):
                if not node:
                    raise ValueError("empty internal node in nested tree")
                return tuple(conv(c) for c in node)
            raise ValueError(f"nested tree nodes must be lists or strings, got {node!r}")

        return cls(conv(nested))


@dataclass(frozen=True)
class OpenNodeProfile:
    """Per-word open-node counts u_1..u_n for one sentence."""

    counts: tuple

    def __post_init__(self):
        if len(self.counts) == 0:
            raise EmptyInput("profile needs at least one count")
        for u in self.counts:
            if not isinstance(u, int) or u < 1:
                raise ValueError(f"open-node counts must be positive integers, got {u!r}")

    @property
    def n(self) -> int:
        return len(self.counts)


def wrap_root(tokens: Iterable[str]) -> SyntaxTree:
    """Canonicalize a bare token sequence as a flat tree."""
    leaves = tuple(tokens)
    if not leaves:
        raise EmptyInput("cannot build a tree from zero tokens")
    return SyntaxTree(leaves)


def open_node_counts(tree: SyntaxTree) -> OpenNodeProfile:
    """Count open nodes per word by one left-to-right traversal."""
    counts: list[int] = []

    def walk(node: tuple, acc: int) -> None:
        for j, child in enumerate(node):
            value = acc + 1 + j
            if isinstance(child, str):
                counts.append(value)
            else:
                walk(child, value)

    walk(tree.root, 0)
    return OpenNodeProfile(tuple(counts))


# ---------------------------------------------------------------------------
# Bracketed interchange format.
#
# Grammar (one tree per line, UTF-8):
#   Tree := '(' Item+ ')' ;  Item := Tree | Atom
#   Atom := maximal run of non-whitespace, non-parenthesis characters
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> Iterator[tuple[str, int]]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c, i
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()":
                i += 1
            yield text[start:i], start
    yield "", n  # end marker carrying the EOF position


def _collapse_unary(node: Node) -> Node:
    """Fuse internal nodes that have exactly one internal child."""
    if isinstance(node, str):
        return node
    children = tuple(_collapse_unary(c) for c in node)
    while len(children) == 1 and not isinstance(children[0], str):
        children = children[0]
    return children


def parse_bracketed(text: str, strip_labels: bool = False,
                    collapse_unary: bool = False) -> SyntaxTree:
    """Parse one bracketed expression into a SyntaxTree.

    strip_labels drops category labels the way treebank annotations use
    them: the first bare atom of a group that also has parenthesized
    children, and two-atom (label token) groups become plain leaves.
    collapse_unary fuses internal nodes with a single internal child, so
    annotation projection chains do not inflate nesting depth.
    """
    tokens = _tokenize(text)
    tok, pos = next(tokens)
    if tok != "(":
        raise ParseError("expected '('", pos)

    def parse_group(open_pos: int) -> Node:
        # Each item is (node, raw_atom); stripping must see whether an
        # item was a bare atom or a parenthesized child in the source,
        # which the processed node alone no longer shows.
        items: list = []
        for tok, pos in tokens:
            if tok == "(":
                items.append((parse_group(pos), False))
            elif tok == ")":
                if not items:
                    raise ParseError("empty group", pos)
                if strip_labels:
                    # A (label token) pair is just an annotated word.
                    if len(items) == 2 and items[0][1] and items[1][1]:
                        return items[1][0]
                    # Otherwise a leading bare atom next to parenthesized
                    # children is the category label.
                    if items[0][1] and any(not raw for _, raw in items):
                        items = items[1:]
                return tuple(node for node, _ in items)
            elif tok == "":
                raise ParseError("unbalanced parentheses", pos)
            else:
                items.append((tok, True))
        raise AssertionError("tokenizer ended without end marker")

    root = parse_group(pos)
    tok, pos = next(tokens)
    if tok != "":
        raise ParseError("trailing content after tree", pos)

    if collapse_unary:
        root = _collapse_unary(root)
    if isinstance(root, str):
        root = (root,)
    tree = SyntaxTree(root)
    if tree.n_leaves == 0:
        raise EmptyInput("no leaves left after label stripping")
    return tree


def serialize(tree: SyntaxTree) -> str:
    """Emit bracketed text; inverse of parse_bracketed with flags off."""

    def emit(node: Node) -> str:
        if isinstance(node, str):
            return node
        return "(" + " ".join(emit(c) for c in node) + ")"

    return emit(tree.root)
