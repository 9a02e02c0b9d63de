"""Bracketed constituency trees: reading, writing and structural helpers.

Trees are immutable values. A tree is either a :class:`Node` (a label over
an ordered, nonempty tuple of children) or a :class:`Leaf` (a POS tag paired
with a single word)::

    >>> t = parse_tree("(S (NP (DT the) (NN dog)) (VP (VBZ barks)) (. .))")
    >>> serialize(t)
    '(S (NP (DT the) (NN dog)) (VP (VBZ barks)) (. .))'
    >>> [leaf.word for leaf in yield_leaves(t)]
    ['the', 'dog', 'barks', '.']

Input may span several lines per tree and may carry the empty-label outer
wrapper found in ``.mrg`` files, ``( (S ...) )``; the wrapper is dropped and
never written back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, TextIO, Union

__all__ = [
    "Leaf",
    "Node",
    "Tree",
    "Span",
    "TreeParseError",
    "PUNCTUATION_TAGS",
    "parse_trees",
    "parse_tree",
    "read_trees",
    "serialize",
    "write_trees",
    "yield_leaves",
    "labeled_spans",
    "strip_function_tags",
    "truncate_to_prefix",
    "is_preterminal_parent",
    "subtree_at",
    "replace_at",
    "insert_at",
    "delete_at",
]

# evalb's conventional deletion list plus the transcript restart marker
PUNCTUATION_TAGS = frozenset({".", ",", ":", "``", "''", "-LRB-", "-RRB-", "#"})

_ESCAPED_LABELS = frozenset({"-LRB-", "-RRB-", "-NONE-"})
_BAD_SYMBOL = re.compile(r"[\s()]")


def _check_symbol(kind: str, value: str) -> None:
    if not isinstance(value, str) or not value:
        raise ValueError(f"{kind} must be a nonempty string, got {value!r}")
    if _BAD_SYMBOL.search(value):
        raise ValueError(f"{kind} {value!r} contains whitespace or a parenthesis")


@dataclass(frozen=True)
class Leaf:
    """A preterminal: POS tag plus word.

    ``synthetic`` marks leaves inserted by an augmentation pass. It is
    bookkeeping only; it takes no part in equality and is never serialized.
    """

    tag: str
    word: str
    synthetic: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        _check_symbol("tag", self.tag)
        _check_symbol("word", self.word)

    @property
    def label(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple

    def __post_init__(self):
        _check_symbol("label", self.label)
        children = tuple(self.children)
        if not children:
            raise ValueError(f"internal node {self.label!r} has no children")
        for child in children:
            if not isinstance(child, (Node, Leaf)):
                raise TypeError(f"child of {self.label!r} is not a tree: {child!r}")
        object.__setattr__(self, "children", children)


Tree = Union[Node, Leaf]


class Span(NamedTuple):
    label: str
    start: int
    end: int


class TreeParseError(ValueError):
    """Malformed bracketed input. ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_trees(text: str) -> list[Tree]:
    """Parse every top-level bracketed tree in ``text``, in order."""

    def error(message, char_pos):
        raise TreeParseError(message, len(text[:char_pos].encode("utf-8")))

    trees: list[Tree] = []
    # each frame: [label or None, children, start position]
    stack: list[list] = []
    tokens = list(_TOKEN.finditer(text))
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        value = tok.group()
        if value == "(":
            nxt = tokens[i + 1].group() if i + 1 < n else None
            if nxt is None:
                error("unbalanced parentheses: input ends after '('", tok.start())
            if nxt == "(":
                if stack:
                    error("empty-label bracket is only allowed as an outer wrapper", tok.start())
                stack.append([None, [], tok.start()])
                i += 1
                continue
            if nxt == ")":
                if stack:
                    error("empty bracket", tok.start())
                # "()" at top level: nothing to read
                i += 2
                continue
            # labelled bracket: leaf if the next token after the label is a word
            after = tokens[i + 2].group() if i + 2 < n else None
            if after is None:
                error("unbalanced parentheses: input ends inside a bracket", tok.start())
            if after not in ("(", ")"):
                close = tokens[i + 3].group() if i + 3 < n else None
                if close != ")":
                    error(f"leaf {nxt!r} must contain exactly one word", tok.start())
                leaf = Leaf(nxt, after)
                if stack:
                    stack[-1][1].append(leaf)
                else:
                    trees.append(leaf)
                i += 4
                continue
            if after == ")":
                error(f"internal node {nxt!r} has no children", tok.start())
            stack.append([nxt, [], tok.start()])
            i += 2
        elif value == ")":
            if not stack:
                error("unbalanced parentheses: unexpected ')'", tok.start())
            label, children, start = stack.pop()
            if label is None:
                if len(children) != 1:
                    error("outer wrapper must contain exactly one tree", start)
                built = children[0]
            else:
                built = Node(label, tuple(children))
            if stack:
                stack[-1][1].append(built)
            else:
                trees.append(built)
            i += 1
        else:
            if stack and stack[-1][0] is not None:
                error(f"bare word {value!r} among constituents", tok.start())
            error(f"unexpected token {value!r} outside brackets", tok.start())
    if stack:
        error("unbalanced parentheses: unclosed '('", stack[-1][2])
    return trees


def parse_tree(text: str) -> Tree:
    trees = parse_trees(text)
    if len(trees) != 1:
        raise ValueError(f"expected exactly one tree, found {len(trees)}")
    return trees[0]


def read_trees(path) -> list[Tree]:
    with open(path, encoding="utf-8") as fh:
        return parse_trees(fh.read())


def serialize(tree: Tree) -> str:
    if isinstance(tree, Leaf):
        return f"({tree.tag} {tree.word})"
    return f"({tree.label} {' '.join(serialize(c) for c in tree.children)})"


def write_trees(trees: Iterable[Tree], fh: TextIO) -> None:
    """One tree per line."""
    for t in trees:
        fh.write(serialize(t))
        fh.write("\n")


def yield_leaves(tree: Tree) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    out: list[Leaf] = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t)
        else:
            stack.extend(reversed(t.children))
    return out


def strip_function_tags(label: str) -> str:
    """``NP-SBJ-1`` -> ``NP``; ``PP=2`` -> ``PP``. Bracket escapes are left alone."""
    if label in _ESCAPED_LABELS:
        return label
    cut = re.split(r"[-=]", label, maxsplit=1)[0]
    return cut or label


def is_preterminal_parent(node: Tree) -> bool:
    return isinstance(node, Node) and all(isinstance(c, Leaf) for c in node.children)


def labeled_spans(
    tree: Tree,
    exclude_preterminals: bool = True,
    strip_function_tags: bool = True,
    punctuation_tags: Sequence[str] | frozenset = PUNCTUATION_TAGS,
) -> list[Span]:
    """Labelled constituent spans over token positions, evalb style.

    Leaves tagged with a member of ``punctuation_tags`` are deleted before
    positions are assigned; constituents left empty by the deletion are
    dropped. Spans come out in pre-order.
    """
    punct = frozenset(punctuation_tags)
    strip = strip_function_tags
    spans: list[Span] = []

    def walk(t: Tree, pos: int) -> int:
        if isinstance(t, Leaf):
            end = pos if t.tag in punct else pos + 1
            if not exclude_preterminals and end > pos:
                spans.append(Span(_strip(t.tag) if strip else t.tag, pos, end))
            return end
        slot = len(spans)
        spans.append(None)
        end = pos
        for child in t.children:
            end = walk(child, end)
        if end > pos:
            spans[slot] = Span(_strip(t.label) if strip else t.label, pos, end)
        return end

    walk(tree, 0)
    return [s for s in spans if s is not None]


_strip = strip_function_tags


def truncate_to_prefix(tree: Tree, k: int) -> Tree:
    """Keep the first ``k`` leaves and prune every constituent left empty."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if isinstance(tree, Leaf):
        return tree
    remaining = k

    def cut(t: Tree):
        nonlocal remaining
        if remaining <= 0:
            return None
        if isinstance(t, Leaf):
            remaining -= 1
            return t
        kept = []
        for child in t.children:
            c = cut(child)
            if c is None:
                break
            kept.append(c)
        if not kept:
            return None
        if len(kept) == len(t.children) and all(a is b for a, b in zip(kept, t.children)):
            return t
        return Node(t.label, tuple(kept))

    return cut(tree)


# Path helpers. A path is a tuple of child indices from the root.

def subtree_at(tree: Tree, path: Sequence[int]) -> Tree:
    for i in path:
        tree = tree.children[i]
    return tree


def replace_at(tree: Tree, path: Sequence[int], new: Tree) -> Tree:
    if not path:
        return new
    head, rest = path[0], path[1:]
    children = list(tree.children)
    children[head] = replace_at(children[head], rest, new)
    return Node(tree.label, tuple(children))


def insert_at(tree: Tree, path: Sequence[int], new: Tree) -> Tree:
    """Insert ``new`` so that it ends up at ``path``."""
    if not path:
        raise ValueError("cannot insert at the root")
    parent = subtree_at(tree, path[:-1])
    children = list(parent.children)
    children.insert(path[-1], new)
    return replace_at(tree, path[:-1], Node(parent.label, tuple(children)))


def delete_at(tree: Tree, path: Sequence[int]) -> Tree:
    if not path:
        raise ValueError("cannot delete the root")
    parent = subtree_at(tree, path[:-1])
    children = list(parent.children)
    del children[path[-1]]
    return replace_at(tree, path[:-1], Node(parent.label, tuple(children)))
