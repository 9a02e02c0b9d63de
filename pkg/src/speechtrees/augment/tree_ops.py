"""Dysfluency augmentations applied inside a single tree.

All four passes walk the tree in pre-order and draw from ``decisions`` only at
eligible sites, in document order. That makes a scripted list of draws map
one-to-one onto sites, which the exact-output tests depend on.
"""

from __future__ import annotations

from .config import AugmentationConfig
from .decisions import DecisionSource
from .edits import FILLER, PARTIAL, REPETITION, VBZ, Edit
from ..treebank import Leaf, Node, Tree, yield_leaves

EMPTY_ELEMENT_TAGS = frozenset({"-NONE-"})


def is_edited(label: str) -> bool:
    return label.startswith("EDITED")


def _rebuilt(node: Node, children: list) -> Node:
    if len(children) == len(node.children) and all(a is b for a, b in zip(children, node.children)):
        return node
    return Node(node.label, tuple(children))


def _lexical(leaf: Leaf, config: AugmentationConfig) -> bool:
    """Real words: not punctuation, not empty elements, not inserted by us."""
    return (
        not leaf.synthetic
        and leaf.tag not in config.punctuation_tags
        and leaf.tag not in EMPTY_ELEMENT_TAGS
    )


def partial_eligible(leaf: Leaf, config: AugmentationConfig) -> bool:
    return _lexical(leaf, config) and len(leaf.word) >= config.min_partial_word_len


def filler_eligible(leaf: Leaf, config: AugmentationConfig) -> bool:
    return _lexical(leaf, config)


def vbz_eligible(leaf: Leaf) -> bool:
    return leaf.tag == "VBZ" and leaf.word == "is"


def apply_vbz(tree: Tree, config: AugmentationConfig, decisions: DecisionSource):
    """Contract ``(VBZ is)`` to ``(VBZ 's)`` with probability ``p_vbz``."""
    edits = []

    def walk(t, path):
        if isinstance(t, Leaf):
            if vbz_eligible(t) and decisions.chance(config.p_vbz):
                edits.append(Edit(VBZ, path, t.word))
                return Leaf(t.tag, "'s", synthetic=t.synthetic)
            return t
        if is_edited(t.label):
            return t
        return _rebuilt(t, [walk(c, path + (i,)) for i, c in enumerate(t.children)])

    return walk(tree, ()), edits


def _repetition_copy(xp: Node, config, decisions) -> Node:
    length = decisions.categorical(config.repetition_len_dist)
    source = yield_leaves(xp)[:length]
    copies = []
    for leaf in source:
        if leaf.tag in config.punctuation_tags:
            copies.append(Leaf(leaf.tag, leaf.word, synthetic=True))
            continue
        word = leaf.word + "=" if decisions.chance(config.p_eq_marker) else leaf.word
        copies.append(Leaf(leaf.tag, word, synthetic=True))
        if decisions.chance(config.p_comma):
            copies.append(Leaf(",", ",", synthetic=True))
    return Node("EDITED_REP", tuple(copies))


def apply_repetition(tree: Tree, config: AugmentationConfig, decisions: DecisionSource):
    """Insert flat ``EDITED_REP`` copies of constituent prefixes as left sisters.

    Every non-root phrasal constituent outside an ``EDITED_*`` subtree is a
    candidate. The copy takes the first 1-3 leaves of the constituent (capped
    at its length); each copied word may get a ``=`` suffix and a trailing
    comma. The constituent itself is left as it was.
    """
    edits = []

    def walk(t: Node, path):
        out = []
        for child in t.children:
            if isinstance(child, Leaf) or is_edited(child.label):
                out.append(child)
                continue
            if decisions.chance(config.p_repetition):
                rep = _repetition_copy(child, config, decisions)
                edits.append(Edit(REPETITION, path + (len(out),), rep))
                out.append(rep)
            out.append(walk(child, path + (len(out),)))
        return _rebuilt(t, out)

    if isinstance(tree, Leaf) or is_edited(tree.label):
        return tree, edits
    return walk(tree, ()), edits


def _prefix_length(word: str, config, decisions) -> int:
    n = len(word)
    if n == 3:
        return config.partial_len_3
    if n == 4:
        return decisions.categorical(config.partial_len_4)
    return decisions.categorical(config.partial_len_gt4)


def _insert_before_leaves(tree, edits, kind, eligible, make):
    """Shared walker for passes that put a new leaf left of a word."""

    def walk(t: Node, path):
        out = []
        for child in t.children:
            if isinstance(child, Leaf):
                if eligible(child):
                    new = make(child)
                    if new is not None:
                        edits.append(Edit(kind, path + (len(out),), new))
                        out.append(new)
                out.append(child)
            elif is_edited(child.label):
                out.append(child)
            else:
                out.append(walk(child, path + (len(out),)))
        return _rebuilt(t, out)

    if isinstance(tree, Leaf) or is_edited(tree.label):
        return tree
    return walk(tree, ())


def apply_partial(tree: Tree, config: AugmentationConfig, decisions: DecisionSource):
    """Insert a cut-off ``(PT xx-)`` before words of three or more characters."""
    edits = []

    def make(leaf):
        if not decisions.chance(config.p_partial):
            return None
        k = _prefix_length(leaf.word, config, decisions)
        return Leaf("PT", leaf.word[:k] + "-", synthetic=True)

    out = _insert_before_leaves(
        tree, edits, PARTIAL, lambda leaf: partial_eligible(leaf, config), make
    )
    return out, edits


def apply_filler(tree: Tree, config: AugmentationConfig, decisions: DecisionSource):
    """Insert a filled pause ``(UH uh|um|eh|mhm)`` before words."""
    edits = []

    def make(leaf):
        if not decisions.chance(config.p_filler):
            return None
        word = config.filler_lexicon[decisions.index(len(config.filler_lexicon))]
        return Leaf("UH", word, synthetic=True)

    out = _insert_before_leaves(
        tree, edits, FILLER, lambda leaf: filler_eligible(leaf, config), make
    )
    return out, edits


TREE_PASSES = (apply_repetition, apply_vbz, apply_partial, apply_filler)


def augment_tree(tree: Tree, config: AugmentationConfig, decisions: DecisionSource):
    """Repetition, then VBZ contraction, then partial words, then fillers."""
    log = []
    for op in TREE_PASSES:
        tree, edits = op(tree, config, decisions)
        log.extend(edits)
    return tree, log
