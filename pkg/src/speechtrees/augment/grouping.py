"""Run-on and restart augmentations, and the corpus-level driver.

A corpus pass first scans the trees left to right and decides, per unconsumed
tree, whether it stands alone or is joined with the one or two trees after
it. Joined groups become a single tree, either a plain run-on (``combine``)
or a run-on whose first/middle sentence is abandoned part-way (``restart``).
Every resulting tree then goes through the tree-internal passes.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .config import AugmentationConfig
from .decisions import DecisionSource, SeededDecisions
from .edits import COMBINE, RESTART, Edit, JoinPayload, MemberFix, RestartPayload, first_leaf_path, set_word
from .tree_ops import augment_tree
from ..treebank import Leaf, Node, Tree, delete_at, subtree_at, truncate_to_prefix, yield_leaves


def _strip_final_punct(tree: Tree, config: AugmentationConfig):
    """Drop the last leaf if it is punctuation, with any ancestors it leaves empty."""
    if isinstance(tree, Leaf) or len(yield_leaves(tree)) < 2:
        return tree, None, None
    path = []
    t = tree
    while isinstance(t, Node):
        path.append(len(t.children) - 1)
        t = t.children[-1]
    if t.tag not in config.punctuation_tags:
        return tree, None, None
    # climb while the parent would be emptied by the removal
    cut = len(path)
    while cut > 1 and len(subtree_at(tree, path[: cut - 1]).children) == 1:
        cut -= 1
    cut_path = tuple(path[:cut])
    removed = subtree_at(tree, cut_path)
    return delete_at(tree, cut_path), cut_path, removed


def _lowercase_first(tree: Tree, config: AugmentationConfig):
    path = first_leaf_path(tree)
    leaf = subtree_at(tree, path)
    if leaf.tag in config.proper_noun_tags:
        return tree, None
    lowered = leaf.word[:1].lower() + leaf.word[1:]
    if lowered == leaf.word:
        return tree, None
    return set_word(tree, path, lowered), leaf.word


def _join_member(tree: Tree, config, initial: bool, final: bool):
    punct_path = punct = first_word = None
    if not final:
        tree, punct_path, punct = _strip_final_punct(tree, config)
    if not initial:
        tree, first_word = _lowercase_first(tree, config)
    return tree, MemberFix(punct_path, punct, first_word)


def _check_arity(trees):
    if not 2 <= len(trees) <= 3:
        raise ValueError(f"can only join 2 or 3 trees, got {len(trees)}")


def combine_trees(trees: Sequence[Tree], config: AugmentationConfig):
    """Join trees into a run-on ``(S t1 (CC and) t2 ...)``."""
    _check_arity(trees)
    last = len(trees) - 1
    children, fixes = [], []
    for i, t in enumerate(trees):
        t, fix = _join_member(t, config, initial=i == 0, final=i == last)
        if i:
            children.append(Leaf("CC", "and", synthetic=True))
        children.append(t)
        fixes.append(fix)
    root = Node("S", tuple(children))
    return root, [Edit(COMBINE, (), JoinPayload(tuple(fixes)))]


def restart_target(arity: int) -> int:
    return 0 if arity == 2 else 1


def make_restart(trees: Sequence[Tree], config: AugmentationConfig, decisions: DecisionSource):
    """Truncate the first (of two) or middle (of three) tree into an ``EDITED_RES``.

    The kept prefix has between ``restart_keep_min`` and ``restart_keep_max``
    words, and always at least one word fewer than the full sentence. The
    truncated tree's root is dropped; its surviving children go directly under
    ``EDITED_RES``, optionally followed by a ``(# #)`` leaf.
    """
    _check_arity(trees)
    target = restart_target(len(trees))
    original = trees[target]
    n_leaves = len(yield_leaves(original))
    if isinstance(original, Leaf) or n_leaves < 2:
        raise ValueError("restart target needs at least two leaves")
    k = decisions.integer(config.restart_keep_min, config.restart_keep_max)
    kept = min(k, n_leaves - 1)
    material = list(truncate_to_prefix(original, kept).children)
    hashed = decisions.chance(config.p_hash)
    if hashed:
        material.append(Leaf("#", "#", synthetic=True))
    edited = Node("EDITED_RES", tuple(material))

    last = len(trees) - 1
    children, fixes = [], []
    for i, t in enumerate(trees):
        if i == target:
            first_word = None
            if i:
                edited, first_word = _lowercase_first(edited, config)
            children.append(edited)
            fixes.append(MemberFix(first_word=first_word))
        else:
            t, fix = _join_member(t, config, initial=i == 0, final=i == last)
            children.append(t)
            fixes.append(fix)
    payload = RestartPayload(tuple(fixes), target, original, kept, hashed)
    return Node("S", tuple(children)), [Edit(RESTART, (), payload)]


@dataclass(frozen=True)
class Group:
    """A run of consecutive source trees that becomes one output tree.

    ``kind`` is what was built (none/combine/restart); ``drawn`` is the
    category originally drawn, before any end-of-corpus or tiny-tree
    degradation.
    """

    kind: str
    members: tuple
    drawn: str

    @property
    def category(self) -> str:
        return self.kind if self.kind == "none" else f"{self.kind}{len(self.members)}"


def group_corpus(trees: Sequence[Tree], config: AugmentationConfig, decisions: DecisionSource):
    if not trees:
        raise ValueError("cannot group an empty corpus")
    groups = []
    i, n = 0, len(trees)
    while i < n:
        drawn = decisions.categorical(config.grouping_dist)
        kind = "none" if drawn == "none" else drawn[:-1]
        arity = 1 if drawn == "none" else int(drawn[-1])
        arity = min(arity, n - i)
        if arity == 1:
            kind = "none"
        members = tuple(range(i, i + arity))
        if kind == "restart":
            target = trees[members[restart_target(arity)]]
            if isinstance(target, Leaf) or len(yield_leaves(target)) < 2:
                kind = "combine"
        groups.append(Group(kind, members, drawn))
        i += arity
    return groups


def build_group(trees: Sequence[Tree], group: Group, config, decisions):
    members = [trees[j] for j in group.members]
    if group.kind == "none":
        return members[0], []
    if group.kind == "combine":
        return combine_trees(members, config)
    return make_restart(members, config, decisions)


@dataclass
class AugmentedCorpus:
    trees: list = field(default_factory=list)
    logs: list = field(default_factory=list)
    sources: list = field(default_factory=list)  # source tree indices per output tree
    groups: list = field(default_factory=list)  # one list of Group per iteration

    def category_counts(self) -> Counter:
        """Realised group categories, summed over iterations."""
        return Counter(g.category for gs in self.groups for g in gs)

    def drawn_counts(self) -> Counter:
        return Counter(g.drawn for gs in self.groups for g in gs)


def _augment_group(args):
    trees, group, config, seed, epoch, index = args
    decisions = SeededDecisions(seed, epoch, index)
    tree, log = build_group(trees, group, config, decisions)
    tree, more = augment_tree(tree, config, decisions)
    return tree, log + more


def augment_corpus(
    trees: Sequence[Tree],
    config: AugmentationConfig,
    seed: int,
    epoch: int = 0,
    iterations: int = 1,
    workers: int = 1,
) -> AugmentedCorpus:
    """Augment ``trees`` ``iterations`` times and concatenate the results.

    Iteration ``i`` uses epoch ``epoch + i``. Grouping draws come from stream
    index 0 of that epoch and group ``g`` draws from stream ``g + 1``, so the
    output does not depend on ``workers``.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    trees = list(trees)
    result = AugmentedCorpus()
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for it in range(iterations):
            ep = epoch + it
            groups = group_corpus(trees, config, SeededDecisions(seed, ep, 0))
            result.groups.append(groups)
            jobs = [
                ([trees[j] for j in g.members], _local(g), config, seed, ep, gi + 1)
                for gi, g in enumerate(groups)
            ]
            if pool is None:
                outputs = map(_augment_group, jobs)
            else:
                outputs = pool.map(_augment_group, jobs, chunksize=64)
            for g, (tree, log) in zip(groups, outputs):
                result.trees.append(tree)
                result.logs.append(log)
                result.sources.append(g.members)
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def _local(group: Group) -> Group:
    """The same group re-indexed against its own member list."""
    return Group(group.kind, tuple(range(len(group.members))), group.drawn)
