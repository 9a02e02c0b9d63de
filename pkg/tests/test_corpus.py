from collections import Counter

import pytest

from speechtrees.augment import (
    AugmentationConfig,
    SeededDecisions,
    augment_corpus,
    augment_tree,
    group_corpus,
    revert,
)
from speechtrees.augment.config import GROUPING_CATEGORIES
from speechtrees.treebank import Leaf, Node, serialize, yield_leaves

CFG = AugmentationConfig()


def serialized(result):
    return [serialize(t) for t in result.trees]


def test_same_seed_same_output(corpus):
    a = augment_corpus(corpus, CFG, seed=5, epoch=3, iterations=2)
    b = augment_corpus(corpus, CFG, seed=5, epoch=3, iterations=2)
    assert serialized(a) == serialized(b)


def test_seed_and_epoch_matter(corpus):
    base = serialized(augment_corpus(corpus, CFG, seed=5))
    assert serialized(augment_corpus(corpus, CFG, seed=6)) != base
    assert serialized(augment_corpus(corpus, CFG, seed=5, epoch=1)) != base


def test_iterations_are_consecutive_epochs(corpus):
    both = augment_corpus(corpus, CFG, seed=9, epoch=4, iterations=2)
    first = augment_corpus(corpus, CFG, seed=9, epoch=4)
    second = augment_corpus(corpus, CFG, seed=9, epoch=5)
    assert serialized(both) == serialized(first) + serialized(second)


def test_workers_do_not_change_output(corpus):
    serial = augment_corpus(corpus, CFG, seed=11, iterations=2)
    parallel = augment_corpus(corpus, CFG, seed=11, iterations=2, workers=2)
    assert serialized(serial) == serialized(parallel)
    assert serial.logs == parallel.logs


def test_identity_config_returns_input(corpus):
    cfg = AugmentationConfig(
        p_partial=0, p_filler=0, p_repetition=0, p_vbz=0,
        grouping_dist={"none": 1, "combine2": 0, "combine3": 0, "restart2": 0, "restart3": 0},
    )
    out = augment_corpus(corpus, cfg, seed=1)
    assert out.trees == corpus
    assert all(log == [] for log in out.logs)


def test_iterations_must_be_positive(corpus):
    with pytest.raises(ValueError):
        augment_corpus(corpus, CFG, seed=1, iterations=0)


def _walk(t, depth=0):
    yield t, depth
    if isinstance(t, Node):
        for c in t.children:
            yield from _walk(c, depth + 1)


@pytest.mark.parametrize("seed", range(5))
def test_structural_safety(corpus, seed):
    result = augment_corpus(corpus, CFG, seed=seed)
    for tree, group in zip(result.trees, (g for gs in result.groups for g in gs)):
        for node, depth in _walk(tree):
            if isinstance(node, Leaf):
                continue
            if node.label == "EDITED_REP":
                assert all(isinstance(c, Leaf) for c in node.children)
            if node.label == "EDITED_RES":
                assert depth == 1 and group.kind == "restart"
        assert serialize(tree).count("(EDITED_RES") == (1 if group.kind == "restart" else 0)


@pytest.mark.parametrize("seed", range(20))
def test_yield_relation_single_trees(corpus, seed):
    for i, src in enumerate(corpus):
        out, log = augment_tree(src, CFG, SeededDecisions(seed, 0, i))
        kept = [leaf for leaf in yield_leaves(out) if not leaf.synthetic]
        source = yield_leaves(src)
        assert [leaf.tag for leaf in kept] == [leaf.tag for leaf in source]
        changed = [(a.word, b.word) for a, b in zip(source, kept) if a.word != b.word]
        assert all(pair == ("is", "'s") for pair in changed)
        assert len(changed) == sum(e.kind == "VBZ" for e in log)
        assert "=" not in "".join(leaf.word[-1] for leaf in kept)


def test_invertibility_spot_check(corpus):
    result = augment_corpus(corpus, CFG, seed=123, iterations=3)
    for tree, log, members in zip(result.trees, result.logs, result.sources):
        assert revert(tree, log) == [corpus[j] for j in members]


def test_ten_iterations_counts_and_frequencies(corpus):
    result = augment_corpus(corpus, CFG, seed=2024, iterations=10)
    n = len(corpus)
    assert n * 10 / 3 <= len(result.trees) <= n * 10
    drawn = result.drawn_counts()
    total = sum(drawn.values())
    for cat in GROUPING_CATEGORIES:
        assert abs(drawn[cat] / total - CFG.grouping_dist[cat]) <= 0.05, cat
    # every source tree appears exactly once per iteration
    uses = Counter(j for members in result.sources for j in members)
    assert set(uses.values()) == {10}


def test_grouping_preserves_order(corpus):
    groups = group_corpus(corpus, CFG, SeededDecisions(1, 0, 0))
    flat = [j for g in groups for j in g.members]
    assert flat == list(range(len(corpus)))
