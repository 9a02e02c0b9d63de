# %% [markdown]
# # Scoring parser output
#
# Treat an augmented tree set as gold and a crude "newswire parser" output as
# the prediction: one that knows nothing about dysfluencies, so it labels
# `EDITED_*` material as ordinary phrases and partial words as nouns.

# %%
from importlib import resources

from speechtrees.augment import AugmentationConfig, augment_corpus
from speechtrees.scoring import (
    format_dysfluency_report,
    format_score,
    propagate_re,
    restart_spans,
    score_brackets,
    score_dysfluency,
    score_pos,
)
from speechtrees.treebank import Leaf, Node, parse_trees

corpus = parse_trees(resources.files("speechtrees").joinpath("data/fixture.mrg").read_text())
gold = augment_corpus(corpus, AugmentationConfig(), seed=3).trees


def newswire_parser(tree):
    if isinstance(tree, Leaf):
        return Leaf("NN", tree.word) if tree.tag == "PT" else tree
    label = "NP" if tree.label.startswith("EDITED") else tree.label
    return Node(label, tuple(newswire_parser(c) for c in tree.children))


pred = [newswire_parser(t) for t in gold]

# %%
print(format_score("evalb", score_brackets(gold, pred)))

# %%
pos = score_pos([propagate_re(t) for t in gold], [propagate_re(t) for t in pred], strip_re_tags=True)
print(f"POS accuracy {pos.accuracy:.2f}")
print(f"PT F1 {pos.per_tag['PT'].f1:.2f}   UH F1 {pos.per_tag['UH'].f1:.2f}")

# %% [markdown]
# Dysfluency detection: gold `_RE` tags come from the gold trees' `EDITED_REP`
# nodes; restart starts are the first token of each gold `EDITED_RES`.

# %%
gold_tags = [propagate_re(t) for t in gold]
starts = [{a for a, _ in restart_spans(t)} for t in gold]
print(format_dysfluency_report(score_dysfluency(gold_tags, gold, starts), by_length=True))
print()
print(format_dysfluency_report(score_dysfluency(gold_tags, pred, starts), by_length=True))
