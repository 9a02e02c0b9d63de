# %% [markdown]
# # Augmenting a whole treebank
#
# `augment_corpus` groups trees, builds run-ons and restarts, then applies the
# tree-internal passes. Everything is driven by a seed; the same
# (seed, epoch, iterations) always yields the same output.

# %%
from collections import Counter
from importlib import resources

from speechtrees.augment import AugmentationConfig, augment_corpus
from speechtrees.treebank import parse_trees, serialize, yield_leaves

text = resources.files("speechtrees").joinpath("data/fixture.mrg").read_text()
corpus = parse_trees(text)
config = AugmentationConfig()
print(len(corpus), "source trees")

# %% [markdown]
# Ten passes over the corpus give a well-mixed evaluation set.

# %%
result = augment_corpus(corpus, config, seed=17, epoch=0, iterations=10)
print(len(result.trees), "augmented trees")
print("grouping draws:", dict(result.drawn_counts()))
print("built groups:  ", dict(result.category_counts()))

for tree in result.trees[:3]:
    print(serialize(tree))

# %% [markdown]
# Inserted material by kind, summed over the edit logs.

# %%
kinds = Counter(edit.kind for log in result.logs for edit in log)
print(dict(kinds))

tags = Counter(leaf.tag for t in result.trees for leaf in yield_leaves(t))
print("PT:", tags["PT"], " UH:", tags["UH"], " #:", tags["#"])

# %% [markdown]
# A config file can override any rate, e.g. `{"p_filler": 0.25}`; the
# `speechtrees augment` command writes the output plus a manifest recording
# the seed, the full config and its hash.
