# %% [markdown]
# # Joining sentences: run-ons and restarts
#
# Speakers rarely stop at sentence boundaries. A *combine* joins two or three
# trees with `(CC and)`; a *restart* abandons the first (or middle) sentence
# after a few words and wraps what was said under `EDITED_RES`.

# %%
from speechtrees.augment import AugmentationConfig, ScriptedDecisions, combine_trees, make_restart, revert
from speechtrees.treebank import parse_tree, serialize

config = AugmentationConfig()
first = parse_tree(
    "(S (NP-SBJ (DT The) (ADJP (RB closely) (VBN held)) (NNP Hertz) (NNP Corp.)) "
    "(VP (VBD had) (NP (NP (JJ annual) (NN revenue)))) (. .))"
)
second = parse_tree(
    "(S (NP-SBJ (NNP Hertz) (NNP Equipment)) (VP (VBZ is) (NP-PRD (DT a) (JJ major) (NN supplier))) (. .))"
)
third = parse_tree("(S (NP-SBJ (PRP It)) (VP (VBZ rents) (NP (NNS tools))) (. .))")

# %% [markdown]
# Non-final sentences lose their final punctuation and non-initial ones are
# lowercased unless they start with a proper noun.

# %%
joined, log = combine_trees([first, second, third], config)
print(serialize(joined))
assert revert(joined, log) == [first, second, third]

# %% [markdown]
# For a restart, the first draw picks how many words survive (3 to 6; 0.3
# maps to 4) and the second whether to close the restart with `(# #)`.

# %%
restart, log = make_restart([first, second], config, ScriptedDecisions([0.3, 0.0]))
print(serialize(restart))

restart3, _ = make_restart([third, first, second], config, ScriptedDecisions([0.9, 0.9]))
print(serialize(restart3))
assert revert(restart, log) == [first, second]
