# %% [markdown]
# # One tree, four passes
#
# Walk a single newswire tree through the tree-internal augmentations one
# pass at a time, using a scripted list of draws so the result is fixed.
# Every random choice is one uniform number in [0, 1); a value below the
# configured probability means "apply".

# %%
from speechtrees.augment import (
    AugmentationConfig,
    ScriptedDecisions,
    apply_filler,
    apply_partial,
    apply_repetition,
    apply_vbz,
    revert_tree,
)
from speechtrees.treebank import parse_tree, serialize

config = AugmentationConfig()
tree = parse_tree("""
(S (NP-SBJ (DT The) (NN percentage) (NN change))
   (VP (VBZ is) (PP-PRD (IN since) (NP (NN year-end))))
   (. .))
""")
print(serialize(tree))

# %% [markdown]
# Repetition visits NP-SBJ, VP, PP-PRD and the inner NP in pre-order. For a
# hit it draws a length (0.5 picks 2 of {1, 2, 3}) and then, per copied
# word, whether to add `=` and whether to follow it with a comma.

# %%
HIT, MISS = 0.0, 0.99
draws = ScriptedDecisions([
    HIT, 0.5, HIT, MISS, HIT, HIT,   # NP-SBJ: copy "The= percentage= ,"
    MISS,                            # VP
    HIT, 0.5, MISS, MISS, HIT, MISS,  # PP-PRD: copy "since year-end="
    MISS,                            # NP
    HIT,                             # VBZ: is -> 's
    MISS, MISS, HIT, 0.7, MISS, MISS,  # partial: "chan-" before "change"
    MISS, HIT, 0.3, MISS, HIT, 0.0, MISS, MISS,  # fillers "um", "uh"
])

log = []
current = tree
for step in (apply_repetition, apply_vbz, apply_partial, apply_filler):
    current, edits = step(current, config, draws)
    log.extend(edits)
    print(f"{step.__name__:>17}: {serialize(current)}")

# %% [markdown]
# The edit log records every change with its position, so the source tree
# can be recovered exactly.

# %%
for edit in log:
    print(edit.kind, edit.path)
assert revert_tree(current, log) == tree
print("reverted OK")
