"""Speech-like dysfluency augmentation for constituency trees."""
# ruff: noqa: F401

from .config import GROUPING_CATEGORIES, AugmentationConfig, ConfigError, load_config
from .decisions import (
    DecisionSource,
    ScriptedDecisions,
    ScriptExhausted,
    SeededDecisions,
    mix64,
    stream_seed,
)
from .edits import (
    COMBINE,
    EDIT_KINDS,
    FILLER,
    PARTIAL,
    REPETITION,
    RESTART,
    VBZ,
    Edit,
    RevertError,
    revert,
    revert_tree,
)
from .grouping import (
    AugmentedCorpus,
    Group,
    augment_corpus,
    build_group,
    combine_trees,
    group_corpus,
    make_restart,
)
from .tree_ops import (
    apply_filler,
    apply_partial,
    apply_repetition,
    apply_vbz,
    augment_tree,
    filler_eligible,
    partial_eligible,
    vbz_eligible,
)
