"""Augmentation rates and lexicons.

Defaults are the hand-set frequencies used to make newswire trees look like
transcribed clinical speech. A JSON config file may override any field by
name; absent fields keep their defaults and unknown fields are rejected.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from ..treebank import PUNCTUATION_TAGS

GROUPING_CATEGORIES = ("none", "combine2", "combine3", "restart2", "restart3")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AugmentationConfig:
    p_partial: float = 0.20
    partial_len_3: int = 2
    partial_len_4: Mapping[int, float] = field(default_factory=lambda: {2: 0.5, 3: 0.5})
    partial_len_gt4: Mapping[int, float] = field(default_factory=lambda: {2: 0.3, 3: 0.3, 4: 0.4})
    p_filler: float = 0.10
    filler_lexicon: tuple = ("uh", "um", "eh", "mhm")
    p_repetition: float = 0.30
    repetition_len_dist: Mapping[int, float] = field(
        default_factory=lambda: {1: 1 / 3, 2: 1 / 3, 3: 1 / 3}
    )
    p_eq_marker: float = 0.70
    p_comma: float = 0.20
    p_vbz: float = 0.50
    grouping_dist: Mapping[str, float] = field(
        default_factory=lambda: {
            "none": 0.65,
            "combine2": 0.20,
            "combine3": 0.10,
            "restart2": 0.02,
            "restart3": 0.03,
        }
    )
    restart_keep_min: int = 3
    restart_keep_max: int = 6
    p_hash: float = 0.50
    punctuation_tags: frozenset = PUNCTUATION_TAGS
    proper_noun_tags: frozenset = frozenset({"NNP", "NNPS"})
    min_partial_word_len: int = 3

    def __post_init__(self):
        set_ = lambda name, value: object.__setattr__(self, name, value)  # noqa: E731
        set_("filler_lexicon", tuple(self.filler_lexicon))
        set_("punctuation_tags", frozenset(self.punctuation_tags))
        set_("proper_noun_tags", frozenset(self.proper_noun_tags))
        for name in ("partial_len_4", "partial_len_gt4", "repetition_len_dist"):
            dist = {int(k): float(v) for k, v in dict(getattr(self, name)).items()}
            set_(name, dict(sorted(dist.items())))
        grouping = {str(k): float(v) for k, v in dict(self.grouping_dist).items()}
        if set(grouping) != set(GROUPING_CATEGORIES):
            raise ConfigError(
                f"grouping_dist must have exactly the keys {list(GROUPING_CATEGORIES)}"
            )
        set_("grouping_dist", {k: grouping[k] for k in GROUPING_CATEGORIES})
        self._validate()

    def _validate(self):
        for name in ("p_partial", "p_filler", "p_repetition", "p_eq_marker",
                     "p_comma", "p_vbz", "p_hash"):
            p = getattr(self, name)
            if not (0.0 <= p <= 1.0):
                raise ConfigError(f"{name}={p} is not a probability")
        for name in ("partial_len_4", "partial_len_gt4", "repetition_len_dist", "grouping_dist"):
            dist = getattr(self, name)
            if not dist:
                raise ConfigError(f"{name} is empty")
            if any(not (0.0 <= v <= 1.0) for v in dist.values()):
                raise ConfigError(f"{name} has a weight outside [0, 1]")
            if not math.isclose(sum(dist.values()), 1.0, rel_tol=0, abs_tol=1e-9):
                raise ConfigError(f"{name} sums to {sum(dist.values())}, not 1")
        if any(k < 1 for k in self.repetition_len_dist):
            raise ConfigError("repetition lengths must be positive")
        if not 1 <= self.partial_len_3 <= 2:
            raise ConfigError("partial_len_3 must leave a proper prefix of a 3-letter word")
        if any(not 1 <= k <= 3 for k in self.partial_len_4):
            raise ConfigError("partial_len_4 lengths must be in 1..3")
        if any(k < 1 for k in self.partial_len_gt4):
            raise ConfigError("partial_len_gt4 lengths must be positive")
        if not 1 <= self.restart_keep_min <= self.restart_keep_max:
            raise ConfigError("need 1 <= restart_keep_min <= restart_keep_max")
        if not self.filler_lexicon:
            raise ConfigError("filler_lexicon is empty")
        if self.min_partial_word_len < 3:
            raise ConfigError("min_partial_word_len must be at least 3")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AugmentationConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict:
        """JSON-ready view; sets become sorted lists."""
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, frozenset):
                value = sorted(value)
            elif isinstance(value, tuple):
                value = list(value)
            elif isinstance(value, dict):
                value = {str(k): v for k, v in value.items()}
            out[f.name] = value
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def load_config(path=None) -> AugmentationConfig:
    if path is None:
        return AugmentationConfig()
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return AugmentationConfig.from_dict(data)
