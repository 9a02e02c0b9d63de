"""Scoring parser output: POS tags, labelled brackets and dysfluencies.

All scores are percentages. Precision, recall and F1 are 0 whenever their
denominator is 0. Reports keep the raw counts and compute scores on demand;
``to_dict()`` rounds to two decimals, half up, for tables and JSON.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional, Sequence

from .treebank import PUNCTUATION_TAGS, Leaf, Tree, labeled_spans, yield_leaves

RE_SUFFIX = "_RE"
LENGTH_BUCKETS = ("1", "2", "3", ">=4")


class AlignmentError(ValueError):
    """Gold and predicted data do not line up."""


def round_pct(x: float) -> float:
    return float(Decimal(repr(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _ratio(num: int, den: int) -> float:
    return 100.0 * num / den if den else 0.0


def f_measure(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r else 0.0


@dataclass(frozen=True)
class Score:
    """Precision/recall/F1 from counts.

    Precision is ``correct_pred / predicted`` and recall is
    ``correct_gold / gold``. For bracket and token scoring the two numerators
    are the same number; restart scoring counts them separately.
    """

    predicted: int = 0
    gold: int = 0
    correct_pred: int = 0
    correct_gold: int = 0

    @property
    def matched(self) -> int:
        return self.correct_pred

    @property
    def precision(self) -> float:
        return _ratio(self.correct_pred, self.predicted)

    @property
    def recall(self) -> float:
        return _ratio(self.correct_gold, self.gold)

    @property
    def f1(self) -> float:
        return f_measure(self.precision, self.recall)

    def __add__(self, other: "Score") -> "Score":
        return Score(
            self.predicted + other.predicted,
            self.gold + other.gold,
            self.correct_pred + other.correct_pred,
            self.correct_gold + other.correct_gold,
        )

    def to_dict(self, rounded: bool = True) -> dict:
        rnd = round_pct if rounded else (lambda x: x)
        return {
            "gold": self.gold,
            "predicted": self.predicted,
            "matched": self.correct_pred,
            "precision": rnd(self.precision),
            "recall": rnd(self.recall),
            "f1": rnd(self.f1),
        }


def _counts(correct: int, predicted: int, gold: int) -> Score:
    return Score(predicted, gold, correct, correct)


# POS tags

def _tag(item) -> str:
    if isinstance(item, str):
        return item
    if isinstance(item, tuple):
        return item[1]
    return item.tag


def strip_re(tag: str) -> str:
    return tag[: -len(RE_SUFFIX)] if tag.endswith(RE_SUFFIX) else tag


@dataclass
class TagScoreReport:
    per_tag: dict = field(default_factory=dict)  # tag -> Score
    total: int = 0
    correct: int = 0

    @property
    def accuracy(self) -> float:
        return _ratio(self.correct, self.total)

    def to_dict(self, rounded: bool = True) -> dict:
        rnd = round_pct if rounded else (lambda x: x)
        return {
            "total": self.total,
            "correct": self.correct,
            "accuracy": rnd(self.accuracy),
            "per_tag": {t: s.to_dict(rounded) for t, s in self.per_tag.items()},
        }


def score_pos(gold: Sequence[Sequence], pred: Sequence[Sequence], strip_re_tags: bool = False) -> TagScoreReport:
    """Position-wise tag comparison.

    Sentences are sequences of tags, ``(word, tag)`` pairs, or objects with a
    ``.tag`` attribute. Each distinct tag string is its own class, so
    ``DT_RE`` and ``DT`` differ unless ``strip_re_tags`` maps ``X_RE`` to ``X``.
    """
    if len(gold) != len(pred):
        raise AlignmentError(f"{len(gold)} gold sentences vs {len(pred)} predicted")
    gold_n, pred_n, hit = Counter(), Counter(), Counter()
    total = correct = 0
    for i, (gs, ps) in enumerate(zip(gold, pred)):
        if len(gs) != len(ps):
            raise AlignmentError(f"sentence {i}: {len(gs)} gold tokens vs {len(ps)} predicted")
        for g, p in zip(gs, ps):
            g, p = _tag(g), _tag(p)
            if strip_re_tags:
                g, p = strip_re(g), strip_re(p)
            gold_n[g] += 1
            pred_n[p] += 1
            total += 1
            if g == p:
                hit[g] += 1
                correct += 1
    tags = sorted(set(gold_n) | set(pred_n), key=lambda t: (-gold_n[t], -pred_n[t], t))
    per_tag = {t: _counts(hit[t], pred_n[t], gold_n[t]) for t in tags}
    return TagScoreReport(per_tag, total, correct)


# Brackets

def _words_without_punct(tree: Tree, punct) -> list:
    return [leaf.word for leaf in yield_leaves(tree) if leaf.tag not in punct]


def score_brackets(
    gold: Sequence[Tree],
    pred: Sequence[Tree],
    exclude_preterminals: bool = True,
    strip_function_tags: bool = True,
    punctuation_tags=PUNCTUATION_TAGS,
) -> Score:
    """Micro-averaged labelled bracket P/R/F1 with multiset span matching."""
    if len(gold) != len(pred):
        raise AlignmentError(f"{len(gold)} gold trees vs {len(pred)} predicted")
    punct = frozenset(punctuation_tags)
    total = Score()
    for i, (g, p) in enumerate(zip(gold, pred)):
        if _words_without_punct(g, punct) != _words_without_punct(p, punct):
            raise AlignmentError(f"tree {i}: gold and predicted yields differ")
        opts = dict(
            exclude_preterminals=exclude_preterminals,
            strip_function_tags=strip_function_tags,
            punctuation_tags=punct,
        )
        gs = Counter(labeled_spans(g, **opts))
        ps = Counter(labeled_spans(p, **opts))
        matched = sum((gs & ps).values())
        total += _counts(matched, sum(ps.values()), sum(gs.values()))
    return total


# Dysfluencies

def propagate_re(tree: Tree) -> list:
    """Leaves of ``tree`` with ``_RE`` added to every tag under an ``EDITED_REP``."""
    out = []

    def walk(t, inside):
        if isinstance(t, Leaf):
            if inside and not t.tag.endswith(RE_SUFFIX):
                t = Leaf(t.tag + RE_SUFFIX, t.word)
            out.append(t)
            return
        inside = inside or t.label == "EDITED_REP"
        for c in t.children:
            walk(c, inside)

    walk(tree, False)
    return out


def _is_re(item) -> bool:
    return _tag(item).endswith(RE_SUFFIX)


def _check_aligned(gold, pred):
    if len(gold) != len(pred):
        raise AlignmentError(f"{len(gold)} gold sentences vs {len(pred)} predicted")
    for i, (gs, ps) in enumerate(zip(gold, pred)):
        if len(gs) != len(ps):
            raise AlignmentError(f"sentence {i}: {len(gs)} gold tokens vs {len(ps)} predicted")


def score_repetition(gold: Sequence[Sequence], pred: Sequence[Sequence]) -> Score:
    """Token-level detection: a token is positive when its tag ends in ``_RE``."""
    _check_aligned(gold, pred)
    tp = n_gold = n_pred = 0
    for gs, ps in zip(gold, pred):
        for g, p in zip(gs, ps):
            g, p = _is_re(g), _is_re(p)
            n_gold += g
            n_pred += p
            tp += g and p
    return _counts(tp, n_pred, n_gold)


def repetition_runs(sentence: Sequence) -> list:
    """Maximal runs of ``_RE`` tokens as ``(start, end)`` pairs, end exclusive."""
    runs, start = [], None
    for i, item in enumerate(sentence):
        if _is_re(item):
            if start is None:
                start = i
        elif start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(sentence)))
    return runs


def length_bucket(n: int) -> str:
    return str(n) if n < 4 else ">=4"


def score_repetition_by_length(gold: Sequence[Sequence], pred: Sequence[Sequence]) -> dict:
    """Exact-span run matching, bucketed by run length (1, 2, 3, >=4)."""
    _check_aligned(gold, pred)
    scores = {b: Score() for b in LENGTH_BUCKETS}
    for gs, ps in zip(gold, pred):
        g_runs = set(repetition_runs(gs))
        p_runs = set(repetition_runs(ps))
        for run in g_runs:
            b = length_bucket(run[1] - run[0])
            scores[b] += Score(gold=1, correct_gold=int(run in p_runs))
        for run in p_runs:
            b = length_bucket(run[1] - run[0])
            scores[b] += Score(predicted=1, correct_pred=int(run in g_runs))
    return scores


def restart_spans(tree: Tree) -> list:
    spans = labeled_spans(tree, exclude_preterminals=True, strip_function_tags=False, punctuation_tags=())
    return [(s.start, s.end) for s in spans if s.label == "EDITED_RES"]


def score_restart(pred: Sequence[Tree], gold_starts: Sequence[Iterable[int]]) -> Score:
    """Containment scoring of predicted ``EDITED_RES`` spans against restart starts.

    A predicted span is correct if it contains at least one gold start; a
    gold start is recalled if some predicted span contains it. Token indices
    run over the full predicted yield, punctuation included.
    """
    if len(pred) != len(gold_starts):
        raise AlignmentError(f"{len(gold_starts)} gold sentences vs {len(pred)} predicted trees")
    total = Score()
    for i, (tree, starts) in enumerate(zip(pred, gold_starts)):
        starts = sorted(set(starts))
        n = len(yield_leaves(tree))
        for s in starts:
            if not 0 <= s < n:
                raise AlignmentError(f"sentence {i}: restart start {s} outside 0..{n - 1}")
        spans = restart_spans(tree)
        hit_spans = sum(any(a <= s < b for s in starts) for a, b in spans)
        recalled = sum(any(a <= s < b for a, b in spans) for s in starts)
        total += Score(len(spans), len(starts), hit_spans, recalled)
    return total


def read_restart_starts(text: str) -> list:
    """One line per sentence of space-separated 0-based indices."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        try:
            out.append({int(x) for x in line.split()})
        except ValueError as exc:
            raise AlignmentError(f"line {lineno}: {exc}") from exc
    return out


@dataclass
class DysfluencyReport:
    repetition: Score
    by_length: dict
    restart: Optional[Score] = None

    def to_dict(self, rounded: bool = True) -> dict:
        out = {
            "repetition": self.repetition.to_dict(rounded),
            "by_length": {b: s.to_dict(rounded) for b, s in self.by_length.items()},
        }
        if self.restart is not None:
            out["restart"] = self.restart.to_dict(rounded)
        return out


def score_dysfluency(gold: Sequence[Sequence], pred_trees: Sequence[Tree], restart_starts=None) -> DysfluencyReport:
    """Repetition scores from ``_RE`` tags, plus restart scores if starts are given."""
    pred = [propagate_re(t) for t in pred_trees]
    return DysfluencyReport(
        score_repetition(gold, pred),
        score_repetition_by_length(gold, pred),
        None if restart_starts is None else score_restart(pred_trees, restart_starts),
    )


# Plain-text tables

def format_table(headers: Sequence[str], rows: Iterable[Sequence]) -> str:
    rows = [[_cell(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    lines = []
    for i, r in enumerate([list(map(str, headers))] + rows):
        lines.append("  ".join(c.ljust(w) if j == 0 else c.rjust(w) for j, (c, w) in enumerate(zip(r, widths))))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{round_pct(value):.2f}"
    return str(value)


def format_pos_report(report: TagScoreReport) -> str:
    rows = [(t, s.gold, s.predicted, s.precision, s.recall, s.f1) for t, s in report.per_tag.items()]
    rows.append(("total", report.total, report.total, report.accuracy, report.accuracy, report.accuracy))
    return format_table(("tag", "# gold", "# pred", "precision", "recall", "f1"), rows)


def format_score(name: str, score: Score) -> str:
    return format_table(
        ("", "# gold", "# pred", "matched", "precision", "recall", "f1"),
        [(name, score.gold, score.predicted, score.matched, score.precision, score.recall, score.f1)],
    )


def format_dysfluency_report(report: DysfluencyReport, by_length: bool = False) -> str:
    rows = [("repetition", report.repetition)]
    if report.restart is not None:
        rows.append(("restart", report.restart))
    parts = [format_table(
        ("dysfluency", "# gold", "precision", "recall", "f1"),
        [(n, s.gold, s.precision, s.recall, s.f1) for n, s in rows],
    )]
    if by_length:
        buckets = list(report.by_length.items())
        total = sum((s for _, s in buckets), Score())
        parts.append(format_table(
            ("length", "# gold", "precision", "recall", "f1"),
            [(b, s.gold, s.precision, s.recall, s.f1) for b, s in buckets]
            + [("total", total.gold, total.precision, total.recall, total.f1)],
        ))
    return "\n\n".join(parts)
