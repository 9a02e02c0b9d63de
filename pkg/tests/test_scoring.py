import math

import pytest
from hypothesis import given, strategies as st

from oracles import exhaustive_match, random_pairs
from speechtrees.scoring import (
    AlignmentError,
    Score,
    format_dysfluency_report,
    format_pos_report,
    propagate_re,
    read_restart_starts,
    repetition_runs,
    round_pct,
    score_brackets,
    score_dysfluency,
    score_pos,
    score_repetition,
    score_repetition_by_length,
    score_restart,
)
from speechtrees.treebank import Node, parse_tree, serialize


def tags(s):
    return s.split()


# POS

def test_pos_identity():
    r = score_pos([tags("DT NN")], [tags("DT NN")])
    assert r.accuracy == 100
    assert r.per_tag["DT"].f1 == 100 and r.per_tag["NN"].f1 == 100


def test_pos_hand_case():
    r = score_pos([tags("DT NN UH")], [tags("DT JJ UH")])
    assert round_pct(r.accuracy) == 66.67
    assert r.per_tag["NN"].f1 == 0
    assert r.per_tag["JJ"].f1 == 0 and r.per_tag["JJ"].predicted == 1 and r.per_tag["JJ"].gold == 0
    assert r.per_tag["UH"].f1 == 100


def test_pos_strip_re():
    assert score_pos([tags("DT_RE DT")], [tags("DT DT")], strip_re_tags=True).accuracy == 100
    assert score_pos([tags("DT_RE DT")], [tags("DT DT")]).accuracy == 50


def test_pos_accepts_pairs_and_objects():
    gold = [[("the", "DT"), ("dog", "NN")]]
    pred = [propagate_re(parse_tree("(S (DT the) (NN dog))"))]
    assert score_pos(gold, pred).accuracy == 100


def test_pos_alignment_errors():
    with pytest.raises(AlignmentError, match="sentence 1"):
        score_pos([["DT"], ["DT", "NN"]], [["DT"], ["DT"]])
    with pytest.raises(AlignmentError):
        score_pos([["DT"]], [])


def test_pos_report_table():
    text = format_pos_report(score_pos([tags("DT NN UH")], [tags("DT JJ UH")]))
    assert "66.67" in text and text.splitlines()[0].split()[:3] == ["tag", "#", "gold"]


# Brackets

def test_brackets_identity():
    t = [parse_tree("(S (NP (DT a) (NN b)) (VP (VB c)) (. .))")]
    s = score_brackets(t, t)
    assert (s.precision, s.recall, s.f1) == (100, 100, 100)


def test_brackets_hand_fixture():
    gold = [parse_tree("(S (NP (DT a) (NN b)) (VP (VB c)))")]
    pred = [parse_tree("(S (NP (DT a)) (VP (NN b) (VB c)))")]
    s = score_brackets(gold, pred)
    assert (s.matched, s.gold, s.predicted) == (1, 3, 3)
    assert s.to_dict()["precision"] == s.to_dict()["recall"] == s.to_dict()["f1"] == 33.33


def test_brackets_multiset():
    gold = [parse_tree("(S (NP (NP (DT a) (NN b))) (VP (VB c)))")]
    pred = [parse_tree("(S (NP (DT a) (NN b)) (VP (VB c)))")]
    s = score_brackets(gold, pred)
    assert (s.matched, s.gold, s.predicted) == (3, 4, 3)


def test_brackets_yield_mismatch():
    with pytest.raises(AlignmentError, match="tree 0"):
        score_brackets([parse_tree("(S (NN a))")], [parse_tree("(S (NN b))")])


def test_brackets_punctuation_is_not_a_yield_difference():
    gold = [parse_tree("(S (NN a) (. .))")]
    pred = [parse_tree("(S (NN a))")]
    assert score_brackets(gold, pred).f1 == 100


def test_brackets_match_bruteforce_oracle():
    for gold, pred in random_pairs(300, seed=1):
        s = score_brackets([gold], [pred])
        assert (s.matched, s.gold, s.predicted) == exhaustive_match(serialize(gold), serialize(pred))


@given(st.integers(min_value=0, max_value=10_000))
def test_bracket_symmetry(seed):
    (gold, pred), = random_pairs(1, seed=seed)
    a = score_brackets([gold], [pred])
    b = score_brackets([pred], [gold])
    assert a.precision == b.recall and a.recall == b.precision and a.f1 == b.f1


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_f1_identities(matched, extra_gold, extra_pred):
    s = Score(matched + extra_pred, matched + extra_gold, matched, matched)
    p, r, f = s.precision, s.recall, s.f1
    assert 0 <= f <= max(p, r) + 1e-12
    if p + r:
        assert math.isclose(f, 2 * p * r / (p + r), abs_tol=1e-9)
    else:
        assert f == 0


# _RE propagation

def test_propagate_re():
    t = parse_tree("(S (EDITED_REP (DT The=) (NN percentage=)) (NP (DT The) (NN percentage)))")
    assert [leaf.tag for leaf in propagate_re(t)] == ["DT_RE", "NN_RE", "DT", "NN"]


def test_propagate_re_comma_and_plain_tree():
    t = parse_tree("(S (EDITED_REP (DT a) (, ,)) (NN a))")
    assert [leaf.tag for leaf in propagate_re(t)] == ["DT_RE", ",_RE", "NN"]
    plain = parse_tree("(S (NP (DT a)) (VP (VB b)))")
    assert [leaf.tag for leaf in propagate_re(plain)] == ["DT", "VB"]


def test_propagate_re_nested_and_idempotent():
    t = parse_tree("(S (EDITED_REP (EDITED_REP (DT a)) (NN b)) (NN c))")
    once = propagate_re(t)
    assert [leaf.tag for leaf in once] == ["DT_RE", "NN_RE", "NN"]
    again = propagate_re(Node("S", (Node("EDITED_REP", tuple(once[:2])), once[2])))
    assert again == once


# Repetition scoring

def test_repetition_token_level():
    s = score_repetition([tags("A_RE B_RE C D")], [tags("A B_RE C_RE D")])
    assert (round_pct(s.precision), round_pct(s.recall), round_pct(s.f1)) == (50.0, 50.0, 50.0)


def test_repetition_identity_and_no_predictions():
    assert score_repetition([tags("A_RE B")], [tags("A_RE B")]).f1 == 100
    s = score_repetition([tags("A_RE B")], [tags("A B")])
    assert (s.precision, s.recall, s.f1) == (0, 0, 0)


def test_runs():
    assert repetition_runs(tags("A_RE B_RE C D_RE")) == [(0, 2), (3, 4)]
    assert repetition_runs(tags("A B")) == []


def test_by_length_exact_match():
    b = score_repetition_by_length([tags("A_RE B_RE C")], [tags("A_RE B_RE C")])
    assert (b["2"].precision, b["2"].recall, b["2"].f1, b["2"].gold) == (100, 100, 100, 1)


def test_by_length_mismatch():
    b = score_repetition_by_length([tags("A_RE B_RE C_RE D")], [tags("A_RE B_RE C D")])
    assert b["3"].gold == 1 and b["3"].recall == 0
    assert b["2"].predicted == 1 and b["2"].precision == 0


def test_by_length_long_runs_and_empty():
    b = score_repetition_by_length([tags("A_RE B_RE C_RE D_RE E_RE")], [tags("A_RE B_RE C_RE D_RE E_RE")])
    assert b[">=4"].f1 == 100 and b[">=4"].gold == 1
    empty = score_repetition_by_length([tags("A B")], [tags("A B")])
    assert all(s.gold == 0 and s.f1 == 0 for s in empty.values())


def test_by_length_bucket_counts_sum_to_runs():
    gold = [tags("A_RE B C_RE D_RE E F_RE G_RE H_RE I_RE J_RE")]
    b = score_repetition_by_length(gold, gold)
    assert sum(s.gold for s in b.values()) == len(repetition_runs(gold[0])) == 3


# Restart scoring

RES = "(S (EDITED_RES (NP (DT the) (NN dog)) (VP (VBD ran)) (# #)) (S (NP (PRP it)) (VP (VBD sat))))"


def test_restart_containment_hit():
    s = score_restart([parse_tree(RES)], [{2}])
    assert (s.precision, s.recall, s.f1) == (100, 100, 100)


def test_restart_miss():
    t = parse_tree("(S (EDITED_RES (DT the) (NN dog)) (S (NP (PRP it)) (VP (VBD sat) (RB down) (. .))))")
    s = score_restart([t], [{5}])
    assert (s.precision, s.recall) == (0, 0)


def test_restart_two_spans_one_start():
    t = parse_tree("(S (EDITED_RES (DT a) (NN b)) (S (EDITED_RES (DT a) (NN b) (NN c)) (VB d)))")
    # spans [0,2) and [2,5); put the start at 1, covered only by the first
    s = score_restart([t], [{1}])
    assert (s.correct_pred, s.predicted) == (1, 2)
    # both contain the start when nested: outer EDITED_RES around another
    t2 = parse_tree("(S (EDITED_RES (EDITED_RES (DT a) (NN b)) (NN c)) (VB d))")
    s2 = score_restart([t2], [{0}])
    assert (s2.precision, s2.recall, s2.correct_gold) == (100, 100, 1)


def test_restart_errors():
    with pytest.raises(AlignmentError):
        score_restart([parse_tree(RES)], [])
    with pytest.raises(AlignmentError):
        score_restart([parse_tree(RES)], [{99}])


def test_restart_file_format():
    assert read_restart_starts("2 5\n\n0\n") == [{2, 5}, set(), {0}]


def test_dysfluency_report():
    pred = [parse_tree("(S (EDITED_REP (DT the=)) (NP (DT the) (NN dog)) (VP (VBD ran)))")]
    gold = [tags("DT_RE DT NN VBD")]
    r = score_dysfluency(gold, pred, [set()])
    assert r.repetition.f1 == 100 and r.by_length["1"].f1 == 100
    assert r.restart.gold == 0
    text = format_dysfluency_report(r, by_length=True)
    assert "repetition" in text and ">=4" in text


def test_round_half_up():
    assert round_pct(2 / 3 * 100) == 66.67
    assert round_pct(100 / 3) == 33.33
    assert round_pct(0.125) == 0.13
