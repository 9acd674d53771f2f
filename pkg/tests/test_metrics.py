from __future__ import annotations

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings

from conftest import RS3_PATHS
from gcdtkit.corpus_io import parse_rs3, serialize_rs3
from gcdtkit.errors import CoverageMismatch, EduMismatch
from gcdtkit.metrics import (
    EMPTY_BOUNDARY_SCORES,
    EMPTY_PARSEVAL_SCORES,
    LEVELS,
    Counts,
    boundary_scores,
    parseval_scores,
)
from gcdtkit.rst_model import Edu, RstTree, leaf, multinuc_node, span_node
from gcdtkit.segmenter import EduSpan
from oracles import oracle_constituents, oracle_prf
from strategies import tree_pairs

SMALL = [p for p in RS3_PATHS if len(parse_rs3(p.read_text(encoding="utf-8")).edus) <= 5]


def all_trees(first: int, last: int, ids):
    """Every binary tree over EDUs first..last, with each nuclearity pattern."""
    if first == last:
        yield leaf(str(first), first)
        return
    for cut in range(first + 1, last + 1):
        for left in all_trees(first, cut - 1, ids):
            for right in all_trees(cut, last, ids):
                yield span_node(str(next(ids)), left, (right, "elaboration-additional"))
                yield span_node(str(next(ids)), right, (left, "context-background"))
                yield multinuc_node(str(next(ids)), "joint-list", left, right)


@lru_cache(maxsize=None)
def candidates(n: int) -> tuple[RstTree, ...]:
    edus = [Edu(f"e{i}", (0,)) for i in range(1, n + 1)]
    # internal ids come from one counter, so they never collide with leaves
    return tuple(RstTree(root, edus) for root in all_trees(1, n, itertools.count(n + 1)))


def _check_against_oracle(gold_xml: str, pred_xml: str) -> None:
    got = parseval_scores(parse_rs3(gold_xml), parse_rs3(pred_xml))
    g, p = oracle_constituents(gold_xml), oracle_constituents(pred_xml)
    for level in LEVELS:
        counts = getattr(got, level)
        assert (counts.precision, counts.recall, counts.f1) == oracle_prf(g[level], p[level]), level


def _with_texts(tree: RstTree, edus) -> str:
    return serialize_rs3(RstTree(tree.root, edus))


@pytest.mark.parametrize("path", SMALL, ids=lambda p: p.stem)
def test_parseval_matches_oracle_on_every_bracketing(path):
    gold_xml = path.read_text(encoding="utf-8")
    gold = parse_rs3(gold_xml)
    for cand in candidates(len(gold.edus)):
        pred_xml = _with_texts(cand, gold.edus)
        _check_against_oracle(gold_xml, pred_xml)
        _check_against_oracle(pred_xml, gold_xml)


def test_small_fixture_set_is_not_trivial():
    assert len(SMALL) >= 8
    assert max(len(parse_rs3(p.read_text(encoding="utf-8")).edus) for p in SMALL) == 5


@settings(max_examples=200, deadline=None)
@given(tree_pairs())
def test_parseval_matches_oracle_on_random_pairs(pair):
    a, b = pair
    _check_against_oracle(serialize_rs3(a), serialize_rs3(b))


@settings(max_examples=200, deadline=None)
@given(tree_pairs())
def test_parseval_invariants(pair):
    a, b = pair
    ab, ba = parseval_scores(a, b), parseval_scores(b, a)
    for level in LEVELS:
        x, y = getattr(ab, level), getattr(ba, level)
        assert x.precision == y.recall and x.recall == y.precision and x.f1 == pytest.approx(y.f1)
        assert 0.0 <= x.f1 <= 1.0
    assert ab.span.true_pos >= ab.nuclearity.true_pos >= ab.relation.true_pos
    assert parseval_scores(a, a).relation_f1 == 1.0


def test_parseval_hand_cases():
    edus = [Edu(t, (0,)) for t in "甲乙丙"]
    left = RstTree(span_node("5", span_node("4", leaf("1", 1), (leaf("2", 2), "causal-cause")),
                             (leaf("3", 3), "causal-cause")), edus)
    right = RstTree(span_node("5", leaf("1", 1),
                              (span_node("4", leaf("2", 2), (leaf("3", 3), "causal-cause")), "causal-cause")), edus)
    s = parseval_scores(left, right)
    # the root keeps its span but its children differ, so only spans agree
    assert (s.span_f1, s.nuclearity_f1, s.relation_f1) == (0.5, 0.0, 0.0)
    relabelled = RstTree(span_node("5", span_node("4", leaf("1", 1), (leaf("2", 2), "causal-result")),
                                   (leaf("3", 3), "causal-cause")), edus)
    s = parseval_scores(left, relabelled)
    assert (s.span_f1, s.nuclearity_f1, s.relation_f1) == (1.0, 1.0, 0.5)


def test_parseval_edu_mismatch():
    a = RstTree(leaf("1", 1), [Edu("甲")])
    with pytest.raises(EduMismatch):
        parseval_scores(a, RstTree(leaf("1", 1), [Edu("乙")]))
    two = RstTree(multinuc_node("3", "joint-list", leaf("1", 1), leaf("2", 2)), [Edu("甲"), Edu("乙")])
    with pytest.raises(EduMismatch):
        parseval_scores(a, two)
    # whitespace differences are not a mismatch
    assert parseval_scores(a, RstTree(leaf("1", 1), [Edu(" 甲 ")])).span_f1 == 1.0


def test_parseval_pooling():
    edus = [Edu(t, (0,)) for t in "甲乙丙"]
    t = RstTree(multinuc_node("4", "joint-list", leaf("1", 1), leaf("2", 2), leaf("3", 3)), edus)
    one = parseval_scores(t, t)
    assert (one + EMPTY_PARSEVAL_SCORES) == one
    assert (one + one).span == Counts(2, 2, 2)
    assert one.to_dict()["relation"]["f1"] == 1.0


# -- boundaries ---------------------------------------------------------------

def spans(*items) -> list[EduSpan]:
    return [EduSpan(s, a, b) for s, a, b in items]


# (gold, pred, true_pos, pred_total, gold_total), counted by hand
BOUNDARY_CASES = [
    (spans((0, 1, 2), (0, 3, 6), (0, 7, 9)), spans((0, 1, 2), (0, 3, 7), (0, 8, 9)), 1, 2, 2),
    (spans((0, 1, 5)), spans((0, 1, 5)), 0, 0, 0),
    (spans((0, 1, 5)), spans((0, 1, 2), (0, 3, 5)), 0, 1, 0),
    (spans((0, 1, 3), (0, 4, 5), (1, 1, 4)), spans((0, 1, 5), (1, 1, 2), (1, 3, 4)), 0, 1, 1),
    (spans((0, 1, 1), (0, 2, 2), (0, 3, 3), (2, 1, 3), (2, 4, 6)),
     spans((0, 1, 1), (0, 2, 3), (2, 1, 3), (2, 4, 4), (2, 5, 6)), 2, 3, 3),
]


@pytest.mark.parametrize("gold,pred,tp,np_,ng", BOUNDARY_CASES)
def test_boundary_hand_counts(gold, pred, tp, np_, ng):
    got = boundary_scores(gold, pred)
    assert got.counts == Counts(tp, np_, ng)
    assert boundary_scores(pred, gold).counts == Counts(tp, ng, np_)


def test_boundary_values():
    s = boundary_scores(*BOUNDARY_CASES[0][:2])
    assert (s.precision, s.recall, s.f1) == (0.5, 0.5, 0.5)
    empty = boundary_scores(*BOUNDARY_CASES[1][:2])
    assert (empty.precision, empty.recall, empty.f1) == (1.0, 1.0, 1.0)
    one_sided = boundary_scores(*BOUNDARY_CASES[2][:2])
    assert (one_sided.precision, one_sided.recall, one_sided.f1) == (0.0, 0.0, 0.0)
    assert s + EMPTY_BOUNDARY_SCORES == s
    assert s.to_dict()["true_pos"] == 1


def test_boundary_coverage_mismatch():
    with pytest.raises(CoverageMismatch):
        boundary_scores(spans((0, 1, 5)), spans((0, 1, 4)))
    with pytest.raises(CoverageMismatch):
        boundary_scores(spans((0, 1, 5)), spans((1, 1, 5)))
