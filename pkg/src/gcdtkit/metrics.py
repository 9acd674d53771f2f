"""Agreement scores between two segmentations or two RST trees.

All scores are micro-averaged: per-document scores keep their raw counts,
and adding two score objects pools the counts before recomputing F1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import CoverageMismatch, EduMismatch
from .rst_model.tree import RstTree
from .segmenter.model import EduSpan


def _ratio(hits: int, total: int, other_total: int) -> float:
    if total == 0:
        return 1.0 if other_total == 0 else 0.0
    return hits / total


def _f1(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


@dataclass(frozen=True)
class Counts:
    true_pos: int
    pred_total: int
    gold_total: int

    @property
    def precision(self) -> float:
        return _ratio(self.true_pos, self.pred_total, self.gold_total)

    @property
    def recall(self) -> float:
        return _ratio(self.true_pos, self.gold_total, self.pred_total)

    @property
    def f1(self) -> float:
        return _f1(self.precision, self.recall)

    def __add__(self, other: Counts) -> Counts:
        return Counts(
            self.true_pos + other.true_pos,
            self.pred_total + other.pred_total,
            self.gold_total + other.gold_total,
        )

    @classmethod
    def compare(cls, gold: Iterable[Hashable], pred: Iterable[Hashable]) -> Counts:
        g, p = Counter(gold), Counter(pred)
        return cls(sum((g & p).values()), sum(p.values()), sum(g.values()))


@dataclass(frozen=True)
class BoundaryScores:
    counts: Counts

    @property
    def precision(self) -> float:
        return self.counts.precision

    @property
    def recall(self) -> float:
        return self.counts.recall

    @property
    def f1(self) -> float:
        return self.counts.f1

    def __add__(self, other: BoundaryScores) -> BoundaryScores:
        return BoundaryScores(self.counts + other.counts)

    def to_dict(self) -> dict:
        c = self.counts
        return {
            "precision": self.precision, "recall": self.recall, "f1": self.f1,
            "true_pos": c.true_pos, "pred_total": c.pred_total, "gold_total": c.gold_total,
        }


EMPTY_BOUNDARY_SCORES = BoundaryScores(Counts(0, 0, 0))


def _coverage(spans: Sequence[EduSpan]) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for s in spans:
        out.setdefault(s.sentence_index, set()).update(range(s.first_token, s.last_token + 1))
    return out


def _splits(spans: Sequence[EduSpan], coverage: dict[int, set[int]]) -> set[tuple[int, int]]:
    return {
        (s.sentence_index, s.first_token)
        for s in spans
        if s.first_token != min(coverage[s.sentence_index])
    }


def boundary_scores(gold: Sequence[EduSpan], pred: Sequence[EduSpan]) -> BoundaryScores:
    """Compare sentence-internal split positions; sentence edges do not count."""
    cov_gold, cov_pred = _coverage(gold), _coverage(pred)
    if cov_gold != cov_pred:
        diff = sorted(set(cov_gold) ^ set(cov_pred)) or sorted(
            i for i in cov_gold if cov_gold[i] != cov_pred[i]
        )
        raise CoverageMismatch(f"segmentations cover different tokens in sentences {diff}")
    return BoundaryScores(Counts.compare(_splits(gold, cov_gold), _splits(pred, cov_pred)))


LEVELS = ("span", "nuclearity", "relation")


@dataclass(frozen=True)
class ParsevalScores:
    span: Counts
    nuclearity: Counts
    relation: Counts

    @property
    def span_f1(self) -> float:
        return self.span.f1

    @property
    def nuclearity_f1(self) -> float:
        return self.nuclearity.f1

    @property
    def relation_f1(self) -> float:
        return self.relation.f1

    def __add__(self, other: ParsevalScores) -> ParsevalScores:
        return ParsevalScores(
            self.span + other.span,
            self.nuclearity + other.nuclearity,
            self.relation + other.relation,
        )

    def to_dict(self) -> dict:
        out = {}
        for level in LEVELS:
            c: Counts = getattr(self, level)
            out[level] = {
                "precision": c.precision, "recall": c.recall, "f1": c.f1,
                "true_pos": c.true_pos, "pred_total": c.pred_total, "gold_total": c.gold_total,
            }
        return out


EMPTY_PARSEVAL_SCORES = ParsevalScores(Counts(0, 0, 0), Counts(0, 0, 0), Counts(0, 0, 0))


def constituents(tree: RstTree) -> dict[str, list[tuple]]:
    """Labelled constituents of every internal node, one list per level.

    A node's nuclearity label is the span and role of each child; its
    relation label adds each child's relation. same-unit groups count as
    ordinary multinuclear nodes.
    """
    out: dict[str, list[tuple]] = {level: [] for level in LEVELS}
    for node in tree.nodes():
        if node.is_leaf:
            continue
        roles = tuple((c.node.span, c.role) for c in node.children)
        rels = tuple((c.node.span, c.role, c.relation) for c in node.children)
        out["span"].append(node.span)
        out["nuclearity"].append((node.span, roles))
        out["relation"].append((node.span, rels))
    return out


def _squashed(tree: RstTree) -> list[str]:
    return ["".join(e.text.split()) for e in tree.edus]


def parseval_scores(gold: RstTree, pred: RstTree) -> ParsevalScores:
    if len(gold.edus) != len(pred.edus):
        raise EduMismatch(f"gold has {len(gold.edus)} EDUs, prediction has {len(pred.edus)}")
    for i, (a, b) in enumerate(zip(_squashed(gold), _squashed(pred)), start=1):
        if a != b:
            raise EduMismatch(f"EDU {i} text differs between gold and prediction")
    g, p = constituents(gold), constituents(pred)
    return ParsevalScores(*(Counts.compare(g[level], p[level]) for level in LEVELS))

