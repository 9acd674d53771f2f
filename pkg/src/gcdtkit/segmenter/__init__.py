"""Rule-based EDU segmentation of dependency-parsed sentences.

Every rule reports candidates of two polarities. A boundary survives at a
position when at least one trigger fires there and no suppression does.
"""

from __future__ import annotations

import functools
from typing import Sequence

from ..corpus_io.conllx import Token
from ..corpus_io.document import AnalyzedDocument
from ..errors import PreconditionFailed
from ..lexicons import Lexicon, default_lexicon, load_lexicon
from .model import (
    PARSE_RULES,
    RULE_IDS,
    SUPPRESS,
    TRIGGER,
    BoundaryCandidate,
    EduSpan,
    SegmenterConfig,
    SentenceAnalysis,
)
from .rules import run_rules
from .view import SentenceView

DEFAULT_CONFIG = SegmenterConfig()


@functools.lru_cache(maxsize=8)
def _lexicon_for(lexicon_dir: str | None) -> Lexicon:
    return load_lexicon(lexicon_dir) if lexicon_dir else default_lexicon()


def evaluate_rules(
    sentence: Sequence[Token], config: SegmenterConfig = DEFAULT_CONFIG
) -> list[BoundaryCandidate]:
    return list(analyze_sentence(sentence, config=config).candidates)


def resolve(
    candidates: Sequence[BoundaryCandidate], sentence_len: int, sentence_index: int = 0
) -> list[EduSpan]:
    if sentence_len <= 0:
        return []
    triggers: dict[int, set[str]] = {}
    suppressed = set()
    for c in candidates:
        if c.polarity == SUPPRESS:
            suppressed.add(c.position)
        elif c.polarity == TRIGGER:
            triggers.setdefault(c.position, set()).add(c.rule)
    cuts = sorted(p for p in triggers if 1 < p <= sentence_len and p not in suppressed)
    starts = [1] + cuts
    ends = [p - 1 for p in cuts] + [sentence_len]
    spans = []
    for a, b in zip(starts, ends):
        rules = triggers.get(a, set()) | triggers.get(b + 1, set())
        spans.append(EduSpan(sentence_index, a, b, tuple(sorted(rules, key=_rule_key))))
    return spans


def _rule_key(rule: str) -> tuple[str, int]:
    return (rule[0], int(rule[1:]) if rule[1:].isdigit() else 0)


def analyze_sentence(
    sentence: Sequence[Token], sentence_index: int = 0, config: SegmenterConfig = DEFAULT_CONFIG
) -> SentenceAnalysis:
    view = SentenceView(sentence)
    degraded = view.n > 0 and not view.parsed
    warnings = ()
    if degraded:
        if config.require_parse:
            raise PreconditionFailed(f"sentence {sentence_index} has no dependency parse")
        warnings = (
            f"sentence {sentence_index}: no dependency parse; "
            f"rules {', '.join(sorted(PARSE_RULES, key=_rule_key))} and dependency-based variants are off",
        )
    candidates = run_rules(view, _lexicon_for(config.lexicon_dir), config.disabled_rules)
    spans = resolve(candidates, view.n, sentence_index)
    return SentenceAnalysis(candidates, tuple(spans), degraded, warnings)


def segment_sentence(
    sentence: Sequence[Token], sentence_index: int = 0, config: SegmenterConfig = DEFAULT_CONFIG
) -> list[EduSpan]:
    return list(analyze_sentence(sentence, sentence_index, config).spans)


def segment_document(doc: AnalyzedDocument, config: SegmenterConfig = DEFAULT_CONFIG) -> list[EduSpan]:
    out: list[EduSpan] = []
    for i, sentence in enumerate(doc.sentences):
        out.extend(segment_sentence(sentence, i, config))
    return out


def boundaries(spans: Sequence[EduSpan]) -> set[tuple[int, int]]:
    """Sentence-internal split positions as ``(sentence_index, position)``."""
    return {(s.sentence_index, s.first_token) for s in spans if s.first_token > 1}


__all__ = [
    "BoundaryCandidate",
    "EduSpan",
    "RULE_IDS",
    "SUPPRESS",
    "SegmenterConfig",
    "SentenceAnalysis",
    "TRIGGER",
    "analyze_sentence",
    "boundaries",
    "evaluate_rules",
    "resolve",
    "segment_document",
    "segment_sentence",
]
