from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcdtkit.corpus_io import Token
from gcdtkit.errors import ConfigError, PreconditionFailed
from gcdtkit.metrics import Counts
from gcdtkit.segmenter import (
    RULE_IDS,
    SUPPRESS,
    TRIGGER,
    BoundaryCandidate,
    SegmenterConfig,
    analyze_sentence,
    boundaries,
    evaluate_rules,
    resolve,
    segment_document,
    segment_sentence,
)
from gcdtkit.segmenter.golden import golden_corpus, golden_exclusions
from synthetic import synthetic_sentences

GOLDEN = golden_corpus()
EXCLUSIONS = golden_exclusions()


def toks(line: str) -> list[Token]:
    out = []
    for item in line.split():
        form, pos, head, rel = item.rsplit("/", 3)
        out.append(Token(len(out) + 1, form, pos, int(head), rel))
    return out


def cuts(tokens, config=SegmenterConfig()) -> list[int]:
    return [s.first_token for s in segment_sentence(tokens, config=config) if s.first_token > 1]


def _score(sentences) -> Counts:
    total = Counts(0, 0, 0)
    for g in sentences:
        pred = {p for _, p in boundaries(segment_sentence(g.tokens))}
        total += Counts.compare(g.boundaries, pred)
    return total


# -- golden corpus -------------------------------------------------------------

def test_golden_corpus_size():
    assert len(GOLDEN) >= 40
    assert sum(g.core for g in GOLDEN) >= 25
    assert len({g.id for g in GOLDEN}) == len(GOLDEN)


def test_golden_core_is_perfect():
    assert _score([g for g in GOLDEN if g.core]).f1 == 1.0


def test_golden_full_set():
    assert _score(GOLDEN).f1 >= 0.90


def test_exclusions_have_reasons_and_are_not_scored():
    ids = {g.id for g in GOLDEN}
    assert EXCLUSIONS
    for e in EXCLUSIONS:
        assert e.reason
        assert e.id not in ids


@pytest.mark.parametrize("g", [g for g in GOLDEN if g.core], ids=lambda g: g.id)
def test_golden_core_sentence(g):
    assert set(cuts(g.tokens)) == g.boundaries


# -- resolve ------------------------------------------------------------------

candidate_lists = st.integers(1, 15).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.builds(
        BoundaryCandidate,
        st.integers(-1, n + 2),
        st.sampled_from(RULE_IDS),
        st.sampled_from([TRIGGER, SUPPRESS]),
    ), max_size=12),
))


@settings(max_examples=300, deadline=None)
@given(candidate_lists)
def test_resolve_partitions_the_sentence(case):
    n, candidates = case
    spans = resolve(candidates, n, 3)
    assert spans[0].first_token == 1 and spans[-1].last_token == n
    for a, b in zip(spans, spans[1:]):
        assert b.first_token == a.last_token + 1
    assert all(len(s) >= 1 and s.sentence_index == 3 for s in spans)


@settings(max_examples=300, deadline=None)
@given(candidate_lists)
def test_suppression_dominates(case):
    n, candidates = case
    got = {s.first_token for s in resolve(candidates, n) if s.first_token > 1}
    triggered = {c.position for c in candidates if c.polarity == TRIGGER and 2 <= c.position <= n}
    suppressed = {c.position for c in candidates if c.polarity == SUPPRESS}
    assert got == triggered - suppressed


def test_resolve_trace_names_triggers():
    spans = resolve([BoundaryCandidate(3, "T4", TRIGGER), BoundaryCandidate(3, "T10", TRIGGER)], 5)
    assert [(s.first_token, s.last_token) for s in spans] == [(1, 2), (3, 5)]
    assert spans[1].trace == ("T4", "T10")


def test_resolve_empty_sentence():
    assert resolve([], 0) == []


# -- rules ------------------------------------------------------------------

REPORTED = toks("他/PN/2/nsubj 说/VV/0/root ：/PU/2/punct 我/PN/5/nsubj 来/VV/2/ccomp 了/SP/5/dep 。/PU/2/punct")
TITLE = toks(
    "我/PN/2/nsubj 读/VV/0/root 《/PU/7/punct 春天/NN/7/nsubj ，/PU/7/punct 我们/PN/7/nsubj 出发/VV/2/dobj "
    "》/PU/7/punct 。/PU/2/punct"
)
COMMA_CLAUSES = toks(
    "天气/NN/2/nsubj 很好/VA/0/root ，/PU/2/punct 我们/PN/5/nsubj 出门/VV/2/conj 。/PU/2/punct"
)


def test_attribution_colon_splits():
    assert cuts(REPORTED) == [4]
    assert "T4" in segment_sentence(REPORTED)[1].trace


def test_comma_between_clauses_splits():
    assert cuts(COMMA_CLAUSES) == [4]


def test_title_is_never_split():
    assert not any(3 < p <= 8 for p in cuts(TITLE))
    assert any(c.rule == "S7" for c in evaluate_rules(TITLE))


def test_disabled_rule():
    assert cuts(REPORTED, SegmenterConfig(disabled_rules={"T4"})) == [4]
    assert cuts(REPORTED, SegmenterConfig(disabled_rules={"T4", "T9"})) == []


def test_unknown_rule_id():
    with pytest.raises(ConfigError):
        SegmenterConfig(disabled_rules={"T99"})


def test_degraded_mode_without_parse():
    bare = [Token(t.index, t.form, t.pos) for t in COMMA_CLAUSES]
    analysis = analyze_sentence(bare, 4)
    assert analysis.degraded
    assert analysis.warnings and "sentence 4" in analysis.warnings[0]
    with pytest.raises(PreconditionFailed):
        analyze_sentence(bare, config=SegmenterConfig(require_parse=True))


def test_parsed_sentence_is_not_degraded():
    analysis = analyze_sentence(COMMA_CLAUSES)
    assert not analysis.degraded and analysis.warnings == ()


def test_candidates_are_within_range_and_sorted():
    for g in GOLDEN:
        cands = evaluate_rules(g.tokens)
        assert cands == sorted(cands)
        assert all(2 <= c.position <= len(g.tokens) for c in cands)
        assert all(c.rule in RULE_IDS for c in cands)


def test_segment_document(manual):
    doc, _ = manual("ex124")
    spans = segment_document(doc)
    assert {s.sentence_index for s in spans} == {0, 1, 2, 3}
    assert segment_document(doc) == spans


# -- properties over synthetic input ----------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_segmentation_partitions_synthetic_sentences(seed):
    [sent] = synthetic_sentences(1, seed=seed)
    spans = segment_sentence(sent)
    covered = [i for s in spans for i in range(s.first_token, s.last_token + 1)]
    assert covered == list(range(1, len(sent) + 1))
    assert spans == segment_sentence(sent)


def _with_title(sent: list[Token], a: int, b: int) -> list[Token]:
    """Insert 《 before token ``a`` and 》 after token ``b``, keeping the parse."""
    def new(i: int) -> int:
        return 0 if i == 0 else i + (i >= a) + (i > b)

    anchor = new(sent[a - 1].index)
    out = [Token(new(t.index), t.form, t.pos, new(t.head), t.deprel) for t in sent]
    out.insert(a - 1, Token(a, "《", "PU", anchor, "punct"))
    out.insert(b + 1, Token(b + 2, "》", "PU", anchor, "punct"))
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_blocked_title_spans_are_never_split(seed, data):
    [sent] = synthetic_sentences(1, seed=seed)
    a = data.draw(st.integers(1, len(sent)))
    b = data.draw(st.integers(a, len(sent)))
    titled = _with_title(sent, a, b)
    assert [t.index for t in titled] == list(range(1, len(titled) + 1))
    assert not any(a < p <= b + 2 for p in cuts(titled))
