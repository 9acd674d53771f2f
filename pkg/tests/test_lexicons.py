from __future__ import annotations

import pytest

from gcdtkit.errors import LexiconError
from gcdtkit.lexicons import (
    CUE_CATEGORIES,
    FILES,
    Lexicon,
    default_lexicon,
    is_attribution_verb,
    load_lexicon,
    match_cue,
    tricky_class,
    tricky_entries,
)


def test_bundled_lexicon_loads():
    lex = default_lexicon()
    assert lex.cues and lex.attribution_verbs and lex.tricky
    assert {c.category for c in lex.cues} <= set(CUE_CATEGORIES)
    assert "because" in lex.english_reference


def test_attribution_verbs():
    assert is_attribution_verb("说")
    assert not is_attribution_verb("跑")


@pytest.mark.parametrize("forms,start,surface,end", [
    (["因为", "下雨", "，", "我们", "回家"], 0, "因为", 1),
    (["如果", "下雨", "的话", "，"], 1, "…的话", 3),
    (["越", "跑", "越", "快"], 0, "越…越…", 3),
    (["但是", "他"], 0, "但是", 1),
])
def test_match_cue(forms, start, surface, end):
    m = match_cue(forms, start)
    assert m is not None
    assert m.entry.surface == surface
    assert m.end == end


def test_longest_anchored_match_wins():
    assert match_cue(["但是", "他"], 0).entry.surface == "但是"
    assert match_cue(["但", "他"], 0).entry.surface == "但"


def test_no_match():
    assert match_cue(["天气", "很", "好"], 0) is None
    assert match_cue(["因为"], 5) is None


def test_template_parts_cover_tokens():
    m = match_cue(["越", "跑", "越", "快"], 0)
    assert m.parts == ((0, 1), (2, 3))
    assert m.entry.is_correlative and m.entry.is_template
    assert not m.entry.leading_gap


def test_tricky_tokens_need_matching_tag():
    assert tricky_class("由", "P").cls == "preposition"
    assert tricky_class("由", "VV") is None
    assert {e.cls for e in tricky_entries("由")} >= {"preposition"}
    assert tricky_entries("天气") == ()


def _texts(**override):
    base = {
        "attribution_verbs.txt": "# attribution\n说\tsay\n",
        "cues.txt": "# causal\n因为\tbecause\n",
        "tricky_tokens.txt": "# preposition\n由\tby\n",
        "english_cues.txt": "",
    }
    base.update(override)
    return base


@pytest.mark.parametrize("override", [
    {"cues.txt": "因为\tbecause\n"},
    {"cues.txt": "# nonsense\n因为\n"},
    {"cues.txt": "# causal\n…\n"},
    {"cues.txt": "# causal\n越……越\n"},
    {"cues.txt": "# causal\n因为\n因为\n"},
    {"tricky_tokens.txt": "# noun\n由\n"},
])
def test_malformed_lexicons_raise(override):
    with pytest.raises(LexiconError):
        Lexicon(_texts(**override))


def test_lexicon_dir_override(tmp_path):
    for name, text in _texts(**{"cues.txt": "# causal\n只要\tas long as\n"}).items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    lex = load_lexicon(tmp_path)
    assert lex.match_cue(["只要", "下雨"]).entry.surface == "只要"
    assert lex.match_cue(["因为", "下雨"]) is None


def test_lexicon_dir_falls_back_per_file(tmp_path):
    (tmp_path / "attribution_verbs.txt").write_text("# attribution\n嘀咕\tmutter\n", encoding="utf-8")
    lex = load_lexicon(tmp_path)
    assert lex.is_attribution_verb("嘀咕") and not lex.is_attribution_verb("说")
    assert lex.match_cue(["因为"]).entry.surface == "因为"
    assert "cues.txt" in FILES


def test_lexicon_dir_must_exist(tmp_path):
    with pytest.raises(LexiconError):
        load_lexicon(tmp_path / "absent")
