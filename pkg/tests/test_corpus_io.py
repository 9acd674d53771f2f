from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, MANUAL_NAMES, RAW_PATHS, RS3_PATHS, load_doc
from gcdtkit.corpus_io import (
    DocStructure,
    Metadata,
    Token,
    align,
    has_parse,
    parse_conllx,
    parse_raw_document,
    parse_rs3,
    serialize_conllx,
    serialize_raw_document,
    serialize_rs3,
)
from gcdtkit.errors import (
    BadColumnCount,
    CycleDetected,
    DanglingParent,
    EmptyBody,
    HeadOutOfRange,
    InvalidMetadata,
    InvalidTree,
    MalformedMarker,
    MissingMetadataField,
    NonNumericIndex,
    PartialParse,
    RootCount,
    SelfHead,
    SentenceCountMismatch,
    TextMismatch,
    UnknownRelation,
    XmlError,
)
from gcdtkit.rst_model import Edu, RstTree, leaf, multinuc_node, span_node

HEADER = """title: t
shortTitle: demo
type: news
author: a
dateCreated: 2020-01-02
dateModified: XXXX-XX-XX
dateCollected: XXXX-XX-XX
sourceURL: none
speakerCount: 0
speakerList: none
"""


# -- raw documents ------------------------------------------------------------

@pytest.mark.parametrize("path", RAW_PATHS, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_raw_round_trip_is_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    assert serialize_raw_document(*parse_raw_document(text)) == text


def test_raw_structure_of_sectioned_document():
    meta, doc = parse_raw_document((FIXTURES / "raw" / "nested_sections.txt").read_text(encoding="utf-8"))
    assert meta.text_id == "gcdt_voyage_three"
    assert doc.paragraphs == ((0,), (1,), (2,), (3, 4))
    assert doc.sections == ((1, 0), (1, 2), (2, 2))
    assert doc.ends_paragraph(4) and not doc.ends_paragraph(3)
    assert doc.paragraph_of(4) == 3


def test_text_id_is_derived_when_absent():
    meta, _ = parse_raw_document(HEADER + "\n一句话。\n")
    assert meta.text_id == "gcdt_news_demo"
    assert "textId: gcdt_news_demo" in serialize_raw_document(meta, _)


def test_text_id_sets_corpus():
    text = HEADER.replace("type: news\n", "type: news\ntextId: other_news_demo\n") + "\n一句话。\n"
    meta, _ = parse_raw_document(text)
    assert meta.corpus == "other"


def test_crlf_input_normalises():
    text = HEADER + "\n一句话。\n"
    assert parse_raw_document(text.replace("\n", "\r\n")) == parse_raw_document(text)


@pytest.mark.parametrize("field", ["title", "speakerList", "dateCollected"])
def test_missing_metadata_field(field):
    text = "\n".join(l for l in HEADER.splitlines() if not l.startswith(field + ":")) + "\n\n句子。\n"
    with pytest.raises(MissingMetadataField) as exc:
        parse_raw_document(text)
    assert exc.value.name == field


@pytest.mark.parametrize("old,new", [
    ("dateCreated: 2020-01-02", "dateCreated: 2020/01/02"),
    ("speakerCount: 0", "speakerCount: two"),
    ("speakerList: none", "speakerList: Ann"),
    ("shortTitle: demo", "shortTitle: two words"),
    ("type: news", "type: news\ntextId: gcdt_news_wrong"),
    ("author: a", "author"),
])
def test_invalid_metadata(old, new):
    with pytest.raises(InvalidMetadata):
        parse_raw_document(HEADER.replace(old, new) + "\n句子。\n")


def test_empty_body():
    with pytest.raises(EmptyBody):
        parse_raw_document(HEADER + "\n\n\n")


@pytest.mark.parametrize("body", ["<section>\n句子。", "<section/>", "句子。\n<subsection/>"])
def test_malformed_marker(body):
    with pytest.raises(MalformedMarker):
        parse_raw_document(HEADER + "\n" + body + "\n")


_line = st.text(
    alphabet=st.sampled_from(list("天地人你我他的了，。？abc1 ")), min_size=1, max_size=12
).map(str.strip).filter(bool)


@st.composite
def documents(draw):
    para_sizes = draw(st.lists(st.integers(1, 3), min_size=1, max_size=5))
    sentences = draw(st.lists(_line, min_size=sum(para_sizes), max_size=sum(para_sizes)))
    paragraphs, start = [], 0
    for size in para_sizes:
        paragraphs.append(tuple(range(start, start + size)))
        start += size
    starts = sorted(draw(st.lists(st.integers(0, len(paragraphs) - 1), max_size=3)))
    sections = tuple((draw(st.integers(1, 3)), s) for s in starts)
    count = draw(st.integers(0, 3))
    meta = Metadata(
        title=draw(_line), short_title=draw(st.from_regex(r"[a-z][a-z0-9]{0,5}", fullmatch=True)),
        genre=draw(st.sampled_from(["news", "bio", "whow"])), author="x",
        date_created="2021-03-04", date_modified="XXXX-XX-XX", date_collected="XXXX-XX-XX",
        source_url="none", speaker_count=count,
        speaker_list=("none",) if count == 0 else tuple(f"s{i}" for i in range(count)),
    )
    return meta, DocStructure(tuple(sentences), tuple(paragraphs), sections)


@settings(max_examples=150, deadline=None)
@given(documents())
def test_raw_serialize_parse_identity(doc):
    meta, structure = doc
    text = serialize_raw_document(meta, structure)
    assert parse_raw_document(text) == (meta, structure)
    assert serialize_raw_document(*parse_raw_document(text)) == text


# -- CoNLL-X -------------------------------------------------------------------

ROW = "{i}\t{f}\t_\tNN\tNN\t_\t{h}\t{r}\t_\t_"


def _conllx(rows):
    return "\n".join(ROW.format(i=i, f=f, h=h, r=r) for i, f, h, r in rows) + "\n"


def test_conllx_reads_tokens():
    [sent] = parse_conllx(_conllx([(1, "我", 2, "nsubj"), (2, "来", 0, "root")]))
    assert sent == [Token(1, "我", "NN", 2, "nsubj"), Token(2, "来", "NN", 0, "root")]
    assert has_parse(sent)


def test_conllx_unparsed_sentence():
    [sent] = parse_conllx(_conllx([(1, "我", "_", "_"), (2, "来", "_", "_")]))
    assert sent[0].head is None and sent[0].deprel is None
    assert not has_parse(sent)


@pytest.mark.parametrize("rows,error,line", [
    ([(1, "a", 0, "root"), (3, "b", 1, "dep")], NonNumericIndex, 2),
    ([(1, "a", 0, "root"), (2, "b", 5, "dep")], HeadOutOfRange, 2),
    ([(1, "a", 0, "root"), (2, "b", 2, "dep")], SelfHead, 2),
    ([(1, "a", 0, "root"), (2, "b", 0, "root")], RootCount, 1),
    ([(1, "a", 2, "dep"), (2, "b", 1, "dep")], RootCount, 1),
    ([(1, "a", 0, "root"), (2, "b", "_", "_")], PartialParse, 2),
])
def test_conllx_errors(rows, error, line):
    with pytest.raises(error) as exc:
        parse_conllx(_conllx(rows))
    assert exc.value.line_no == line


def test_conllx_bad_column_count():
    with pytest.raises(BadColumnCount) as exc:
        parse_conllx("1\ta\t_\tNN\n")
    assert exc.value.found == 4


def test_conllx_blank_lines_separate_sentences():
    text = _conllx([(1, "a", 0, "root")]) + "\n\n" + _conllx([(1, "b", 0, "root")])
    assert [s[0].form for s in parse_conllx(text)] == ["a", "b"]


_form = st.text(alphabet=st.sampled_from(list("天地人的了，。abc1")), min_size=1, max_size=4)


@st.composite
def parsed_sentences(draw):
    n = draw(st.integers(1, 12))
    root = draw(st.integers(1, n))
    tokens = []
    for i in range(1, n + 1):
        head = 0 if i == root else draw(st.sampled_from([k for k in range(1, n + 1) if k != i]))
        pos = draw(st.sampled_from(["NN", "VV", "PU", ""]))
        rel = draw(st.sampled_from(["root" if head == 0 else "dep", "nsubj", "punct"]))
        tokens.append(Token(i, draw(_form), pos, head, rel))
    return tokens


@settings(max_examples=150, deadline=None)
@given(st.lists(parsed_sentences(), min_size=1, max_size=4))
def test_conllx_serialize_parse_identity(sentences):
    assert parse_conllx(serialize_conllx(sentences)) == sentences


def test_golden_sentences_are_valid_parses():
    from gcdtkit.segmenter.golden import golden_corpus

    for g in golden_corpus():
        assert parse_conllx(serialize_conllx([list(g.tokens)])) == [list(g.tokens)], g.id


# -- alignment -----------------------------------------------------------------

@pytest.mark.parametrize("name", MANUAL_NAMES)
def test_manual_fixtures_align(name):
    doc = load_doc(name)
    assert len(doc.sentences) == len(doc.structure.sentences)


def test_alignment_errors():
    raw = parse_raw_document(HEADER + "\n我来了。\n")
    with pytest.raises(SentenceCountMismatch):
        align(raw, [])
    tokens = [Token(1, "我", "PN"), Token(2, "去", "VV"), Token(3, "了。", "AS")]
    with pytest.raises(TextMismatch) as exc:
        align(raw, [tokens])
    assert exc.value.char_index == 1
    ok = [Token(1, "我", "PN"), Token(2, "来", "VV"), Token(3, "了", "AS"), Token(4, "。", "PU")]
    assert align(raw, [ok]).doc_id == "gcdt_news_demo"


# -- rs3 -------------------------------------------------------------------------

@pytest.mark.parametrize("path", RS3_PATHS, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_rs3_round_trip_is_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    tree = parse_rs3(text)
    once = serialize_rs3(tree)
    assert once == text
    assert serialize_rs3(parse_rs3(once)) == once


def test_rs3_fixture_shapes_are_covered():
    kinds = set()
    for path in RS3_PATHS:
        tree = parse_rs3(path.read_text(encoding="utf-8"))
        for node in tree.nodes():
            rels = {c.relation for c in node.children}
            if "same-unit" in rels:
                kinds.add("same-unit")
            elif node.kind == "multinuc":
                kinds.add("multinuc")
            if sum(c.role == "satellite" for c in node.children) > 1:
                kinds.add("multi-satellite")
    assert kinds == {"same-unit", "multinuc", "multi-satellite"}


def _xml(body: str, rels: str = '<rel name="joint-list" type="multinuc"/><rel name="causal-cause" type="rst"/>') -> str:
    return f"<rst><header><relations>{rels}</relations></header><body>{body}</body></rst>"


@pytest.mark.parametrize("xml,error", [
    ("<rst><body>", XmlError),
    ("<foo/>", XmlError),
    (_xml('<segment id="1">a</segment><segment id="1">b</segment>'), XmlError),
    (_xml('<segment id="1" parent="9" relname="causal-cause">a</segment>'), DanglingParent),
    (_xml('<segment id="1" parent="2" relname="bogus">a</segment><segment id="2">b</segment>'), UnknownRelation),
    (_xml('<segment id="1" parent="3" relname="span">a</segment><group id="2" type="span" parent="3" relname="span"/>'
          '<group id="3" type="span" parent="2" relname="span"/>'), CycleDetected),
    (_xml(""), XmlError),
])
def test_rs3_read_errors(xml, error):
    with pytest.raises(error):
        parse_rs3(xml)


def test_rs3_undeclared_relation_is_unknown():
    xml = _xml('<segment id="1" parent="2" relname="purpose-goal">a</segment><segment id="2">b</segment>')
    with pytest.raises(UnknownRelation):
        parse_rs3(xml)


def test_rs3_satellite_on_nucleus_without_span_group():
    xml = _xml('<segment id="1" parent="2" relname="causal-cause">因为下雨</segment><segment id="2">我们回家</segment>')
    tree = parse_rs3(xml)
    assert tree.root.kind == "span"
    assert [(c.node.span, c.role, c.relation) for c in tree.root.children] == [
        ((1, 1), "satellite", "causal-cause"), ((2, 2), "nucleus", None),
    ]


def test_serialize_refuses_invalid_trees():
    bad = RstTree(multinuc_node("3", "joint-list", leaf("1", 1)), [Edu("a"), Edu("b")])
    with pytest.raises(InvalidTree) as exc:
        serialize_rs3(bad)
    assert "E-MULTINUC-ARITY" in exc.value.codes
    dup = RstTree(span_node("2", leaf("1", 1), (leaf("2", 2), "causal-cause")), [Edu("a"), Edu("b")])
    with pytest.raises(XmlError):
        serialize_rs3(dup)


def test_tree_equality_ignores_child_order():
    a = span_node("3", leaf("1", 1), (leaf("2", 2), "causal-cause"))
    b = RstTree(a, [Edu("x"), Edu("y")])
    c = RstTree(
        type(a)("3", children=tuple(reversed(a.children)), kind=a.kind), [Edu("x"), Edu("y")]
    )
    assert b == c


def test_rs3_output_is_stable_across_runs(tmp_path):
    from gcdtkit.rst_model import validate_structure

    for path in RS3_PATHS:
        tree = parse_rs3(path.read_text(encoding="utf-8"))
        assert validate_structure(tree) == []
        assert serialize_rs3(tree) == serialize_rs3(parse_rs3(path.read_text(encoding="utf-8")))
