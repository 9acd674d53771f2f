"""Regenerate tests/fixtures from the hand-written specs below.

Each fixture is a raw document, its CoNLL-X parse and an rs3 tree. Tokens
are written as form/POS/head/deprel; EDUs are given as token counts per
sentence, in order.
"""

from __future__ import annotations

import sys
from pathlib import Path

from gcdtkit.corpus_io import Token, serialize_conllx, serialize_rs3
from gcdtkit.rst_model import Edu, RstTree, leaf, multinuc_node, span_node

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
OUT = FIXTURES_DIR / "manual"

HEADER = """title: {title}
shortTitle: {short}
type: {genre}
textId: gcdt_{genre}_{short}
author: unknown
dateCreated: XXXX-XX-XX
dateModified: XXXX-XX-XX
dateCollected: XXXX-XX-XX
sourceURL: none
speakerCount: 0
speakerList: none
"""


def tokens(line: str) -> list[Token]:
    out = []
    for item in line.split():
        form, pos, head, rel = item.rsplit("/", 3)
        out.append(Token(len(out) + 1, form, pos, int(head), rel))
    return out


def edus(sentences: list[list[Token]], cuts: list[list[int]]) -> list[Edu]:
    """``cuts[s]`` lists EDU token counts for sentence ``s``."""
    out = []
    for s, (sent, sizes) in enumerate(zip(sentences, cuts)):
        assert sum(sizes) == len(sent), (s, sizes, len(sent))
        i = 0
        for size in sizes:
            out.append(Edu(" ".join(t.form for t in sent[i:i + size]), (s,)))
            i += size
    return out


def body(sentences: list[list[Token]], paragraphs: list[list[int]], sections: dict[int, str] = {}) -> str:
    blocks = []
    for p, para in enumerate(paragraphs):
        lines = [sections[p]] if p in sections else []
        lines += ["".join(t.form for t in sentences[s]) for s in para]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def ex083():
    s = [tokens(
        "8/CD/2/dep 记得/VV/0/root 做/VV/2/ccomp 先/AD/5/advmod 结束/VV/10/rcmod 对话/NN/5/dobj "
        "的/DEC/5/cpm 那/DT/10/det 个/M/8/clf 人/NN/3/attr 。/PU/2/punct"
    )]
    e = edus(s, [[3, 4, 4]])
    tree = multinuc_node("4", "same-unit", leaf("1", 1),
                         span_node("5", leaf("3", 3), (leaf("2", 2), "elaboration-attribute")))
    return "flirt", "whow", s, [[0]], {}, RstTree(tree, e)


def ex085():
    s = [tokens(
        "堆石/NN/2/nn 界标/NN/3/nsubj 是/VC/0/root 用以/VV/12/rcmod 给/P/8/prep 远足者/NN/5/pobj "
        "们/NN/6/dep 指引/VV/4/ccomp 正确/JJ/10/amod 道路/NN/8/dobj 的/DEC/4/cpm 石堆/NN/3/attr 。/PU/3/punct"
    )]
    e = edus(s, [[3, 8, 2]])
    tree = multinuc_node("4", "same-unit", leaf("1", 1),
                         span_node("5", leaf("3", 3), (leaf("2", 2), "purpose-attribute")))
    return "hiking", "whow", s, [[0]], {}, RstTree(tree, e)


def ex086():
    s = [tokens(
        "有意/AD/2/advmod 收购/VV/6/rcmod TikTok/NR/4/nn 业务/NN/2/dobj 的/DEC/2/cpm 买家/NN/7/nsubj "
        "包括/VV/0/root 微软/NR/7/dobj （/PU/11/punct Microsoft/NR/11/nn Corp/NR/8/prnmod ）/PU/11/punct "
        "。/PU/7/punct"
    )]
    e = edus(s, [[5, 3, 5]])
    inner = span_node("5", leaf("2", 2), (leaf("3", 3), "elaboration-attribute"))
    tree = span_node("4", inner, (leaf("1", 1), "elaboration-attribute"))
    return "tiktok", "news", s, [[0]], {}, RstTree(tree, e)


def ex124():
    s = [
        tokens("家世/NN/0/root"),
        tokens("六世祖/NN/2/nn 赵翼/NR/3/nsubj 是/VC/0/root 乾隆/NR/5/nn 二十六年/NT/8/nn 辛巳/NT/8/nn "
               "恩科/NN/8/nn 进士/NN/3/attr 。/PU/3/punct"),
        tokens("生平/NN/0/root"),
        tokens("1892年/NT/2/tmod 生于/VV/0/root 直隶省/NR/4/nn 天津/NR/2/dobj ，/PU/2/punct 10岁/NT/7/lobj "
               "前/LC/14/loc 随/P/14/prep 做官/VV/11/rcmod 的/DEC/9/cpm 祖父/NN/12/nn 赵执治/NR/8/pobj "
               "辗转/AD/14/advmod 居于/VV/2/conj 直隶省/NR/16/nn 各地/NN/14/dobj 。/PU/2/punct"),
    ]
    e = edus(s, [[1], [9], [1], [5, 12]])
    first = span_node("6", leaf("2", 2), (leaf("1", 1), "organization-heading"))
    life = multinuc_node("8", "joint-sequence", leaf("4", 4), leaf("5", 5))
    second = span_node("7", life, (leaf("3", 3), "organization-heading"))
    tree = multinuc_node("9", "joint-list", first, second)
    paragraphs = [[0], [1], [2], [3]]
    return "chao", "bio", s, paragraphs, {0: "<section/>", 2: "<section/>"}, RstTree(tree, e)


def ex128():
    s = [
        tokens("方法/NN/6/dep 1/CD/1/ordmod 8球/NN/6/assmod 的/DEG/3/assm 摆放/NN/6/nn 方法/NN/0/root"),
        tokens("把/BA/5/ba 八/CD/4/nummod 颗/M/2/clf 球/NN/5/dobj 摆成/VV/0/root 三角形/NN/5/dobj 。/PU/5/punct"),
    ]
    e = edus(s, [[2, 4], [7]])
    title = span_node("4", leaf("2", 2), (leaf("1", 1), "organization-preparation"))
    tree = span_node("5", leaf("3", 3), (title, "organization-heading"))
    return "pool", "whow", s, [[0], [1]], {0: "<subsection/>"}, RstTree(tree, e)


def ex150():
    s = [tokens(
        "这些/DT/2/det 基因/NN/3/nsubj 编码/VV/0/root 核蛋白/NN/26/conj （/PU/6/punct N/FW/4/prnmod "
        "）/PU/6/punct 、/PU/26/punct 磷蛋白质/NN/26/conj （/PU/11/punct P/FW/9/prnmod ）/PU/11/punct "
        "、/PU/26/punct 基质蛋白/NN/26/conj （/PU/16/punct M/FW/14/prnmod ）/PU/16/punct 、/PU/26/punct "
        "糖蛋白/NN/26/conj （/PU/21/punct G/FW/19/prnmod ）/PU/21/punct 和/CC/26/cc 病毒/NN/26/nn "
        "RNA/NN/26/nn 聚合酶/NN/3/dobj （/PU/28/punct L/FW/26/prnmod ）/PU/28/punct 。/PU/3/punct"
    )]
    e = edus(s, [[4, 4, 1, 4, 1, 4, 1, 3, 4, 4]])
    pairs = [
        span_node(str(11 + k), leaf(str(2 * k + 1), 2 * k + 1),
                  (leaf(str(2 * k + 2), 2 * k + 2), "elaboration-attribute"))
        for k in range(5)
    ]
    chain = pairs[-1]
    for k in range(3, -1, -1):
        chain = multinuc_node(str(16 + k), "same-unit", pairs[k], chain)
    return "rabies", "academic", s, [[0]], {}, RstTree(chain, e)


FIXTURES = {f.__name__: f for f in (ex083, ex085, ex086, ex124, ex128, ex150)}


def _plain(*texts: str) -> list[Edu]:
    return [Edu(t, (i,)) for i, t in enumerate(texts)]


# trees without a matching document, covering shapes the manual set lacks
TREES = {
    "single": RstTree(leaf("1", 1), _plain("天气很好。")),
    "multisat": RstTree(
        span_node("5", leaf("2", 2),
                  (leaf("1", 1), "context-background"),
                  (leaf("3", 3), "elaboration-additional"),
                  (leaf("4", 4), "evaluation-comment")),
        _plain("去年春天，", "我们搬到了北京，", "住在城东，", "那里很安静。"),
    ),
    "joint3": RstTree(
        multinuc_node("4", "joint-list", leaf("1", 1), leaf("2", 2), leaf("3", 3)),
        _plain("他会唱歌，", "会跳舞，", "还会画画。"),
    ),
    "nested": RstTree(
        span_node("7",
                  multinuc_node("6", "joint-sequence", leaf("2", 2),
                                span_node("5", leaf("3", 3), (leaf("4", 4), "purpose-goal"))),
                  (leaf("1", 1), "contingency-condition")),
        _plain("如果下雨，", "我们就回家，", "然后煮饭", "来招待客人。"),
    ),
    "contrast": RstTree(
        span_node("6",
                  multinuc_node("5", "adversative-contrast", leaf("1", 1), leaf("2", 2)),
                  (span_node("7", leaf("3", 3), (leaf("4", 4), "causal-cause")), "evaluation-comment")),
        _plain("哥哥喜欢猫，", "弟弟喜欢狗。", "这很正常，", "因为他们性格不同。"),
    ),
}

RAW = {
    "plain": ("one", "news", [["今天下雨。", "我们没有出门。"]], {}),
    "paras": ("two", "interview", [["你好。"], ["最近怎么样？", "还不错。"], ["再见。"]], {}),
    "nested_sections": ("three", "voyage", [["导言"], ["这是第一段。"], ["小节"], ["这是第二段。", "还有一句。"]],
                        {0: ["<section/>"], 2: ["<section/>", "<subsection/>"]}),
    "deep": ("four", "textbook", [["第一章"], ["内容。"], ["第一节"], ["更多内容。"]],
             {0: ["<section/>"], 2: ["<subsection/>", "<subsubsection/>"]}),
}


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in FIXTURES.items():
        short, genre, sentences, paragraphs, sections, tree = build()
        raw = HEADER.format(title=name, short=short, genre=genre) + "\n" + body(sentences, paragraphs, sections) + "\n"
        (OUT / f"{name}.txt").write_text(raw, encoding="utf-8")
        (OUT / f"{name}.conllx").write_text(serialize_conllx(sentences), encoding="utf-8")
        (OUT / f"{name}.rs3").write_text(serialize_rs3(tree), encoding="utf-8")
        print(f"wrote {name}")
    (FIXTURES_DIR / "rs3").mkdir(exist_ok=True)
    for name, tree in TREES.items():
        (FIXTURES_DIR / "rs3" / f"{name}.rs3").write_text(serialize_rs3(tree), encoding="utf-8")
        print(f"wrote rs3/{name}")
    (FIXTURES_DIR / "raw").mkdir(exist_ok=True)
    for name, (short, genre, paragraphs, markers) in RAW.items():
        blocks = ["\n".join(markers.get(p, []) + para) for p, para in enumerate(paragraphs)]
        raw = HEADER.format(title=name, short=short, genre=genre) + "\n" + "\n\n".join(blocks) + "\n"
        (FIXTURES_DIR / "raw" / f"{name}.txt").write_text(raw, encoding="utf-8")
        print(f"wrote raw/{name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
