"""CoNLL-X dependency parses (10 tab-separated columns, ``_`` for empty)."""

from __future__ import annotations

from typing import NamedTuple

from ..errors import (
    BadColumnCount,
    HeadOutOfRange,
    NonNumericIndex,
    PartialParse,
    RootCount,
    SelfHead,
)


class Token(NamedTuple):
    """One token; immutable. A named tuple because corpora hold millions."""

    index: int
    form: str
    pos: str
    head: int | None = None
    deprel: str | None = None


Sentence = list[Token]


def _blocks(text: str):
    block: list[tuple[int, str]] = []
    for line_no, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        if line.strip():
            block.append((line_no, line))
        elif block:
            yield block
            block = []
    if block:
        yield block


def _parse_block(block: list[tuple[int, str]]) -> Sentence:
    n = len(block)
    tokens = []
    roots = 0
    with_head = 0
    first_missing = None
    for expected, (line_no, line) in enumerate(block, start=1):
        cols = line.split("\t")
        if len(cols) != 10:
            raise BadColumnCount(line_no, len(cols))
        if cols[0] != str(expected) and (not cols[0].isdigit() or int(cols[0]) != expected):
            raise NonNumericIndex(line_no, cols[0])
        raw_head = cols[6]
        head = None
        if raw_head == "_":
            if first_missing is None:
                first_missing = line_no
        else:
            if not raw_head.isdigit() or int(raw_head) > n:
                raise HeadOutOfRange(line_no, raw_head)
            head = int(raw_head)
            if head == expected:
                raise SelfHead(line_no)
            roots += head == 0
            with_head += 1
        pos = cols[3]
        rel = cols[7]
        tokens.append(Token(expected, cols[1], "" if pos == "_" else pos, head, None if rel == "_" else rel))
    if with_head and first_missing is not None:
        raise PartialParse(first_missing)
    if with_head and roots != 1:
        raise RootCount(block[0][0], roots)
    return tokens


def parse_conllx(text: str) -> list[Sentence]:
    return [_parse_block(block) for block in _blocks(text)]


def serialize_conllx(sentences: list[Sentence]) -> str:
    out = []
    for sent in sentences:
        for t in sent:
            pos = t.pos or "_"
            cols = [
                str(t.index), t.form, "_", pos, pos, "_",
                "_" if t.head is None else str(t.head),
                t.deprel or "_", "_", "_",
            ]
            out.append("\t".join(cols))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


def has_parse(sentence: Sentence) -> bool:
    return bool(sentence) and all(t.head is not None for t in sentence)
