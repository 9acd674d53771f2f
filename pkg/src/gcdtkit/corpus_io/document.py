from __future__ import annotations

from dataclasses import dataclass

from ..errors import SentenceCountMismatch, TextMismatch
from .conllx import Sentence, Token
from .raw import DocStructure, Metadata


@dataclass(frozen=True)
class AnalyzedDocument:
    metadata: Metadata
    structure: DocStructure
    sentences: tuple[tuple[Token, ...], ...]

    @property
    def doc_id(self) -> str:
        return self.metadata.text_id


def _squash(text: str) -> str:
    return "".join(text.split())


def first_divergence(a: str, b: str) -> int | None:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


def align(meta_structure: tuple[Metadata, DocStructure], parses: list[Sentence]) -> AnalyzedDocument:
    """Pair raw sentences with parsed token lists.

    Character positions in :class:`TextMismatch` count from the start of the
    sentence with all whitespace removed.
    """
    meta, structure = meta_structure
    if len(structure.sentences) != len(parses):
        raise SentenceCountMismatch(len(structure.sentences), len(parses))
    for i, (raw, tokens) in enumerate(zip(structure.sentences, parses)):
        where = first_divergence(_squash(raw), "".join(_squash(t.form) for t in tokens))
        if where is not None:
            raise TextMismatch(i, where)
    return AnalyzedDocument(meta, structure, tuple(tuple(s) for s in parses))
