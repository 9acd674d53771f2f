"""Reader for the bundled golden segmentation corpus."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..corpus_io.conllx import Token

BOUNDARY = "||"


@dataclass(frozen=True)
class GoldenSentence:
    id: str
    core: bool
    tokens: tuple[Token, ...]
    boundaries: frozenset[int]  # positions, boundary before token p

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)


@dataclass(frozen=True)
class Exclusion:
    id: str
    reason: str


def _parse_tokens(line: str) -> tuple[tuple[Token, ...], frozenset[int]]:
    tokens = []
    cuts = set()
    for item in line.split():
        if item == BOUNDARY:
            cuts.add(len(tokens) + 1)
            continue
        form, pos, head, rel = item.rsplit("/", 3)
        tokens.append(Token(len(tokens) + 1, form, pos, int(head), rel))
    cuts.discard(1)
    cuts.discard(len(tokens) + 1)
    return tuple(tokens), frozenset(cuts)


def parse_golden(text: str) -> list[GoldenSentence]:
    out = []
    for block in text.split("\n\n"):
        fields = {}
        for line in block.splitlines():
            if line.startswith("#") or not line.strip():
                continue
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
        if not fields:
            continue
        tokens, cuts = _parse_tokens(fields["tokens"])
        out.append(GoldenSentence(fields["id"], fields.get("core") == "yes", tokens, cuts))
    return out


def parse_exclusions(text: str) -> list[Exclusion]:
    out = []
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            ident, _, reason = line.partition("\t")
            out.append(Exclusion(ident.strip(), reason.strip()))
    return out


def _data(name: str) -> str:
    return resources.files("gcdtkit").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def golden_corpus() -> list[GoldenSentence]:
    return parse_golden(_data("golden_segmentation.txt"))


def golden_exclusions() -> list[Exclusion]:
    return parse_exclusions(_data("golden_exclusions.tsv"))
