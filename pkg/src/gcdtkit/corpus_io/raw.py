"""Raw corpus documents: a ``key: value`` metadata header, a blank line, then
one sentence per line, blank lines between paragraphs and ``<section/>``-style
marker lines for headings."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from ..errors import EmptyBody, InvalidMetadata, MalformedMarker, MissingMetadataField

DEFAULT_CORPUS = "gcdt"

# header key -> Metadata attribute, in canonical output order
HEADER_FIELDS = (
    ("title", "title"),
    ("shortTitle", "short_title"),
    ("type", "genre"),
    ("author", "author"),
    ("dateCreated", "date_created"),
    ("dateModified", "date_modified"),
    ("dateCollected", "date_collected"),
    ("sourceURL", "source_url"),
    ("speakerCount", "speaker_count"),
    ("speakerList", "speaker_list"),
)
TEXT_ID_KEY = "textId"

_DATE = re.compile(r"\d{4}-\d{2}-\d{2}|XXXX-XX-XX")
_ASCII_WORD = re.compile(r"[A-Za-z0-9]+")
_ASCII_ID = re.compile(r"[A-Za-z0-9]+(?:_[A-Za-z0-9]+)+")
_MARKER = re.compile(r"<(?P<subs>(?:sub)*)section/>")


@dataclass(frozen=True)
class Metadata:
    title: str
    short_title: str
    genre: str
    author: str
    date_created: str
    date_modified: str
    date_collected: str
    source_url: str
    speaker_count: int
    speaker_list: tuple[str, ...]
    corpus: str = DEFAULT_CORPUS

    def __post_init__(self):
        object.__setattr__(self, "speaker_list", tuple(self.speaker_list))
        for key, attr in HEADER_FIELDS:
            value = getattr(self, attr)
            values = value if isinstance(value, tuple) else (str(value),)
            if any("\n" in v or "\r" in v for v in values):
                raise InvalidMetadata(key, "values must fit on one line")
        for name in ("short_title", "genre", "corpus"):
            if not _ASCII_WORD.fullmatch(getattr(self, name)):
                raise InvalidMetadata(name, "must be a single ASCII word")
        for name in ("date_created", "date_modified", "date_collected"):
            if not _DATE.fullmatch(getattr(self, name)):
                raise InvalidMetadata(name, "expected YYYY-MM-DD or XXXX-XX-XX")
        if self.speaker_count < 0:
            raise InvalidMetadata("speakerCount", "must be non-negative")
        if not self.speaker_list:
            raise InvalidMetadata("speakerList", "must not be empty")
        if (self.speaker_count == 0) != (self.speaker_list == ("none",)):
            raise InvalidMetadata("speakerList", 'must be exactly "none" iff speakerCount is 0')

    @property
    def text_id(self) -> str:
        return f"{self.corpus}_{self.genre}_{self.short_title}"


@dataclass(frozen=True)
class DocStructure:
    """Sections are ``(depth, first_paragraph)`` pairs; paragraphs are
    tuples of sentence indices."""

    sentences: tuple[str, ...]
    paragraphs: tuple[tuple[int, ...], ...]
    sections: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "paragraphs", tuple(tuple(p) for p in self.paragraphs))
        object.__setattr__(self, "sections", tuple(tuple(s) for s in self.sections))
        expected = 0
        for para in self.paragraphs:
            if not para or list(para) != list(range(expected, expected + len(para))):
                raise ValueError("paragraphs must be non-empty consecutive sentence runs")
            expected += len(para)
        if expected != len(self.sentences):
            raise ValueError("paragraphs must cover every sentence")
        last = 0
        for depth, start in self.sections:
            if depth < 1 or start < last or start >= len(self.paragraphs):
                raise ValueError(f"bad section entry {(depth, start)}")
            last = start

    def paragraph_of(self, sentence: int) -> int:
        for i, para in enumerate(self.paragraphs):
            if sentence in para:
                return i
        raise IndexError(sentence)

    def ends_paragraph(self, sentence: int) -> bool:
        return any(para[-1] == sentence for para in self.paragraphs)


def _marker_depth(line: str) -> int | None:
    m = _MARKER.fullmatch(line.strip())
    if m:
        return 1 + len(m.group("subs")) // 3
    return None


def parse_raw_document(text: str, corpus: str = DEFAULT_CORPUS) -> tuple[Metadata, DocStructure]:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    header: dict[str, str] = {}
    i = 0
    while i < len(lines) and lines[i].strip():
        key, sep, value = lines[i].partition(":")
        if not sep:
            raise InvalidMetadata(lines[i].strip(), "header lines must read 'key: value'")
        header[key.strip()] = value.strip()
        i += 1
    body_start = i + 1

    for key, _ in HEADER_FIELDS:
        if key not in header:
            raise MissingMetadataField(key)
    try:
        speaker_count = int(header["speakerCount"])
    except ValueError:
        raise InvalidMetadata("speakerCount", "not an integer") from None
    speakers = tuple(s.strip() for s in header["speakerList"].split(",") if s.strip())
    if TEXT_ID_KEY in header:
        text_id = header[TEXT_ID_KEY]
        suffix = f"_{header['type']}_{header['shortTitle']}"
        if not _ASCII_ID.fullmatch(text_id) or not text_id.endswith(suffix):
            raise InvalidMetadata(TEXT_ID_KEY, f"expected <corpus>{suffix}")
        corpus = text_id[: -len(suffix)]
    meta = Metadata(
        title=header["title"],
        short_title=header["shortTitle"],
        genre=header["type"],
        author=header["author"],
        date_created=header["dateCreated"],
        date_modified=header["dateModified"],
        date_collected=header["dateCollected"],
        source_url=header["sourceURL"],
        speaker_count=speaker_count,
        speaker_list=speakers,
        corpus=corpus,
    )

    sentences: list[str] = []
    paragraphs: list[list[int]] = []
    sections: list[tuple[int, int]] = []
    current: list[int] = []
    pending: list[tuple[int, int]] = []  # (depth, line_no) waiting for a paragraph

    def close_paragraph():
        nonlocal current
        if current:
            paragraphs.append(current)
            current = []

    for line_no, line in enumerate(lines[body_start:], start=body_start + 1):
        if not line.strip():
            close_paragraph()
            continue
        depth = _marker_depth(line)
        if depth is not None:
            close_paragraph()
            pending.append((depth, line_no))
            continue
        if "<" in line and re.search(r"<(?:sub)*section/?>", line):
            raise MalformedMarker(line_no, line)
        if not current:
            for d, _ in pending:
                sections.append((d, len(paragraphs)))
            pending.clear()
        current.append(len(sentences))
        sentences.append(line)
    close_paragraph()
    if pending:
        raise MalformedMarker(pending[0][1], "marker not followed by any sentence")
    if not sentences:
        raise EmptyBody()
    return meta, DocStructure(tuple(sentences), tuple(tuple(p) for p in paragraphs), tuple(sections))


def serialize_raw_document(meta: Metadata, structure: DocStructure) -> str:
    out = []
    for key, attr in HEADER_FIELDS:
        value = getattr(meta, attr)
        if attr == "speaker_list":
            value = ", ".join(value)
        out.append(f"{key}: {value}")
        if key == "type":
            out.append(f"{TEXT_ID_KEY}: {meta.text_id}")
    out.append("")
    markers: dict[int, list[int]] = {}
    for depth, start in structure.sections:
        markers.setdefault(start, []).append(depth)
    blocks = []
    for p, para in enumerate(structure.paragraphs):
        block = ["<" + "sub" * (d - 1) + "section/>" for d in markers.get(p, ())]
        block.extend(structure.sentences[s] for s in para)
        blocks.append("\n".join(block))
    out.append("\n\n".join(blocks))
    return unicodedata.normalize("NFC", "\n".join(out) + "\n")
