"""Closed word lists used by the segmenter.

Each list is a UTF-8 file: ``# name`` lines open a category, every other
line is ``surface<TAB>gloss``. A directory given in the run config may
replace any of the bundled files by providing one with the same name.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import LexiconError

GAP = "…"

CUE_CATEGORIES = (
    "adversarial",
    "attributional",
    "causal",
    "circumstantial",
    "coordinating",
    "elaborating",
    "topic",
)
TRICKY_CLASSES = ("preposition", "localizer", "adverb", "verb")

# POS tags compatible with each tricky-token class
_CLASS_TAGS = {
    "preposition": {"P"},
    "localizer": {"LC"},
    "adverb": {"AD"},
    "verb": {"VV", "VC", "VE", "VA"},
}

# gap contents may not run past the end of a clause
_CLAUSE_END = set("。！？；!?;")
_COMMAS = set("，,")

FILES = ("attribution_verbs.txt", "cues.txt", "tricky_tokens.txt", "english_cues.txt")


@dataclass(frozen=True)
class CueEntry:
    surface: str
    category: str
    gloss: str = ""

    @functools.cached_property
    def parts(self) -> tuple[str, ...]:
        """Literal pieces between gaps; empty strings mark leading/trailing gaps."""
        return tuple(self.surface.split(GAP))

    @property
    def is_template(self) -> bool:
        return GAP in self.surface

    @property
    def leading_gap(self) -> bool:
        return self.surface.startswith(GAP)

    @property
    def is_correlative(self) -> bool:
        # 越…越…: each literal part opens a new clause
        return self.surface.endswith(GAP) and not self.leading_gap


@dataclass(frozen=True)
class CueMatch:
    entry: CueEntry
    start: int  # token index, 0-based
    end: int  # exclusive
    parts: tuple[tuple[int, int], ...]  # token ranges of each literal part

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class TrickyToken:
    surface: str
    cls: str
    gloss: str = ""


def _read_sections(text: str, source: str) -> list[tuple[str, str, str]]:
    rows = []
    category = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            name = stripped[1:].strip()
            if name and " " not in name:
                category = name
            continue
        if category is None:
            raise LexiconError(f"{source}:{line_no}: entry before any category header")
        surface, _, gloss = line.partition("\t")
        rows.append((category, surface.strip(), gloss.strip()))
    seen = set()
    for category, surface, _ in rows:
        if (category, surface) in seen:
            raise LexiconError(f"{source}: duplicate entry {surface!r} in category {category!r}")
        seen.add((category, surface))
    return rows


class Lexicon:
    def __init__(self, texts: dict[str, str]):
        verbs = _read_sections(texts["attribution_verbs.txt"], "attribution_verbs.txt")
        self.attribution_verbs = frozenset(s for _, s, _ in verbs)

        self.cues: list[CueEntry] = []
        for category, surface, gloss in _read_sections(texts["cues.txt"], "cues.txt"):
            if category not in CUE_CATEGORIES:
                raise LexiconError(f"cues.txt: unknown category {category!r}")
            if not surface.strip(GAP) or GAP * 2 in surface:
                raise LexiconError(f"cues.txt: malformed template {surface!r}")
            self.cues.append(CueEntry(surface, category, gloss))

        self.tricky: dict[str, list[TrickyToken]] = {}
        for cls, surface, gloss in _read_sections(texts["tricky_tokens.txt"], "tricky_tokens.txt"):
            if cls not in TRICKY_CLASSES:
                raise LexiconError(f"tricky_tokens.txt: unknown class {cls!r}")
            self.tricky.setdefault(surface, []).append(TrickyToken(surface, cls, gloss))

        self.english_reference = tuple(
            s for _, s, _ in _read_sections(texts.get("english_cues.txt", ""), "english_cues.txt")
        )

        # first literal piece -> entries, in file order
        self._by_head: dict[str, list[CueEntry]] = {}
        self._trailing: list[CueEntry] = []
        for entry in self.cues:
            if entry.leading_gap:
                self._trailing.append(entry)
            else:
                self._by_head.setdefault(entry.parts[0], []).append(entry)
        self._max_head = max((len(h) for h in self._by_head), default=1)
        # first characters of anchored cues; lets callers skip most tokens cheaply
        self.cue_initials = frozenset(h[0] for h in self._by_head)
        # (entry, closing literal) for cues like …的话 that match from the right
        self.gap_tails = tuple((e, e.parts[-1]) for e in self._trailing)

    # -- queries ------------------------------------------------------------

    def is_attribution_verb(self, form: str) -> bool:
        return form in self.attribution_verbs

    def tricky_entries(self, form: str) -> tuple[TrickyToken, ...]:
        return tuple(self.tricky.get(form, ()))

    def tricky_class(self, form: str, pos: str) -> TrickyToken | None:
        for entry in self.tricky.get(form, ()):
            if pos in _CLASS_TAGS[entry.cls]:
                return entry
        return None

    def match_cue(self, forms: list[str] | tuple[str, ...], start: int = 0) -> CueMatch | None:
        """Longest cue starting at token ``start``.

        Cues anchored at ``start`` are preferred; templates that open with a
        gap (…的话) are only tried when nothing anchored matches.
        """
        if start >= len(forms):
            return None
        best = None
        for entry in self._anchored_candidates(forms, start):
            m = _match_entry(entry, forms, start)
            if m and (best is None or len(m) > len(best)):
                best = m
        if best is not None:
            return best
        for entry in self._trailing:
            tail = entry.parts[-1]
            if not any(tail in f for f in forms[start + 1:]):
                continue
            m = _match_entry(entry, forms, start)
            if m and (best is None or len(m) > len(best)):
                best = m
        return best

    def _anchored_candidates(self, forms, start):
        text = ""
        seen = set()
        for form in forms[start:]:
            prev = len(text)
            text += form
            for k in range(prev + 1, min(len(text), self._max_head) + 1):
                for entry in self._by_head.get(text[:k], ()):
                    if entry not in seen:
                        seen.add(entry)
                        yield entry
            if len(text) >= self._max_head:
                break


def _match_entry(entry: CueEntry, forms, start: int) -> CueMatch | None:
    """Match ``entry`` against tokens from ``start``.

    Literal pieces must begin on a token boundary. A piece followed by a gap
    may end inside a token, the remainder of that token filling the gap.
    """
    parts = entry.parts
    bounds = [0]
    for form in forms[start:]:
        bounds.append(bounds[-1] + len(form))
    text = "".join(forms[start:])
    starts = set(bounds[:-1])
    ends = set(bounds[1:])

    def tok(char_pos: int) -> int:
        # token index (relative) containing char_pos
        lo, hi = 0, len(bounds) - 1
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if bounds[mid] <= char_pos:
                lo = mid
            else:
                hi = mid
        return lo

    def gap_ok(a: int, b: int) -> bool:
        if b <= a:
            return False
        banned = _CLAUSE_END if entry.is_correlative else _CLAUSE_END | _COMMAS
        return not any(ch in banned for ch in text[a:b])

    def search(i: int, pos: int, spans: list) -> list | None:
        if i == len(parts):
            return spans
        piece = parts[i]
        last = i == len(parts) - 1
        if piece == "":
            # leading gap is only at i == 0; trailing gap needs some text after
            if last:
                return spans if pos < len(text) and gap_ok(pos, pos + 1) else None
            return search(i + 1, pos, spans)
        if i == 0:
            candidates = [pos] if text.startswith(piece, pos) else []
        else:
            candidates = []
            k = text.find(piece, pos + 1)
            while k != -1:
                if k in starts and gap_ok(pos, k):
                    candidates.append(k)
                k = text.find(piece, k + 1)
        for k in candidates:
            end = k + len(piece)
            if last and end not in ends:
                continue
            found = search(i + 1, end, spans + [(k, end)])
            if found is not None:
                return found
        return None

    spans = search(0, 0, [])
    if spans is None:
        return None
    token_spans = tuple((start + tok(a), start + tok(b - 1) + 1) for a, b in spans)
    return CueMatch(entry, start, token_spans[-1][1], token_spans)


def _bundled_text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def load_lexicon(lexicon_dir: str | Path | None = None) -> Lexicon:
    """Bundled lexicons, with any file present in ``lexicon_dir`` taking precedence."""
    if lexicon_dir and not Path(lexicon_dir).is_dir():
        raise LexiconError(f"lexicon directory {lexicon_dir} does not exist")
    texts = {}
    for name in FILES:
        override = Path(lexicon_dir) / name if lexicon_dir else None
        if override is not None and override.is_file():
            texts[name] = override.read_text(encoding="utf-8")
        else:
            texts[name] = _bundled_text(name)
    return Lexicon(texts)


@functools.lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    return load_lexicon()


def is_attribution_verb(form: str) -> bool:
    return default_lexicon().is_attribution_verb(form)


def match_cue(forms, start: int = 0) -> CueMatch | None:
    return default_lexicon().match_cue(forms, start)


def tricky_class(form: str, pos: str) -> TrickyToken | None:
    return default_lexicon().tricky_class(form, pos)


def tricky_entries(form: str) -> tuple[TrickyToken, ...]:
    return default_lexicon().tricky_entries(form)
