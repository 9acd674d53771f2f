"""Per-sentence indexes shared by the segmentation rules.

Tokens are addressed 1-based; slot 0 of every array is padding. A boundary
at position ``p`` sits before token ``p``, so usable positions are 2..n.
"""

from __future__ import annotations

import functools
import re

from ..corpus_io.conllx import Token

COMMAS = frozenset("，,")
ENUM = frozenset("、")
COLONS = frozenset("：:")
SEMIS = frozenset("；;")
ENDS = frozenset(["。", "！", "？", "!", "?", "…", "……"])
DASHES = frozenset(["——", "—", "--", "---", "–", "―", "－－"])
HYPHENS = frozenset(["-", "－"])
OPEN_CLOSE = {"(": ")", "（": "）", "[": "]", "［": "］", "{": "}", "｛": "｝"}
TITLE_OPEN_CLOSE = {"《": "》", "〈": "〉"}
QUOTES = frozenset("“”‘’「」『』\"'")
BRACKET_CHARS = frozenset("()（）[]［］{}｛｝《》〈〉")

VERBAL = frozenset(["VV", "VC", "VE", "VA"])
NOMINAL = frozenset(["NN", "NR", "NT"])
COMBINABLE = frozenset(["NN", "NR", "NT", "JJ", "CD", "FW", "OD"])

# deprels whose subtree modifies a noun rather than forming a clause
NON_CLAUSAL = frozenset(["rcmod", "amod", "assmod", "nn", "prnmod", "clf", "nummod", "det"])

_CITATION = re.compile(r"\[\d+(?:[-–,，]\d+)*\]")
_DATE_TOKEN = re.compile(r"(?:公元前?|约)?\d{1,4}(?:年代|年|月|日|号)?|年|月|日|公元前?|约|生|卒|逝世|出生")


@functools.lru_cache(maxsize=1 << 16)
def is_citation_token(form: str) -> bool:
    return _CITATION.fullmatch(form) is not None


@functools.lru_cache(maxsize=1 << 16)
def is_date_token(form: str) -> bool:
    return _DATE_TOKEN.fullmatch(form) is not None


@functools.lru_cache(maxsize=1 << 16)
def is_foreignish(form: str) -> bool:
    return bool(form) and all(ord(ch) < 0x2000 and ch not in BRACKET_CHARS for ch in form)


def has_latin(form: str) -> bool:
    return any(ch.isascii() and ch.isalpha() for ch in form)


class SentenceView:
    def __init__(self, tokens: list[Token] | tuple[Token, ...]):
        self.n = n = len(tokens)
        self.form = [""] + [t.form for t in tokens]
        self.pos = [""] + [t.pos or "" for t in tokens]
        self.parsed = n > 0 and all(t.head is not None for t in tokens)
        self.head = [0] * (n + 1)
        self.rel = [""] * (n + 1)
        self.kids: list[list[int]] = [[] for _ in range(n + 1)]
        if self.parsed:
            for t in tokens:
                self.head[t.index] = t.head
                self.rel[t.index] = t.deprel or ""
                if t.head:
                    self.kids[t.head].append(t.index)
        self.lo = list(range(n + 1))
        self.hi = list(range(n + 1))
        # no token on the path to the root (self included) is a modifier relation
        self.clausal = [True] * (n + 1)
        if self.parsed:
            self._subtree_bounds()
        self.paren_pairs = self._pairs(OPEN_CLOSE)
        self.title_pairs = self._pairs(TITLE_OPEN_CLOSE)
        self.in_paren = [False] * (n + 2)
        for o, c in self.paren_pairs:
            for i in range(o, c + 1):
                self.in_paren[i] = True
        self.rel_region = [False] * (n + 2)

    def _subtree_bounds(self) -> None:
        head, rel, kids, lo, hi = self.head, self.rel, self.kids, self.lo, self.hi
        clausal = self.clausal
        order = []
        stack = [k for k in range(1, self.n + 1) if head[k] == 0]
        while stack:
            k = stack.pop()
            order.append(k)
            # preorder: the head is settled before its dependents
            clausal[k] = rel[k] not in NON_CLAUSAL and (head[k] == 0 or clausal[head[k]])
            stack.extend(kids[k])
        for k in reversed(order):
            for c in kids[k]:
                if lo[c] < lo[k]:
                    lo[k] = lo[c]
                if hi[c] > hi[k]:
                    hi[k] = hi[c]

    def _pairs(self, table: dict[str, str]) -> list[tuple[int, int]]:
        pairs = []
        stack: list[int] = []
        for i in range(1, self.n + 1):
            f = self.form[i]
            if f in table:
                stack.append(i)
            elif stack and f == table[self.form[stack[-1]]]:
                pairs.append((stack.pop(), i))
        return sorted(pairs)

    # -- predicates -------------------------------------------------------

    def is_verbal(self, i: int) -> bool:
        return self.pos[i] in VERBAL

    def is_nominal(self, i: int) -> bool:
        return self.pos[i] in NOMINAL

    def is_punct(self, i: int) -> bool:
        return self.pos[i] == "PU" or (not self.pos[i] and not any(ch.isalnum() for ch in self.form[i]))

    def is_separator(self, i: int) -> bool:
        f = self.form[i]
        return f in COMMAS or f in ENUM or f in COLONS or f in SEMIS or f in ENDS

    def has_child(self, i: int, rels) -> bool:
        return any(self.rel[k] in rels for k in self.kids[i])

    def child(self, i: int, rels) -> int | None:
        for k in self.kids[i]:
            if self.rel[k] in rels:
                return k
        return None

    def ancestors(self, i: int):
        seen = 0
        i = self.head[i]
        while i and seen <= self.n:
            yield i
            i = self.head[i]
            seen += 1

    def clause_start(self, i: int) -> int:
        """First token of the comma/colon/semicolon/end delimited chunk holding ``i``."""
        j = i - 1
        while j >= 1 and not self.is_separator(j):
            j -= 1
        return j + 1

    def clause_end(self, i: int) -> int:
        j = i
        while j <= self.n and not self.is_separator(j):
            j += 1
        return j - 1

    def next_content(self, q: int) -> int:
        """Skip commas and enumeration marks from ``q``."""
        while q <= self.n and (self.form[q] in COMMAS or self.form[q] in ENUM):
            q += 1
        return q

    def content_remains(self, q: int) -> bool:
        return any(not self.is_punct(j) for j in range(q, self.n + 1))
