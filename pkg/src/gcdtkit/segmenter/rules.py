"""The boundary rule catalog.

Each ``_rule_*`` function reads a :class:`SentenceView` and reports
candidates through an :class:`Emitter`. Order matters only where a rule
consults what earlier rules produced (blocked spans, relative regions,
reset points for the comma rule).
"""

from __future__ import annotations

from ..lexicons import Lexicon
from .model import SUPPRESS, TRIGGER, BoundaryCandidate
from .view import (
    COLONS,
    COMBINABLE,
    COMMAS,
    DASHES,
    ENDS,
    ENUM,
    HYPHENS,
    SEMIS,
    SentenceView,
    has_latin,
    is_citation_token,
    is_date_token,
    is_foreignish,
)

HEURISTIC = "heuristic"

# dependents that make a pre-nominal modifier clausal
_CLAUSE_ARGS = frozenset([
    "nsubj", "dobj", "top", "range", "attr", "ccomp", "xcomp", "nsubjpass",
    "ba", "prep", "loc", "lccomp", "pccomp",
])
_CORE_ARGS = frozenset(["nsubj", "dobj", "top", "nsubjpass", "pobj", "attr"])
_MANNER_FORMS = frozenset(["用", "以", "按照", "看", "利用"])
_FIXED_FRAME = frozenset(["为", "作为"])


class Emitter:
    def __init__(self, n: int, disabled: frozenset[str]):
        self.n = n
        self.disabled = disabled
        self.items: list[tuple[int, str, str, str]] = []
        self.suppressed: set[int] = set()
        self.triggered: set[int] = set()

    def trigger(self, p: int, rule: str, note: str = "") -> None:
        self._add(p, rule, TRIGGER, note)

    def suppress(self, p: int, rule: str, note: str = "") -> None:
        self._add(p, rule, SUPPRESS, note)

    def _add(self, p: int, rule: str, polarity: str, note: str) -> None:
        if not 2 <= p <= self.n or rule in self.disabled:
            return
        self.items.append((p, rule, polarity, note))
        (self.suppressed if polarity == SUPPRESS else self.triggered).add(p)

    def result(self) -> tuple[BoundaryCandidate, ...]:
        # plain tuples sort in the same order as the candidates, only faster
        return tuple(BoundaryCandidate(*item) for item in sorted(set(self.items)))


class _State:
    """Facts shared between rules for one sentence."""

    def __init__(self, v: SentenceView, lex: Lexicon, out: Emitter):
        self.v = v
        self.lex = lex
        self.out = out
        self.blocked: set[int] = set()  # positions no rule may split
        self.quiet_parens: set[tuple[int, int]] = set()  # parentheticals that are not EDUs
        self.citation_parens: set[tuple[int, int]] = set()
        self.resets: set[int] = set()  # comma-rule left contexts restart here
        self.cue_tokens: set[int] = set()
        self.pred = [False] * (v.n + 2)

    def block(self, p: int, note: str = "") -> None:
        self.blocked.add(p)
        self.out.suppress(p, "S7", note)


# -- clause-level predicates --------------------------------------------------

def _mark_predicates(s: _State) -> None:
    v = s.v
    for i in range(1, v.n + 1):
        if v.in_paren[i]:
            continue
        if v.is_verbal(i):
            if not v.parsed:
                s.pred[i] = True
                continue
            if v.rel[i] in ("mmod", "cop"):
                continue
            s.pred[i] = v.clausal[i]
        elif v.parsed and v.is_nominal(i) and v.has_child(i, ("nsubj",)):
            s.pred[i] = True


def _has_pred(s: _State, a: int, b: int) -> bool:
    return any(s.pred[i] for i in range(a, b + 1))


def _has_content(s: _State, a: int, b: int) -> bool:
    return any(not s.v.is_punct(i) for i in range(a, b + 1))


# -- S7 blocked spans ---------------------------------------------------------

def _rule_blocked(s: _State) -> None:
    v = s.v
    for o, c in v.title_pairs:
        for p in range(o + 1, c + 1):
            s.block(p, "title")

    dollars = [i for i in range(1, v.n + 1) if v.form[i].count("$") % 2 == 1]
    for a, b in zip(dollars[::2], dollars[1::2]):
        for p in range(a + 1, b + 1):
            s.block(p, "math")

    i = 1
    while i <= v.n:
        if not is_foreignish(v.form[i]):
            i += 1
            continue
        j = i
        while j + 1 <= v.n and is_foreignish(v.form[j + 1]):
            j += 1
        a, b = i, j
        while a <= b and not any(ch.isalnum() for ch in v.form[a]):
            a += 1
        while b >= a and not any(ch.isalnum() for ch in v.form[b]):
            b -= 1
        if b > a and any(has_latin(v.form[k]) for k in range(a, b + 1)):
            for p in range(a + 1, b + 1):
                s.block(p, "foreign")
        i = j + 1

    for i in range(1, v.n + 1):
        f = v.form[i]
        if f in SEMIS:
            s.block(i, "semicolon")
            s.block(i + 1, "semicolon")
        elif f == "还有" and v.pos[i] == "CC":
            s.block(i, "还有")
        elif f in HYPHENS or (f in DASHES and _is_combinator(v, i)):
            s.block(i, "combinator")
            s.block(i + 1, "combinator")

    for o, c in v.paren_pairs:
        inner = range(o + 1, c)
        if _is_ipa(v, o, c):
            for p in range(o + 1, c + 1):
                s.block(p, "ipa")
            s.quiet_parens.add((o, c))
            continue
        if v.form[o] in "[［" and c > o + 1 and all(v.form[k].isdigit() for k in inner):
            s.citation_parens.add((o, c))
            continue
        note = ""
        if v.parsed and any(
            not (o < v.head[k] < c) and v.rel[k] in _CORE_ARGS and not v.is_punct(k) for k in inner
        ):
            note = "core argument"
        elif _is_date_paren(v, o, c) and (o == 1 or v.pos[o - 1] != "NR" or v.form[o - 1] in "》〉"):
            note = "citation date"
        if note:
            s.quiet_parens.add((o, c))
            for p in range(o, c + 2):
                s.block(p, note)


def _is_combinator(v: SentenceView, d: int) -> bool:
    return 1 < d < v.n and v.pos[d - 1] in COMBINABLE and v.pos[d + 1] in COMBINABLE


def _is_ipa(v: SentenceView, o: int, c: int) -> bool:
    inner = [v.form[k] for k in range(o + 1, c)]
    return bool(inner) and v.form[o] in "[［" and all(
        is_foreignish(f) and not f.isdigit() for f in inner
    ) and any(has_latin(f) for f in inner)


def _is_date_paren(v: SentenceView, o: int, c: int) -> bool:
    words = [k for k in range(o + 1, c) if not v.is_punct(k) and v.form[k] not in HYPHENS]
    return bool(words) and all(is_date_token(v.form[k]) for k in words) and any(
        any(ch.isdigit() for ch in v.form[k]) for k in words
    )


# -- T8 parentheticals and citations -------------------------------------------

def _rule_parentheticals(s: _State) -> None:
    v, out = s.v, s.out
    for o, c in v.paren_pairs:
        if (o, c) in s.quiet_parens:
            continue
        if (o, c) in s.citation_parens:
            continue
        note = HEURISTIC if _is_date_paren(v, o, c) else ""
        out.trigger(o, "T8", note)
        q = v.next_content(c + 1)
        if _tail_has_content(v, q):
            out.trigger(q, "T8", note)

    # runs of citation marks, single-token [n] or bracketed digit groups
    starts = {o: c for o, c in s.citation_parens}
    i = 1
    while i <= v.n:
        if not (is_citation_token(v.form[i]) or i in starts):
            i += 1
            continue
        a = i
        while i <= v.n and (is_citation_token(v.form[i]) or i in starts):
            i = starts[i] + 1 if i in starts else i + 1
        b = i - 1
        if b + 2 <= v.n and v.form[b + 1] in COLONS and v.form[b + 2].lower().startswith("p"):
            b += 1
            while b + 1 <= v.n and not v.is_separator(b + 1):
                b += 1
        if b + 1 <= v.n and v.form[b + 1] in ENDS:
            b += 1
        out.trigger(a, "T8", "citation")
        if _tail_has_content(v, b + 1):
            out.trigger(b + 1, "T8", "citation")
        i = b + 1


def _tail_has_content(v: SentenceView, q: int) -> bool:
    return any(v.form[j] not in ENDS and not v.is_punct(j) for j in range(q, v.n + 1))


# -- T9 dashes and colons --------------------------------------------------------

def _rule_dash_colon(s: _State) -> None:
    v, out = s.v, s.out
    dashes = [i for i in range(1, v.n + 1) if v.form[i] in DASHES and not _is_combinator(v, i)]
    for k, d in enumerate(dashes):
        if k % 2 == 1:
            if _tail_has_content(v, d + 1):
                out.trigger(v.next_content(d + 1), "T9", "closing dash")
        else:
            out.trigger(d, "T9", "dash")
    for i in range(1, v.n):
        if v.form[i] not in COLONS or i + 1 in s.blocked:
            continue
        if v.form[i - 1] in ("]", "］") or is_citation_token(v.form[i - 1]):
            continue
        if not _tail_has_content(v, i + 1):
            continue
        out.trigger(i + 1, "T9", "colon")
        s.resets.add(i + 1)
    for i in range(1, v.n):
        if v.form[i] in SEMIS:
            s.resets.add(i + 1)


# -- T2 relative clauses ---------------------------------------------------------

def _rule_relatives(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        for d in range(2, v.n):
            if v.form[d] == "的" and v.pos[d] == "DEC" and v.is_nominal(d + 1):
                cs = v.clause_start(d)
                if any(v.is_verbal(k) for k in range(cs, d)):
                    out.trigger(d + 1, "T2", "degraded")
        return
    for d in range(1, v.n + 1):
        if v.form[d] not in ("的", "之") or v.rel[d] != "cpm":
            continue
        h = v.head[d]
        if not h or v.rel[h] != "rcmod" or not v.is_verbal(h) or v.head[h] <= d:
            continue
        if not (v.has_child(h, _CLAUSE_ARGS) or any(
            v.rel[k] == "dep" and v.is_verbal(k) for k in v.kids[h]
        )):
            continue
        lo = v.lo[h]
        out.trigger(lo, "T2")
        out.trigger(d + 1, "T2")
        for k in range(lo, d + 1):
            v.rel_region[k] = True
    for h in range(1, v.n + 1):
        if v.rel[h] != "rcmod" or not v.is_verbal(h) or v.has_child(h, ("cpm",)):
            continue
        if v.head[h] <= v.hi[h] or not v.has_child(h, ("dobj", "nsubj")):
            continue
        out.trigger(v.lo[h], "T2", HEURISTIC)
        out.trigger(v.hi[h] + 1, "T2", HEURISTIC)
        for k in range(v.lo[h], v.hi[h] + 1):
            v.rel_region[k] = True


# -- T1 serial verbs ---------------------------------------------------------------

def _rule_serial_verbs(s: _State) -> None:
    v = s.v
    if not v.parsed:
        return
    for v2 in range(1, v.n + 1):
        if v.pos[v2] != "VV" or v.rel[v2] not in ("dep", "conj"):
            continue
        v1 = v.head[v2]
        if not v1 or v1 >= v2 or v.pos[v1] != "VV":
            continue
        if not any(v.rel[c] in ("dobj", "range") and v1 < c < v2 for c in v.kids[v1]):
            continue
        if any(v.is_punct(k) or v.pos[k] == "CC" for k in range(v1 + 1, v2)):
            continue
        s.out.trigger(v.lo[v2], "T1")


# -- T3 manner and means -----------------------------------------------------------

def _rule_manner(s: _State) -> None:
    v = s.v
    if not v.parsed:
        return
    for m in range(1, v.n + 1):
        if v.form[m] not in _MANNER_FORMS or v.pos[m] not in ("P", "VV"):
            continue
        if v.rel_region[m] or v.in_paren[m]:
            continue
        h = v.head[m]
        if not h or h <= m or not v.is_verbal(h):
            continue
        hi = v.hi[m]
        if hi + 1 > v.n or not v.is_verbal(hi + 1):
            continue
        s.out.trigger(v.lo[m], "T3")
        s.out.trigger(hi + 1, "T3")


# -- T4 reported speech -------------------------------------------------------------

def _rule_attribution(s: _State) -> None:
    v, out = s.v, s.out
    for a in range(1, v.n + 1):
        if not v.is_verbal(a) or not s.lex.is_attribution_verb(v.form[a]):
            continue
        if v.rel_region[a] or v.in_paren[a]:
            continue
        q = a + 1
        while q <= v.n and (v.pos[q] == "AS" or v.form[q] in COLONS or v.form[q] in COMMAS):
            q += 1
        if q > v.n:
            continue
        if v.parsed:
            c = next((k for k in v.kids[a] if v.rel[k] == "ccomp" and k > a), None)
            if c is None or not (v.is_verbal(c) or v.has_child(c, ("nsubj",))):
                continue
            if v.form[c] in _FIXED_FRAME:
                out.suppress(q, "T4", "fixed frame")
                continue
        else:
            end = v.clause_end(q) if not v.is_separator(q) else q - 1
            if not any(v.is_verbal(k) for k in range(q, end + 1)):
                continue
        out.trigger(q, "T4")
        s.resets.add(q)


# -- S1 complement clauses ----------------------------------------------------------

def _rule_complements(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        return
    for c in range(1, v.n + 1):
        h = v.head[c]
        if v.rel[c] == "ccomp" and h and v.is_verbal(h):
            if not s.lex.is_attribution_verb(v.form[h]):
                out.suppress(v.lo[c], "S1")
        if v.rel[c] == "csubj":
            lo, hi = v.lo[c], v.hi[c]
            for k in range(lo, hi + 1):
                if v.pos[k] == "CC":
                    out.suppress(k, "S1", "clausal subject")
                if v.rel[k] == "conj":
                    out.suppress(v.lo[k], "S1", "clausal subject")
            out.suppress(hi + 1, "S1", "clausal subject")
            if hi + 1 <= v.n and v.is_separator(hi + 1):
                out.suppress(hi + 2, "S1", "clausal subject")


# -- S2 prepositional phrases and clausal adjuncts ------------------------------------

def _pp_object(v: SentenceView, p: int) -> int | None:
    obj = v.child(p, ("pobj", "pccomp"))
    if obj is not None and v.pos[obj] == "LC":
        obj = v.child(obj, ("lobj", "lccomp")) or obj
    return obj


def _rule_prepositions(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        return
    for p in range(1, v.n + 1):
        if v.rel_region[p] or v.in_paren[p]:
            continue
        clausal = False
        if v.pos[p] == "P":
            obj = _pp_object(v, p)
            clausal = obj is not None and v.is_verbal(obj)
        elif v.pos[p] == "LC":
            obj = v.child(p, ("lobj", "lccomp"))
            h = v.head[p]
            clausal = obj is not None and v.is_verbal(obj) and not (h and v.pos[h] == "P")
        else:
            continue
        lo, hi = v.lo[p], v.hi[p]
        if clausal:
            cs = v.clause_start(lo)
            stranded = cs < lo and _has_content(s, cs, lo - 1) and not _has_pred(s, cs, lo - 1)
            out.trigger(lo, "T12" if stranded else "S2", "clausal adjunct")
            q = v.next_content(hi + 1)
            if _tail_has_content(v, q):
                out.trigger(q, "S2", "clausal adjunct")
        elif v.pos[p] == "P" and v.head[p] == hi + 1:
            if v.form[p] in _MANNER_FORMS or s.lex.match_cue(v.form[1:], p - 1):
                continue
            out.suppress(hi + 1, "S2")


# -- S4 particles -------------------------------------------------------------------------

def _rule_particles(s: _State) -> None:
    v, out = s.v, s.out
    for m in range(1, v.n + 1):
        if v.pos[m] != "MSP":
            continue
        f = v.form[m]
        if f in ("所", "而", "来"):
            h = v.head[m] if v.parsed and v.head[m] else m
            left = [k for k in v.kids[h] if k < h] if v.parsed else []
            lo = min([v.lo[k] for k in left] + [m])
            for p in range(lo + 1, h + 1):
                out.suppress(p, "S4")
            if not v.parsed:
                out.suppress(m + 1, "S4")
        elif f in ("以", "去"):
            if v.parsed:
                h = v.head[m]
                g = v.head[h] if h else 0
                ok = h and v.is_verbal(h) and g and g < m and v.is_verbal(g)
            else:
                ok = any(v.is_verbal(k) for k in range(1, m)) and m > 1 and not (
                    v.pos[m - 1] == "AD" or v.is_verbal(m - 1)
                )
            if ok:
                out.trigger(m, "T1", "purpose-goal")


# -- S5 / T5 verb coordination ------------------------------------------------------------

def _rule_coordination(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        return
    for v2 in range(1, v.n + 1):
        v1 = v.head[v2]
        if v.rel[v2] != "conj" or not v1 or v1 >= v2:
            continue
        if not (v.is_verbal(v1) and v.is_verbal(v2)):
            continue
        own1 = any(v.rel[c] in ("dobj", "range") and v1 < c < v2 for c in v.kids[v1])
        own2 = any(v.rel[c] == "dobj" and c > v2 for c in v.kids[v2])
        between = range(v1 + 1, v.lo[v2])
        ccs = [k for k in between if v.pos[k] == "CC"]
        if v.has_child(v1, ("ba", "pass")) or (not own1 and own2):
            out.suppress(v.lo[v2], "S5")
            for k in ccs:
                out.suppress(k, "S5")
        elif own1 and own2 and ccs and not any(v.is_punct(k) for k in between):
            out.trigger(min(ccs[0], v.lo[v2]), "T5", "coordinated objects")


# -- S6 existential 有 ---------------------------------------------------------------------

def _rule_existential(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        return
    for e in range(1, v.n + 1):
        if v.pos[e] != "VE" or v.form[e] not in ("有", "没有"):
            continue
        if not any(v.rel[k] in ("ccomp", "dobj", "dep") and v.is_verbal(k) for k in v.kids[e]):
            continue
        for p in range(v.lo[e] + 1, v.hi[e] + 1):
            out.suppress(p, "S6")


# -- T10 / T12 discourse cues ---------------------------------------------------------------

def _rule_cues(s: _State) -> None:
    v, out, lex = s.v, s.out, s.lex
    forms = v.form[1:]
    heads = lex.cue_initials
    joined = "\x00".join(forms)
    tails = [(e, tail) for e, tail in lex.gap_tails if tail in joined]
    matches = []
    for i in range(1, v.n + 1):
        if v.form[i][:1] in heads:
            m = lex.match_cue(forms, i - 1)
            if m is not None and not m.entry.leading_gap:
                matches.append((i, m))
    for e, tail in tails:
        for i in range(2, v.n + 1):
            if v.form[i].endswith(tail):
                # …的话 closes a conditional clause
                out.trigger(v.next_content(i + 1), "T10", e.surface)
    for i, m in matches:
        for a, b in m.parts:
            s.cue_tokens.update(range(a + 1, b + 1))
    for i, m in matches:
        if v.is_verbal(i) or v.rel_region[i] or v.in_paren[i] or i in s.blocked:
            continue
        e = m.entry
        if e.category == "topic" and e.is_template:
            out.trigger(i, "T10", e.surface)
            out.trigger(v.next_content(m.end + 1), "T10", e.surface)
            continue
        if e.is_correlative:
            for a, _ in m.parts[1:]:
                out.trigger(a + 1, "T10", e.surface)
            continue
        prev = i - 1
        if prev >= 1 and (v.form[prev] in COMMAS or v.form[prev] in COLONS):
            left = [k for k in range(1, prev) if not v.is_punct(k) and k not in s.cue_tokens]
            if left:
                out.trigger(i, "T10", e.surface)
            continue
        if prev >= 1 and v.pos[prev] == "VA" and s.pred[prev] and e.category in (
            "coordinating", "adversarial"
        ):
            out.trigger(i, "T6", e.surface)
            continue
        cs = v.clause_start(i)
        if cs < i and (v.pos[i] in ("CS", "P") or e.is_template):
            if _has_content(s, cs, i - 1) and not _has_pred(s, cs, i - 1):
                out.trigger(i, "T12", e.surface)


# -- T5/T6/T7 comma-separated clauses -----------------------------------------------------------

def _rule_commas(s: _State) -> None:
    v, out = s.v, s.out
    if not v.parsed:
        return
    left_start = 1
    for k in range(1, v.n):
        if v.form[k] not in COMMAS:
            continue
        resets = [r for r in s.resets if left_start < r <= k]
        if resets:
            left_start = max(resets)
        if v.in_paren[k] or v.rel_region[k] or k + 1 in s.blocked:
            continue
        # the right context runs to the next clause separator; 、 only lists items
        r_end = k + 1
        while r_end <= v.n and (v.form[r_end] in ENUM or not v.is_separator(r_end)):
            r_end += 1
        r_end -= 1
        lp = [i for i in range(left_start, k) if s.pred[i]]
        rp = [i for i in range(k + 1, r_end + 1) if s.pred[i]]
        if not lp or not rp:
            continue
        in_left = range(left_start, k)
        l_roots = [i for i in in_left if v.head[i] not in in_left]
        r_roots = [i for i in range(k + 1, r_end + 1) if not k < v.head[i] <= r_end]
        p = k + 1
        if any(
            v.is_verbal(i) and v.rel[i] in ("csubj", "nsubj", "top", "dobj", "ccomp", "xcomp")
            and v.head[i] > k for i in l_roots
        ) or any(
            v.rel[i] in ("ccomp", "dobj", "xcomp") and v.head[i] in in_left
            and v.is_verbal(v.head[i]) and not s.lex.is_attribution_verb(v.form[v.head[i]])
            for i in r_roots
        ):
            out.suppress(p, "S1", "clausal argument across comma")
            continue
        if any(v.is_nominal(i) and v.rel[i] in ("top", "dobj") and v.head[i] > k for i in l_roots):
            out.suppress(p, "S3")
            continue
        first = rp[0]
        rule = {"VC": "T5", "VA": "T6"}.get(v.pos[first], "T7" if v.is_nominal(first) else "T5")
        out.trigger(p, rule)
        if p not in out.suppressed:
            left_start = p


RULES = (
    _rule_blocked,
    _rule_relatives,
    _rule_parentheticals,
    _rule_dash_colon,
    _rule_serial_verbs,
    _rule_manner,
    _rule_attribution,
    _rule_complements,
    _rule_prepositions,
    _rule_particles,
    _rule_coordination,
    _rule_existential,
    _rule_cues,
    _rule_commas,
)


def run_rules(v: SentenceView, lex: Lexicon, disabled: frozenset[str]) -> tuple[BoundaryCandidate, ...]:
    out = Emitter(v.n, disabled)
    state = _State(v, lex, out)
    _mark_predicates(state)
    for rule in RULES:
        rule(state)
    return out.result()
