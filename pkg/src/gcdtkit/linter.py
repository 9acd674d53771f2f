"""Guideline checks on complete RST trees.

Every check has a stable code in :data:`REGISTRY`. Structural validity is a
precondition: trees with shape errors are rejected before any check runs,
except for mixed multinuclear relation names, which the lint layer reports
itself as L-MULTINUC-SAMEREL.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .corpus_io.conllx import Token, has_parse
from .corpus_io.document import AnalyzedDocument
from .diagnostics import Diagnostic, Severity
from .errors import ConfigError, PreconditionFailed
from .rst_model.tree import MULTINUC, NUCLEUS, SATELLITE, ChildEdge, RstNode, RstTree, validate_structure


@dataclass(frozen=True)
class LintCode:
    code: str
    severity: Severity
    manual_section: str
    summary: str
    needs_parse: bool = False


REGISTRY: dict[str, LintCode] = {c.code: c for c in (
    LintCode("L-SU-INTERRUPT", Severity.WARNING, "2.3",
             "same-unit members are not separated by an embedded satellite EDU"),
    LintCode("W-SU-XSENT", Severity.WARNING, "1.1.12",
             "same-unit members lie in different sentences"),
    LintCode("L-ATTR-REL", Severity.ADVISORY, "2.0.1",
             "prenominal relative clause should be elaboration-attribute or purpose-attribute"),
    LintCode("L-ORDER", Severity.ADVISORY, "2.0.2",
             "subject modifier should attach higher than object modifier", needs_parse=True),
    LintCode("L-CITE", Severity.WARNING, "2.1.13",
             "bracketed citation should be an explanation-evidence satellite"),
    LintCode("L-HEAD", Severity.WARNING, "2.1.18",
             "heading must precede its nucleus and end at a paragraph or section break"),
    LintCode("L-QUES", Severity.ADVISORY, "2.1.24",
             "topic-question satellite has no question mark"),
    LintCode("L-MULTINUC-SAMEREL", Severity.ERROR, "2.2",
             "members of one multinuclear node carry different relations"),
)}

# shown under every text report; these calls are left to annotators
MANUAL_REVIEW = (
    "Relation choice between close labels, such as cause versus motivation, is not checked (see 3.2).",
    "Whether a heading or its content is the nucleus is not checked (see 3.1).",
    "Nesting of question-answer chains is not checked (see 3.3).",
)

RELATIVE_RELATIONS = frozenset(["elaboration-attribute", "purpose-attribute"])
SAME_UNIT = "same-unit"

# one or more bracketed numerals, optionally with a page suffix such as ": pp. 3-4"
CITATION_RE = re.compile(
    r"(?:[\[［]\d+(?:\s*[-–,，]\s*\d+)*[\]］])+"
    r"(?:\s*[:：]\s*(?:pp?\.\s*)?\d+(?:\s*[-–]\s*\d+)?)?"
    r"\s*[。.，,；;]?"
)
_QUESTION_MARKS = ("？", "?")
_TRAILING = "。，,.；;：:！!？?、 \t"
_SUBJECT_RELS = frozenset(["nsubj", "nsubjpass", "top", "xsubj"])
_OBJECT_RELS = frozenset(["dobj", "attr", "range", "iobj"])
_NOUN_CHAIN_RELS = frozenset(["conj", "nn", "appos"])


@dataclass(frozen=True)
class LintConfig:
    severity_overrides: Mapping[str, Severity] = field(default_factory=dict)
    disabled: frozenset[str] = frozenset()

    def __post_init__(self):
        try:
            overrides = {code: Severity(sev) for code, sev in dict(self.severity_overrides).items()}
        except ValueError as exc:
            raise ConfigError(f"bad severity override: {exc}") from None
        object.__setattr__(self, "severity_overrides", overrides)
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        unknown = sorted((set(overrides) | self.disabled) - set(REGISTRY))
        if unknown:
            raise ConfigError(f"unknown lint codes: {', '.join(unknown)}")


@dataclass(frozen=True)
class LintReport:
    diagnostics: tuple[Diagnostic, ...]
    # checks that could not run, e.g. for lack of a dependency parse
    notes: tuple[str, ...] = ()


def lint(doc: AnalyzedDocument | None, tree: RstTree, config: LintConfig | None = None) -> list[Diagnostic]:
    return list(lint_report(doc, tree, config).diagnostics)


def lint_report(doc: AnalyzedDocument | None, tree: RstTree, config: LintConfig | None = None) -> LintReport:
    config = config or LintConfig()
    blocking = sorted({d.code for d in validate_structure(tree) if d.code != "E-MULTINUC-MIXED"})
    if blocking:
        raise PreconditionFailed(f"tree fails structural validation: {', '.join(blocking)}")
    ctx = _Context(doc, tree)
    found: list[Diagnostic] = []
    for check in _CHECKS:
        found.extend(check(ctx))

    out = []
    for d in found:
        if d.code in config.disabled:
            continue
        severity = config.severity_overrides.get(d.code, d.severity)
        out.append(Diagnostic(d.code, severity, d.message, d.node_id, d.span, d.manual_section))
    out.sort(key=lambda d: (d.span or (0, 0), d.code, d.node_id or ""))
    notes = tuple(n for code, n in ctx.notes if code not in config.disabled)
    return LintReport(tuple(out), notes)


def align_edus(doc: AnalyzedDocument, tree: RstTree) -> list[list[tuple[int, int]]] | None:
    """Map each EDU to its ``(sentence index, token index)`` pairs.

    EDU text and token forms are compared with whitespace removed. Returns
    None when the texts do not line up. A token split across two EDUs is
    listed under both.
    """
    owners: list[tuple[int, int]] = []
    chars: list[str] = []
    for s, sentence in enumerate(doc.sentences):
        for tok in sentence:
            for ch in "".join(tok.form.split()):
                chars.append(ch)
                owners.append((s, tok.index))
    pos = 0
    out = []
    for edu in tree.edus:
        text = "".join(edu.text.split())
        if "".join(chars[pos:pos + len(text)]) != text:
            return None
        seen: dict[tuple[int, int], None] = {}
        for owner in owners[pos:pos + len(text)]:
            seen[owner] = None
        out.append(list(seen))
        pos += len(text)
    return out if pos == len(chars) else None


class _Context:
    def __init__(self, doc: AnalyzedDocument | None, tree: RstTree):
        self.doc = doc
        self.tree = tree
        self.depth = {tree.root.id: 0}
        for node in tree.nodes():
            for edge in node.children:
                self.depth[edge.node.id] = self.depth[node.id] + 1
        self.edus = align_edus(doc, tree) if doc is not None else None
        self.notes: list[tuple[str, str]] = []
        if doc is not None and self.edus is None:
            self.notes.append(("", "EDU text does not match the document; document-based checks skipped"))

    def diag(self, code: str, message: str, node: RstNode) -> Diagnostic:
        entry = REGISTRY[code]
        return Diagnostic(code, entry.severity, message, node.id, node.span, entry.manual_section)

    def note(self, code: str, text: str) -> None:
        self.notes.append((code, f"{code}: {text}"))

    def sentences_of(self, edu: int) -> set[int]:
        if self.edus is not None:
            return {s for s, _ in self.edus[edu - 1]}
        return set(self.tree.edus[edu - 1].sentences)

    def text(self, node: RstNode) -> str:
        return self.tree.edu_text(node).strip()

    def satellite_edges(self) -> Iterable[tuple[RstNode, ChildEdge]]:
        for node in self.tree.nodes():
            for edge in node.children:
                if edge.role == SATELLITE:
                    yield node, edge


def nucleus_path_edu(node: RstNode) -> int:
    """Follow nucleus edges down to a leaf, leftmost on ties."""
    while not node.is_leaf:
        nuclei = node.nucleus_children() or list(node.children)
        node = nuclei[0].node
    return node.edu


def _same_unit_nodes(tree: RstTree) -> list[RstNode]:
    return [
        n for n in tree.nodes()
        if n.kind == MULTINUC and n.children and all(c.relation == SAME_UNIT for c in n.children)
    ]


def _satellite_edus(node: RstNode, below_satellite: bool = False) -> set[int]:
    if node.is_leaf:
        return {node.edu} if below_satellite else set()
    out: set[int] = set()
    for edge in node.children:
        out |= _satellite_edus(edge.node, below_satellite or edge.role == SATELLITE)
    return out


def _check_interrupt(ctx: _Context) -> list[Diagnostic]:
    out = []
    for node in _same_unit_nodes(ctx.tree):
        embedded = _satellite_edus(node)
        heads = [nucleus_path_edu(c.node) for c in node.children]
        if not any(any(a < e < b for e in embedded) for a, b in zip(heads, heads[1:])):
            out.append(ctx.diag(
                "L-SU-INTERRUPT",
                f"same-unit members rooted at EDUs {heads} have no embedded unit between them",
                node,
            ))
    return out


def _check_cross_sentence(ctx: _Context) -> list[Diagnostic]:
    out = []
    for node in _same_unit_nodes(ctx.tree):
        sentences = set()
        for edge in node.children:
            sentences |= ctx.sentences_of(nucleus_path_edu(edge.node))
        if len(sentences) > 1:
            out.append(ctx.diag(
                "W-SU-XSENT", f"same-unit members come from sentences {sorted(sentences)}", node
            ))
    return out


def _nucleus_of(parent: RstNode) -> RstNode | None:
    nuclei = parent.nucleus_children()
    return nuclei[0].node if len(nuclei) == 1 else None


def _check_relative(ctx: _Context) -> list[Diagnostic]:
    out = []
    for parent, edge in ctx.satellite_edges():
        text = ctx.text(edge.node).rstrip(_TRAILING)
        nucleus = _nucleus_of(parent)
        if not text.endswith(("的", "之")) or nucleus is None:
            continue
        # prenominal: the clause sits right before the noun it modifies
        if edge.node.span[1] + 1 != nucleus.span[0]:
            continue
        if edge.relation not in RELATIVE_RELATIONS:
            out.append(ctx.diag(
                "L-ATTR-REL",
                f"relative clause labelled {edge.relation}; expected elaboration-attribute or purpose-attribute",
                edge.node,
            ))
    return out


def _check_citation(ctx: _Context) -> list[Diagnostic]:
    evidence = {
        e.node.span for _, e in ctx.satellite_edges() if e.relation == "explanation-evidence"
    }
    leaves = {n.edu: n for n in ctx.tree.nodes() if n.is_leaf}
    out = []
    for i, edu in enumerate(ctx.tree.edus, start=1):
        if CITATION_RE.fullmatch(edu.text.strip()) and (i, i) not in evidence:
            out.append(ctx.diag(
                "L-CITE", "citation EDU is not an explanation-evidence satellite", leaves[i]
            ))
    return out


def _ends_at_break(ctx: _Context, edu: int) -> bool:
    s, tok = ctx.edus[edu - 1][-1]
    return tok == len(ctx.doc.sentences[s]) and ctx.doc.structure.ends_paragraph(s)


def _check_heading(ctx: _Context) -> list[Diagnostic]:
    out = []
    headings = [(p, e) for p, e in ctx.satellite_edges() if e.relation == "organization-heading"]
    if headings and ctx.edus is None:
        ctx.note("L-HEAD", "no aligned document; paragraph breaks after headings not checked")
    for parent, edge in headings:
        nucleus = _nucleus_of(parent)
        if nucleus is not None and edge.node.span[0] > nucleus.span[1]:
            out.append(ctx.diag("L-HEAD", "heading follows its nucleus", edge.node))
        elif ctx.edus is not None and not _ends_at_break(ctx, edge.node.span[1]):
            out.append(ctx.diag(
                "L-HEAD",
                "heading is not followed by a paragraph break; use organization-preparation",
                edge.node,
            ))
    return out


def _check_question(ctx: _Context) -> list[Diagnostic]:
    out = []
    for _, edge in ctx.satellite_edges():
        if edge.relation == "topic-question" and not any(q in ctx.text(edge.node) for q in _QUESTION_MARKS):
            out.append(ctx.diag("L-QUES", "question satellite contains no question mark", edge.node))
    return out


def _check_multinuc(ctx: _Context) -> list[Diagnostic]:
    out = []
    for node in ctx.tree.nodes():
        names = {c.relation for c in node.children if c.role == NUCLEUS}
        if node.kind == MULTINUC and len(names) > 1:
            shown = ", ".join(sorted(str(n) for n in names))
            out.append(ctx.diag("L-MULTINUC-SAMEREL", f"members carry different relations: {shown}", node))
    return out


def _argument_role(sentence: Sequence[Token], index: int) -> tuple[str, int] | None:
    """Classify the noun at ``index`` as subject or object of its predicate."""
    seen = set()
    while index not in seen and 1 <= index <= len(sentence):
        seen.add(index)
        tok = sentence[index - 1]
        if tok.deprel in _SUBJECT_RELS:
            return ("subject", tok.head)
        if tok.deprel in _OBJECT_RELS:
            return ("object", tok.head)
        if tok.deprel not in _NOUN_CHAIN_RELS:
            return None
        index = tok.head
    return None


def _modified_argument(ctx: _Context, edu: int) -> tuple[str, tuple[int, int]] | None:
    """Role and predicate of the noun a satellite EDU attaches to, if any."""
    own = ctx.edus[edu - 1]
    mine = set(own)
    for s, tok in own:
        head = ctx.doc.sentences[s][tok - 1].head
        if head and (s, head) not in mine:
            role = _argument_role(ctx.doc.sentences[s], head)
            return (role[0], (s, role[1])) if role else None
    return None


def _check_order(ctx: _Context) -> list[Diagnostic]:
    if ctx.edus is None or not all(has_parse(s) for s in ctx.doc.sentences):
        ctx.note("L-ORDER", "no dependency parse; attachment order of modifiers not checked")
        return []
    by_predicate: dict[tuple[int, int], dict[str, list[ChildEdge]]] = {}
    for _, edge in ctx.satellite_edges():
        if edge.node.span[0] != edge.node.span[1]:
            continue
        found = _modified_argument(ctx, edge.node.span[0])
        if found:
            role, predicate = found
            by_predicate.setdefault(predicate, {}).setdefault(role, []).append(edge)
    out = []
    for roles in by_predicate.values():
        for subj in roles.get("subject", []):
            for obj in roles.get("object", []):
                if ctx.depth[subj.node.id] > ctx.depth[obj.node.id]:
                    out.append(ctx.diag(
                        "L-ORDER",
                        f"subject modifier attaches below the object modifier at EDU {obj.node.span[0]}",
                        subj.node,
                    ))
    return out


_CHECKS = (
    _check_interrupt,
    _check_cross_sentence,
    _check_relative,
    _check_order,
    _check_citation,
    _check_heading,
    _check_question,
    _check_multinuc,
)


def format_text(report: LintReport, source: str = "") -> str:
    lines = [f"{source}: {d.format()}" if source else d.format() for d in report.diagnostics]
    counts = {s: sum(d.severity is s for d in report.diagnostics) for s in Severity}
    lines.append(
        f"{len(report.diagnostics)} finding(s): "
        + ", ".join(f"{counts[s]} {s.value}" for s in reversed(list(Severity)))
    )
    for note in report.notes:
        lines.append(f"note: {note}")
    for item in MANUAL_REVIEW:
        lines.append(f"manual review: {item}")
    return "\n".join(lines) + "\n"


def format_jsonl(report: LintReport, source: str = "") -> str:
    rows = []
    for d in report.diagnostics:
        row = {
            "code": d.code,
            "severity": d.severity.value,
            "locus": {"node": d.node_id, "span": list(d.span) if d.span else None},
            "message": d.message,
            "section": d.manual_section,
        }
        if source:
            row["source"] = source
        rows.append(json.dumps(row, ensure_ascii=False, sort_keys=True))
    return "".join(r + "\n" for r in rows)


def worst_severity(diagnostics: Iterable[Diagnostic]) -> Severity | None:
    ranked = [d.severity for d in diagnostics]
    return max(ranked, key=lambda s: s.rank) if ranked else None
