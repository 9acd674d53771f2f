"""RST constituent trees over EDUs and their shape checks.

EDU indices are 1-based. Children of an internal node are kept sorted by
span, so two trees built in different insertion orders compare equal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from ..diagnostics import Diagnostic, Severity
from .relations import Arity, lookup

NUCLEUS = "nucleus"
SATELLITE = "satellite"

LEAF = "leaf"
SPAN = "span"  # one nucleus plus satellites
MULTINUC = "multinuc"

STRUCTURE_CODES = (
    "E-SPAN-GAP",
    "E-SPAN-OVERLAP",
    "E-ORPHAN",
    "E-MULTINUC-ARITY",
    "E-MULTINUC-MIXED",
    "E-NS-SHAPE",
    "E-UNKNOWN-REL",
    "E-ROOT-SAT",
    "E-EDU-XSENT",
)


@dataclass(frozen=True)
class Edu:
    text: str
    # sentence indices the EDU draws tokens from; empty when unknown
    sentences: tuple[int, ...] = ()


@dataclass(frozen=True)
class ChildEdge:
    node: RstNode
    role: str = NUCLEUS
    relation: str | None = None


@dataclass(frozen=True)
class RstNode:
    id: str
    edu: int | None = None
    children: tuple[ChildEdge, ...] = ()
    kind: str = LEAF

    def __post_init__(self):
        if self.kind == LEAF:
            if self.edu is None or self.children:
                raise ValueError("a leaf carries exactly one EDU and no children")
        else:
            if self.edu is not None or not self.children:
                raise ValueError("an internal node carries children and no EDU")
            ordered = tuple(sorted(self.children, key=lambda c: (c.node.span, c.node.id)))
            object.__setattr__(self, "children", ordered)
        object.__setattr__(self, "_span", self._compute_span())

    def _compute_span(self) -> tuple[int, int]:
        if self.kind == LEAF:
            return (self.edu, self.edu)
        firsts, lasts = zip(*(c.node.span for c in self.children))
        return (min(firsts), max(lasts))

    @property
    def span(self) -> tuple[int, int]:
        return self._span

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def walk(self) -> Iterator[RstNode]:
        yield self
        for child in self.children:
            yield from child.node.walk()

    def leaves(self) -> Iterator[RstNode]:
        return (n for n in self.walk() if n.is_leaf)

    def nucleus_children(self) -> list[ChildEdge]:
        return [c for c in self.children if c.role == NUCLEUS]


def leaf(node_id: str, edu: int) -> RstNode:
    return RstNode(node_id, edu=edu)


def span_node(node_id: str, nucleus: RstNode, *satellites: tuple[RstNode, str]) -> RstNode:
    edges = [ChildEdge(nucleus, NUCLEUS)]
    edges += [ChildEdge(node, SATELLITE, rel) for node, rel in satellites]
    return RstNode(node_id, children=tuple(edges), kind=SPAN)


def multinuc_node(node_id: str, relation: str, *members: RstNode) -> RstNode:
    edges = tuple(ChildEdge(m, NUCLEUS, relation) for m in members)
    return RstNode(node_id, children=edges, kind=MULTINUC)


@dataclass(frozen=True)
class RstTree:
    root: RstNode
    edus: tuple[Edu, ...]
    orphans: tuple[RstNode, ...] = ()
    # relation carried by the root itself; only set for malformed input
    root_relation: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "edus", tuple(self.edus))
        object.__setattr__(self, "orphans", tuple(self.orphans))

    def nodes(self) -> Iterator[RstNode]:
        yield from self.root.walk()

    def parents(self) -> dict[str, tuple[RstNode, ChildEdge]]:
        """Map node id to (parent, edge into that node)."""
        out = {}
        for node in self.nodes():
            for edge in node.children:
                out[edge.node.id] = (node, edge)
        return out

    def edu_text(self, node: RstNode) -> str:
        a, b = node.span
        return "".join(e.text for e in self.edus[a - 1:b])


def node_span(node: RstNode) -> tuple[int, int]:
    return node.span


def _diag(code: str, message: str, node: RstNode | None = None) -> Diagnostic:
    return Diagnostic(
        code=code,
        severity=Severity.ERROR,
        message=message,
        node_id=node.id if node is not None else None,
        span=node.span if node is not None else None,
    )


def _check_children(node: RstNode, skip: set[int], out: list[Diagnostic]) -> None:
    spans = [c.node.span for c in node.children]
    for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
        if a2 <= b1:
            out.append(_diag("E-SPAN-OVERLAP", f"children {a1}-{b1} and {a2}-{b2} overlap", node))
        elif any(i not in skip for i in range(b1 + 1, a2)):
            out.append(_diag("E-SPAN-GAP", f"no child covers EDUs {b1 + 1}-{a2 - 1}", node))


def _check_shape(node: RstNode, out: list[Diagnostic]) -> None:
    for edge in node.children:
        if edge.relation is not None and lookup(edge.relation) is None:
            out.append(_diag("E-UNKNOWN-REL", f"relation {edge.relation!r} is not in the inventory", edge.node))

    if node.kind == MULTINUC:
        if len(node.children) < 2:
            out.append(_diag("E-MULTINUC-ARITY", "multinuclear node needs at least two members", node))
        if any(c.role != NUCLEUS for c in node.children):
            out.append(_diag("E-NS-SHAPE", "multinuclear node has a satellite member", node))
        names = {c.relation for c in node.children}
        if len(names) > 1:
            shown = ", ".join(sorted(str(n) for n in names))
            out.append(_diag("E-MULTINUC-MIXED", f"members carry different relations: {shown}", node))
        for name in names:
            label = lookup(name) if name else None
            if name is None or (label is not None and label.arity is Arity.NUCLEUS_SATELLITE):
                out.append(_diag("E-NS-SHAPE", f"member relation {name!r} is not multinuclear", node))
        return

    nuclei = node.nucleus_children()
    satellites = [c for c in node.children if c.role == SATELLITE]
    problems = []
    if len(nuclei) != 1:
        problems.append(f"{len(nuclei)} nuclei")
    if not satellites:
        problems.append("no satellite")
    if any(c.relation is not None for c in nuclei):
        problems.append("nucleus carries a relation")
    for sat in satellites:
        label = lookup(sat.relation) if sat.relation else None
        if sat.relation is None or (label is not None and label.arity is not Arity.NUCLEUS_SATELLITE):
            problems.append(f"satellite relation {sat.relation!r} is not nucleus-satellite")
    if problems:
        out.append(_diag("E-NS-SHAPE", "; ".join(problems), node))


def validate_structure(tree: RstTree) -> list[Diagnostic]:
    """Return one diagnostic per violated shape invariant; empty means valid."""
    out: list[Diagnostic] = []
    n = len(tree.edus)

    orphan_edus = {leaf_.edu for o in tree.orphans for leaf_ in o.leaves()}
    for orphan in tree.orphans:
        out.append(_diag("E-ORPHAN", "node is not connected to the root", orphan))

    seen: Counter[int] = Counter()
    for node in tree.nodes():
        if node.is_leaf:
            seen[node.edu] += 1
            if not 1 <= node.edu <= n:
                out.append(_diag("E-SPAN-OVERLAP", f"leaf points at EDU {node.edu} outside 1-{n}", node))
        else:
            _check_children(node, orphan_edus, out)
            _check_shape(node, out)
    for edu, count in sorted(seen.items()):
        if count > 1:
            out.append(_diag("E-SPAN-OVERLAP", f"EDU {edu} appears in {count} leaves"))

    first, last = tree.root.span
    outside = [i for i in range(1, n + 1) if not first <= i <= last and i not in orphan_edus]
    if outside:
        out.append(_diag("E-SPAN-GAP", f"root does not cover EDUs {outside}", tree.root))

    if tree.root_relation is not None:
        out.append(_diag("E-ROOT-SAT", f"root carries relation {tree.root_relation!r}", tree.root))

    for i, edu in enumerate(tree.edus, start=1):
        if len(edu.sentences) > 1:
            out.append(Diagnostic(
                "E-EDU-XSENT", Severity.ERROR,
                f"EDU {i} spans sentences {list(edu.sentences)}", span=(i, i),
            ))
    return out
