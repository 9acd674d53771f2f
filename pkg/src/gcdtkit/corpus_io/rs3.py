"""rs3 XML (the rstWeb interchange format) to and from :class:`RstTree`.

rs3 is a flat list of nodes with ``parent``/``relname`` pointers. A
satellite points at its nucleus, and a ``span`` group wraps a nucleus plus
everything attached to it. Reading rebuilds that into nested nodes; span
groups that wrap a single node with nothing attached are collapsed.
"""

from __future__ import annotations

import unicodedata
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from ..errors import CycleDetected, DanglingParent, InvalidTree, UnknownRelation, XmlError
from ..rst_model.relations import Arity, lookup
from ..rst_model.tree import (
    LEAF,
    MULTINUC,
    NUCLEUS,
    SATELLITE,
    SPAN,
    ChildEdge,
    Edu,
    RstNode,
    RstTree,
    validate_structure,
)


@dataclass
class _Raw:
    id: str
    kind: str  # segment, span or multinuc
    parent: str | None
    relname: str
    text: str = ""
    edu: int | None = None


def _id_key(node_id: str):
    return (0, int(node_id), "") if node_id.isdigit() else (1, 0, node_id)


class _Reader:
    def __init__(self, text: str):
        try:
            root = ET.fromstring(text)
        except ET.ParseError as exc:
            raise XmlError(str(exc)) from None
        if root.tag != "rst" or root.find("body") is None:
            raise XmlError("expected an <rst> document with a <body>")

        self.declared: dict[str, str] = {}
        for rel in root.iterfind("header/relations/rel"):
            name = rel.get("name", "").strip()
            self.declared[name] = rel.get("type", "rst")

        self.nodes: dict[str, _Raw] = {}
        self.edus: list[Edu] = []
        for el in root.find("body"):
            if el.tag not in ("segment", "group"):
                continue
            node_id = el.get("id")
            if not node_id:
                raise XmlError(f"<{el.tag}> without id")
            if node_id in self.nodes:
                raise XmlError(f"duplicate node id {node_id}")
            relname = (el.get("relname") or "").strip()
            self._check_relname(relname)
            raw = _Raw(node_id, "segment", el.get("parent") or None, relname)
            if el.tag == "segment":
                self.edus.append(Edu((el.text or "").strip()))
                raw.edu = len(self.edus)
            else:
                raw.kind = el.get("type", "span")
                if raw.kind not in (SPAN, MULTINUC):
                    raise XmlError(f"group {node_id} has unknown type {raw.kind!r}")
            self.nodes[node_id] = raw

        self.kids: dict[str, list[_Raw]] = {i: [] for i in self.nodes}
        for raw in self.nodes.values():
            if raw.parent is not None:
                if raw.parent not in self.nodes:
                    raise DanglingParent(raw.id, raw.parent)
                self.kids[raw.parent].append(raw)
        self._check_cycles()
        self._next_id = 1 + max(
            (int(i) for i in self.nodes if i.isdigit()), default=0
        )

    def _check_relname(self, relname: str) -> None:
        if relname in ("", "span"):
            return
        if relname not in self.declared or lookup(relname) is None:
            raise UnknownRelation(relname)

    def _check_cycles(self) -> None:
        done: set[str] = set()
        for start in self.nodes:
            path = []
            cur = start
            while cur is not None and cur not in done:
                if cur in path:
                    raise CycleDetected(start)
                path.append(cur)
                cur = self.nodes[cur].parent
            done.update(path)

    def _role(self, child: _Raw, parent: _Raw) -> str:
        """Classify an rs3 child as 'span', 'member' or 'satellite'."""
        label = lookup(child.relname)
        is_multi = label is not None and label.arity is not Arity.NUCLEUS_SATELLITE
        if parent.kind == MULTINUC and (is_multi or child.relname in ("span", "")):
            return "member"
        if parent.kind == SPAN and child.relname in ("span", ""):
            return "span"
        return "satellite"

    def _fresh_id(self) -> str:
        new = str(self._next_id)
        self._next_id += 1
        return new

    def _satellite_edges(self, raw: _Raw) -> list[ChildEdge]:
        return [
            ChildEdge(self.wrapped(k), SATELLITE, k.relname or None)
            for k in self.kids[raw.id]
            if self._role(k, raw) == "satellite"
        ]

    def inner(self, raw: _Raw) -> RstNode:
        if raw.kind == "segment":
            return RstNode(raw.id, edu=raw.edu)
        if raw.kind == MULTINUC:
            members = [
                ChildEdge(self.wrapped(k), NUCLEUS, k.relname if k.relname not in ("", "span") else None)
                for k in self.kids[raw.id]
                if self._role(k, raw) == "member"
            ]
            if not members:
                raise XmlError(f"multinuc group {raw.id} has no members")
            return RstNode(raw.id, children=tuple(members), kind=MULTINUC)

        spans = [k for k in self.kids[raw.id] if self._role(k, raw) == "span"]
        if not spans:
            raise XmlError(f"span group {raw.id} has no nucleus")
        if len(spans) == 1:
            nucleus = spans[0]
            sats = self._satellite_edges(nucleus)
            if not sats:
                return self.inner(nucleus)
            edges = [ChildEdge(self.inner(nucleus), NUCLEUS)] + sats
            return RstNode(raw.id, children=tuple(edges), kind=SPAN)
        # several nuclei in one span group; kept so validation can report it
        edges = [ChildEdge(self.wrapped(k), NUCLEUS) for k in spans]
        return RstNode(raw.id, children=tuple(edges), kind=SPAN)

    def wrapped(self, raw: _Raw) -> RstNode:
        """The node for ``raw`` together with satellites pointing at it."""
        sats = self._satellite_edges(raw)
        core = self.inner(raw)
        if not sats:
            return core
        return RstNode(self._fresh_id(), children=(ChildEdge(core, NUCLEUS), *sats), kind=SPAN)

    def tree(self) -> RstTree:
        if not self.edus:
            raise XmlError("document has no segments")
        tops = [self.wrapped(r) for r in self.nodes.values() if r.parent is None]
        tops.sort(key=lambda n: (-(n.span[1] - n.span[0]), n.span))
        root, orphans = tops[0], tuple(tops[1:])
        top_raw = self.nodes.get(root.id)
        root_rel = None
        if top_raw is not None and top_raw.relname not in ("", "span"):
            root_rel = top_raw.relname
        return RstTree(root, tuple(self.edus), orphans, root_rel)


def parse_rs3(text: str) -> RstTree:
    return _Reader(text).tree()


def _emit(node: RstNode, parent: str | None, relname: str, segments: dict, groups: list) -> None:
    attrs = {"id": node.id}
    if parent is not None:
        attrs["parent"] = parent
    if relname:
        attrs["relname"] = relname
    if node.kind == LEAF:
        segments[node.edu] = attrs
        return
    attrs["type"] = node.kind
    groups.append(attrs)
    if node.kind == MULTINUC:
        for edge in node.children:
            _emit(edge.node, node.id, edge.relation or "", segments, groups)
        return
    nucleus = node.nucleus_children()[0].node
    _emit(nucleus, node.id, "span", segments, groups)
    for edge in node.children:
        if edge.role == SATELLITE:
            _emit(edge.node, nucleus.id, edge.relation or "", segments, groups)


def serialize_rs3(tree: RstTree) -> str:
    problems = validate_structure(tree)
    if problems:
        raise InvalidTree(sorted({d.code for d in problems}))
    ids = [n.id for n in tree.nodes()]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1}, key=_id_key)
        raise XmlError(f"duplicate node ids {dupes}")

    used: dict[str, str] = {}
    for node in tree.nodes():
        for edge in node.children:
            if edge.relation:
                used[edge.relation] = lookup(edge.relation).arity.rs3_type

    segments: dict[int, dict] = {}
    groups: list[dict] = []
    _emit(tree.root, None, "", segments, groups)

    root = ET.Element("rst")
    header = ET.SubElement(root, "header")
    relations = ET.SubElement(header, "relations")
    for name in sorted(used):
        ET.SubElement(relations, "rel", {"name": name, "type": used[name]})
    body = ET.SubElement(root, "body")
    for i in sorted(segments):
        el = ET.SubElement(body, "segment", dict(sorted(segments[i].items())))
        el.text = tree.edus[i - 1].text
    for attrs in sorted(groups, key=lambda a: _id_key(a["id"])):
        ET.SubElement(body, "group", dict(sorted(attrs.items())))
    ET.indent(root, space="  ")
    xml = ET.tostring(root, encoding="unicode")
    return unicodedata.normalize("NFC", '<?xml version="1.0" encoding="utf-8"?>\n' + xml + "\n")
