"""The closed relation inventory: 25 nucleus-satellite relations, 6
multinuclear relations and the same-unit device.

``manual_section`` points into the annotation guidelines so that linter
messages can send annotators to the right page.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Arity(str, Enum):
    NUCLEUS_SATELLITE = "nucleus-satellite"
    MULTINUCLEAR = "multinuclear"
    SAME_UNIT = "same-unit"

    @property
    def rs3_type(self) -> str:
        return "rst" if self is Arity.NUCLEUS_SATELLITE else "multinuc"


@dataclass(frozen=True)
class RelationLabel:
    name: str
    arity: Arity
    definition: str
    manual_section: str
    note: str = ""

    @property
    def is_multinuclear(self) -> bool:
        return self.arity is not Arity.NUCLEUS_SATELLITE


_NS = Arity.NUCLEUS_SATELLITE
_MN = Arity.MULTINUCLEAR

_TABLE = [
    ("adversative-antithesis", _NS, "2.1.1",
     "Satellite is a position the writer rejects in favour of the nucleus."),
    ("adversative-concession", _NS, "2.1.2",
     "Writer grants the satellite yet maintains the nucleus."),
    ("attribution-negative", _NS, "2.1.3",
     "Satellite is a negated source for the nucleus content."),
    ("attribution-positive", _NS, "2.1.4",
     "Satellite names the (non-negated) source of the nucleus content."),
    ("causal-cause", _NS, "2.1.5",
     "Satellite is the cause of the nucleus situation.",
     "Pick explanation-motivation instead when the satellite urges the reader to act."),
    ("causal-result", _NS, "2.1.6",
     "Satellite is a result of the nucleus situation."),
    ("context-background", _NS, "2.1.7",
     "Satellite supplies context the reader needs to follow the nucleus."),
    ("context-circumstance", _NS, "2.1.8",
     "Satellite sets the time, place or situation of the nucleus."),
    ("contingency-condition", _NS, "2.1.9",
     "Nucleus holds only if the satellite condition is met."),
    ("elaboration-additional", _NS, "2.1.10",
     "Satellite adds information about the whole nucleus; fallback choice."),
    ("elaboration-attribute", _NS, "2.1.11",
     "Satellite modifies one phrase of the nucleus, typically a noun (relative clauses)."),
    ("evaluation-comment", _NS, "2.1.12",
     "Satellite is an opinion about the nucleus."),
    ("explanation-evidence", _NS, "2.1.13",
     "Satellite supports the truth of the nucleus, e.g. a bracketed citation."),
    ("explanation-justify", _NS, "2.1.14",
     "Satellite explains why the writer is entitled to say the nucleus."),
    ("explanation-motivation", _NS, "2.1.15",
     "Satellite gives the reader a reason to carry out the nucleus.",
     "Contrast with causal-cause: motivation targets reader action."),
    ("mode-manner", _NS, "2.1.16",
     "Satellite describes the manner or style of the nucleus event."),
    ("mode-means", _NS, "2.1.17",
     "Satellite is the method or instrument that makes the nucleus happen."),
    ("organization-heading", _NS, "2.1.18",
     "Satellite is a graphically separated title introducing the nucleus.",
     "Nuclearity of heading vs. content is a manual judgement."),
    ("organization-phatic", _NS, "2.1.19",
     "Satellite holds the floor or repairs speech without content."),
    ("organization-preparation", _NS, "2.1.20",
     "Satellite introduces the nucleus without graphical separation."),
    ("purpose-attribute", _NS, "2.1.21",
     "Satellite is the purpose served by one phrase of the nucleus."),
    ("purpose-goal", _NS, "2.1.22",
     "Satellite is the goal the nucleus situation serves."),
    ("restatement-partial", _NS, "2.1.23",
     "Satellite repeats part of the nucleus without adding content."),
    ("topic-question", _NS, "2.1.24",
     "Satellite is a question that the nucleus answers.",
     "Follow-up question chains are nested, not flattened."),
    ("topic-solutionhood", _NS, "2.1.25",
     "Satellite states a problem that the nucleus solves."),
    ("adversative-contrast", _MN, "2.2.1",
     "Equally weighted units set against each other."),
    ("joint-disjunction", _MN, "2.2.2",
     "Equally weighted alternatives, one of which applies."),
    ("joint-list", _MN, "2.2.3",
     "Equally weighted, parallel items."),
    ("joint-sequence", _MN, "2.2.4",
     "Equally weighted units in temporal order."),
    ("joint-other", _MN, "2.2.5",
     "Equally weighted units with no closer relation; fallback choice."),
    ("restatement-repetition", _MN, "2.2.6",
     "Units that say the same thing."),
    ("same-unit", Arity.SAME_UNIT, "2.3",
     "Rejoins the fragments of one unit split by an embedded unit."),
]

_INVENTORY = tuple(RelationLabel(row[0], row[1], row[3], row[2], *(row[4:])) for row in _TABLE)
_BY_NAME = {label.name: label for label in _INVENTORY}
assert len(_BY_NAME) == len(_INVENTORY) == 32


def relation_inventory() -> list[RelationLabel]:
    return list(_INVENTORY)


def lookup(name: str) -> RelationLabel | None:
    return _BY_NAME.get(name)


def is_known(name: str) -> bool:
    return name in _BY_NAME
