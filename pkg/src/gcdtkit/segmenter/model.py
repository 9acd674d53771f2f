from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ConfigError

TRIGGER = "trigger"
SUPPRESS = "suppress"

TRIGGER_RULES = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10", "T12")
SUPPRESSION_RULES = ("S1", "S2", "S3", "S4", "S5", "S6", "S7")
RULE_IDS = TRIGGER_RULES + SUPPRESSION_RULES

# rules that read dependency heads; off when a sentence has no parse
PARSE_RULES = frozenset(["T1", "T5", "T6", "T7", "S1", "S5"])


@dataclass(frozen=True, order=True)
class BoundaryCandidate:
    """A rule firing at ``position``: the boundary before 1-based token ``position``."""

    position: int
    rule: str
    polarity: str
    note: str = ""


@dataclass(frozen=True)
class EduSpan:
    sentence_index: int
    first_token: int  # 1-based, inclusive
    last_token: int
    trace: tuple[str, ...] = ()

    def __len__(self) -> int:
        return self.last_token - self.first_token + 1


@dataclass(frozen=True)
class SegmenterConfig:
    disabled_rules: frozenset[str] = frozenset()
    # raise PreconditionFailed on an unparsed sentence instead of degrading
    require_parse: bool = False
    lexicon_dir: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "disabled_rules", frozenset(self.disabled_rules))
        unknown = sorted(self.disabled_rules - set(RULE_IDS))
        if unknown:
            raise ConfigError(f"unknown rule ids: {', '.join(unknown)}")


@dataclass(frozen=True)
class SentenceAnalysis:
    candidates: tuple[BoundaryCandidate, ...]
    spans: tuple[EduSpan, ...]
    degraded: bool = False
    warnings: tuple[str, ...] = field(default=())
