"""Exception types.

Only unreadable or contract-violating *input* raises. Problems with the
content of a well-formed RST tree are reported as diagnostics instead.
"""

from __future__ import annotations


class GcdtError(Exception):
    """Base class for every error raised by this package."""


# -- raw documents ---------------------------------------------------------

class RawFormatError(GcdtError):
    pass


class MissingMetadataField(RawFormatError):
    def __init__(self, name: str):
        super().__init__(f"missing metadata field: {name}")
        self.name = name


class InvalidMetadata(RawFormatError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"invalid metadata field {name}: {reason}")
        self.name = name
        self.reason = reason


class MalformedMarker(RawFormatError):
    def __init__(self, line_no: int, line: str = ""):
        super().__init__(f"line {line_no}: malformed structure marker {line!r}")
        self.line_no = line_no


class EmptyBody(RawFormatError):
    def __init__(self):
        super().__init__("document body contains no sentences")


# -- CoNLL-X ---------------------------------------------------------------

class ConllxError(GcdtError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BadColumnCount(ConllxError):
    def __init__(self, line_no: int, found: int):
        super().__init__(line_no, f"expected 10 tab-separated columns, found {found}")
        self.found = found


class NonNumericIndex(ConllxError):
    def __init__(self, line_no: int, value: str):
        super().__init__(line_no, f"token index {value!r} is not a positive integer in sequence")


class HeadOutOfRange(ConllxError):
    def __init__(self, line_no: int, head: str):
        super().__init__(line_no, f"head {head!r} does not name a token of this sentence")


class SelfHead(ConllxError):
    def __init__(self, line_no: int):
        super().__init__(line_no, "token is its own head")


class RootCount(ConllxError):
    def __init__(self, line_no: int, count: int):
        super().__init__(line_no, f"sentence has {count} root tokens, expected exactly 1")


class PartialParse(ConllxError):
    def __init__(self, line_no: int):
        super().__init__(line_no, "head column mixes '_' with numeric heads")


# -- alignment -------------------------------------------------------------

class AlignmentError(GcdtError):
    pass


class SentenceCountMismatch(AlignmentError):
    def __init__(self, raw: int, parsed: int):
        super().__init__(f"{raw} raw sentences but {parsed} parsed sentences")
        self.raw = raw
        self.parsed = parsed


class TextMismatch(AlignmentError):
    def __init__(self, sentence_index: int, char_index: int):
        super().__init__(
            f"sentence {sentence_index}: token forms diverge from raw text at character {char_index}"
        )
        self.sentence_index = sentence_index
        self.char_index = char_index


# -- rs3 -------------------------------------------------------------------

class Rs3Error(GcdtError):
    pass


class XmlError(Rs3Error):
    pass


class UnknownRelation(Rs3Error):
    def __init__(self, name: str):
        super().__init__(f"unknown relation: {name!r}")
        self.name = name


class DanglingParent(Rs3Error):
    def __init__(self, node_id: str, parent: str):
        super().__init__(f"node {node_id} points at missing parent {parent}")
        self.node_id = node_id
        self.parent = parent


class CycleDetected(Rs3Error):
    def __init__(self, node_id: str):
        super().__init__(f"parent chain starting at node {node_id} loops")
        self.node_id = node_id


class InvalidTree(Rs3Error):
    def __init__(self, codes):
        self.codes = tuple(codes)
        super().__init__("tree fails structural validation: " + ", ".join(self.codes))


# -- lexicons, linting, metrics, config --------------------------------------

class LexiconError(GcdtError):
    pass


class PreconditionFailed(GcdtError):
    pass


class CoverageMismatch(GcdtError):
    pass


class EduMismatch(GcdtError):
    pass


class ConfigError(GcdtError):
    pass
