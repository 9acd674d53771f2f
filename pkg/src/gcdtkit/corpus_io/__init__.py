from .conllx import Sentence, Token, has_parse, parse_conllx, serialize_conllx
from .document import AnalyzedDocument, align
from .raw import DocStructure, Metadata, parse_raw_document, serialize_raw_document
from .rs3 import parse_rs3, serialize_rs3

__all__ = [
    "AnalyzedDocument",
    "DocStructure",
    "Metadata",
    "Sentence",
    "Token",
    "align",
    "has_parse",
    "parse_conllx",
    "parse_raw_document",
    "parse_rs3",
    "serialize_conllx",
    "serialize_raw_document",
    "serialize_rs3",
]
