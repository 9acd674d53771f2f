from __future__ import annotations

import sys
from pathlib import Path

import pytest

from gcdtkit.corpus_io import AnalyzedDocument, align, parse_conllx, parse_raw_document, parse_rs3
from gcdtkit.rst_model import RstTree

TESTS = Path(__file__).resolve().parent
FIXTURES = TESTS / "fixtures"
MANUAL = FIXTURES / "manual"
MANUAL_NAMES = sorted(p.stem for p in MANUAL.glob("*.rs3"))
RS3_PATHS = sorted(FIXTURES.glob("*/*.rs3"))
RAW_PATHS = sorted(FIXTURES.glob("*/*.txt"))

# test helpers live next to the tests
sys.path.insert(0, str(TESTS))


def load_doc(name: str) -> AnalyzedDocument:
    raw = (MANUAL / f"{name}.txt").read_text(encoding="utf-8")
    parses = parse_conllx((MANUAL / f"{name}.conllx").read_text(encoding="utf-8"))
    return align(parse_raw_document(raw), parses)


def load_tree(name: str) -> RstTree:
    return parse_rs3((MANUAL / f"{name}.rs3").read_text(encoding="utf-8"))


@pytest.fixture
def manual():
    def get(name: str) -> tuple[AnalyzedDocument, RstTree]:
        return load_doc(name), load_tree(name)
    return get


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
