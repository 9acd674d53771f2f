"""Tools for Chinese RST discourse corpora."""

__version__ = "0.1.0"
