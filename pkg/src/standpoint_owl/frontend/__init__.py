"""Input-side parsers: functional-style documents, standpointLabel XML
payloads, Manchester class expressions, queries, and KB assembly."""

from .assemble import assemble_kb
from .functional import Annotation, Declaration, RawDocument, parse_document
from .labels import (BoolCombLabel, LabeledConstruct, SharpeningLabel,
                     SpAxiomLabel, parse_standpoint_label)
from .manchester import parse_manchester_class
from .query import parse_query_document, parse_simple_query

__all__ = [
    "Annotation", "Declaration", "RawDocument", "parse_document",
    "BoolCombLabel", "SharpeningLabel", "SpAxiomLabel", "LabeledConstruct",
    "parse_standpoint_label", "parse_manchester_class",
    "parse_simple_query", "parse_query_document", "assemble_kb",
]
