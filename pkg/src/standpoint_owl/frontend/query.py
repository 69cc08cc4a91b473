"""Query syntaxes: the simple single-axiom form and the XML formula form.

A simple query is ``[s](C sub D)`` or ``<s>(C eq D)`` where ``[s]``/``<s>``
are the box/diamond operators for standpoint ``s`` (``*`` allowed) and the
class expressions use Manchester syntax.  Richer queries arrive as an XML
formula document using the same grammar as booleanCombination bodies.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ..errors import BadName, GrammarViolation, ParseError, XmlSyntaxError
from ..model import (Atom, Box, Diamond, Equiv, Gci, NamedStandpoint, Star,
                     StandpointFormula)
from .labels import _parse_formula, _tag, _children
from .manchester import parse_manchester_class

_SP_NAME_RE = re.compile(r"[a-zA-Z]+[0-9]*\Z")
_HEAD_RE = re.compile(r"\s*(\[(?P<box>[^\]]*)\]|<(?P<dia>[^>]*)>)\s*\((?P<body>.*)\)\s*\Z",
                      re.DOTALL)


def _split_body(body: str) -> tuple[str, str, str]:
    depth = 0
    for m in re.finditer(r"[(){}]|\b(sub|eq)\b", body):
        tok = m.group()
        if tok in "({":
            depth += 1
        elif tok in ")}":
            depth -= 1
        elif depth == 0:
            return body[:m.start()], tok, body[m.end():]
    raise ParseError("query body must be 'Class sub Class' or 'Class eq Class'")


def parse_simple_query(text: str, base: str = "") -> StandpointFormula:
    """Parse a simple query into a modalised subclass/equivalence atom."""
    m = _HEAD_RE.match(text)
    if not m:
        raise ParseError("query must look like [s](C sub D) or <s>(C eq D)")
    name = m.group("box") if m.group("box") is not None else m.group("dia")
    if name != "*" and not _SP_NAME_RE.match(name):
        raise BadName(f"bad standpoint name {name!r} in query")
    expr = Star() if name == "*" else NamedStandpoint(name)
    lhs_text, op, rhs_text = _split_body(m.group("body"))
    lhs = parse_manchester_class(lhs_text, base)
    rhs = parse_manchester_class(rhs_text, base)
    atom = Atom(Gci(lhs, rhs) if op == "sub" else Equiv(lhs, rhs))
    return Box(expr, atom) if m.group("box") is not None else Diamond(expr, atom)


def parse_query_document(text: str, base: str = "") -> StandpointFormula:
    """Parse an XML query: a Formula element, optionally wrapped in
    <booleanCombination>."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise XmlSyntaxError(f"bad XML in query: {exc}") from None
    if _tag(root) == "booleancombination":
        kids = _children(root)
        if len(kids) != 1:
            raise GrammarViolation("<booleanCombination> wraps exactly one formula")
        root = kids[0]
    return _parse_formula(root, base)
