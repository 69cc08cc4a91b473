"""Exception types shared across the package.

Every error raised on malformed input or violated contracts derives from
StandpointOwlError, so callers (notably the CLI) can catch one base class
and map it to a diagnostic plus exit code.
"""


class StandpointOwlError(Exception):
    """Base class for all errors raised by this package."""


# --- structural validation (role simplicity, regularity) ---

class CyclicRoleOrder(StandpointOwlError):
    """The role order induced by the role inclusion axioms has a cycle."""


class NonSimpleInRestriction(StandpointOwlError):
    """A non-simple role was used where only simple roles are allowed
    (Self, number restrictions, or under an inverse)."""


class MalformedRIA(StandpointOwlError):
    """A role inclusion axiom mentions its head inside the chain in a
    shape that is not one of the permitted regular forms."""


class ReservedName(StandpointOwlError):
    """An entity local name contains the reserved separator ``__``."""


# --- document / annotation / query parsing ---

class ParseError(StandpointOwlError):
    """Syntax error in a functional-style document, Manchester class
    expression, or simple query.  Carries position and expectation."""

    def __init__(self, message: str, line: int = 0, col: int = 0, expected: str | None = None):
        self.line = line
        self.col = col
        self.expected = expected
        where = f" at {line}:{col}" if line else ""
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message}{where}{hint}")


class UnsupportedConstruct(StandpointOwlError):
    """A recognised OWL functional-syntax construct outside the supported subset."""

    def __init__(self, construct: str, line: int = 0, col: int = 0):
        self.construct = construct
        self.line = line
        self.col = col
        where = f" at {line}:{col}" if line else ""
        super().__init__(f"unsupported construct {construct!r}{where}")


class XmlSyntaxError(StandpointOwlError):
    """The standpointLabel payload is not well-formed XML."""


class GrammarViolation(StandpointOwlError):
    """Well-formed XML that falls outside the annotation grammar
    (e.g. NOT around AND, Box around Box, wrong child counts)."""


class BadName(StandpointOwlError):
    """A name attribute fails its required pattern."""


class DuplicateAxiomName(StandpointOwlError):
    """Two named standpoint axioms share the same name."""


class SPAxiomOnRIA(StandpointOwlError):
    """A standpoint annotation was attached to a role axiom."""


class UnresolvedRef(StandpointOwlError):
    """A Boolean combination references a named axiom that does not exist."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unresolved standpoint axiom reference §{name}")


class NestedModality(StandpointOwlError):
    """A standpoint modality occurs in the scope of another (unsupported)."""


# --- semantics / search ---

class UnknownName(StandpointOwlError):
    """An expression mentions a name the interpretation does not assign."""


class SearchSpaceTooLarge(StandpointOwlError):
    """The bounded model search would exceed the configured budget."""
