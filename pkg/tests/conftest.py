"""Shared fixtures and AST shorthand for the test suite."""

from pathlib import Path

import pytest

from standpoint_owl.frontend import assemble_kb, parse_document
from standpoint_owl.model import (ConceptName, InverseRole, NamedStandpoint,
                                  Nominal, RoleName, Star, concept_name,
                                  individual_name, role_name)

FIXTURES = Path(__file__).parent / "fixtures"
FOREST_BASE = "http://example.org/forestry#"


def C(local, base=""):
    return ConceptName(concept_name(local, base))


def R(local, base=""):
    return RoleName(role_name(local, base))


def Rinv(local, base=""):
    return InverseRole(role_name(local, base))


def O(local, base=""):
    return Nominal(individual_name(local, base))


def S(name):
    return Star() if name == "*" else NamedStandpoint(name)


@pytest.fixture(scope="session")
def forest_text():
    return (FIXTURES / "forest.ofn").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def forest_doc(forest_text):
    return parse_document(forest_text)


@pytest.fixture(scope="session")
def forest_kb(forest_doc):
    return assemble_kb(forest_doc)
