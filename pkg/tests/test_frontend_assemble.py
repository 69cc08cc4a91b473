"""Document-to-KB assembly."""

import pytest

from standpoint_owl.errors import (DuplicateAxiomName, GrammarViolation,
                                   ReservedName, SPAxiomOnRIA)
from standpoint_owl.frontend import assemble_kb, parse_document
from standpoint_owl.model import (And, Atom, Bottom, Box, Conjunction,
                                  Diamond, Equiv, Gci, SpMinus, Some, Star,
                                  Top)

from conftest import C, FOREST_BASE, R, S

NS = "http://ex.org/o#"


def kb_from(body):
    return assemble_kb(parse_document(
        f"Prefix(:=<{NS[:-1]}>)\nOntology(<http://ex.org/o>\n{body}\n)"
        .replace(NS[:-1], NS)))


def annotated(axiom_text, payload):
    literal = payload.replace("\\", "\\\\").replace('"', '\\"')
    head, rest = axiom_text.split("(", 1)
    return f'{head}(Annotation(:standpointLabel "{literal}") {rest}'


class TestAssembly:
    def test_unannotated_goes_plain(self):
        kb = kb_from("SubClassOf(:A :B)")
        assert kb.plain_axioms == (Gci(C("A", NS), C("B", NS)),)
        assert kb.formulas == ()

    def test_named_axiom_not_in_formulas(self):
        body = annotated("SubClassOf(:A :B)",
                         '<standpointAxiom name="§ax1"><Box>'
                         '<Standpoint name="s"/></Box></standpointAxiom>')
        kb = kb_from(body)
        assert kb.formulas == ()
        assert kb.plain_axioms == ()
        assert kb.named_axioms == {
            "ax1": Box(S("s"), Atom(Gci(C("A", NS), C("B", NS))))}

    def test_unnamed_axiom_becomes_formula(self):
        body = annotated("SubClassOf(:A :B)",
                         '<standpointAxiom><Diamond><Standpoint name="s"/>'
                         "</Diamond></standpointAxiom>")
        kb = kb_from(body)
        assert kb.plain_axioms == ()
        assert kb.formulas == (Diamond(S("s"), Atom(Gci(C("A", NS), C("B", NS)))),)

    def test_duplicate_names_rejected(self):
        payload = ('<standpointAxiom name="§ax1"><Box>'
                   '<Standpoint name="s"/></Box></standpointAxiom>')
        body = "\n".join([annotated("SubClassOf(:A :B)", payload),
                          annotated("SubClassOf(:B :A)", payload)])
        with pytest.raises(DuplicateAxiomName):
            kb_from(body)

    def test_annotation_on_ria_rejected(self):
        body = annotated("SubObjectPropertyOf(ObjectPropertyChain(:r :t) :w)",
                         '<standpointAxiom><Box><Standpoint name="s"/></Box>'
                         "</standpointAxiom>")
        with pytest.raises(SPAxiomOnRIA):
            kb_from(body)

    def test_sharpening_desugars(self):
        body = ('Annotation(:standpointLabel "<Sharpening>'
                '<Standpoint name=\\"a\\"/><Standpoint name=\\"b\\"/>'
                '</Sharpening>")')
        kb = kb_from(body)
        assert kb.formulas == (Box(SpMinus(S("a"), S("b")),
                                   Atom(Gci(Top(), Bottom()))),)

    def test_ontology_level_spaxiom_rejected(self):
        body = ('Annotation(:standpointLabel "<standpointAxiom><Box>'
                '<Standpoint name=\\"s\\"/></Box></standpointAxiom>")')
        with pytest.raises(GrammarViolation):
            kb_from(body)

    def test_axiom_level_boolcomb_rejected(self):
        body = annotated(
            "SubClassOf(:A :B)",
            "<booleanCombination><subClassOf><LHS>A</LHS><RHS>B</RHS>"
            "</subClassOf></booleanCombination>")
        with pytest.raises(GrammarViolation):
            kb_from(body)

    def test_reserved_separator_rejected(self):
        with pytest.raises(ReservedName):
            kb_from("SubClassOf(:A__0 :B)")

    def test_multiple_annotations_processed_independently(self):
        body = ('SubClassOf(Annotation(:standpointLabel "<standpointAxiom>'
                '<Box><Standpoint name=\\"s\\"/></Box></standpointAxiom>") '
                'Annotation(:standpointLabel "<standpointAxiom><Diamond>'
                '<Standpoint name=\\"t\\"/></Diamond></standpointAxiom>") '
                ":A :B)")
        kb = kb_from(body)
        atom = Atom(Gci(C("A", NS), C("B", NS)))
        assert kb.formulas == (Box(S("s"), atom), Diamond(S("t"), atom))
        assert kb.plain_axioms == ()

    def test_signature_includes_declared_names(self):
        kb = kb_from("Declaration(Class(:Unused))\nSubClassOf(:A :B)")
        assert {c.local for c in kb.signature.concepts} == {"Unused", "A", "B"}


class TestForestFixture:
    def test_structure(self, forest_kb):
        assert forest_kb.base_iri == "http://example.org/forestry"
        assert forest_kb.plain_axioms == ()
        assert forest_kb.rias == ()
        assert len(forest_kb.formulas) == 7  # F3 combination + 2 sharpenings + F1, F2, F4, F5
        assert forest_kb.named_axioms == {}

    def test_example_payload_shape(self, forest_kb):
        B = FOREST_BASE
        f3 = forest_kb.formulas[0]
        assert f3 == Conjunction(
            Box(S("LU"), Atom(Equiv(C("Forest", B),
                                    And(C("ForestlandUse", B), C("MCON", B))))),
            Box(Star(), Atom(Gci(C("ForestlandUse", B), C("Land", B)))))

    def test_f1_attached_to_axiom(self, forest_kb):
        B = FOREST_BASE
        f1 = forest_kb.formulas[3]
        assert f1 == Box(S("LC"), Atom(Equiv(
            C("Forest", B),
            And(C("ForestEcosystem", B),
                Some(R("hasLand", B), C("Area05ha", B))))))
