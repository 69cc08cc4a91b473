"""Assembly of parsed documents into standpoint knowledge bases.

Ontology-level standpointLabel annotations contribute Boolean combinations
and sharpenings; axiom-level ones attach a box/diamond operator to their
carrier axiom.  Named standpoint axioms are collected separately and are
only translated where a Boolean combination references them, so their
carrier axiom never lands among the plain axioms.
"""

from __future__ import annotations

from ..errors import (DuplicateAxiomName, GrammarViolation, ReservedName,
                      SPAxiomOnRIA, StandpointOwlError)
from ..model import (Atom, Box, Diamond, Equiv, Gci, Ria, Signature,
                     StandpointKB, entity_names_in, signature_of)
from ..normalizer import desugar_sharpening
from .functional import Annotation, RawDocument
from .labels import (BoolCombLabel, SharpeningLabel, SpAxiomLabel,
                     parse_standpoint_label)

STANDPOINT_LABEL = "standpointLabel"


def _standpoint_labels(annotations):
    return [a for a in annotations if a.property_local == STANDPOINT_LABEL]


def _parse_label(ann: Annotation, base: str):
    """Parse one annotation payload, pinning errors to their source."""
    try:
        return parse_standpoint_label(ann.literal, base)
    except StandpointOwlError as exc:
        raise type(exc)(f"{exc} (standpointLabel at {ann.line}:{ann.col}, "
                        f"payload: {ann.literal!r})") from None


def _check_locals(doc: RawDocument):
    names = [d.name for d in doc.declarations]
    for axiom, _ in doc.axioms:
        names.extend(entity_names_in(axiom))
    for name in names:
        if "__" in name.local:
            raise ReservedName(
                f"{name.local!r} contains the reserved separator '__'")


def assemble_kb(doc: RawDocument) -> StandpointKB:
    """Build a StandpointKB from a parsed document.

    Raises DuplicateAxiomName if two named standpoint axioms collide,
    SPAxiomOnRIA if a role axiom carries a standpoint annotation, and
    ReservedName if any entity local uses the mangling separator.
    Unresolved references are deliberately left to the normalizer.
    """
    _check_locals(doc)
    base = doc.default_namespace
    formulas = []
    named_axioms: dict = {}
    plain_axioms = []
    rias = []

    for ann in _standpoint_labels(doc.ontology_annotations):
        construct = _parse_label(ann, base)
        if isinstance(construct, BoolCombLabel):
            formulas.append(construct.formula)
        elif isinstance(construct, SharpeningLabel):
            formulas.append(desugar_sharpening(construct.narrower, construct.wider))
        else:
            raise GrammarViolation(
                "standpointAxiom annotations must be attached to an axiom, "
                "not to the ontology")

    for axiom, annotations in doc.axioms:
        labels = _standpoint_labels(annotations)
        if isinstance(axiom, Ria):
            if labels:
                raise SPAxiomOnRIA("role axioms cannot carry standpoint annotations")
            rias.append(axiom)
            continue
        assert isinstance(axiom, (Gci, Equiv))
        if not labels:
            plain_axioms.append(axiom)
            continue
        for ann in labels:
            construct = _parse_label(ann, base)
            if not isinstance(construct, SpAxiomLabel):
                raise GrammarViolation(
                    "only standpointAxiom annotations may be attached to axioms")
            op = Box if construct.operator == "box" else Diamond
            formula = op(construct.expr, Atom(axiom))
            if construct.name is not None:
                if construct.name in named_axioms:
                    raise DuplicateAxiomName(
                        f"duplicate named standpoint axiom §{construct.name}")
                named_axioms[construct.name] = formula
            else:
                formulas.append(formula)

    declared = Signature(
        concepts=frozenset(d.name for d in doc.declarations if d.kind == "concept"),
        roles=frozenset(d.name for d in doc.declarations if d.kind == "role"),
        individuals=frozenset(d.name for d in doc.declarations if d.kind == "individual"),
    )
    kb = StandpointKB(rias=tuple(rias), plain_axioms=tuple(plain_axioms),
                      formulas=tuple(formulas), named_axioms=named_axioms,
                      base_iri=doc.base_iri)
    sig = signature_of(kb).union(declared)
    return StandpointKB(kb.rias, kb.plain_axioms, kb.formulas, named_axioms,
                        sig, doc.base_iri)
