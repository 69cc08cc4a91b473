"""Normalisation of standpoint formulas.

Brings assembled knowledge bases into the shape the translator expects:
named-axiom references inlined, sharpenings desugared, negation pushed
inward by duality until it sits directly on subclass atoms, and the
precisification bound computed from the diamond count.
"""

from __future__ import annotations

from .errors import NestedModality, UnresolvedRef
from .model import (Atom, AxiomRef, Bottom, Box, Conjunction, Diamond,
                    Disjunction, Equiv, Gci, Negation, SpMinus, StandpointExpr,
                    StandpointFormula, StandpointKB, Top)


def desugar_sharpening(e1: StandpointExpr, e2: StandpointExpr) -> StandpointFormula:
    """A sharpening e1 ⪯ e2 states that no precisification lies in e1 but
    not in e2; it unfolds to the axiom that ⊤ ⊑ ⊥ holds throughout e1∖e2."""
    return Box(SpMinus(e1, e2), Atom(Gci(Top(), Bottom())))


def _substitute(f: StandpointFormula, named: dict) -> StandpointFormula:
    if isinstance(f, AxiomRef):
        if f.name not in named:
            raise UnresolvedRef(f.name)
        return named[f.name]
    if isinstance(f, Negation):
        return Negation(_substitute(f.arg, named))
    if isinstance(f, Conjunction):
        return Conjunction(_substitute(f.lhs, named), _substitute(f.rhs, named))
    if isinstance(f, Disjunction):
        return Disjunction(_substitute(f.lhs, named), _substitute(f.rhs, named))
    if isinstance(f, Box):
        return Box(f.standpoint, _substitute(f.arg, named))
    if isinstance(f, Diamond):
        return Diamond(f.standpoint, _substitute(f.arg, named))
    return f


def resolve_refs(kb: StandpointKB) -> StandpointKB:
    """Replace every §-reference in the top-level formulas by a copy of the
    named axiom it points to.  The named-axiom table is kept for reporting;
    the returned formulas contain no references."""
    named = dict(kb.named_axioms)
    formulas = tuple(_substitute(f, named) for f in kb.formulas)
    return StandpointKB(kb.rias, kb.plain_axioms, formulas,
                        kb.named_axioms, kb.signature, kb.base_iri)


def to_nnf(f: StandpointFormula) -> StandpointFormula:
    """Push negation inward until it occurs only directly on subclass atoms.

    Negated modalities flip by duality (¬Box e.φ = Diamond e.¬φ and vice
    versa), negated conjunctions/disjunctions by De Morgan, and a negated
    equivalence expands into the disjunction of the two negated inclusions.
    Positive equivalence atoms are left intact.
    """
    if isinstance(f, AxiomRef):
        raise UnresolvedRef(f.name)
    if isinstance(f, Atom):
        return f
    if isinstance(f, Conjunction):
        return Conjunction(to_nnf(f.lhs), to_nnf(f.rhs))
    if isinstance(f, Disjunction):
        return Disjunction(to_nnf(f.lhs), to_nnf(f.rhs))
    if isinstance(f, Box):
        return Box(f.standpoint, to_nnf(f.arg))
    if isinstance(f, Diamond):
        return Diamond(f.standpoint, to_nnf(f.arg))
    # f is a negation
    g = f.arg
    if isinstance(g, AxiomRef):
        raise UnresolvedRef(g.name)
    if isinstance(g, Atom):
        if isinstance(g.axiom, Equiv):
            a, b = g.axiom.lhs, g.axiom.rhs
            return Disjunction(Negation(Atom(Gci(a, b))), Negation(Atom(Gci(b, a))))
        return f
    if isinstance(g, Negation):
        return to_nnf(g.arg)
    if isinstance(g, Conjunction):
        return Disjunction(to_nnf(Negation(g.lhs)), to_nnf(Negation(g.rhs)))
    if isinstance(g, Disjunction):
        return Conjunction(to_nnf(Negation(g.lhs)), to_nnf(Negation(g.rhs)))
    if isinstance(g, Box):
        return Diamond(g.standpoint, to_nnf(Negation(g.arg)))
    return Box(g.standpoint, to_nnf(Negation(g.arg)))


def _count_diamonds(f: StandpointFormula) -> int:
    if isinstance(f, Diamond):
        return 1 + _count_diamonds(f.arg)
    if isinstance(f, Box):
        return _count_diamonds(f.arg)
    if isinstance(f, Negation):
        return _count_diamonds(f.arg)
    if isinstance(f, (Conjunction, Disjunction)):
        return _count_diamonds(f.lhs) + _count_diamonds(f.rhs)
    return 0


def count_precisifications(kb: StandpointKB) -> int:
    """Number of precisification copies the translation materialises.

    With formulas in negation normal form every witness-demanding modality
    is a diamond, so the bound is the diamond count, floored at one because
    the set of precisifications is never empty.
    """
    return max(1, sum(_count_diamonds(f) for f in kb.formulas))


def _check_no_nesting(f: StandpointFormula, inside: bool = False):
    if isinstance(f, (Box, Diamond)):
        if inside:
            raise NestedModality("standpoint modality in the scope of another")
        _check_no_nesting(f.arg, True)
    elif isinstance(f, Negation):
        _check_no_nesting(f.arg, inside)
    elif isinstance(f, (Conjunction, Disjunction)):
        _check_no_nesting(f.lhs, inside)
        _check_no_nesting(f.rhs, inside)


def normalize_kb(kb: StandpointKB) -> StandpointKB:
    """Resolve references and rewrite every top-level formula to NNF.

    Nested modalities cannot be produced by the input syntax; any
    internally constructed nesting is rejected rather than flattened.
    """
    kb = resolve_refs(kb)
    formulas = []
    for f in kb.formulas:
        g = to_nnf(f)
        _check_no_nesting(g)
        formulas.append(g)
    return StandpointKB(kb.rias, kb.plain_axioms, tuple(formulas),
                        kb.named_axioms, kb.signature, kb.base_iri)
