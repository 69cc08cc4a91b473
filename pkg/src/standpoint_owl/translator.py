"""Translation of standpoint knowledge bases into plain description logic.

The encoding materialises a bounded number p of precisifications as indexed
copies of the vocabulary: concept A becomes A__0 … A__(p-1), role r likewise,
and each standpoint s gets marker concepts SP__s__0 … whose universal truth
(∀u.SP__s__π = ⊤, with u the universal role) simulates the nullary statement
"precisification π belongs to s".  Individuals denote rigid domain elements
shared by all precisifications and are rebased but not indexed.

Membership guards translate standpoint expressions pointwise; formulas
translate to concept expressions asserted under ⊤ ⊑ · : an inclusion C ⊑ D
at π becomes ∀u.(¬C__π ⊔ D__π), its negation ∃u.(C__π ⊓ ¬D__π), a box
becomes the conjunction over all indices of guard-implies-body, and a
diamond the disjunction of guard-and-body.  Unannotated axioms and role
chains are emitted once per index over the renamed vocabulary, which is
equivalent to their guarded universal-standpoint translation because the
universal marker is forced to be total.
"""

from __future__ import annotations

from .errors import NestedModality, ReservedName, UnresolvedRef
from .model import (All, And, Atom, AtLeast, AtMost, Box, ConceptExpr,
                    ConceptName, Conjunction, Diamond, Disjunction,
                    EntityName, Equiv, Gci, HasSelf, InverseRole, Negation,
                    Nominal, Not, Or, PlainKB, Ria, RoleExpr, RoleName,
                    Signature, Some, SpIntersection, SpMinus, SpUnion,
                    StandpointExpr, StandpointFormula, StandpointKB, Star,
                    Top, UNIVERSAL, UniversalRole, standpoint_entity,
                    walk_refs)
from .normalizer import count_precisifications

STAR_TOKEN = "STAR"


def mangle(name: EntityName, pi: int, base: str) -> EntityName:
    """Fresh per-precisification name: concepts/roles get an __π suffix,
    standpoints become SP__ marker concepts, individuals are rebased only."""
    if "__" in name.local:
        raise ReservedName(f"{name.local!r} already contains '__'")
    if name.kind == "standpoint":
        token = STAR_TOKEN if name.local == "*" else name.local
        return EntityName("concept", f"SP__{token}__{pi}", base)
    if name.kind == "individual":
        return EntityName("individual", name.local, base)
    return EntityName(name.kind, f"{name.local}__{pi}", base)


def _mangle_role(role: RoleExpr, pi: int, base: str) -> RoleExpr:
    if isinstance(role, UniversalRole):
        return role
    if isinstance(role, InverseRole):
        return InverseRole(mangle(role.name, pi, base))
    return RoleName(mangle(role.name, pi, base))


def _mangle_concept(c: ConceptExpr, pi: int, base: str) -> ConceptExpr:
    if isinstance(c, ConceptName):
        return ConceptName(mangle(c.name, pi, base))
    if isinstance(c, Nominal):
        return Nominal(mangle(c.individual, pi, base))
    if isinstance(c, Not):
        return Not(_mangle_concept(c.arg, pi, base))
    if isinstance(c, And):
        return And(_mangle_concept(c.lhs, pi, base), _mangle_concept(c.rhs, pi, base))
    if isinstance(c, Or):
        return Or(_mangle_concept(c.lhs, pi, base), _mangle_concept(c.rhs, pi, base))
    if isinstance(c, All):
        return All(_mangle_role(c.role, pi, base), _mangle_concept(c.filler, pi, base))
    if isinstance(c, Some):
        return Some(_mangle_role(c.role, pi, base), _mangle_concept(c.filler, pi, base))
    if isinstance(c, HasSelf):
        return HasSelf(_mangle_role(c.role, pi, base))
    if isinstance(c, AtMost):
        return AtMost(c.n, _mangle_role(c.role, pi, base),
                      _mangle_concept(c.filler, pi, base))
    if isinstance(c, AtLeast):
        return AtLeast(c.n, _mangle_role(c.role, pi, base),
                       _mangle_concept(c.filler, pi, base))
    return c  # Top / Bottom


def _marker(sp_name: str, pi: int, base: str) -> ConceptExpr:
    return All(UNIVERSAL, ConceptName(mangle(standpoint_entity(sp_name), pi, base)))


def trans_e(pi: int, e: StandpointExpr, base: str = "") -> ConceptExpr:
    """Guard expression that is total exactly when precisification pi
    belongs to the standpoint expression."""
    if isinstance(e, Star):
        return _marker("*", pi, base)
    if isinstance(e, SpUnion):
        return Or(trans_e(pi, e.lhs, base), trans_e(pi, e.rhs, base))
    if isinstance(e, SpIntersection):
        return And(trans_e(pi, e.lhs, base), trans_e(pi, e.rhs, base))
    if isinstance(e, SpMinus):
        return And(trans_e(pi, e.lhs, base), Not(trans_e(pi, e.rhs, base)))
    return _marker(e.name, pi, base)


def _check_modal_body(f: StandpointFormula):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Box, Diamond)):
            raise NestedModality("standpoint modality in the scope of another")
        if isinstance(g, Negation):
            stack.append(g.arg)
        elif isinstance(g, (Conjunction, Disjunction)):
            stack.extend([g.lhs, g.rhs])


def _fold(ctor, parts):
    out = parts[0]
    for part in parts[1:]:
        out = ctor(out, part)
    return out


def trans(pi: int, f: StandpointFormula, p: int, base: str = "") -> ConceptExpr:
    """Translate a normal-form standpoint formula at precisification pi."""
    if isinstance(f, Atom):
        ax = f.axiom
        if isinstance(ax, Equiv):
            return And(trans(pi, Atom(Gci(ax.lhs, ax.rhs)), p, base),
                       trans(pi, Atom(Gci(ax.rhs, ax.lhs)), p, base))
        return All(UNIVERSAL, Or(Not(_mangle_concept(ax.lhs, pi, base)),
                                 _mangle_concept(ax.rhs, pi, base)))
    if isinstance(f, Negation):
        g = f.arg
        if isinstance(g, Atom) and isinstance(g.axiom, Gci):
            return Some(UNIVERSAL, And(_mangle_concept(g.axiom.lhs, pi, base),
                                       Not(_mangle_concept(g.axiom.rhs, pi, base))))
        if isinstance(g, Atom) and isinstance(g.axiom, Equiv):
            return Or(trans(pi, Negation(Atom(Gci(g.axiom.lhs, g.axiom.rhs))), p, base),
                      trans(pi, Negation(Atom(Gci(g.axiom.rhs, g.axiom.lhs))), p, base))
        raise ValueError("formula is not in negation normal form")
    if isinstance(f, Conjunction):
        return And(trans(pi, f.lhs, p, base), trans(pi, f.rhs, p, base))
    if isinstance(f, Disjunction):
        return Or(trans(pi, f.lhs, p, base), trans(pi, f.rhs, p, base))
    if isinstance(f, Box):
        _check_modal_body(f.arg)
        return _fold(And, [Or(Not(trans_e(k, f.standpoint, base)),
                              trans(k, f.arg, p, base)) for k in range(p)])
    if isinstance(f, Diamond):
        _check_modal_body(f.arg)
        return _fold(Or, [And(trans_e(k, f.standpoint, base),
                              trans(k, f.arg, p, base)) for k in range(p)])
    raise UnresolvedRef(f.name)


def _has_bare_atom(f: StandpointFormula) -> bool:
    """True when some atom sits outside every modality, making the
    translation index-dependent."""
    if isinstance(f, Atom):
        return True
    if isinstance(f, Negation):
        return _has_bare_atom(f.arg)
    if isinstance(f, (Conjunction, Disjunction)):
        return _has_bare_atom(f.lhs) or _has_bare_atom(f.rhs)
    return False


def output_iri(kb: StandpointKB) -> str:
    return kb.base_iri + "/translated" if kb.base_iri else "translated"


def translate_kb(kb: StandpointKB, p: int | None = None,
                 base_iri: str | None = None) -> PlainKB:
    """Translate a validated, reference-free, normal-form KB.

    ``p`` may be forced upward (never below the computed bound) to study
    growth; name bases move to the output ontology's namespace.  Output
    order is deterministic: universal-standpoint marker axioms first, then
    formula translations (one copy for purely modal formulas, p copies
    otherwise), then per-index plain axioms, then per-index role chains.
    """
    for f in kb.formulas:
        if any(True for _ in walk_refs(f)):
            ref = next(walk_refs(f))
            raise UnresolvedRef(ref.name)
    p_min = count_precisifications(kb)
    if p is None:
        p = p_min
    elif p < p_min:
        raise ValueError(f"p={p} below the required bound {p_min}")
    iri = base_iri if base_iri is not None else output_iri(kb)
    ns = iri + "#"

    axioms: list = []
    for k in range(p):
        axioms.append(Gci(Top(), _marker("*", k, ns)))
    for f in kb.formulas:
        if _has_bare_atom(f):
            for k in range(p):
                axioms.append(Gci(Top(), trans(k, f, p, ns)))
        else:
            axioms.append(Gci(Top(), trans(0, f, p, ns)))
    for ax in kb.plain_axioms:
        for k in range(p):
            ctor = Gci if isinstance(ax, Gci) else Equiv
            axioms.append(ctor(_mangle_concept(ax.lhs, k, ns),
                               _mangle_concept(ax.rhs, k, ns)))
    for ria in kb.rias:
        for k in range(p):
            axioms.append(Ria(tuple(_mangle_role(r, k, ns) for r in ria.chain),
                              mangle(ria.head, k, ns)))

    concepts = {mangle(c, k, ns) for c in kb.signature.concepts for k in range(p)}
    concepts |= {mangle(standpoint_entity(s), k, ns)
                 for s in kb.signature.standpoints for k in range(p)}
    roles = {mangle(r, k, ns) for r in kb.signature.roles for k in range(p)}
    individuals = {mangle(i, 0, ns) for i in kb.signature.individuals}
    signature = Signature(concepts=frozenset(concepts), roles=frozenset(roles),
                          individuals=frozenset(individuals),
                          standpoints=frozenset())
    return PlainKB(axioms=tuple(axioms), signature=signature, base_iri=iri)
