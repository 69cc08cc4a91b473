"""Command-line interface: translate, import, query.

Exit codes are the machine contract: 0 for success (for queries: entailed),
2 for parse or validation errors, 3 for a refuted query, 4 for inconclusive
outcomes (search guard tripped or external reasoner trouble).  Documents go
to files or, with --dump, to standard output; progress and verdicts are
human-readable text on standard error.
"""

from __future__ import annotations

import argparse
import os
import re
import shlex
import subprocess
import sys
import tempfile

from .errors import BadName, StandpointOwlError
from .frontend import (assemble_kb, parse_document, parse_query_document,
                       parse_simple_query)
from .frontend.functional import Annotation, Declaration, RawDocument
from .model import (Negation, Ria, StandpointKB, make_kb, rebase_names,
                    validate_roles)
from .normalizer import count_precisifications, normalize_kb
from .oracle import (ENTAILED_WITHIN_BOUNDS, NOT_ENTAILED,
                     check_entailment_bounded)
from .serializer import serialize_document, serialize_kb
from .translator import translate_kb

_SP_NAME_RE = re.compile(r"[a-zA-Z]+[0-9]*\Z")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _default_out(path: str, suffix: str) -> str:
    stem, _ = os.path.splitext(path)
    return stem + suffix


def _emit(text: str, out_path: str | None, dump: bool, default_path: str) -> None:
    if dump:
        sys.stdout.write(text)
        return
    _write(out_path or default_path, text)


def _load(path: str):
    doc = parse_document(_read(path))
    kb = assemble_kb(doc)
    validate_roles(kb)
    return doc, kb


def _translate_pipeline(kb: StandpointKB, rebase: str | None):
    kb = normalize_kb(kb)
    p = count_precisifications(kb)
    plain = translate_kb(kb, base_iri=rebase if rebase else None)
    return plain, p


def cmd_translate(args) -> int:
    _, kb = _load(args.input)
    plain, p = _translate_pipeline(kb, args.rebase)
    text = serialize_kb(plain)
    print(f"p={p}; axioms={len(plain.axioms)}", file=sys.stderr)
    _emit(text, args.out, args.dump, _default_out(args.input, ".translated.ofn"))
    return 0


def _box_annotation(standpoint: str) -> Annotation:
    payload = (f'<standpointAxiom><Box><Standpoint name="{standpoint}"/>'
               f"</Box></standpointAxiom>")
    return Annotation("", "standpointLabel", payload)


def cmd_import(args) -> int:
    if args.standpoint != "*" and not _SP_NAME_RE.match(args.standpoint):
        raise BadName(f"bad standpoint name {args.standpoint!r}")
    doc_in = parse_document(_read(args.input))
    doc_src = parse_document(_read(args.source))

    token = "STAR" if args.standpoint == "*" else args.standpoint
    imported_ns = f"{doc_in.base_iri}/imported/{token}#"
    declarations = list(doc_in.declarations)
    for decl in doc_src.declarations:
        declarations.append(Declaration(decl.kind, rebase_names(decl.name, imported_ns)))
    axioms = list(doc_in.axioms)
    box_ann = _box_annotation(args.standpoint)
    for axiom, annotations in doc_src.axioms:
        rebased = rebase_names(axiom, imported_ns)
        if isinstance(rebased, Ria):
            axioms.append((rebased, ()))
        else:
            axioms.append((rebased, tuple(annotations) + (box_ann,)))
    merged = RawDocument(base_iri=doc_in.base_iri, prefixes=doc_in.prefixes,
                         ontology_annotations=doc_in.ontology_annotations,
                         declarations=tuple(declarations), axioms=tuple(axioms))
    kb = assemble_kb(merged)  # rejects name collisions and bad annotations
    validate_roles(kb)
    n_annotated = sum(1 for _, anns in merged.axioms if box_ann in anns)
    print(f"imported {n_annotated} axioms under standpoint "
          f"{args.standpoint!r}", file=sys.stderr)
    if args.translate:
        plain, p = _translate_pipeline(kb, None)
        text = serialize_kb(plain)
        print(f"p={p}; axioms={len(plain.axioms)}", file=sys.stderr)
        _emit(text, args.out, args.dump, _default_out(args.input, ".translated.ofn"))
        return 0
    _emit(serialize_document(merged), args.out, args.dump,
          _default_out(args.input, ".merged.ofn"))
    return 0


def _run_external_reasoner(command: str, document: str) -> int:
    handle = tempfile.NamedTemporaryFile(mode="w", suffix=".ofn",
                                         delete=False, encoding="utf-8")
    try:
        handle.write(document)
        handle.close()
        argv = shlex.split(command) + [handle.name]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True)
        except OSError as exc:
            print(f"reasoner failed to start: {exc}", file=sys.stderr)
            return 4
        if proc.returncode != 0:
            print(f"reasoner exited with status {proc.returncode}", file=sys.stderr)
            return 4
        verdict = proc.stdout.splitlines()[0].strip() if proc.stdout.splitlines() else ""
        if verdict == "inconsistent":
            print("query entailed (reasoner reports inconsistency)", file=sys.stderr)
            return 0
        if verdict == "consistent":
            print("query not entailed (reasoner reports consistency)", file=sys.stderr)
            return 3
        print(f"unrecognised reasoner verdict {verdict!r}", file=sys.stderr)
        return 4
    finally:
        os.unlink(handle.name)


def cmd_query(args) -> int:
    doc, kb = _load(args.input)
    ns = doc.default_namespace
    if args.simple is not None:
        query = parse_simple_query(args.simple, ns)
    else:
        query = parse_query_document(_read(args.query_file), ns)

    with_negation = make_kb(rias=kb.rias, plain_axioms=kb.plain_axioms,
                            formulas=tuple(kb.formulas) + (Negation(query),),
                            named_axioms=kb.named_axioms, base_iri=kb.base_iri,
                            declared=kb.signature)
    normalized = normalize_kb(with_negation)
    p = count_precisifications(normalized)
    print(f"p={p} (including the negated query)", file=sys.stderr)

    if args.reasoner_cmd:
        plain = translate_kb(normalized)
        return _run_external_reasoner(args.reasoner_cmd, serialize_kb(plain))

    prec_bound = args.prec_bound if args.prec_bound is not None else p
    result = check_entailment_bounded(kb, query, args.domain_bound, prec_bound,
                                      guard_bits=args.guard_bits)
    if result.status == ENTAILED_WITHIN_BOUNDS:
        print(f"entailed within bounds (no countermodel with domain ≤ "
              f"{args.domain_bound}, precisifications ≤ {prec_bound}); "
              "bounded evidence, not a proof", file=sys.stderr)
        return 0
    if result.status == NOT_ENTAILED:
        witness = result.witness
        sigma = {name: sorted(members) for name, members in sorted(witness.sigma.items())}
        print("not entailed; countermodel: "
              f"domain size {witness.domain_size}, "
              f"{witness.precisifications} precisification(s), sigma={sigma}",
              file=sys.stderr)
        return 3
    print("inconclusive: the bounded search guard was exceeded", file=sys.stderr)
    return 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="standpoint-owl",
        description="Translate standpoint-annotated ontologies to plain "
                    "OWL 2 DL and answer standpoint queries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("translate", help="translate an annotated ontology")
    p_tr.add_argument("input")
    p_tr.add_argument("--out", help="output path (default: INPUT.translated.ofn)")
    p_tr.add_argument("--dump", action="store_true",
                      help="print the result to stdout instead of saving")
    p_tr.add_argument("--rebase", metavar="IRI",
                      help="base IRI for the output ontology "
                           "(default: input IRI + /translated)")
    p_tr.set_defaults(func=cmd_translate)

    p_im = sub.add_parser("import", help="import an ontology under a standpoint")
    p_im.add_argument("input")
    p_im.add_argument("source")
    p_im.add_argument("--standpoint", required=True, metavar="S",
                      help="standpoint name to annotate imported axioms with")
    p_im.add_argument("--out")
    p_im.add_argument("--translate", action="store_true",
                      help="translate the merged ontology instead of saving it")
    p_im.add_argument("--dump", action="store_true")
    p_im.set_defaults(func=cmd_import)

    p_q = sub.add_parser("query", help="check whether a standpoint formula is entailed")
    p_q.add_argument("input")
    group = p_q.add_mutually_exclusive_group(required=True)
    group.add_argument("--simple", metavar="QUERY",
                       help="simple query, e.g. '[s](C sub D)' or '<s>(C eq D)'")
    group.add_argument("--query-file", metavar="PATH",
                       help="file containing an XML formula query")
    p_q.add_argument("--reasoner-cmd", metavar="CMD",
                     help="external reasoner command; it receives the translated "
                          "file path and must print 'consistent' or 'inconsistent'")
    p_q.add_argument("--domain-bound", type=int, default=3, metavar="N")
    p_q.add_argument("--prec-bound", type=int, default=None, metavar="M",
                     help="precisification bound (default: computed p)")
    p_q.add_argument("--guard-bits", type=float, default=40.0, metavar="B",
                     help="search-space budget for the bounded oracle")
    p_q.set_defaults(func=cmd_query)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StandpointOwlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
