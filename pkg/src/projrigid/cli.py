"""Command-line front end.

Exit codes: 0 success (a non-rigid verdict is a result, not an error),
1 malformed input, 2 violated precondition (unsatisfied relator, matrix
outside SO(3,1), input not rigid, cochain not a cocycle, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .cohomology import (
    Cochain1,
    IntertwinerError,
    NotACocycleError,
    NotInvariantError,
    cohomology,
    cup_product,
    is_cocycle,
    pairing_certificate,
    pullback_by_automorphism,
    restriction_nontrivial,
)
from .document import (
    BUNDLED,
    Document,
    InputError,
    dump_json,
    load_document,
    matrix_from_strings,
    matrix_to_strings,
)
from .field import ParseError, render
from .lie import (
    MODULE_KINDS,
    LieModule,
    ModuleError,
    NotInSL2Error,
    NotInSO31Error,
    invariant_subspace,
    su31_root_check,
)
from .presentations import RelatorError, WordSyntaxError, check_relators
from .rigidity import (
    CuspError,
    FlexingError,
    NotRigidError,
    filling_prediction,
    flexing_scan,
    rigidity_report,
)

INPUT_ERRORS = (InputError, ParseError, WordSyntaxError, ModuleError)
PRECONDITION_ERRORS = (RelatorError, NotInSO31Error, NotInSL2Error, CuspError,
                       NotRigidError, NotACocycleError, IntertwinerError, FlexingError,
                       NotInvariantError)


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not valid UTF-8 JSON ({exc})") from exc


def _load_cochain(path: str, doc: Document) -> Cochain1:
    """Cocycle file: {"module": "v", "values": {generator: 4x4 matrix}}."""
    raw = _read_json(path)
    if not isinstance(raw, dict) or "values" not in raw:
        raise InputError(f"{path}: expected an object with 'values'")
    kind = raw.get("module", "v")
    if kind not in MODULE_KINDS:
        raise InputError(f"{path}: unknown module {kind!r}")
    m = LieModule(kind, doc.d)
    gens = doc.presentation.generators
    values = raw["values"]
    if not isinstance(values, dict) or set(values) != set(gens):
        raise InputError(f"{path}: need one value per generator {list(gens)}")
    mats = [matrix_from_strings(values[g], doc.d, (4, 4)) for g in gens]
    return Cochain1.from_matrices(m, mats)


def _load_matrix(path: str, doc: Document):
    raw = _read_json(path)
    if isinstance(raw, dict):
        raw = raw.get("matrix")
    return matrix_from_strings(raw, doc.d, (4, 4))


def _cochain_dict(z: Cochain1, doc: Document) -> dict:
    return {
        "module": z.module.kind,
        "values": {g: matrix_to_strings(z.matrix(i))
                   for i, g in enumerate(doc.presentation.generators)},
    }


def _envelope(command: str, doc: Document | None, result: dict) -> dict:
    out = {"command": command, "tool_version": __version__, "result": result}
    if doc is not None:
        out["input_sha256"] = doc.sha256
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> dict:
    doc = load_document(args.input)
    check_relators(doc.presentation, doc.representation)
    rep = doc.representation
    for k, c in enumerate(doc.presentation.cusps):
        a, b = rep.word_matrix(c.meridian), rep.word_matrix(c.longitude)
        if a @ b != b @ a:
            raise CuspError(f"cusp {k + 1}: meridian and longitude images do not commute")
    return _envelope("check", doc, {
        "generators": len(doc.presentation.generators),
        "relators": len(doc.presentation.relators),
        "cusps": doc.presentation.num_cusps,
        "relators_satisfied": True,
        "in_so31": True,
        "field_d": doc.d,
    })


def cmd_cohomology(args) -> dict:
    doc = load_document(args.input)
    m = LieModule(args.module, doc.d)
    rep = cohomology(doc.presentation, doc.representation, m,
                     h2=args.h2, aspherical=doc.aspherical)
    result = rep.as_dict()
    result["H1_basis"] = [_cochain_dict(z, doc) for z in rep.h1_cocycles(m)]
    return _envelope("cohomology", doc, result)


def cmd_rigidity(args) -> dict:
    doc = load_document(args.input)
    verdict = rigidity_report(doc.presentation, doc.representation)
    return _envelope("rigidity", doc, verdict.as_dict())


def _parse_slopes(text: str) -> list[tuple[int, int]]:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            p, q = piece.split("/")
            out.append((int(p), int(q)))
        except ValueError as exc:
            raise InputError(f"bad slope {piece!r}; expected p/q") from exc
    if not out:
        raise InputError("no slopes given")
    return out


def cmd_flexing(args) -> dict:
    doc = load_document(args.input)
    slopes = _parse_slopes(args.slopes)
    cusp = args.cusp - 1
    if not 0 <= cusp < doc.presentation.num_cusps:
        raise InputError(f"no cusp {args.cusp}")
    try:
        scan = flexing_scan(doc.presentation, doc.representation, cusp, slopes)
    except ValueError as exc:
        if isinstance(exc, PRECONDITION_ERRORS):
            raise
        raise InputError(str(exc)) from exc
    result = scan.as_dict(doc.presentation)
    if args.line is not None:
        result["predictions"] = [filling_prediction(scan, s, args.line)
                                 for s in scan.flexing_slopes()]
    return _envelope("flexing", doc, result)


def cmd_invariant(args) -> dict:
    doc = load_document(args.input)
    words = [doc.word(w.strip()) for w in args.words.split(",") if w.strip()]
    m = LieModule(args.module, doc.d)
    sub = invariant_subspace(words, doc.representation, m)
    return _envelope("invariant", doc, {
        "module": m.kind,
        "words": [doc.presentation.render(w) for w in words],
        "dim": sub.dim,
        "basis": [matrix_to_strings(m.element(b)) for b in sub.basis],
    })


def cmd_pairing(args) -> dict:
    doc = load_document(args.input)
    z = _load_cochain(args.cocycle, doc)
    w = doc.word(args.word)
    a = _load_matrix(args.invariant, doc)
    pres, rep = doc.presentation, doc.representation
    tr = pairing_certificate(z, w, a, rep, pres, form="trace")
    return _envelope("pairing", doc, {
        "word": pres.render(w),
        "trace_pairing": render(tr),
        "killing_pairing": render(tr * 8),
        "restriction_nontrivial": restriction_nontrivial(z, w, rep, pres),
    })


def cmd_cup(args) -> dict:
    doc = load_document(args.input)
    z1 = _load_cochain(args.z1, doc)
    z2 = _load_cochain(args.z2, doc)
    pres = doc.presentation
    cup = cup_product(z1, z2, doc.representation, pres)
    return _envelope("cup", doc, {
        "values": {pres.render(r): matrix_to_strings(cup.cochain.matrix(j))
                   for j, r in enumerate(pres.relators)},
        "class_representative": [render(x) for x in cup.class_vector],
        "class_is_zero": cup.is_zero_class,
    })


def cmd_auto(args) -> dict:
    doc = load_document(args.input)
    raw = _read_json(args.phi)
    gens = doc.presentation.generators
    if not isinstance(raw, dict) or set(raw) != set(gens):
        raise InputError(f"{args.phi}: need one image word per generator {list(gens)}")
    phi = {i: doc.word(raw[g]) for i, g in enumerate(gens)}
    a = _load_matrix(args.intertwiner, doc)
    z = _load_cochain(args.cocycle, doc)
    pres, rep = doc.presentation, doc.representation
    out = pullback_by_automorphism(z, phi, a, rep, pres)
    return _envelope("auto", doc, {
        "intertwiner_ok": True,
        "pullback": _cochain_dict(out, doc),
        "pullback_is_cocycle": is_cocycle(out, pres, rep),
    })


def cmd_su31_selftest(args) -> dict:
    return _envelope("su31-selftest", None, su31_root_check().as_dict())


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _human(doc: dict) -> str:
    lines = [f"{doc['command']} (projrigid {doc['tool_version']})"]
    if "input_sha256" in doc:
        lines.append(f"input sha256: {doc['input_sha256']}")

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_inline(v)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {_inline(item)}")

    walk(doc["result"], 0)
    return "\n".join(lines) + "\n"


def _flat(v) -> bool:
    if isinstance(v, list):
        return (all(not isinstance(x, (dict, list)) for x in v)
                and sum(len(str(x)) for x in v) < 80)
    return False


def _inline(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projrigid",
        description="Exact infinitesimal projective rigidity computations for "
                    "cusped hyperbolic 3-manifold groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="input JSON file or bundled name "
                                         f"({', '.join(BUNDLED)})")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate an input file")
    p = add("cohomology", cmd_cohomology, "H^0, H^1 (and H^2) with module coefficients")
    p.add_argument("--module", choices=MODULE_KINDS, default="v")
    p.add_argument("--h2", action="store_true", help="also report H^2 of the presentation complex")
    add("rigidity", cmd_rigidity, "infinitesimal projective rigidity verdict")
    p = add("flexing", cmd_flexing, "flexing-slope scan on one cusp")
    p.add_argument("--cusp", type=int, default=1, help="cusp number, starting at 1")
    p.add_argument("--slopes", required=True, help='comma-separated "p/q" list')
    p.add_argument("--line", type=int, default=None, metavar="C",
                   help="also print filling predictions for lines a*p + b*q = C")
    p = add("invariant", cmd_invariant, "invariant subspace of a set of words")
    p.add_argument("--words", required=True)
    p.add_argument("--module", choices=MODULE_KINDS, default="v")
    p = add("pairing", cmd_pairing, "pairing certificate B(z(w), a)")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--invariant", required=True)
    p = add("cup", cmd_cup, "cup product class in H^2(gl4)")
    p.add_argument("--z1", required=True)
    p.add_argument("--z2", required=True)
    p = add("auto", cmd_auto, "pull a cocycle back along an automorphism")
    p.add_argument("--phi", required=True)
    p.add_argument("--intertwiner", required=True)
    p.add_argument("--cocycle", required=True)
    add("su31-selftest", cmd_su31_selftest, "root-space check for su(3,1)", needs_input=False)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dump_json(doc) if args.json else _human(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
