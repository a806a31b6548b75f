"""Command-line front end: load one document, run one engine, print a JSON report.

Exit codes: 0 witness found / check passed, 2 not found / not applicable /
exhausted, 3 parse or validation error, 4 hypothesis violation, 1 internal
disagreement between independent computations.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import filters as flt
from . import lattice as lat
from . import semigroup as sg
from .contraction import DEFAULT_MAX_POWER, Exhausted, HypothesisViolation, NotApplicable
from .errors import TreelikeError
from .formats import DocumentError, InputDocument, parse
from .symbolic import DEFAULT_BUDGET, extract_contraction_witness, find_block_witness, verify_block_witness

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_NOT_FOUND = 2
EXIT_INVALID = 3
EXIT_VIOLATION = 4


class Incompatible(TreelikeError):
    pass


def make_report(command: str, doc: InputDocument | None, verdict: str,
                witnesses: list | None = None, trace: list | None = None) -> dict:
    return {
        "command": command,
        "input": {"kind": doc.kind if doc else None, "digest": doc.digest if doc else None},
        "verdict": verdict,
        "witnesses": witnesses or [],
        "trace": trace or [],
        "elapsed_ms": None,
    }


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _need(doc: InputDocument, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise Incompatible(f"command needs a {' or '.join(kinds)} document, got {doc.kind}")


def _semilattice(doc: InputDocument):
    """Semilattice plus a function naming its elements in the user's indices."""
    if doc.kind == "SEMILATTICE":
        return doc.payload, (lambda e: e)
    S = doc.payload
    E, emb = sg.idempotent_semilattice(S)
    return E, (lambda e: emb[e])


# --- commands -------------------------------------------------------------------


def cmd_validate(doc: InputDocument, args) -> tuple[str, list, list, int]:
    p = doc.payload
    if doc.kind == "SEMILATTICE":
        info = {"kind": "semilattice", "size": p.size}
    elif doc.kind == "INVSGP":
        info = {"kind": "inverse_semigroup", "size": p.size, "zero": p.zero, "star": list(p.star)}
    else:
        info = {
            "kind": "block_system",
            "alphabet": p.alphabet,
            "blocks": len(p.blocks),
            "surjective": p.is_surjective(),
        }
    if doc.warnings:
        info["warnings"] = list(doc.warnings)
    return "valid", [info], [], EXIT_OK


def cmd_props(doc: InputDocument, args):
    _need(doc, "SEMILATTICE", "INVSGP")
    L, name = _semilattice(doc)
    bad = lat.tree_like_violation(L)
    witnesses = [
        {"property": "tree_like", "value": bad is None,
         "counterexample": None if bad is None else [name(bad[0]), name(bad[1])]},
        {"property": "atoms", "value": sorted(name(a) for a in lat.atoms(L))},
        {"property": "strictly_dominated",
         "value": [{"e": name(e), "f": name(f), "d": name(d)} for e, f, d in lat.domination_pairs(L)]},
    ]
    return "pass", witnesses, [], EXIT_OK


def cmd_spectrum(doc: InputDocument, args):
    _need(doc, "SEMILATTICE", "INVSGP")
    L, name = _semilattice(doc)
    if L.size < 2:
        return "NotApplicable", [{"reason": "no nonzero element"}], [], EXIT_NOT_FOUND
    tight = [name(p.generator) for p in flt.tight_spectrum(L)]
    ultra = [name(p.generator) for p in flt.ultrafilter_spectrum(L)]
    ortho = [name(F.generator) for F in flt.all_filters(L) if flt.is_ultrafilter(F)]
    by_atoms = [name(p.generator) for p in flt.atom_spectrum(L)]
    equal = sorted(tight) == sorted(ultra) == sorted(ortho) == sorted(by_atoms)
    witnesses = [{
        "tight": sorted(tight),
        "ultra": sorted(ultra),
        "ultra_by_orthogonality": sorted(ortho),
        "atoms": sorted(by_atoms),
        "tight_equals_ultra": equal,
        "points": len(tight),
    }]
    return ("pass" if equal else "mismatch"), witnesses, [], (EXIT_OK if equal else EXIT_DISAGREE)


def cmd_action(doc: InputDocument, args):
    _need(doc, "INVSGP")
    S = doc.payload
    s = args.element
    if not 0 <= s < S.size:
        raise Incompatible(f"element {s} out of range 0..{S.size - 1}")
    if S.size < 2:
        return "NotApplicable", [{"reason": "trivial semigroup"}], [], EXIT_NOT_FOUND
    gen = lambda p: S.as_element(p.generator)  # noqa: E731
    table = sg.action_table(S, s)
    mapping = sorted([gen(a), gen(b)] for a, b in table.items())
    prop = []
    idem = [e for e in S.elements() if S.is_idempotent(e)]
    for e in idem:
        dom = sg.domain_set(S, e)
        if not dom <= sg.domain_set(S, S.source(s)):
            continue
        part = "i" if S.mul(e, S.source(s)) == e else "ii"
        image = sg.action_image_of_domain(S, s, e, part)
        expected = sg.domain_set(S, S.mul(s, e, S.star[s]))
        prop.append({
            "e": e,
            "part": part,
            "image": sorted(gen(p) for p in image),
            "ses_star": S.mul(s, e, S.star[s]),
            "expected": sorted(gen(p) for p in expected),
            "equal": image == expected,
        })
    ok = all(x["equal"] for x in prop)
    witnesses = [{
        "element": s,
        "star": S.star[s],
        "source": S.source(s),
        "target": S.target(s),
        "domain": sorted(gen(p) for p in sg.domain_set(S, S.source(s))),
        "range": sorted(gen(p) for p in sg.domain_set(S, S.target(s))),
        "mapping": mapping,
        "image_of_domain_sets": prop,
    }]
    return ("pass" if ok else "mismatch"), witnesses, [], (EXIT_OK if ok else EXIT_DISAGREE)


def cmd_condition_iii(doc: InputDocument, args):
    _need(doc, "SEMILATTICE", "INVSGP")
    S = doc.payload if doc.kind == "INVSGP" else sg.semilattice_as_semigroup(doc.payload)
    result = sg.condition_iii_search(S)
    witnesses = [
        {"e": e, "found": w is not None, "witness": None if w is None else w.as_dict()}
        for e, w in result.witnesses.items()
    ]
    if result.holds:
        return "holds", witnesses, [], EXIT_OK
    return "NotFound", witnesses, [], EXIT_NOT_FOUND


def _block_label(sys_, i: int) -> dict:
    return {"block": i + 1, "name": sys_.names[i]}


def _trace_out(trace) -> list[dict]:
    out = []
    for d in trace.as_list():
        for key in ("block", "row"):
            if key in d:
                d[key] = d[key] + 1
        for key in ("k", "support", "remaining"):
            if key in d:
                d[key] = [x + 1 for x in d[key]]
        out.append(d)
    return out


def cmd_blocks_find(doc: InputDocument, args):
    _need(doc, "BLOCKS")
    system = doc.payload
    try:
        if args.strict:
            claim, trace = extract_contraction_witness(system, args.max_power, args.budget)
            i, m = claim.block_index, claim.power
        else:
            w, trace = find_block_witness(system, False, args.max_power, args.budget)
            i, m = w.block, w.power
    except HypothesisViolation as exc:
        wit = {"power": exc.power, "reason": exc.reason or "neither disjoint nor nested",
               "i": exc.i + 1, "i_name": system.names[exc.i],
               "j": None if exc.j is None else exc.j + 1,
               "j_name": None if exc.j is None else system.names[exc.j]}
        return "Violation", [wit], _trace_out(exc.trace), EXIT_VIOLATION
    except NotApplicable as exc:
        return "NotApplicable", [{"reason": str(exc)}], _trace_out(exc.trace), EXIT_NOT_FOUND
    except Exhausted as exc:
        return "Exhausted", [{"reason": str(exc), "max_power": args.max_power}], _trace_out(exc.trace), EXIT_NOT_FOUND
    check = verify_block_witness(system, i, m)
    wit = _block_label(system, i)
    wit.update({
        "power": m,
        "strict": check.strict,
        "separator": check.separator,
        "image": check.image.sorted_words(),
        "verified_symbolic": check.contained,
        "verified_oracle": check.oracle_contained,
        "oracle_depth": check.oracle_depth,
    })
    if args.strict:
        wit["separator_oracle"] = check.oracle_separator_ok
    if not check.agrees or not check.contained or (args.strict and not check.strict):
        return "mismatch", [wit], _trace_out(trace), EXIT_DISAGREE
    return "witness", [wit], _trace_out(trace), EXIT_OK


def _resolve_block(system, token: str) -> int:
    if token in system.names:
        return system.names.index(token)
    try:
        i = int(token)
    except ValueError:
        raise Incompatible(f"no block named {token!r}") from None
    if not 1 <= i <= system.n:
        raise Incompatible(f"block index {i} out of range 1..{system.n}")
    return i - 1


def cmd_blocks_verify(doc: InputDocument, args):
    _need(doc, "BLOCKS")
    system = doc.payload
    i = _resolve_block(system, args.block)
    if args.power < 1:
        raise Incompatible("power must be at least 1")
    check = verify_block_witness(system, i, args.power, args.oracle_depth)
    wit = _block_label(system, i)
    wit.update({
        "power": args.power,
        "image": check.image.sorted_words(),
        "contained": check.contained,
        "strict": check.strict,
        "separator": check.separator,
        "oracle_depth": check.oracle_depth,
        "oracle_contained": check.oracle_contained,
        "oracle_separator_ok": check.oracle_separator_ok,
    })
    if not check.agrees:
        return "mismatch", [wit], [], EXIT_DISAGREE
    if check.contained:
        return "pass", [wit], [], EXIT_OK
    return "NotFound", [wit], [], EXIT_NOT_FOUND


COMMANDS = {
    "validate": cmd_validate,
    "props": cmd_props,
    "spectrum": cmd_spectrum,
    "action": cmd_action,
    "condition-iii": cmd_condition_iii,
    "blocks find": cmd_blocks_find,
    "blocks verify": cmd_blocks_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", type=Path, help="input document")
    common.add_argument("--adjoin-zero", action="store_true",
                        help="extend an INVSGP table with a new absorbing zero")
    common.add_argument("--timing", action="store_true",
                        help="record elapsed_ms (makes reports non-reproducible)")
    common.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="treelike", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="parse and validate a document")
    sub.add_parser("props", parents=[common], help="tree-like test, atoms, strict domination pairs")
    sub.add_parser("spectrum", parents=[common], help="tight filters, ultrafilters and atoms")
    p = sub.add_parser("action", parents=[common], help="standard action of one element")
    p.add_argument("--element", type=int, required=True)
    sub.add_parser("condition-iii", parents=[common], help="search for contraction witnesses")

    blocks = sub.add_parser("blocks", help="block systems over cylinder sets")
    bsub = blocks.add_subparsers(dest="blocks_command", required=True)
    p = bsub.add_parser("find", parents=[common], help="find a contracting block")
    p.add_argument("--strict", action="store_true", help="demand a proper inclusion")
    p.add_argument("--max-power", type=int, default=DEFAULT_MAX_POWER)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cap on cylinders in any computed image")
    p = bsub.add_parser("verify", parents=[common], help="check f^m(X_i) inside X_i")
    p.add_argument("--block", required=True, help="1-based block index or block name")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--oracle-depth", type=int, default=None)
    return parser


def run(command: str, doc: InputDocument, args) -> tuple[dict, int]:
    verdict, witnesses, trace, code = COMMANDS[command](doc, args)
    return make_report(command, doc, verdict, witnesses, trace), code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command if args.command != "blocks" else f"blocks {args.blocks_command}"
    start = time.perf_counter()
    doc = None
    try:
        doc = parse(args.file, adjoin_zero=args.adjoin_zero)
        report, code = run(command, doc, args)
    except DocumentError as exc:
        report = make_report(command, doc, "ValidationError", [exc.as_dict()])
        code = EXIT_INVALID
    except Incompatible as exc:
        report = make_report(command, doc, "IncompatibleInput", [{"message": str(exc)}])
        code = EXIT_INVALID
    if args.timing:
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    text = render(report)
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


def _entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    _entry()
