"""Command-line front end.

Exit codes: 0 valid / success, 1 invalid (``check``) or disagreements found
(``selftest``), 2 parse or usage error, 3 resource bound exceeded,
4 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .embedding import embed_sequent
from .errors import FormulaSyntaxError, NameCollisionError, ResourceBoundError
from .parsing import parse_formula, parse_sequent, print_formula
from .prover import ProofResult, classify, prove, prove_cl_general
from .semantics import (
    ConsequenceOracle,
    LogicId,
    default_atom_cap,
    format_truth_table,
    matrix_consequence,
    table_rows_to_json,
    truth_table,
)
from .syntax import (
    Sequent,
    default_atom_names,
    enumerate_formulas,
    enumerate_sequents,
    sequent_to_tree,
)

EXIT_VALID, EXIT_INVALID, EXIT_USAGE, EXIT_BOUND, EXIT_INTERNAL = 0, 1, 2, 3, 4

DEFAULT_SEQUENT_CAP = 5_000_000


class CrossCheckError(Exception):
    pass


@dataclass
class Verdict:
    logic: LogicId
    result: ProofResult
    elapsed: float

    @property
    def valid(self) -> bool:
        return self.result.valid

    def to_json(self, witness: bool) -> dict:
        out = {
            "logic": self.logic.name,
            "sequent": str(self.result.sequent),
            "valid": self.valid,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if witness:
            out["witness"] = _witness_json(self.result)
        return out


def _witness_json(r: ProofResult) -> dict:
    if r.valid:
        return {"kind": "proof", "proof": r.proof.to_json()}
    return {
        "kind": "countermodel",
        "countermodel": _cm_json(r.countermodel),
        "open_leaf": sequent_to_tree(r.open_leaf),
    }


def _cm_json(cm: Optional[dict]) -> Optional[dict]:
    return None if cm is None else {a: str(v) for a, v in cm.items()}


def _cm_text(cm: dict) -> str:
    return ", ".join(f"{a}={v}" for a, v in cm.items()) or "(no atoms)"


def _timed_prove(logic: LogicId, s) -> Verdict:
    start = time.perf_counter()
    r = prove(logic, s)
    return Verdict(logic, r, time.perf_counter() - start)


def _read_arg(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)
    sys.stdout.flush()


def cmd_check(args) -> int:
    s = parse_sequent(_read_arg(args.sequent))
    v = _timed_prove(args.logic, s)
    text = "VALID" if v.valid else "INVALID"
    if args.witness:
        if v.valid:
            text += "\n" + v.result.proof.to_text()
        else:
            text += "\ncountermodel: " + _cm_text(v.result.countermodel)
            text += f"\nopen leaf: {v.result.open_leaf}"
    _emit(args, v.to_json(args.witness), text)
    return EXIT_VALID if v.valid else EXIT_INVALID


def cmd_classify(args) -> int:
    s = parse_sequent(_read_arg(args.sequent))
    verdicts = classify(s)
    rows = [
        f"{logic.name:<4} LNC={'on ' if logic.lnc else 'off'} LEM={'on ' if logic.lem else 'off'} "
        f"{'✓' if ok else '✗'} {'VALID' if ok else 'INVALID'}"
        for logic, ok in verdicts.items()
    ]
    payload = {"sequent": str(s), "verdicts": {l.name: ok for l, ok in verdicts.items()}}
    _emit(args, payload, "\n".join(rows))
    return EXIT_VALID


def cmd_table(args) -> int:
    f = parse_formula(_read_arg(args.formula))
    rows = truth_table(args.logic, f, cap=args.max_atoms)
    payload = {"logic": args.logic.name, "formula": print_formula(f), "rows": table_rows_to_json(rows)}
    _emit(args, payload, format_truth_table(f, rows))
    return EXIT_VALID


def cmd_embed(args) -> int:
    s = parse_sequent(_read_arg(args.sequent))
    t = embed_sequent(s)
    bdl = prove(LogicId.BDL, s).valid
    cl = prove(LogicId.CL, t).valid
    payload = {
        "sequent": str(s),
        "translation": str(t),
        "translation_tree": sequent_to_tree(t),
        "bdl_valid": bdl,
        "cl_valid_translation": cl,
    }
    text = "\n".join(
        [
            f"translation: {t}",
            f"BDL (source):      {'VALID' if bdl else 'INVALID'}",
            f"CL (translation):  {'VALID' if cl else 'INVALID'}",
        ]
    )
    _emit(args, payload, text)
    return EXIT_VALID


def iter_diff(source: LogicId, target: LogicId, atoms: int, depth: int, per_side: int, cap=None):
    """Sequents valid in ``source`` but not ``target``, in enumeration order,
    each cross-checked against both matrices."""
    formulas = list(enumerate_formulas(atoms, depth))
    for s in enumerate_sequents(formulas, per_side, cap=DEFAULT_SEQUENT_CAP):
        if not prove(source, s).valid:
            continue
        r = prove(target, s)
        if r.valid:
            continue
        if not matrix_consequence(source, s, cap) or matrix_consequence(target, s, cap):
            raise CrossCheckError(f"prover and matrix disagree on {s}")
        yield s, r.countermodel


def cmd_diff(args) -> int:
    count = 0
    for s, cm in iter_diff(args.source, args.target, args.atoms, args.depth, args.per_side, args.max_atoms):
        count += 1
        payload = {"sequent": str(s), "countermodel": _cm_json(cm)}
        _emit(args, payload, f"{s}    countermodel: {_cm_text(cm)}")
    print(f"{count} sequents valid in {args.source} but not in {args.target}", file=sys.stderr)
    return EXIT_VALID


def run_selftest(atoms: int, depth: int, per_side: int, sample: Optional[int] = None, seed: int = 0):
    """Compare the prover with the matrix oracle in every logic, the two CL
    engines with each other, and BDL with the CL embedding.

    Returns a dict of counters.
    """
    formulas = list(enumerate_formulas(atoms, depth))
    if sample is None:
        sequents = enumerate_sequents(formulas, per_side, cap=DEFAULT_SEQUENT_CAP)
    else:
        rng = random.Random(seed)
        sequents = (_random_sequent(rng, formulas, per_side) for _ in range(sample))
    names = list(default_atom_names(atoms))
    oracles = {logic: ConsequenceOracle(logic, names) for logic in LogicId}
    counts = {"sequents": 0, "prover_vs_matrix": 0, "cl_engines": 0, "embedding": 0}
    for s in sequents:
        counts["sequents"] += 1
        verdicts = {}
        for logic in LogicId:
            verdicts[logic] = prove(logic, s).valid
            if verdicts[logic] != oracles[logic].valid(s):
                counts["prover_vs_matrix"] += 1
        if prove_cl_general(s).valid != verdicts[LogicId.CL]:
            counts["cl_engines"] += 1
        if prove(LogicId.CL, embed_sequent(s)).valid != verdicts[LogicId.BDL]:
            counts["embedding"] += 1
    return counts


def _random_sequent(rng, formulas, per_side):
    return Sequent.of(
        rng.sample(formulas, rng.randint(0, per_side)),
        rng.sample(formulas, rng.randint(0, per_side)),
    )


def cmd_selftest(args) -> int:
    counts = run_selftest(args.atoms, args.depth, args.per_side, args.sample, args.seed)
    text = "\n".join(
        [
            f"sequents checked:              {counts['sequents']}",
            f"prover/matrix disagreements:   {counts['prover_vs_matrix']}",
            f"CL engine disagreements:       {counts['cl_engines']}",
            f"embedding disagreements:       {counts['embedding']}",
        ]
    )
    _emit(args, counts, text)
    bad = counts["prover_vs_matrix"] + counts["cl_engines"] + counts["embedding"]
    return EXIT_VALID if bad == 0 else EXIT_INVALID


def _logic(name: str) -> LogicId:
    try:
        return LogicId.parse(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--max-atoms", type=int, default=argparse.SUPPRESS, help="atom cap for matrix enumeration")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled runs")

    parser = argparse.ArgumentParser(
        prog="paradefinite",
        description="Decide sequents in CL, LP, K3 and BDL.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide a sequent in one logic")
    p.add_argument("--logic", type=_logic, required=True, help="cl, lp, k3 or bdl")
    p.add_argument("--witness", action="store_true", help="print the proof tree or countermodel")
    p.add_argument("sequent", help='e.g. "p, ~p |- q"; "-" reads stdin')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="decide a sequent in all four logics")
    p.add_argument("sequent")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", parents=[common], help="truth table of a formula")
    p.add_argument("--logic", type=_logic, required=True)
    p.add_argument("formula")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("embed", parents=[common], help="translate a sequent from BDL into CL")
    p.add_argument("sequent")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("diff", parents=[common], help="sequents valid in one logic but not another")
    p.add_argument("--from", dest="source", type=_logic, default=LogicId.CL)
    p.add_argument("--to", dest="target", type=_logic, default=LogicId.BDL)
    p.add_argument("--atoms", type=int, default=1)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--per-side", type=int, default=1)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("selftest", parents=[common], help="prover/matrix and embedding equivalence")
    p.add_argument("--atoms", type=int, default=2)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--per-side", type=int, default=1)
    p.add_argument("--sample", type=int, default=None, help="check N random sequents instead of all")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    max_atoms = getattr(args, "max_atoms", None)
    args.max_atoms = default_atom_cap() if max_atoms is None else max_atoms
    try:
        return args.func(args)
    except FormulaSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NameCollisionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except CrossCheckError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except BrokenPipeError:
        return EXIT_VALID


if __name__ == "__main__":
    sys.exit(main())
