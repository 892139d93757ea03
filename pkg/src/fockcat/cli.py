"""Command-line front end: ``fockcat {eval,coherent,commutator,check,exp}``.

Exit codes: 0 success, 1 a law check failed, 2 usage, parse or type error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fock as fk
from . import laws
from .algebraic import monoid_exp
from .errors import FockcatError, LawViolation, ParseError
from .expr import Environment, eval_expr
from .jsonio import load_matrix, load_presentation, matrix_to_json
from .tensorlinalg import UNIT, base, cast

EXIT_OK, EXIT_LAW, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _binding(text):
    key, sep, path = text.partition("=")
    if not sep or not key or not path:
        raise argparse.ArgumentTypeError(f"expected name=file.json, got {text!r}")
    return key, path


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fockcat", description="Truncated Fock-space morphisms and their laws.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate a morphism expression")
    ev.add_argument("--expr", required=True)
    ev.add_argument("--env", action="append", type=_binding, default=[], metavar="NAME=FILE")
    ev.add_argument("--dim", type=int, default=2)
    ev.add_argument("--cutoff", type=int, default=3)
    ev.add_argument("--out")

    co = sub.add_parser("coherent", help="coherent state of a single-particle vector")
    co.add_argument("--phi", required=True)
    co.add_argument("--cutoff", type=int, required=True)

    cm = sub.add_parser("commutator", help="[a_phi, a_psi^dagger] and the CCR check")
    cm.add_argument("--phi", required=True)
    cm.add_argument("--psi", required=True)
    cm.add_argument("--cutoff", type=int, required=True)

    ch = sub.add_parser("check", help="run the law suite")
    ch.add_argument("--dims", type=_int_list, default=(1, 2, 3))
    ch.add_argument("--cutoffs", type=_int_list, default=(2, 3, 4))
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--report")

    ex = sub.add_parser("exp", help="truncated exponential in a commutative monoid")
    ex.add_argument("--monoid", required=True)
    ex.add_argument("--element", required=True)
    ex.add_argument("--order", type=int, required=True)
    return p


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _single_state(path):
    v = load_matrix(path)
    if v.shape[1] != 1:
        raise ParseError(f"{path}: expected a column vector, got shape {v.shape}")
    return cast(v, dom=UNIT, cod=base(v.shape[0]))


def cmd_eval(args):
    bindings = {k: load_matrix(p) for k, p in args.env}
    env = Environment(bindings, args.dim, args.cutoff)
    _emit(matrix_to_json(eval_expr(args.expr, env)), args.out)
    return EXIT_OK


def cmd_coherent(args):
    phi = _single_state(args.phi)
    F = fk.fock_space(phi.cod, args.cutoff)
    coh = fk.coherent_state(F, phi)
    report = laws.check_coherent(F, phi)
    norm_sq = float((phi.dag @ phi).entries[0, 0].real)
    _emit({
        "state": matrix_to_json(coh),
        "norm_squared": float((coh.dag @ coh).entries[0, 0].real),
        "partial_sum_oracle": laws.coherent_norm_partial_sum(norm_sq, args.cutoff),
        "report": report.to_dict(),
    })
    return EXIT_OK if report.passed else EXIT_LAW


def cmd_commutator(args):
    phi, psi = _single_state(args.phi), _single_state(args.psi)
    if phi.cod != psi.cod:
        raise ParseError(f"phi and psi live in different spaces: {phi.cod} vs {psi.cod}")
    F = fk.fock_space(phi.cod, args.cutoff)
    a, ad = fk.lowering(F, phi), fk.raising(F, psi)
    comm = a @ ad - ad @ a
    overlap = complex((phi.dag @ psi).entries[0, 0])
    report = laws.check_ccr(F, phi, psi)
    _emit({
        "commutator": matrix_to_json(comm),
        "overlap": [overlap.real, overlap.imag],
        "report": report.to_dict(),
    })
    return EXIT_OK if report.passed else EXIT_LAW


def cmd_check(args):
    cfg = laws.SuiteConfig(dims=args.dims, cutoffs=args.cutoffs, seed=args.seed)
    reports = laws.run_suite(cfg)
    text = laws.reports_to_json(reports)
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    for r in reports:
        mark = "ok  " if r.passed else "FAIL"
        print(f"{mark} {r.law_id:22s} {r.case:22s} {r.max_abs_deviation:.3e}", file=sys.stderr)
    return EXIT_OK if laws.all_passed(reports) else EXIT_LAW


def cmd_exp(args):
    mono = load_presentation(args.monoid)
    if not hasattr(mono, "mult"):
        raise ParseError("--monoid must hold mult and unit matrices")
    x = load_matrix(args.element)
    if x.shape != (mono.carrier.dim, 1):
        raise ParseError(f"element shape {x.shape} does not fit carrier {mono.carrier}")
    x = cast(x, dom=UNIT, cod=mono.carrier)
    _emit(matrix_to_json(monoid_exp(mono, x, args.order)))
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "coherent": cmd_coherent,
    "commutator": cmd_commutator,
    "check": cmd_check,
    "exp": cmd_exp,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except LawViolation as exc:
        print(f"fockcat: law violation: {exc}", file=sys.stderr)
        return EXIT_LAW
    except (FockcatError, ValueError, TypeError) as exc:
        print(f"fockcat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
