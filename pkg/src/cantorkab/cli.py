"""Command-line interface.

Every subcommand writes CSV (default) or JSON to stdout; diagnostics go to
stderr.  Exit codes: 0 success, 1 invariant violation / method disagreement /
failed certificate, 2 usage error, 3 enumeration cap exceeded.

The enumeration cap can be overridden with ``--cap`` or the environment
variable ``CANTORKAB_ENUM_CAP``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import brute, factors, formulas, regularity, sequence
from .errors import EnumerationCapExceeded, MethodDisagreement

CAP_ENV = "CANTORKAB_ENUM_CAP"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, header, rows, payload=None):
    out = sys.stdout
    if args.format == "json":
        data = payload if payload is not None else [dict(zip(header, r)) for r in rows]
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _render(item) -> str:
    if item is None:
        return ""
    if isinstance(item, tuple):
        return ";".join(str(x) for x in item)
    return str(item)


def cmd_prefix(args):
    _emit(args, ["n", "prefix"], [(args.n, sequence.prefix(args.n))])
    return EXIT_OK


def cmd_letter(args):
    _emit(args, ["n", "letter"], [(args.n, sequence.cantor_letter(args.n))])
    return EXIT_OK


def cmd_factors(args):
    fs = factors.factors(args.n)
    _emit(args, ["word", "witness"], [(w, fs.witnesses[w]) for w in fs.words])
    return EXIT_OK


def cmd_special(args):
    words = sorted(factors.special_factors(args.n, args.side))
    _emit(args, ["n", "side", "word"], [(args.n, args.side, w) for w in words])
    return EXIT_OK


def cmd_complexity(args):
    if args.start > args.stop:
        raise ValueError("--from must not exceed --to")
    table = formulas.complexity_table(args.k, range(args.start, args.stop + 1), args.method)
    for note in table.notes:
        print(note, file=sys.stderr)
    _emit(args, ["n", "p_k", "method"], table.rows())
    return EXIT_OK


def cmd_verify(args):
    if args.check == "delta":
        if args.i is None:
            raise ValueError("verify delta needs --i")
        report = brute.verify_delta_congruences(args.i, args.max_len)
    else:
        if args.k is None:
            raise ValueError(f"verify {args.check} needs --k")
        if args.check == "theorem-b":
            report = brute.verify_theorem_b_upto(args.k, args.max_len)
        elif args.check == "occurrence":
            report = brute.verify_occurrence_lemma(args.k, args.max_len)
        else:
            report = brute.verify_linear_system(args.k, args.max_len)
    status = "pass" if report.ok else "fail"
    first = report.counterexamples[0] if report.counterexamples else None
    payload = {
        "check": report.check,
        "params": report.params,
        "checked": report.checked,
        "status": status,
        "count": len(report.counterexamples),
        "first_counterexample": _render(first),
    }
    _emit(args, ["status", "count", "first_counterexample"],
          [(status, len(report.counterexamples), _render(first))], payload)
    if not report.ok:
        print(f"{report.check}: {len(report.counterexamples)} counterexamples", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_gaps(args):
    _emit(args, ["j", "gap"], [(j, formulas.gap(j)) for j in range(1, args.count + 1)])
    return EXIT_OK


def cmd_types(args):
    ts = factors.type_set(args.level, sequence.check_word(args.word))
    _emit(args, ["level", "word", "residue"],
          [(args.level, args.word, r) for r in sorted(ts.residues)])
    return EXIT_OK


def cmd_guess(args):
    oracle = regularity.cantor_oracle(args.target)
    rep = regularity.guess_representation(oracle, args.max_rank, args.train)
    if rep is None:
        status, rank, mismatch = "not_found", "", ""
        payload = {"target": args.target, "status": status}
    else:
        check = regularity.verify_representation(rep, oracle, range(0, args.test + 1))
        status = "verified" if check.ok else "mismatch"
        rank = rep.rank
        mismatch = _render(check.first_mismatch)
        payload = {"target": args.target, "status": status, "checked": check.checked,
                   "first_mismatch": mismatch, "representation": rep.to_dict()}
    _emit(args, ["target", "status", "rank", "train", "test", "first_mismatch"],
          [(args.target, status, rank, args.train, args.test, mismatch)], payload)
    return EXIT_OK if status == "verified" else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration cap on factor length (env {CAP_ENV})")

    parser = _Parser(prog="cantorkab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prefix", parents=[common], help="first N letters of c")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_prefix)

    p = sub.add_parser("letter", parents=[common], help="the letter c_N")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_letter)

    p = sub.add_parser("factors", parents=[common], help="all factors of length N")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("special", parents=[common], help="special factors of length N")
    p.add_argument("n", type=int)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("complexity", parents=[common], help="table of P^(k)(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--method", choices=formulas.METHODS, default="fast")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("verify", parents=[common], help="exhaustive identity checks")
    p.add_argument("check", choices=("theorem-b", "delta", "occurrence", "linear-system"))
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int, help="exponent i for the delta check")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gaps", parents=[common], help="zero-run lengths d_1..d_J")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("types", parents=[common], help="occurrence types of a word")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("guess", parents=[common], help="find and verify a linear representation")
    p.add_argument("--target", required=True, help="mc, p1, p2 or pk:K")
    p.add_argument("--max-rank", type=int, default=20)
    p.add_argument("--train", type=int, default=2000)
    p.add_argument("--test", type=int, default=30000)
    p.set_defaults(func=cmd_guess)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = args.cap
    if cap is None and os.environ.get(CAP_ENV):
        try:
            cap = int(os.environ[CAP_ENV])
        except ValueError:
            print(f"{CAP_ENV} must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        if cap is not None:
            factors.set_enumeration_cap(cap)
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MethodDisagreement as exc:
        print(f"disagreement: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cap is not None:
            factors.set_enumeration_cap(factors.DEFAULT_ENUMERATION_CAP)


if __name__ == "__main__":
    sys.exit(main())
