"""Command-line front end.

Exit status: 0 success or pass, 1 verification failure, 2 usage or parse
error, 3 skein node budget exceeded.  Results go to stdout, diagnostics to
stderr.  With ``--json`` every integer is printed as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from pathlib import Path

from stringlink import milnor, skein
from stringlink.generate import CONSTRAINTS, gen_string_link
from stringlink.lab import verify
from stringlink.tangle import DiagramError, MultiIndex, TangleDiagram, close, parse_tangle, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def read_target(target: str) -> TangleDiagram:
    """``-`` reads stdin; text starting with ``braid``/``strands`` is literal; else a path."""
    if target == "-":
        text = sys.stdin.read()
    elif target.lstrip().startswith(("braid", "strands")):
        text = target
    else:
        path = Path(target)
        if not path.is_file():
            raise UsageError(f"no such file: {target}")
        text = path.read_text()
    try:
        return parse_tangle(text)
    except DiagramError as exc:
        raise UsageError(f"{target}: {exc}") from None


def _seq(args, required: bool = True) -> MultiIndex | None:
    if args.seq is None:
        if required:
            raise UsageError("--seq is required")
        return None
    try:
        return MultiIndex(args.seq)
    except DiagramError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------

def cmd_invariant(args) -> int:
    sigma = read_target(args.target)
    which = args.which
    if which in ("lk", "mu"):
        return _mu_like(args, sigma, which)
    K = close(sigma)
    comps = K.component_count
    if which in ("a2", "p0") and comps != 1:
        raise UsageError(f"{which} needs a knot; the closure has {comps} components")
    if which == "homfly":
        value = str(skein.homfly(K, args.budget))
    elif which == "conway":
        value = str(skein.conway(K, args.budget))
    elif which == "a2":
        value = str(skein.a2(K, args.budget))
    else:
        P0 = skein.p0(K, args.budget)
        if args.deriv is not None:
            value = str(skein.p0_deriv(K, args.deriv, args.budget))
        else:
            value = str(P0)
    _emit(args, value, {"invariant": which, "components": str(comps), "value": value})
    return EXIT_OK


def _mu_like(args, sigma: TangleDiagram, which: str) -> int:
    I = _seq(args)
    try:
        sigma.require_string_link()
        if which == "lk":
            if len(I) != 2:
                raise UsageError("lk takes --seq with two indices")
            value = milnor.linking_number(sigma, *I)
        else:
            value = milnor.mu(sigma, I, args.truncation)
    except (DiagramError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, str(value), {"invariant": which, "seq": str(I), "value": str(value)})
    return EXIT_OK


def cmd_mu(args) -> int:
    return _mu_like(args, read_target(args.target), "mu")


def _report_status(report) -> int:
    if report.status == "pass":
        return EXIT_OK
    if report.status == "budget-exceeded":
        return EXIT_BUDGET
    return EXIT_FAIL


def _report_line(report) -> str:
    left = "-" if report.left is None else report.left
    right = "-" if report.right is None else report.right
    return f"theorem {report.theorem}  I={report.I}  mu={left}  rhs={right}  {report.status}"


def _cmd_verify(args, theorem: int) -> int:
    sigma = read_target(args.target)
    I = _seq(args)
    try:
        report = verify(sigma, I, theorem, args.budget, description=args.target if args.json else None)
    except DiagramError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(report.dumps())
    else:
        print(_report_line(report))
        for row in report.terms:
            print(f"  J={row.J:<6} crossings={row.crossings:<4} value={row.value}")
    if report.status not in ("pass", "budget-exceeded"):
        print(f"verification {report.status}: mu={report.left} rhs={report.right}", file=sys.stderr)
    return _report_status(report)


def cmd_verify_thm1(args) -> int:
    return _cmd_verify(args, 1)


def cmd_verify_thm2(args) -> int:
    return _cmd_verify(args, 2)


def _corpus_member(job):
    k, n, length, seed, constraint, theorem, seqs, budget = job
    sigma = gen_string_link(n, length, f"{seed}:{k}", constraint)
    reports = [verify(sigma, I, theorem, budget) for I in seqs]
    return k, serialize(sigma), reports


def cmd_corpus(args) -> int:
    theorem = args.theorem
    n = args.n if args.n is not None else (3 if theorem == 2 else 4)
    if theorem == 2 and n != 3:
        raise UsageError("theorem 2 corpora have 3 strands")
    if theorem == 1 and n < 4:
        raise UsageError("theorem 1 corpora need at least 4 strands")
    if theorem == 1 and n > 4 and not args.allow_large:
        raise UsageError(f"{n}-strand theorem 1 corpora are slow; pass --allow-large to run them")
    constraint = args.constraint or ("none" if theorem == 2 else "commutator-built")
    length = args.length if args.length is not None else (14 if theorem == 2 else 40)
    I = _seq(args, required=False)
    if I is not None and not I.is_permutation(n):
        raise UsageError(f"--seq {I} is not a permutation of 1..{n}")
    seqs = [I] if I is not None else [MultiIndex(p) for p in permutations(range(1, n + 1))]
    jobs = [(k, n, length, args.seed, constraint, theorem, seqs, args.budget) for k in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_corpus_member, jobs))
    else:
        results = [_corpus_member(j) for j in jobs]

    docs = []
    codes = set()
    for k, text, reports in sorted(results, key=lambda r: r[0]):
        for rep in reports:
            codes.add(_report_status(rep))
            if args.json:
                doc = rep.to_json()
                doc["index"] = str(k)
                docs.append(doc)
            else:
                print(f"[{k}] {_report_line(rep)}")
    if args.json:
        print(json.dumps(docs, indent=2, sort_keys=True))
    passed = sum(r.status == "pass" for _, _, reps in results for r in reps)
    total = sum(len(reps) for _, _, reps in results)
    print(f"{passed}/{total} checks passed", file=sys.stderr)
    for code in (EXIT_FAIL, EXIT_BUDGET):
        if code in codes:
            return code
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_target(s: argparse.ArgumentParser) -> None:
    s.add_argument("target", help="diagram file, literal 'braid n: ...' / 'strands n ...' text, or - for stdin")
    s.add_argument("--seq", help="strand sequence as digits (312) or comma separated (1,10,2)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output; integers as strings")
    common.add_argument(
        "--budget", type=int, default=skein.DEFAULT_BUDGET, help="skein node cap (default: %(default)s)"
    )

    p = argparse.ArgumentParser(prog="stringlink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariant", parents=[common], help="invariant of a string link or its closure")
    s.add_argument("which", choices=["homfly", "conway", "a2", "lk", "mu", "p0"])
    _add_target(s)
    s.add_argument("--truncation", type=int, help="Magnus truncation degree for mu (default: len(seq)-1)")
    s.add_argument("--deriv", type=int, help="with p0: print the m-th t-derivative at t=1")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("mu", parents=[common], help="Milnor invariant mu(seq)")
    _add_target(s)
    s.add_argument("--truncation", type=int, help="Magnus truncation degree (default: len(seq)-1)")
    s.set_defaults(func=cmd_mu)

    for name, fn, what in (
        ("verify-thm1", cmd_verify_thm1, "P0 derivative identity (n >= 4)"),
        ("verify-thm2", cmd_verify_thm2, "a2 identity (3 strands)"),
    ):
        s = sub.add_parser(name, parents=[common], help=f"check the {what}")
        _add_target(s)
        s.set_defaults(func=fn)

    s = sub.add_parser("corpus", parents=[common], help="verify an identity on a generated corpus")
    s.add_argument("--theorem", type=int, choices=[1, 2], default=2, help="1: P0 identity, 2: a2 identity (default: 2)")
    s.add_argument("--n", type=int, help="strand count (default: 3 for theorem 2, 4 for theorem 1)")
    s.add_argument("--count", type=int, default=10, help="corpus size (default: %(default)s)")
    s.add_argument("--seed", default="0", help="corpus seed (default: %(default)s)")
    s.add_argument("--length", type=int, help="crossing budget per link (default: 14 for theorem 2, 40 for theorem 1)")
    s.add_argument("--constraint", choices=CONSTRAINTS, help="generator constraint")
    s.add_argument("--seq", help="check only this permutation (default: all)")
    s.add_argument("--jobs", type=int, default=1, help="worker processes (default: %(default)s)")
    s.add_argument("--allow-large", action="store_true", help="permit theorem 1 corpora with n >= 5")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except skein.SkeinBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
