"""``bulbs`` command line: seq, formula, eval, construct, search, verify, export-dot.

Payloads go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 a checked relation failed, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import constructions, formulas
from .audit import AuditEntry, AuditReport, ValueTable, audit_relations, probe_open_questions
from .constructions import ConstructionError
from .gf2 import BitVec
from .search import (
    BOUNDED_ONLY,
    EXHAUSTIVE_LIMIT,
    EmptyClassError,
    SearchLimitError,
    brute,
    certify_mu_via_bounds,
)
from .textio import TextFormatError, emit_dot, emit_report, emit_wiring, read_wiring
from .wiring import class_membership, evaluate_M, mean_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

SEQ_LIMIT = 10**7
CONSTRUCTION_SUITE = (
    "w10",
    "permuted-tower",
    "tower:0",
    "tower:1",
    "tower:2",
    "tower:3",
    "tower-via-pivots:2",
    "hadamard-wiring:1",
    "hadamard-wiring:2",
    "hadamard-wiring:3",
    "apex-chain:3",
    "optimal:12,4",
    "optimal:5,4",
    "optimal:9,6",
)


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def parse_range(text: str, lo: int = 1) -> range:
    """``"5"`` or ``"1..8"`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            start, stop = int(a), int(b)
        else:
            start = stop = int(text)
    except ValueError:
        raise UsageError(f"invalid range {text!r}; expected N or A..B") from None
    if start < lo or stop < start:
        raise UsageError(f"invalid range {text!r}; need {lo} <= A <= B")
    return range(start, stop + 1)


def _target(name: str) -> str:
    return name.replace("-", "_")


# ---------------------------------------------------------------- commands

def cmd_seq(args) -> int:
    rng = parse_range(args.range)
    if rng.stop - 1 > SEQ_LIMIT:
        raise UsageError(f"n must be at most {SEQ_LIMIT}")
    if not args.all_methods:
        for n in rng:
            print(n, formulas.a_of(n, args.method))
        return EXIT_OK
    bad = 0
    for n in rng:
        vals = [formulas.a_of(n, m) for m in formulas.METHODS]
        flag = "" if len(set(vals)) == 1 else " MISMATCH"
        bad += bool(flag)
        print(n, *vals, end=f"{flag}\n")
    if bad:
        _err(f"{bad} disagreement(s) between methods")
        return EXIT_FAIL
    return EXIT_OK


def cmd_formula(args) -> int:
    target = _target(args.target)
    n, m = args.n, args.m
    if target in ("nu", "nu_star") and m <= 1:
        raise UsageError("nu needs m > 1 (the closed form does not cover m = 1)")
    if target in ("mu_star", "nu_star") and n < m:
        raise UsageError(f"the exact-degree class is empty unless n >= m (got n={n}, m={m})")
    if n < 1 or m < 1:
        raise UsageError("n and m must be positive")
    print(formulas.closed_value(target, n, m))
    return EXIT_OK


def _read(path: str):
    try:
        return read_wiring(path)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except TextFormatError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_eval(args) -> int:
    W = _read(args.file)
    if args.c == "zero":
        c = BitVec.zeros(W.n)
    else:
        if len(args.c) != W.n or set(args.c) - set("01"):
            raise UsageError(f"-c must be 'zero' or a bitstring of length {W.n}")
        c = BitVec.from_str(args.c)
    print(f"n: {W.n}")
    print(f"deg: {W.deg}")
    print(f"admissible: {'true' if W.is_admissible else 'false'}")
    print(f"class: {class_membership(W, W.deg).value}")
    print(f"rank: {W.rank}")
    print(f"M: {evaluate_M(W, c)}")
    if args.mean:
        print(f"mean: {mean_weight(W, c)}")
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        nc = constructions.construct(args.name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    _err(nc.summary())
    sys.stdout.write(emit_wiring(nc.wiring))
    return EXIT_OK


def cmd_search(args) -> int:
    target = _target(args.target)
    if args.exact and not target.endswith("_star"):
        target += "_star"
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    start = time.perf_counter()
    if args.bounded_only:
        if target != "mu":
            raise UsageError("--bounded-only is available for --target mu only")
        R = certify_mu_via_bounds(args.n, args.m, use_theorems=args.use_closed_forms)
    else:
        if args.n > EXHAUSTIVE_LIMIT:
            _err(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}; use --bounded-only")
            return EXIT_LIMIT
        try:
            R = brute(target, args.n, args.m, workers=args.workers)
        except EmptyClassError as e:
            raise UsageError(str(e)) from None
        except SearchLimitError as e:
            _err(str(e))
            return EXIT_LIMIT
        except ValueError as e:
            raise UsageError(str(e)) from None
    sys.stdout.write(emit_report(R))
    _err(f"wall_time: {time.perf_counter() - start:.3f}s")
    return EXIT_FAIL if R.certification == BOUNDED_ONLY else EXIT_OK


def _formula_suite(ns: range, ms: range | None) -> AuditReport:
    V = ValueTable()
    rep = AuditReport()
    for target in ("mu", "mu_star", "nu", "nu_star"):
        e = AuditEntry(f"closed-form[{target}]", f"oracle {target} equals the closed form", f"n in {ns.start}..{ns.stop - 1}")
        for n in ns:
            for m in ms or range(1, n + 1):
                if target.startswith("nu") and m == 1 or target.endswith("star") and n < m:
                    continue
                closed = formulas.closed_value(target, n, m)
                if not isinstance(closed, int) or n > EXHAUSTIVE_LIMIT:
                    e.skipped += 1
                    continue
                e.checked += 1
                got = V.get(target, n, m)
                if got != closed and e.passed:
                    e.passed = False
                    e.counterexample = f"n={n} m={m}: oracle {got}, closed form {closed}"
        rep.entries.append(e)
    N = max(ns.stop - 1, 33)
    e = AuditEntry("sequence-methods", "three constructions of a(n) agree", f"n<={N}")
    tables = [formulas.a_values(N, m) for m in formulas.METHODS]
    e.checked = N
    for n in range(N):
        if len({t[n] for t in tables}) != 1:
            e.passed = False
            e.counterexample = f"n={n + 1}: {[t[n] for t in tables]}"
            break
    rep.entries.append(e)
    return rep


def _construction_suite() -> AuditReport:
    rep = AuditReport()
    for name in CONSTRUCTION_SUITE:
        e = AuditEntry(f"construction[{name}]", "all certificates hold", name)
        try:
            nc = constructions.construct(name)
            e.checked = len(nc.claims)
            e.info = f"verified={sum(c.status == 'verified' for c in nc.claims)} asserted={sum(c.status == 'asserted' for c in nc.claims)}"
        except ConstructionError as exc:
            e.passed = False
            e.counterexample = str(exc)
        rep.entries.append(e)
    return rep


def cmd_verify(args) -> int:
    ns = parse_range(args.n) if args.n else None
    ms = parse_range(args.m) if args.m else None
    if args.suite == "formulas":
        rep = _formula_suite(ns or range(1, 7), ms)
    elif args.suite == "lemmas":
        n_max = ns.stop - 1 if ns else EXHAUSTIVE_LIMIT
        m_max = ms.stop - 1 if ms else n_max
        rep = audit_relations(n_max, m_max)
    elif args.suite == "constructions":
        rep = _construction_suite()
    else:
        rep = probe_open_questions(ns or range(1, EXHAUSTIVE_LIMIT + 1), ms or range(1, EXHAUSTIVE_LIMIT + 1))
    sys.stdout.write(rep.text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_export_dot(args) -> int:
    W = _read(args.file)
    sys.stdout.write(emit_dot(W, show_loops=args.show_loops, collapse_cliques=args.collapse_cliques))
    return EXIT_OK


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bulbs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("seq", help="print a(n)")
    s.add_argument("range", help="N or A..B")
    s.add_argument("--method", choices=formulas.METHODS, default="inductive")
    s.add_argument("--all-methods", action="store_true", help="print every method and flag disagreements")
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("formula", help="closed form or bracket")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--target", choices=["mu", "mu-star", "nu", "nu-star", "U"], default="mu")
    s.set_defaults(func=cmd_formula)

    s = sub.add_parser("eval", help="evaluate M(W, c) for a wiring file")
    s.add_argument("file")
    s.add_argument("-c", default="zero", help="initial state: 'zero' or a bitstring")
    s.add_argument("--mean", action="store_true", help="also print the exact mean weight")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("construct", help="emit a named construction")
    s.add_argument("name", help=", ".join(constructions.available_names()))
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exhaustive search with witness")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--target", choices=["mu", "mu-star", "nu", "nu-star"], default="mu")
    s.add_argument("--exact", action="store_true", help="restrict to exact degree m")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--bounded-only", action="store_true", help="bracket mu without enumeration")
    s.add_argument("--use-closed-forms", action="store_true", help="with --bounded-only, raise the lower end to a proved closed form")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="run an audit suite")
    s.add_argument("suite", choices=["formulas", "lemmas", "constructions", "probes"])
    s.add_argument("--n", help="N or A..B")
    s.add_argument("--m", help="N or A..B")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-dot", help="Graphviz view of a wiring file")
    s.add_argument("file")
    s.add_argument("--show-loops", action="store_true")
    s.add_argument("--collapse-cliques", action="store_true")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        _err(f"bulbs: error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
