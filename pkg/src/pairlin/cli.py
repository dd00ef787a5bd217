"""Command-line surface: parse matrices and algebras, run determinant, rank,
solve, and audit commands, and execute the registry of named reproductions.

Exit codes: 0 success/PASS, 1 claim FAIL or verdict Fails, 2 input or parse
error, 3 cap exceeded or undecidable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import PairError, Undecidable, axiom_audit
from .instances import BadSpecifier, SPECIFIER_HELP, make_algebra
from .matrices import (
    CapExceeded,
    Matrix,
    det_doubled,
    is_singular,
    matrix,
)
from .rank import (
    CoefficientDomain,
    UndecidableSurpassing,
    check_condition,
    entry_ratio_domain,
    exact_domain,
    rank_report,
)
from .solve import NoConvergence, cramer_solve, jacobi_solve
from . import suites as suites_mod
from .suites import ALL_SUITES, DEFAULT_SEED


class ParseFailure(PairError):
    pass


def parse_matrix_text(text: str):
    """Matrix text format: `pair <spec>`, `rows <m>`, `cols <n>`, then m lines
    of n whitespace-separated element literals; `#` begins a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 3:
        raise ParseFailure("matrix file needs pair/rows/cols headers")
    header = {}
    for i, key in enumerate(("pair", "rows", "cols")):
        parts = lines[i].split(None, 1)
        if len(parts) != 2 or parts[0] != key:
            raise ParseFailure(f"expected `{key} <value>` on line {i + 1}")
        header[key] = parts[1].strip()
    try:
        m, n = int(header["rows"]), int(header["cols"])
    except ValueError:
        raise ParseFailure("rows/cols must be integers")
    alg = make_algebra(header["pair"])
    if alg.parse_literal is None:
        raise ParseFailure(f"{alg.id} has no element literal grammar")
    body = lines[3:]
    if len(body) != m:
        raise ParseFailure(f"expected {m} rows, found {len(body)}")
    rows = []
    for line in body:
        toks = line.split()
        if len(toks) != n:
            raise ParseFailure(f"expected {n} entries per row, got {len(toks)}")
        rows.append([alg.parse_literal(t) for t in toks])
    return alg, matrix(alg, rows)


def format_matrix_text(a: Matrix) -> str:
    alg = a.alg
    out = [f"pair {alg.spec_string}", f"rows {a.rows}", f"cols {a.cols}"]
    for row in a.entries:
        out.append(" ".join(alg.format_literal(e) for e in row))
    return "\n".join(out) + "\n"


def parse_vector(alg, text: str):
    return tuple(alg.parse_literal(t.strip()) for t in text.split(","))


class Reporter:
    def __init__(self, fmt="kv"):
        self.fmt = fmt

    def emit(self, key, value):
        if self.fmt == "json-lines":
            print(json.dumps({"key": key, "value": value}))
        else:
            print(f"{key}: {value}")


def _domain_from_flag(alg, vectors, flag):
    if flag is None:
        return None
    if flag == "exact":
        return exact_domain(alg)
    if flag.startswith("heuristic"):
        depth = 2
        if ":" in flag:
            depth = int(flag.split(":", 1)[1])
        if alg.id == "supertropical":
            return entry_ratio_domain(alg, vectors, depth)
        return CoefficientDomain((alg.one,), "heuristic", depth)
    raise ParseFailure(f"unknown domain flag {flag!r}")


def cmd_pairs(args, rep):
    for spec, desc in SPECIFIER_HELP:
        rep.emit(spec, desc)
    return 0


def cmd_det(args, rep):
    alg, a = parse_matrix_text(open(args.file).read())
    rep.emit("pair", alg.spec_string)
    rep.emit("rows", str(a.rows))
    rep.emit("cols", str(a.cols))
    if a.is_square:
        d = det_doubled(a)
        rep.emit("det_plus", alg.format_literal(d.det_plus))
        rep.emit("det_minus", alg.format_literal(d.det_minus))
        rep.emit("permanent", alg.format_literal(d.total()))
        rep.emit("singular", str(d.balanced()).lower())
        return 0
    import itertools as it

    k = min(a.rows, a.cols)
    for ri in it.combinations(range(a.rows), k):
        for ci in it.combinations(range(a.cols), k):
            minor = a.submatrix(ri, ci)
            label = (
                "rows=[" + ",".join(str(i + 1) for i in ri) + "]"
                " cols=[" + ",".join(str(j + 1) for j in ci) + "]"
            )
            rep.emit(f"minor {label} singular", str(is_singular(minor)).lower())
    return 0


def cmd_rank(args, rep):
    alg, a = parse_matrix_text(open(args.file).read())
    dom = _domain_from_flag(alg, list(a.entries), args.domain)
    r = rank_report(a, dom)
    rep.emit("pair", alg.spec_string)
    for k, v in r.lines():
        rep.emit(k, v)
    return 0


def cmd_check(args, rep):
    alg, a = parse_matrix_text(open(args.file).read())
    dom = _domain_from_flag(alg, list(a.entries), args.domain)
    v = check_condition(a, args.condition, dom)
    rep.emit(args.condition, v.verdict)
    if v.detail:
        rep.emit(f"{args.condition}_detail", v.detail)
    if v.witness is not None:
        rep.emit("witness", v.witness.kv(alg.format_literal))
    if v.verdict == "FAILS":
        return 1
    if v.verdict == "UNKNOWN":
        return 3
    return 0


def cmd_solve(args, rep):
    alg, a = parse_matrix_text(open(args.file).read())
    v = parse_vector(alg, args.rhs)
    if args.method == "cramer":
        out = cramer_solve(a, v)
        wtxt = ",".join(
            f"{alg.format_literal(we.payload[0])}|{alg.format_literal(we.payload[1])}"
            for we in out.w
        )
        rep.emit("w", wtxt)
        rep.emit("balance_verified", str(out.balance_verified).lower())
        if out.x is not None:
            rep.emit("x", ",".join(alg.format_literal(e) for e in out.x))
            rep.emit("x_verified", str(out.x_verified).lower())
        return 0 if out.balance_verified else 1
    state = jacobi_solve(a, v, args.max_iter)
    for i, it in enumerate(state.iterates, start=1):
        rep.emit(f"x{i}", ",".join(alg.format_literal(e) for e in it))
    rep.emit("stabilized_at", str(state.stabilized_at))
    rep.emit("x", ",".join(alg.format_literal(e) for e in state.x))
    rep.emit("balance_verified", str(state.balance_verified).lower())
    rep.emit("mu_verified", str(state.mu_verified).lower())
    return 0 if state.balance_verified and state.mu_verified else 1


def cmd_audit(args, rep):
    alg = make_algebra(args.spec)
    report = axiom_audit(alg)
    rep.emit("pair", alg.spec_string)
    for k, v in report.lines():
        rep.emit(k, v)
    return 0


EXAMPLES = {
    "sign-a2-counterexample": suites_mod.suite_sign_counterexample,
    "doubled-boolean-a2": suites_mod.suite_doubled_boolean,
    "truncated-quasiperiodic": suites_mod.suite_truncated,
    "powerset-symdiff-a2prime": suites_mod.suite_powerset_symdiff,
    "krasner-2x2": suites_mod.suite_krasner,
    "hex-a2prime": suites_mod.suite_hyperfield_a2prime,
}


class UnknownExample(PairError):
    pass


def cmd_example(args, rep):
    if args.name not in EXAMPLES:
        raise UnknownExample(
            f"unknown example {args.name!r}; known: {', '.join(sorted(EXAMPLES))}"
        )
    res = EXAMPLES[args.name](seed=args.seed)
    for line in res.detail:
        rep.emit("evidence", line)
    rep.emit(res.name, "PASS" if res.passed else "FAIL")
    return 0 if res.passed else 1


def cmd_verify(args, rep):
    rep.emit("seed", str(args.seed))
    failures = 0
    for suite in ALL_SUITES:
        res = suite(seed=args.seed)
        rep.emit(res.name, "PASS" if res.passed else "FAIL")
        if not res.passed:
            failures += 1
            for line in res.detail:
                rep.emit(f"{res.name}_detail", line)
    rep.emit("failures", str(failures))
    return 0 if failures == 0 else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="pairlin",
        description="linear algebra over semiring pairs",
    )
    p.add_argument("--format", choices=("kv", "json-lines"), default="kv")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pairs", help="list registered pair families")
    sp.add_argument("action", choices=("list",))

    sp = sub.add_parser("det", help="determinant report for a matrix file")
    sp.add_argument("file")

    sp = sub.add_parser("rank", help="rank report for a matrix file")
    sp.add_argument("file")
    sp.add_argument("--domain", default=None)

    sp = sub.add_parser("check", help="check condition a1|a2|a2p")
    sp.add_argument("condition", choices=("a1", "a2", "a2p"))
    sp.add_argument("file")
    sp.add_argument("--domain", default=None)

    sp = sub.add_parser("solve", help="cramer or jacobi solve")
    sp.add_argument("method", choices=("cramer", "jacobi"))
    sp.add_argument("file")
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--max-iter", type=int, default=None)

    sp = sub.add_parser("audit", help="axiom audit of a pair specifier")
    sp.add_argument("spec")

    sp = sub.add_parser("example", help="run a named reproduction")
    sp.add_argument("name")

    sp = sub.add_parser("verify", help="run all reproductions and suites")
    sp.add_argument("what", choices=("all",))
    return p


COMMANDS = {
    "pairs": cmd_pairs,
    "det": cmd_det,
    "rank": cmd_rank,
    "check": cmd_check,
    "solve": cmd_solve,
    "audit": cmd_audit,
    "example": cmd_example,
    "verify": cmd_verify,
}


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    rep = Reporter(args.format)
    try:
        return COMMANDS[args.command](args, rep)
    except (CapExceeded, Undecidable, NoConvergence, UndecidableSurpassing) as exc:
        rep.emit("error", str(exc))
        return 3
    except (BadSpecifier, ParseFailure, UnknownExample, OSError) as exc:
        rep.emit("error", str(exc))
        return 2
    except PairError as exc:
        rep.emit("error", str(exc))
        return 2


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
