"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when one fails (or is
incomplete/refused), 2 on usage errors and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from ._scan import MAX_EVALS, SAMPLES, ScanPolicy
from .brace import (
    CONDITIONS as BRACE_CONDITIONS,
    brace_to_symmetric_group,
    check_conditions as brace_conditions,
    mpl_brace,
    series,
    validate_brace,
)
from .errors import NotAMultipermutationError, RefusedError, YBEError
from .report import CheckReport, expectation
from .rings import (
    DEFAULT_CAP,
    check_lri_graded,
    check_raut_graded,
    graded_component,
    mpl_graded,
    to_finite_brace,
)
from .solution import (
    CONDITIONS as SOLUTION_CONDITIONS,
    check_conditions as solution_conditions,
    enumerate_solutions,
    format_cycles,
    mpl,
    retraction_chain,
    validate_solution,
)
from .structure import BALL_AXIOMS, BALL_CONDITIONS, ball, check_on_ball, permutation_group


def _policy(args) -> ScanPolicy:
    return ScanPolicy(max_evals=args.max_triples, samples=args.samples, seed=args.seed)


def _split(s, allowed, what):
    if not s:
        return ()
    items = tuple(x.strip() for x in s.split(",") if x.strip())
    for x in items:
        if x not in allowed:
            raise SystemExit(f"unknown {what} {x!r}; choose from {', '.join(allowed)}")
    return items


def _info(subject, check, notes=(), **counts) -> CheckReport:
    return CheckReport(subject, check, "pass", counts=counts, notes=list(notes))


# ---------------------------------------------------------------- solution


def cmd_solution(args):
    if args.action == "enumerate":
        n = int(args.ref)
        sols = enumerate_solutions(n)
        notes = [f"{s.name}: lambda rows {[format_cycles(r) for r in s.lam]}" for s in sols]
        return [_info(f"census:{n}", "enumerate", notes, count=len(sols))]
    s = io.load_solution(args.ref)
    policy = _policy(args)
    if args.action == "check":
        out = [validate_solution(s, policy)]
        conds = _split(args.conditions, SOLUTION_CONDITIONS, "condition")
        if conds:
            out.append(solution_conditions(s, conds))
        return out
    if args.action == "mpl":
        try:
            level = mpl(s)
        except NotAMultipermutationError as e:
            return [CheckReport(s.name, "mpl", "fail", witnesses=[("retraction sizes",) + tuple(e.chain)])]
        return [_info(s.name, "mpl", [f"mpl = {level}"], mpl=level)]
    if args.action == "retract":
        chain = retraction_chain(s)
        notes = [f"step {i}: {c.n} points" for i, c in enumerate(chain)]
        if args.out and len(chain) > 1:
            io.write_json(chain[1], args.out)
        return [_info(s.name, "retract", notes, steps=len(chain) - 1, final_size=chain[-1].n)]
    raise SystemExit(f"unknown action {args.action!r}")


# ---------------------------------------------------------------- brace


def cmd_brace(args):
    policy = _policy(args)
    try:
        b = io.load_brace(args.ref, policy, args.cap)
    except RefusedError as e:
        return [CheckReport(args.ref, "load", "refused", bound=e.bound, notes=[str(e)])]
    if args.action == "check":
        out = [validate_brace(b)]
        conds = _split(args.conditions, BRACE_CONDITIONS, "condition")
        if conds:
            out.append(brace_conditions(b, conds))
        return out
    if args.action == "series":
        chain = series(b, args.kind)
        sizes = [len(x) for x in chain]
        return [_info(b.name, f"series[{args.kind}]", [f"orders: {sizes}"], length=len(sizes))]
    if args.action == "mpl":
        level = mpl_brace(b)
        if level is None:
            return [CheckReport(b.name, "mpl", "fail", witnesses=[("series stabilises above 0",)])]
        return [_info(b.name, "mpl", [f"mpl = {level}"], mpl=level)]
    if args.action == "convert":
        s = brace_to_symmetric_group(b)
        if args.out:
            io.write_json(s, args.out)
        return [_info(b.name, "convert", [f"solution on {s.n} points" + (f" written to {args.out}" if args.out else "")],
                      n=s.n)]
    raise SystemExit(f"unknown action {args.action!r}")


# ---------------------------------------------------------------- group


def cmd_group(args):
    s = io.load_solution(args.ref)
    policy = _policy(args)
    if args.action == "ball":
        B = ball(s, args.radius, args.cap_elements)
        if args.out:
            Path(args.out).write_text(json.dumps(B.to_json()) + "\n")
        return [_info(s.name, f"ball[L={args.radius}]", [], radius=args.radius, size=len(B))]
    if args.action == "check":
        which = _split(args.conditions, BALL_CONDITIONS + BALL_AXIOMS, "ball check") or BALL_CONDITIONS
        return [check_on_ball(s, args.radius, which, policy, args.cap_elements)]
    if args.action == "permgroup":
        g = permutation_group(s, seed=args.seed)
        v = validate_brace(g.brace)
        notes = [f"|L(G)| = {g.order}", f"mpl of induced solution = {g.mpl}",
                 f"lift checks = {g.lift_checks} (seed {g.seed})"]
        return [_info(s.name, "permgroup", notes, order=g.order, mpl=-1 if g.mpl is None else g.mpl), v]
    raise SystemExit(f"unknown action {args.action!r}")


# ---------------------------------------------------------------- ring


def _ring_checks(sys, policy, expect=None):
    raut = check_raut_graded(sys, policy)
    lri = check_lri_graded(sys, policy)
    level = mpl_graded(sys)
    info = _info(sys.name, "mpl_graded", [f"mpl = {level}"], mpl=level,
                 dim=sys.dim, components=len(graded_component(sys, level)) if level else 0)
    if expect is None:
        return [raut, lri, info]
    out = [expectation(raut, expect["raut"], f"expect raut={expect['raut']}"),
           expectation(lri, expect["lri"], f"expect lri={expect['lri']}")]
    want = expect.get("mpl")
    if want is not None:
        out.append(CheckReport(sys.name, f"expect mpl={want}", "pass" if level == want else "fail",
                               witnesses=[] if level == want else [("observed", level)]))
    else:
        out.append(info)
    return out


EXPECTED = {
    "thm6": {"raut": "pass", "lri": "fail", "mpl": 3},
    "thm8": {"raut": "fail", "lri": "fail", "mpl": 3},
}


def cmd_ring(args):
    policy = _policy(args)
    if args.action in ("thm6", "thm8"):
        sys_ = io.load_ring(args.action, p=args.p)
        sub = args.ref or "check"
        if sub == "check":
            return _ring_checks(sys_, policy, EXPECTED[args.action])
        if sub == "basis":
            return _basis(sys_)
        if sub == "to-brace":
            return _to_brace(sys_, args, policy)
        raise SystemExit(f"unknown action {sub!r} for {args.action}")
    if not args.ref:
        raise SystemExit("ring reference required")
    sys_ = io.load_ring(args.ref, p=args.p)
    if args.action == "nf":
        if not args.poly:
            raise SystemExit("ring nf needs a polynomial")
        nf = sys_.normal_form(args.poly)
        return [_info(sys_.name, "nf", [f"{args.poly} -> {nf}"])]
    if args.action == "basis":
        return _basis(sys_)
    if args.action == "check":
        name = args.ref.partition(":")[0]
        return _ring_checks(sys_, policy, EXPECTED.get(name))
    if args.action == "to-brace":
        return _to_brace(sys_, args, policy)
    raise SystemExit(f"unknown action {args.action!r}")


def _basis(sys_):
    words = [sys_.word_str(w) for w in sys_.basis]
    return [_info(sys_.name, "basis", [" ".join(words), f"order = {sys_.p}^{sys_.dim}"], size=len(words))]


def _to_brace(sys_, args, policy):
    try:
        b = to_finite_brace(sys_, cap=args.cap, policy=policy)
    except RefusedError as e:
        return [CheckReport(sys_.name, "to_brace", "refused", bound=e.bound, notes=[str(e)])]
    if args.out:
        io.write_json(b, args.out)
    return [validate_brace(b)]


# ---------------------------------------------------------------- suite


def cmd_suite(args):
    from .suite import run_suite
    if args.name != "paper":
        raise SystemExit(f"unknown suite {args.name!r}")
    only = tuple(args.only.split(",")) if args.only else None
    return run_suite(_policy(args), only)


# ---------------------------------------------------------------- parser


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", metavar="PATH", help="also write the reports as JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled scans (default 0)")
    p.add_argument("--max-triples", type=int, default=MAX_EVALS,
                   help="largest exhaustive scan before sampling kicks in")
    p.add_argument("--samples", type=int, default=SAMPLES, help="sample count above the threshold")
    p.add_argument("--radius", type=int, default=2, help="ball radius L")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest brace built from a ring")
    p.add_argument("--cap-elements", type=int, default=10**6, help="ball memory cap")
    p.add_argument("--p", type=int, default=None, help="characteristic for thm8")
    p.add_argument("--out", metavar="PATH", help="write the produced object here")
    p.add_argument("--conditions", help="comma-separated extra conditions")
    p.add_argument("--verbose", "-v", action="store_true", help="print sub-checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ybe", description="Finite YBE solutions, braces and graded rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solution", parents=[common], help="finite solutions")
    p.add_argument("action", choices=["check", "mpl", "retract", "enumerate"])
    p.add_argument("ref", help="trivial:n, perm:n:(cycles), census:n:i, file.json (or n for enumerate)")
    p.set_defaults(func=cmd_solution)

    p = sub.add_parser("brace", parents=[common], help="finite left braces")
    p.add_argument("action", choices=["check", "series", "mpl", "convert"])
    p.add_argument("ref", help="trivial:m, census:m:i, thm6, file.json")
    p.add_argument("--kind", choices=["paren", "plain"], default="paren")
    p.set_defaults(func=cmd_brace)

    p = sub.add_parser("group", parents=[common], help="structure group balls and L(G)")
    p.add_argument("action", choices=["ball", "check", "permgroup"])
    p.add_argument("ref")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("ring", parents=[common], help="graded rings over GF(p)")
    p.add_argument("action", choices=["nf", "basis", "check", "thm6", "thm8", "to-brace"])
    p.add_argument("ref", nargs="?", help="thm6, thm8, p3fixture, file.json (or an action after thm6/thm8)")
    p.add_argument("poly", nargs="?", help="polynomial for nf, e.g. 'x*y*y + y'")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("suite", parents=[common], help="acceptance suite")
    p.add_argument("name", choices=["paper"])
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = args.func(args)
    except SystemExit as e:
        if isinstance(e.code, str):
            parser.print_usage(sys.stderr)
            print(f"ybe: error: {e.code}", file=sys.stderr)
            return 2
        raise
    except (YBEError, ValueError, OSError) as e:
        print(f"ybe: error: {e}", file=sys.stderr)
        return 2
    for r in reports:
        lines = r.lines() if args.verbose or len(r.parts) <= 12 else r.lines()[:1] + [
            line for p in r.parts for line in p.lines(1)[:1]]
        print("\n".join(lines))
    if args.json:
        Path(args.json).write_text(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
