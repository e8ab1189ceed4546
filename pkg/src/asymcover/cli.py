"""Command-line surface: bound, construct, verify, table, exact, linear.

Exit codes: 0 success, 1 usage or argument error, 2 verification failure,
3 budget exceeded (a bracket was returned instead of an exact value).
Every command takes --json for machine-readable output on stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import codefiles
from .bounds import BoundRecord, Budget, best_bounds
from .constructions import (
    PatchedCode,
    diagonal_code,
    direct_sum,
    general_upper_code,
    greedy_code,
    inductive_power2,
    random_code_nu,
    semi_direct_sum,
)
from .cube import Code, covers, level_profile, uncovered, weight
from .exact import exact_kplus
from .ipsolve import BudgetExceededError
from .linear import (
    RADIUS_MAX_N,
    a_code,
    asym_covering_radius,
    code_covering_radius,
    is_self_complementary,
    min_linear_dim,
)
from .table import CACHE_ENV, TableSpec, build_grid, render_table

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad arguments; remap that to the usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="base PRNG seed")
    common.add_argument("--time-limit", type=float, default=None, help="seconds per exact solve")
    common.add_argument("--node-limit", type=int, default=None, help="search node cap")
    common.add_argument("--workers", type=int, default=1, help="parallel cells for table")
    common.add_argument("--cache", default=None, help="bounds cache file (table)")
    return common


def _add_budget_flags(sub: argparse.ArgumentParser, exact_default: bool) -> None:
    sub.add_argument("--ip", action=argparse.BooleanOptionalAction, default=True,
                     help="use the covering integer program for lower bounds")
    sub.add_argument("--greedy", action=argparse.BooleanOptionalAction, default=True,
                     help="use greedy cover for upper bounds")
    sub.add_argument("--exact", action=argparse.BooleanOptionalAction, default=exact_default,
                     help="run exact search on small cells")
    sub.add_argument("--nu-seeds", type=int, default=0,
                     help="number of randomized-construction seeds to try")


def _budget(args) -> Budget:
    return Budget(
        use_ip=args.ip,
        use_greedy=args.greedy,
        use_exact=args.exact,
        exact_time_limit=args.time_limit if args.time_limit is not None else 60.0,
        exact_node_limit=args.node_limit,
        nu_seeds=args.nu_seeds,
        seed=args.seed,
    )


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _record_payload(rec: BoundRecord) -> dict:
    return {
        "n": rec.n,
        "R": rec.R,
        "lower": rec.lower,
        "upper": rec.upper,
        "lower_tag": rec.lower_tag,
        "upper_tag": rec.upper_tag,
        "exact": rec.exact,
    }


def _render_bound(rec: BoundRecord) -> str:
    if rec.R == 0 or rec.R >= rec.n:
        return str(rec.lower)
    if rec.exact:
        return f"{rec.lower} [{rec.lower_tag}/{rec.upper_tag}]"
    return f"{rec.lower}-{rec.upper} [{rec.lower_tag}/{rec.upper_tag}]"


def cmd_bound(args) -> int:
    rec = best_bounds(args.n, args.r, _budget(args))
    _emit(args, _record_payload(rec), _render_bound(rec))
    return EXIT_OK


def _build_construction(args) -> Code:
    method = args.method
    if method == "diagonal":
        _need(args, "n", "coradius")
        return diagonal_code(args.n, args.coradius)
    if method == "general":
        _need(args, "n", "coradius")
        return general_upper_code(args.n, args.coradius)
    if method == "greedy":
        _need(args, "n", "r")
        return greedy_code(args.n, args.r)
    if method == "nu-random":
        _need(args, "n", "r")
        return random_code_nu(args.n, args.r, args.seed)
    if method == "power2":
        _need(args, "m", "r")
        return inductive_power2(args.m, args.r, args.seed, args.trials)
    if method == "directsum":
        _need(args, "in1", "in2")
        c1 = codefiles.load_code(args.in1)
        c2 = codefiles.load_code(args.in2)
        if c1.r is None or c2.r is None:
            raise ValueError("directsum inputs must carry radius annotations")
        return direct_sum(c1, c2)
    if method == "semidirect":
        _need(args, "s_in", "t_in", "code_in", "r")
        s = codefiles.load_code(args.s_in)
        t = codefiles.load_code(args.t_in)
        inner = codefiles.load_code(args.code_in)
        if inner.r is None:
            inner = Code.from_words(inner.n, inner.words, r=args.r)
        patched = PatchedCode(n=s.n, R=args.r, S=s, T=t, delta=Fraction(args.delta))
        if not patched.is_valid():
            raise _VerificationFailure(
                "patch invalid: some vertex is neither covered by S nor in T"
            )
        return semi_direct_sum(patched, inner)
    raise ValueError(f"unknown construction method {method!r}")


class _VerificationFailure(Exception):
    pass


def _need(args, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError(f"method {args.method!r} requires {', '.join(missing)}")


def cmd_construct(args) -> int:
    try:
        code = _build_construction(args)
    except _VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if code.r is None or not covers(code, code.r):
        print("verification failure: construction does not cover", file=sys.stderr)
        return EXIT_VERIFY
    codefiles.save_code(args.out, code, fmt=args.format)
    payload = {"size": len(code), "n": code.n, "r": code.r, "path": args.out}
    _emit(args, payload, f"{len(code)} words (n={code.n}, R={code.r}) -> {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = codefiles.load_code(args.file)
    radius_claim = args.r if args.r is not None else code.r
    profile = level_profile(code)
    zeros = sum(code.n - weight(w) for w in code.words)
    ones = sum(weight(w) for w in code.words)
    payload = {
        "n": code.n,
        "size": len(code),
        "level_profile": list(profile),
        "zeros_total": zeros,
        "ones_total": ones,
    }
    lines = [
        f"size: {len(code)}",
        f"level profile: {' '.join(map(str, profile))}",
        f"zeros total: {zeros}",
        f"ones total: {ones}",
    ]
    if code.n <= RADIUS_MAX_N:
        rad = code_covering_radius(code)
        payload["radius"] = None if rad == float("inf") else rad
        lines.append(f"radius: {rad if rad != float('inf') else 'inf'}")
    ok = True
    if radius_claim is not None:
        ok = covers(code, radius_claim)
        payload["r"] = radius_claim
        payload["covers"] = ok
        if ok:
            lines.append(f"covers: true (R={radius_claim})")
        else:
            misses = len(uncovered(code, radius_claim))
            payload["uncovered"] = misses
            lines.append(f"covers: false (R={radius_claim}), {misses} uncovered")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_table(args) -> int:
    cache = args.cache or os.environ.get(CACHE_ENV)
    spec = TableSpec(
        n_min=args.n_min,
        n_max=args.n_max,
        r_min=args.r_min,
        r_max=args.r_max,
        budget=_budget(args),
        cache_path=cache,
    )
    grid = build_grid(spec, workers=args.workers)
    if args.json:
        payload = {
            f"{n},{R}": _record_payload(rec) for (n, R), rec in sorted(grid.items())
        }
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(render_table(grid, spec))
    return EXIT_OK


def cmd_exact(args) -> int:
    def progress(lower, incumbent, nodes):
        print(f"progress: lower {lower}, incumbent {incumbent}, nodes {nodes}", file=sys.stderr)

    res = exact_kplus(
        args.n,
        args.r,
        time_limit=args.time_limit if args.time_limit is not None else 600.0,
        node_limit=args.node_limit,
        on_progress=progress,
    )
    print(f"nodes: {res.nodes}, elapsed: {res.elapsed:.2f}s", file=sys.stderr)
    if args.out:
        codefiles.save_code(args.out, res.witness)
    payload = {
        "n": res.n,
        "R": res.R,
        "status": res.status,
        "value": res.value,
        "bracket": list(res.bracket) if res.bracket else None,
        "witness_size": len(res.witness),
        "nodes": res.nodes,
        "elapsed": res.elapsed,
    }
    if res.status == "exact":
        _emit(args, payload, str(res.value))
        return EXIT_OK
    lo, hi = res.bracket
    _emit(args, payload, f"{lo}-{hi} (bracket)")
    return EXIT_BUDGET


def cmd_linear(args) -> int:
    k = min_linear_dim(args.n, args.r)
    code = a_code(args.n, args.r)
    rad = asym_covering_radius(code)
    verified = rad <= args.r
    agrees = None
    if args.exhaustive:
        found = min_linear_dim(args.n, args.r, exhaustive=True)
        agrees = found == k
        headline = (
            f"k+ = {k} (exhaustive agrees)"
            if agrees
            else f"k+ = {k} (exhaustive found {found})"
        )
    else:
        headline = f"k+ = {k}"
    basis = " ".join(codefiles.word_to_bits(g, args.n) for g in code.generators)
    lines = [
        headline,
        f"basis: {basis}",
        f"covering radius: {rad} (<= R: {str(verified).lower()})",
        f"self-complementary: {str(is_self_complementary(code)).lower()}",
    ]
    payload = {
        "n": args.n,
        "R": args.r,
        "k_plus": k,
        "dim": code.dim,
        "basis": [codefiles.word_to_bits(g, args.n) for g in code.generators],
        "covering_radius": rad if rad != float("inf") else None,
        "self_complementary": is_self_complementary(code),
        "exhaustive_agrees": agrees,
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if verified and agrees is not False else EXIT_VERIFY


def build_parser() -> _Parser:
    common = _common_flags()
    parser = _Parser(prog="asymcover", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("bound", parents=[common], help="best bounds for one cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _add_budget_flags(p, exact_default=False)
    p.set_defaults(func=cmd_bound)

    p = subs.add_parser("construct", parents=[common], help="build and save a code")
    p.add_argument(
        "--method",
        required=True,
        choices=["diagonal", "directsum", "semidirect", "greedy", "nu-random", "power2", "general"],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--coradius", type=int)
    p.add_argument("--m", type=int, help="power2 exponent: the cube is Q_{2^m}")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--delta", default="0", help="patch weight for semidirect, e.g. 1/4")
    p.add_argument("--in1", help="first directsum input file")
    p.add_argument("--in2", help="second directsum input file")
    p.add_argument("--s-in", dest="s_in", help="semidirect covering part S")
    p.add_argument("--t-in", dest="t_in", help="semidirect patch part T")
    p.add_argument("--code-in", dest="code_in", help="semidirect inner code")
    p.add_argument("--out", required=True, help="output code file")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("verify", parents=[common], help="check a code file")
    p.add_argument("file", help="code file (json or plain text)")
    p.add_argument("--r", type=int, default=None, help="radius to verify at")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("table", parents=[common], help="bound table over a grid")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--r-min", type=int, default=1)
    p.add_argument("--r-max", type=int, default=6)
    _add_budget_flags(p, exact_default=True)
    p.set_defaults(func=cmd_table)

    p = subs.add_parser("exact", parents=[common], help="exact K+(n,R) by search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out", default=None, help="write the witness code here")
    p.set_defaults(func=cmd_exact)

    p = subs.add_parser("linear", parents=[common], help="minimum-dimension linear cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="confirm by subspace enumeration (n <= 6)")
    p.set_defaults(func=cmd_linear)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
