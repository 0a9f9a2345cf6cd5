"""Command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical identity
fails, 2 on bad input or usage.  JSON is the canonical output; the text
form is rendered from the same report.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .comparison import CompleteIntersection, verify_fundamental_triangle, fundamental_triple
from .divisor import GENERATOR_VERSION, SNCConfig, divisor_class, random_config, verify_divclass, verify_recursion
from .fgl import fgl_additive, fgl_multiplicative, multi_sum, n_series, support_decompose
from .lazard import lazard_truncation, universal_fgl
from .report import Check, Report

LAZARD_DEFAULT_CAP = 6
LAZARD_HARD_CAP = 8
FGL_CAP = 12

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env_cap() -> int | None:
    raw = os.environ.get("OKC_MAX_TRUNC")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OKC_MAX_TRUNC must be an integer, got {raw!r}") from None


def _law(name: str, trunc: int):
    if name == "mult":
        return fgl_multiplicative(trunc)
    if name == "add":
        return fgl_additive(trunc)
    if name == "universal":
        return universal_fgl(trunc)
    raise UsageError(f"unknown law {name!r}")


def cmd_lazard(args) -> Report:
    cap = _env_cap() or LAZARD_HARD_CAP
    N = args.max_degree
    if not 1 <= N <= cap:
        raise UsageError(f"--max-degree must be in 1..{cap}")
    if N > LAZARD_DEFAULT_CAP:
        print(f"warning: truncation {N} is above the desk-scale default {LAZARD_DEFAULT_CAP}", file=sys.stderr)
    L = lazard_truncation(N)
    report = Report(f"Lazard ring through degree {N}")
    report.data = {"degrees": L.to_json(), "ranks": L.ranks()}
    for piece in L.pieces.values():
        report.checks.append(
            Check(f"L_{piece.degree} torsion-free", str(list(piece.torsion)), "[]", not piece.torsion)
        )
    return report


def cmd_fgl(args) -> Report:
    cap = _env_cap() or FGL_CAP
    if not 1 <= args.trunc <= cap:
        raise UsageError(f"--trunc must be in 1..{cap}")
    F = _law(args.law, args.trunc)
    report = Report(f"{args.action} for the {F.name} law (truncation {args.trunc})")
    if args.action == "nseries":
        if args.n is None:
            raise UsageError("nseries needs -n")
        report.data = {"n": args.n, "series": str(n_series(F, args.n))}
        return report
    if not args.multiplicities:
        raise UsageError(f"{args.action} needs at least one multiplicity")
    S = multi_sum(F, args.multiplicities)
    report.data = {"multiplicities": args.multiplicities, "series": str(S)}
    if args.action == "decompose":
        report.data["G"] = {",".join(map(str, I)): str(G) for I, G in support_decompose(S).items()}
    return report


def _verify_config(D: SNCConfig) -> Report:
    out = Report(str(D))
    out.extend(verify_divclass(D))
    out.extend(verify_recursion(D))
    return out


def cmd_divclass(args) -> Report:
    if args.config:
        try:
            with open(args.config) as fh:
                configs = [SNCConfig.from_json(json.load(fh))]
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    else:
        if args.trials is None or args.trials <= 0:
            raise UsageError("give --config or a positive --trials")
        rng = random.Random(args.seed)
        configs = [random_config(rng) for _ in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_config, configs, chunksize=8))
    else:
        results = [_verify_config(D) for D in configs]
    report = Report("divisor class verification")
    for res in results:
        for c in res.checks:
            report.checks.append(Check(f"{res.title}: {c.name}", c.lhs, c.rhs, c.passed))
    verified = sum(r.passed for r in results)
    report.data = {
        "configs": len(configs),
        "verified": verified,
        "summary": f"{verified}/{len(configs)} verified",
    }
    if args.config:
        res = divisor_class(configs[0])
        report.data["contributions"] = {",".join(map(str, I)): str(c) for I, c in res.contributions.items()}
        report.data["expected"] = str(res.expected)
    else:
        report.data.update({"seed": args.seed, "generator_version": GENERATOR_VERSION})
    return report


def _parse_degree(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad multidegree {text!r}") from None


def cmd_compare(args) -> Report:
    try:
        X = CompleteIntersection.of(args.dims, [_parse_degree(b) for b in args.degrees])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    triple = fundamental_triple(X)
    report = verify_fundamental_triangle(X)
    report.data = {
        "ambient": list(X.ambient.dims),
        "degrees": [list(b) for b in X.degrees],
        "dim": X.dim,
        "CK": str(triple.ck.value),
        "theta_plus": str(triple.ch),
        "theta_times": str(triple.g),
    }
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="okc", description="Connective K-theory calculator")
    parser.add_argument("--version", action="version", version=f"okc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--json", dest="format", action="store_const", const="json")

    p = sub.add_parser("lazard", help="tabulate the truncated Lazard ring")
    p.add_argument("--max-degree", type=int, default=LAZARD_DEFAULT_CAP)
    add_format(p)
    p.set_defaults(func=cmd_lazard)

    p = sub.add_parser("fgl", help="formal group law series")
    p.add_argument("action", choices=("nseries", "multisum", "decompose"))
    p.add_argument("multiplicities", nargs="*", type=int)
    p.add_argument("--law", choices=("mult", "add", "universal"), default="mult")
    p.add_argument("--trunc", type=int, default=4)
    p.add_argument("-n", type=int)
    add_format(p)
    p.set_defaults(func=cmd_fgl)

    p = sub.add_parser("divclass", help="verify divisor classes of SNC divisors")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--config")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_divclass)

    p = sub.add_parser("compare", help="fundamental classes and their specializations")
    p.add_argument("action", choices=("fundclass",))
    p.add_argument("--dims", type=int, nargs="+", required=True)
    p.add_argument("--degrees", nargs="*", default=[], help="multidegrees such as 2 or 2,3")
    add_format(p)
    p.set_defaults(func=cmd_compare)
    return parser


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.dumps()
    if len(report.checks) > 20:
        failed = Report(report.title, [c for c in report.checks if not c.passed], report.data)
        return failed.to_text()
    return report.to_text()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    # positionals after options ("multisum --law add 2 3") are left over by argparse
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.command != "fgl" or any(not x.lstrip("-").isdigit() for x in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.multiplicities = list(args.multiplicities) + [int(x) for x in extra]
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"okc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report, args.format))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
