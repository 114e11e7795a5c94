"""Command-line entry point: ``petaluma <subcommand> ...``.

Exit status: 0 success, 1 usage or input error, 2 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import PetalumaError
from .invariants import (
    STRATEGIES,
    alexander_polynomial,
    c2_from_alexander,
    invariants_of,
    kauffman_jones,
    linking_number,
)
from .io import (
    ResultRecord,
    dumps,
    format_perm,
    load_fixture,
    parse_link,
    parse_pd,
    parse_perm,
    persist_result,
)
from .moves import AdjacentSwap, error_decomposition, smooth, swap_effect
from .petal_model import petal_to_diagram
from .petalize import petalize_detailed
from .sampling import (
    c2_histogram_exhaustive,
    coupling_procedure,
    distribution_experiment,
    lemma_experiment,
    lo_bound,
    lo_brute_force,
)

log = logging.getLogger("petaluma")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")
    common.add_argument(
        "--results",
        metavar="PATH",
        help="results log (default $PETALUMA_RESULTS or ./petaluma-results.ndjson)",
    )
    common.add_argument(
        "--save", action="store_true", help="append this result to the results log"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = _Parser(prog="petaluma", description="Random petal knots: invariants, moves, experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="<command>", parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="Δ and c2 of a petal permutation")
    p.add_argument("perm", help='heights literal, e.g. "(1,3,5,2,4)"')
    p.add_argument("--jones", action="store_true", help="also compute the Jones polynomial")
    p.add_argument("--strategy", choices=STRATEGIES, help="c2 algorithm (default by size)")

    p = sub.add_parser("lk", parents=[common], help="linking number of a petal link")
    p.add_argument("link", help='link literal "(h1,...,hk; m,n)"')

    p = sub.add_parser("smooth", parents=[common], help="smooth the crossing of heights t, t+1")
    p.add_argument("perm")
    p.add_argument("t", type=int)

    p = sub.add_parser("swap-report", parents=[common], help="c2 change of disjoint adjacent swaps")
    p.add_argument("perm")
    p.add_argument("swaps", nargs="+", type=int, help="t values of the swaps (t t+1)")
    p.add_argument("--order", type=_ints, help="application order as comma-separated indices")

    p = sub.add_parser("petalize", parents=[common], help="petal permutation of a PD diagram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", metavar="FILE", help="PD code file ('-' for stdin)")
    src.add_argument("--fixture", help="bundled fixture name, e.g. 3_1 or granny")
    p.add_argument("--variant", choices=("tree", "simple"), default="tree")
    p.add_argument("--verify", action="store_true", help="check Δ, c2 and Jones against the input")

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive c2 histogram over S_p")
    p.add_argument("--p", type=int, required=True, help="odd petal count (at most 9)")
    p.add_argument("--csv", metavar="FILE", help="also write value,count CSV")

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo c2 / lk distributions")
    p.add_argument("--kind", choices=("c2_knot", "lk_link"), required=True)
    p.add_argument("--n", type=int, required=True, help="knot: p = 2n+1; link: second size")
    p.add_argument("--m", type=int, help="link: first size (default n)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="enumerate instead of sampling")
    p.add_argument("--out", metavar="FILE", help="write the report as JSON")
    p.add_argument("--csv", metavar="FILE", help="write the histogram as value,count CSV")

    p = sub.add_parser("lemma", parents=[common], help="bad-event frequency of a lemma")
    p.add_argument("which", choices=("match", "cycle", "swaps"))
    p.add_argument(
        "params", nargs="+", metavar="KEY=VALUE", help="match: m n; cycle: N K; swaps: n k"
    )
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("couple", parents=[common], help="trace one run of the swap coupling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=_ints, help="comma-separated check numbers")

    p = sub.add_parser("lo", parents=[common], help="Littlewood-Offord brute force")
    p.add_argument("a", type=_floats, help="comma-separated non-zero reals")
    return parser


# -- subcommands -------------------------------------------------------------------------------


def _emit(args, human: str, payload) -> None:
    print(dumps(payload) if args.json else human)


def cmd_invariants(args):
    perm = parse_perm(args.perm)
    rep = invariants_of(perm, strategy=args.strategy, with_jones=args.jones)
    lines = [f"perm: {format_perm(perm)}", f"Delta: {rep.delta}", f"c2: {rep.c2}"]
    if rep.jones is not None:
        lines.append(f"Jones: {rep.jones}")
    payload = {**rep.to_json(perm.heights), "strategy": rep.strategy}
    _emit(args, "\n".join(lines), payload)
    return {"perm": args.perm, "jones": args.jones}, payload, EXIT_OK


def cmd_lk(args):
    link = parse_link(args.link)
    lk = linking_number(link)
    _emit(args, f"lk: {lk}", {"link": str(link), "lk": lk})
    return {"link": args.link}, {"lk": lk}, EXIT_OK


def cmd_smooth(args):
    perm = parse_perm(args.perm)
    s = smooth(perm, args.t)
    h = s.link.heights
    first, second = h[: 2 * s.m], h[2 * s.m :]
    lk = linking_number(s.link)
    payload = {
        "m": s.m,
        "n": s.link.n,
        "first": list(first),
        "second": list(second),
        "merged_side": s.merged_side,
        "lk": lk,
    }
    human = (
        f"m={s.m} n={s.link.n}\n"
        f"link: ({','.join(map(str, first))} | {','.join(map(str, second))})\n"
        f"lk: {lk}"
    )
    _emit(args, human, payload)
    return {"perm": args.perm, "t": args.t}, payload, EXIT_OK


def cmd_swap_report(args):
    perm = parse_perm(args.perm)
    if len(args.swaps) == 1:
        eff = swap_effect(perm, args.swaps[0])
        payload = {
            "t": eff.t, "eps": eff.epsilon, "lk": eff.lk, "delta_c2": eff.delta_c2, "holds": eff.holds,
        }
        human = (
            f"swap ({eff.t} {eff.t + 1}): eps={eff.epsilon} lk={eff.lk} "
            f"delta_c2={eff.delta_c2} identity={'ok' if eff.holds else 'FAILS'}"
        )
        _emit(args, human, payload)
        return {"perm": args.perm, "swaps": args.swaps}, payload, EXIT_OK
    rep = error_decomposition(perm, [AdjacentSwap(t) for t in args.swaps], args.order)
    payload = rep.to_json()
    lines = [f"swap ({t} {t + 1}): eps={e} lk={lk}" for t, e, lk in rep.terms]
    lines.append(f"delta_c2={rep.delta_c2} residual={rep.residual} (k={rep.k})")
    _emit(args, "\n".join(lines), payload)
    return {"perm": args.perm, "swaps": args.swaps, "order": args.order}, payload, EXIT_OK


def cmd_petalize(args):
    if args.fixture:
        d = load_fixture(args.fixture)
    else:
        text = sys.stdin.read() if args.pd == "-" else Path(args.pd).read_text()
        d = parse_pd(text)
    res = petalize_detailed(d, args.variant)
    payload = {
        "perm": list(res.perm.heights),
        "p": res.perm.p,
        "crossings": res.crossings,
        "factors": [list(f.heights) for f in res.factors],
    }
    lines = [f"perm: {format_perm(res.perm)}", f"petals: {res.perm.p} (crossings {res.crossings})"]
    code = EXIT_OK
    if args.verify:
        out = petal_to_diagram(res.perm)
        din, dout = alexander_polynomial(d), alexander_polynomial(out)
        checks = {
            "delta": din == dout,
            "c2": c2_from_alexander(din) == c2_from_alexander(dout),
        }
        if args.variant == "tree":  # the simple curve has no length guarantee
            checks["length"] = res.perm.p <= max(1, 2 * d.n_crossings - 1)
        if d.n_crossings <= 40:
            jin, jout = kauffman_jones(d), kauffman_jones(out)
            checks["jones"] = jout == jin
            checks["jones_up_to_mirror"] = jout in (jin, jin.invert_variable())
        payload["verify"] = checks
        lines += [f"{k}: {'ok' if v else 'FAIL'}" for k, v in checks.items()]
        if not all(v for k, v in checks.items() if k != "jones"):
            code = EXIT_VERIFY
    _emit(args, "\n".join(lines), payload)
    source = args.fixture or args.pd
    return {"source": source, "variant": args.variant, "verify": args.verify}, payload, code


def cmd_enumerate(args):
    if args.p < 1 or args.p % 2 == 0:
        raise UsageError(f"--p must be odd and positive, got {args.p}")
    hist = c2_histogram_exhaustive(args.p)
    if args.csv:
        Path(args.csv).write_text(hist.to_csv())
    total = hist.total
    lines = [f"S_{args.p}: {total} permutations", "c2\tcount\tfraction"]
    lines += [f"{v}\t{c}\t{c / total:.6f}" for v, c in sorted(hist.counts.items())]
    payload = hist.to_json()
    _emit(args, "\n".join(lines), payload)
    return {"p": args.p}, payload, EXIT_OK


def cmd_sample(args):
    if args.kind == "c2_knot":
        sizes = 2 * args.n + 1
        params = {"kind": args.kind, "n": args.n}
    else:
        m = args.m if args.m is not None else args.n
        sizes = (m, args.n)
        params = {"kind": args.kind, "m": m, "n": args.n}
    if args.samples < 1 and not args.exhaustive:
        raise UsageError("--samples must be positive")
    rep = distribution_experiment(
        args.kind, sizes, args.samples, args.seed, args.threads, args.exhaustive
    )
    params.update(
        samples=args.samples, seed=args.seed, threads=args.threads, exhaustive=args.exhaustive
    )
    payload = {**rep.to_json(), "hash": rep.histogram.content_hash()}
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.csv:
        Path(args.csv).write_text(rep.histogram.to_csv())
    lo, hi = rep.ci
    human = "\n".join(
        [
            f"{args.kind} {params}",
            f"trials: {rep.trials}  distinct values: {len(rep.histogram.counts)}",
            f"max point mass: {rep.freq:.5f}  99% CI [{lo:.5f}, {hi:.5f}]",
            f"bound: {rep.bound:.5f}  verdict: {rep.verdict}",
            f"hash: {payload['hash']}",
        ]
    )
    _emit(args, human, payload)
    code = EXIT_VERIFY if rep.verdict == "violated" else EXIT_OK
    return params, payload, code


def _kv(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected KEY=VALUE, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError as exc:
            raise UsageError(f"{key} must be an integer") from exc
    return out


def cmd_lemma(args):
    params = _kv(args.params)
    try:
        rep = lemma_experiment(args.which, params, args.trials, args.seed, args.threads)
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc}") from exc
    lo, hi = rep.ci
    human = (
        f"{args.which} {params}: bad events {rep.count}/{rep.trials} = {rep.freq:.5f} "
        f"(99% CI [{lo:.5f}, {hi:.5f}]), bound {rep.bound:.5f}, verdict {rep.verdict}"
    )
    payload = rep.to_json()
    _emit(args, human, payload)
    code = EXIT_VERIFY if rep.verdict == "violated" else EXIT_OK
    return {"which": args.which, **params, "trials": args.trials, "seed": args.seed}, payload, code


def cmd_couple(args):
    tr = coupling_procedure(args.n, args.seed)
    payload = tr.to_json()
    human = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, human, payload)
    code = EXIT_OK if tr.degradation_ok() else EXIT_VERIFY
    return {"n": args.n, "seed": args.seed}, payload, code


def cmd_verify(args):
    from .acceptance import run_all

    echo = None if args.json else print
    results = run_all(args.only, echo=echo)
    payload = {"checks": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    if args.json:
        print(dumps(payload))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    timing_free = {"checks": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]}
    return {"only": args.only}, timing_free, EXIT_OK if payload["passed"] else EXIT_VERIFY


def cmd_lo(args):
    best = lo_brute_force(args.a)
    bound = lo_bound(len(args.a))
    payload = {"t": len(args.a), "max_count": best, "bound": bound, "ok": best <= bound}
    _emit(args, f"max interval count {best} (bound C({len(args.a)},{len(args.a) // 2}) = {bound})", payload)
    return {"a": args.a}, payload, EXIT_OK if best <= bound else EXIT_VERIFY


COMMANDS = {
    "invariants": cmd_invariants,
    "lk": cmd_lk,
    "smooth": cmd_smooth,
    "swap-report": cmd_swap_report,
    "petalize": cmd_petalize,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "lemma": cmd_lemma,
    "couple": cmd_couple,
    "verify": cmd_verify,
    "lo": cmd_lo,
}
# experiments are always logged; quick lookups only with --save
ALWAYS_SAVE = {"enumerate", "sample", "lemma", "couple", "verify"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        params, payload, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"petaluma {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PetalumaError, ValueError, OSError) as exc:
        print(f"petaluma {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.save or args.command in ALWAYS_SAVE:
        try:
            persist_result(ResultRecord(args.command, params, payload), args.results)
        except OSError as exc:
            print(f"petaluma: could not write results log: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
