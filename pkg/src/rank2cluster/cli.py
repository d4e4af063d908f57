"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (the first output line is
"<ErrorName>: <message>"), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import cluster, diophantine, dvector, invariants
from .errors import ClusterError
from .parser import format_pair, parse_ratfunc, print_canonical


def _pair_json(pair) -> list[str]:
    return [print_canonical(pair[0]), print_canonical(pair[1])]


def _emit(args, text_lines: Sequence[str], payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- commands ----------------------------------------------------------------------


def cmd_mutate(args) -> int:
    seeds = cluster.walk(args.word, args.m, args.n)
    word = cluster.parse_word(args.word)
    lines, rows = [], []
    for i, seed in enumerate(seeds):
        prefix = "".join(map(str, word[:i]))
        lines.append(f"{prefix or '-'} t{seed.position}: {format_pair(seed.cluster)}")
        rows.append(
            {
                "word": prefix,
                "position": seed.position,
                "sign": seed.exchange.sign,
                "cluster": _pair_json(seed.cluster),
                "dvectors": [list(d) for d in seed.dvectors()],
            }
        )
    _emit(args, lines, {"m": args.m, "n": args.n, "seeds": rows})
    return 0


def cmd_clusters(args) -> int:
    res = cluster.enumerate_clusters(args.m, args.n, args.max_steps)
    lines = [format_pair(c) for c in res.labeled_clusters]
    lines.append(f"period: {res.period if res.period is not None else 'none'}")
    _emit(
        args,
        lines,
        {
            "m": args.m,
            "n": args.n,
            "period": res.period,
            "clusters": [_pair_json(c) for c in res.labeled_clusters],
        },
    )
    return 0


def cmd_dvectors(args) -> int:
    if args.closed_form:
        table = dvector.closed_form_table(args.m, args.n, args.k_max)
    else:
        table = dvector.dvectors_recurrence(args.m, args.n, args.k_max)
    lines = [f"t{p}: d1=({a.d1}, {a.d2}) d2=({b.d1}, {b.d2})" for p, (a, b) in table.items()]
    payload = {str(p): [list(a), list(b)] for p, (a, b) in table.items()}
    _emit(args, lines, {"m": args.m, "n": args.n, "positions": payload})
    return 0


def cmd_verify(args) -> int:
    T = parse_ratfunc(args.expr)
    ok = invariants.verify_invariant(T, args.m, args.n)
    _emit(args, [f"invariant: {'true' if ok else 'false'}"], {"expr": print_canonical(T), "invariant": ok})
    return 0


def parse_phi(text: str) -> invariants.SymmetricCombiner | None:
    """mean | power_sum:K[:SCALE] | elementary:K[:SCALE]; None stands for the mean."""
    parts = text.split(":")
    kind = parts[0]
    if kind == "mean":
        return None
    if kind not in ("power_sum", "elementary") or len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"bad --phi {text!r}")
    try:
        index = int(parts[1])
        scale = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --phi {text!r}") from None
    return invariants.SymmetricCombiner(kind, index, scale)


def cmd_construct(args) -> int:
    F = parse_ratfunc(args.F)
    phi = args.phi
    if phi is None:
        phi = invariants.SymmetricCombiner.mean(len(invariants.cluster_list(args.m, args.n)))
    T = invariants.construct_invariant(args.m, args.n, F, phi)
    text = print_canonical(T)
    is_const = T.is_constant()
    status = "constant" if is_const else ("invariant" if invariants.verify_invariant(T, args.m, args.n) else "not invariant")
    _emit(args, [text, f"status: {status}"], {"invariant": text, "status": status})
    return 0


def _search_one(job):
    m, n, s, t = job
    return (s, t, [print_canonical(c.value) for c in invariants.search_laurent_invariants(m, n, s, t)])


def cmd_search(args) -> int:
    s_range = [args.s] if args.s else range(1, args.s_max + 1)
    t_range = [args.t] if args.t else range(1, args.t_max + 1)
    jobs = [(args.m, args.n, s, t) for s in s_range for t in t_range]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_search_one, jobs))
    else:
        results = [_search_one(j) for j in jobs]
    lines = []
    for s, t, basis in results:
        lines.append(f"s={s} t={t} dim={len(basis)}")
        lines.extend(f"  {b}" for b in basis)
    payload = [{"s": s, "t": t, "basis": basis} for s, t, basis in results]
    _emit(args, lines, {"m": args.m, "n": args.n, "results": payload})
    return 0


def cmd_decompose(args) -> int:
    T = parse_ratfunc(args.expr)
    if args.half:
        g = invariants.decompose_half_invariant(T)
        text = g.format(("X", "Y"))
    else:
        g = invariants.decompose_a1a1(T)
        text = g.format(("X1", "X2"))
    _emit(args, [text], {"expr": print_canonical(T), "G": text})
    return 0


def _equation(args) -> diophantine.DioEquation:
    if args.preset:
        return diophantine.preset(args.preset)
    if not args.expr or args.m is None or args.n is None:
        raise UsageError("give --preset, or --expr with --m and --n")
    a, b = _parse_int_pair(args.initial)
    return diophantine.DioEquation.build(parse_ratfunc(args.expr), args.m, args.n, (a, b))


def cmd_dio_solve(args) -> int:
    eq = _equation(args)
    orbit = diophantine.enumerate_orbit(eq, args.bound)
    state = "closed" if orbit.closed else f"pruned at bound {args.bound}"
    lines = [f"solutions: {len(orbit.nodes)} (orbit {state})"]
    for node in orbit.nodes:
        pair = f"({node.pair[0]},{node.pair[1]})"
        lines.append(f"{node.word or '-'} {pair}" if args.words else pair)
    payload = {
        "level": str(eq.level),
        "bound": args.bound,
        "closed": orbit.closed,
        "solutions": [node.to_json() for node in orbit.nodes],
    }
    _emit(args, lines, payload)
    return 0


def cmd_dio_certify(args) -> int:
    eq = _equation(args)
    cert = diophantine.certify_completeness(eq, args.bound, args.threads)
    lines = [
        f"verdict: {cert.verdict}",
        f"orbit: {len(cert.orbit.nodes)} ({'closed' if cert.orbit.closed else 'pruned at bound'})",
        f"brute-force: {len(cert.brute)}",
    ]
    if cert.missing:
        lines.append("missing: " + " ".join(f"({a},{b})" for a, b in cert.missing))
    if cert.extra:
        lines.append("extra: " + " ".join(f"({a},{b})" for a, b in cert.extra))
    payload = {
        "verdict": cert.verdict,
        "complete": cert.complete,
        "closed": cert.orbit.closed,
        "bound": args.bound,
        "orbit": [node.to_json() for node in cert.orbit.nodes],
        "brute_force": [list(p) for p in cert.brute],
        "missing": [list(p) for p in cert.missing],
        "extra": [list(p) for p in cert.extra],
    }
    _emit(args, lines, payload)
    return 0


def cmd_descent(args) -> int:
    rep = diophantine.check_descent((args.a, args.b))
    lines = [
        f"branch: {rep.branch}",
        f"mu1: ({rep.mutated1[0]},{rep.mutated1[1]})",
        f"mu2: ({rep.mutated2[0]},{rep.mutated2[1]})",
        f"descent: {'true' if rep.holds else 'false'}",
    ]
    payload = {
        "pair": list(rep.pair),
        "branch": rep.branch,
        "mu1": list(rep.mutated1),
        "mu2": list(rep.mutated2),
        "holds": rep.holds,
        "failures": rep.failures,
    }
    _emit(args, lines, payload)
    return 0


def cmd_equivalence(args) -> int:
    rep = cluster.check_mutation_maction_equivalence(args.m, args.n, args.k_max)
    lines = [f"equivalent: {'true' if rep.ok else 'false'}", f"checked: {rep.checked}"]
    if rep.counterexample:
        lines.append("counterexample: " + json.dumps(rep.counterexample, sort_keys=True))
    _emit(args, lines, {"equivalent": rep.ok, "checked": rep.checked, "counterexample": rep.counterexample})
    return 0


def parse_matrix(text: str):
    try:
        rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
        return cluster.as_matrix(rows)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad matrix {text!r}: {exc}") from None


def cmd_imr_check(args) -> int:
    rep = cluster.check_imr(args.matrix, args.depth)
    lines = [f"imr: {'true' if rep.holds else 'false'}", f"depth: {rep.depth}"]
    if rep.witness:
        lines.append("witness: " + "".join(map(str, rep.witness)))
    payload = {"imr": rep.holds, "depth": rep.depth, "witness": list(rep.witness) if rep.witness else None}
    _emit(args, lines, payload)
    return 0


# -- argument parsing --------------------------------------------------------------


class UsageError(Exception):
    pass


def _parse_int_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.strip("()").split(","))
    except ValueError:
        raise UsageError(f"expected a pair like 1,1, got {text!r}") from None
    return a, b


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _word(text: str) -> str:
    if any(ch not in "12" for ch in text):
        raise argparse.ArgumentTypeError("words use only the digits 1 and 2")
    return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    mn = argparse.ArgumentParser(add_help=False)
    mn.add_argument("--m", type=_nonneg, required=True)
    mn.add_argument("--n", type=_nonneg, required=True)

    parser = _Parser(prog="rank2cluster", description="Rank-2 cluster algebras, invariants and their Diophantine equations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mutate", parents=[common, mn], help="apply a mutation word to the initial seed")
    p.add_argument("--word", type=_word, required=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("clusters", parents=[common, mn], help="labeled clusters and period")
    p.add_argument("--max-steps", type=_positive, default=64)
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("dvectors", parents=[common, mn], help="d-vector table")
    p.add_argument("--k-max", type=_positive, default=10)
    p.add_argument("--closed-form", action="store_true", help="use the closed forms (mn >= 4); k-max counts pairs of positions")
    p.set_defaults(func=cmd_dvectors)

    p = sub.add_parser("verify", parents=[common, mn], help="check mutation invariance")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common, mn], help="invariant from a symmetric combiner and F")
    p.add_argument("--F", dest="F", required=True)
    p.add_argument("--phi", dest="phi_text", default="mean", help="mean | power_sum:K[:SCALE] | elementary:K[:SCALE]")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", parents=[common, mn], help="bounded-degree Laurent invariant search")
    p.add_argument("--s", type=_positive)
    p.add_argument("--t", type=_positive)
    p.add_argument("--s-max", type=_positive, default=3)
    p.add_argument("--t-max", type=_positive, default=3)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("decompose", parents=[common], help="write an A1xA1 invariant as G(x1 + 2/x1, x2 + 2/x2)")
    p.add_argument("--expr", required=True)
    p.add_argument("--half", action="store_true", help="one-variable f(x) = g(x + 2/x)")
    p.set_defaults(func=cmd_decompose)

    dio = argparse.ArgumentParser(add_help=False)
    dio.add_argument("--preset", choices=diophantine.PRESET_NAMES)
    dio.add_argument("--expr")
    dio.add_argument("--m", type=_nonneg)
    dio.add_argument("--n", type=_nonneg)
    dio.add_argument("--initial", default="1,1")
    dio.add_argument("--bound", type=_positive, required=True)

    p = sub.add_parser("dio-solve", parents=[common, dio], help="solutions reachable by mutation")
    p.add_argument("--words", action="store_true", help="show the mutation word of each solution")
    p.set_defaults(func=cmd_dio_solve)

    p = sub.add_parser("dio-certify", parents=[common, dio], help="compare the orbit with a brute-force scan")
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_dio_certify)

    p = sub.add_parser("imr-check", parents=[common], help="matrices reachable by mutation are +-B")
    p.add_argument("--matrix", type=parse_matrix, required=True, help='rows separated by ";", entries by ","')
    p.add_argument("--depth", type=_positive, default=8)
    p.set_defaults(func=cmd_imr_check)

    p = sub.add_parser("descent", parents=[common], help="descent inequalities for x2^4+x1^2+2x1+1 = 5x1x2^2")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)
    p.set_defaults(func=cmd_descent)

    p = sub.add_parser("equivalence", parents=[common, mn], help="mutations against M-actions")
    p.add_argument("--k-max", type=_nonneg, default=4)
    p.set_defaults(func=cmd_equivalence)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "phi_text", None) is not None:
        try:
            args.phi = parse_phi(args.phi_text)
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ClusterError as exc:
        print(f"{exc.code}: {exc}")
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
