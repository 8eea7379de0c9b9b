"""Command-line front end.

Exit codes: 0 the checked statement holds / report is clean, 1 a condition
or inequality is violated (a witness is printed), 2 input or limit error.
"""
import argparse
import json
import sys
from fractions import Fraction

from . import certificate, conditions, duality, generators, karger
from .errors import TermcutError
from .graph import cut_vector, format_graph, load_graph
from .typevec import TypeVector, induced_metric, metric_from_dict, vector_from_dict

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class Formatter:
    def __init__(self, decimal=False):
        self.decimal = decimal

    def __call__(self, x):
        if x is None:
            return "-"
        if self.decimal and isinstance(x, Fraction) and x.denominator != 1:
            return f"{x} (~{float(x):.6g})"
        return str(x)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text, out):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise TermcutError(f"{path}: invalid JSON ({exc})") from None


def cmd_cutvec(args, fmt):
    g = load_graph(args.graph)
    _write(cut_vector(g).to_json(complete=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args, fmt):
    g = load_graph(args.graph)
    beta = vector_from_dict(_load_json(args.beta))
    gamma = vector_from_dict(_load_json(args.gamma))
    res = certificate.verify_theorem1(g, beta, gamma)
    if res.status == "not laminar":
        a, b = res.witness
        print(f"premise: not laminar ({{{','.join(a)}}} crosses {{{','.join(b)}}})")
        return EXIT_VIOLATION
    if res.status == "dominance":
        (t, u), db, dg = res.witness
        print(f"premise: dominance fails at pair ({t},{u}): D_beta={fmt(db)} < D_gamma={fmt(dg)}")
        return EXIT_VIOLATION
    note = " (equality)" if res.lhs == res.rhs else ""
    word = "holds" if res.holds else "VIOLATED"
    print(f"{word}: cut(beta)={fmt(res.lhs)} >= cut(gamma)={fmt(res.rhs)}{note}")
    if res.report is not None:
        for c in res.report.checks:
            print(f"  {'ok  ' if c.passed else 'FAIL'} {c.name} {c.detail}".rstrip())
    if args.certificate:
        _write(certificate.certificate_json(g, res) + "\n", args.certificate)
    return EXIT_OK if res.holds else EXIT_VIOLATION


def cmd_count_approx(args, fmt):
    g = load_graph(args.graph)
    res = karger.verify_karger_bound(g, args.alpha)
    print(f"count={res.count} bound={res.bound} {'ok' if res.holds else 'EXCEEDED'}")
    print(f"min_cut={fmt(res.min_cut)} alpha={res.alpha} k={g.k}")
    return EXIT_OK if res.holds else EXIT_VIOLATION


def _lp_metric(args):
    if args.metric:
        return metric_from_dict(_load_json(args.metric))
    if args.beta:
        return induced_metric(vector_from_dict(_load_json(args.beta)))
    if args.graph:
        g = load_graph(args.graph)
        _, sets = karger.approximate_cuts(g, args.alpha)
        return induced_metric(TypeVector.indicator(g.terminals, sets))
    raise TermcutError("give one of --metric, --beta, or --graph")


def cmd_lp(args, fmt):
    d = _lp_metric(args)
    primal, gamma0 = duality.solve_primal(d)
    dual = duality.solve_dual(d)
    tree = karger.mst(d)
    gamma = duality.uncross_to_laminar(gamma0)
    print(f"primal={fmt(primal.value)}")
    print(f"dual={fmt(dual.value)}")
    print(f"mst={fmt(tree.cost)}")
    duality_ok = primal.value == dual.value
    sandwich = dual.value <= tree.cost <= 2 * dual.value
    print(f"strong_duality={'ok' if duality_ok else 'FAIL'} mst_within_twice_dual={'ok' if sandwich else 'FAIL'}")
    print(gamma.to_json())
    return EXIT_OK if duality_ok and sandwich else EXIT_VIOLATION


def cmd_check(args, fmt):
    pi = vector_from_dict(_load_json(args.pi), complete=True)
    rep = conditions.full_report(pi)
    if args.json:
        print(rep.to_json())
    else:
        print(rep.table())
    return EXIT_OK if rep.clean else EXIT_VIOLATION


def cmd_random(args, fmt):
    rng = generators.Rng(args.seed)
    if args.kind == "graph":
        g = generators.random_graph(rng, args.terminals, args.steiner)
        text = format_graph(g)
    elif args.kind == "laminar-gamma":
        terms = [f"t{i}" for i in range(args.terminals)]
        text = generators.random_laminar_gamma(rng, terms).to_json() + "\n"
    else:
        if not args.gamma:
            raise TermcutError("--kind dominating-beta needs --gamma")
        gamma = vector_from_dict(_load_json(args.gamma))
        text = generators.dominating_beta(rng, gamma).to_json() + "\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_chain(args, fmt):
    g = load_graph(args.graph)
    rep = karger.theorem2_chain(g, args.alpha)
    print(f"count={rep.count} bound={rep.bound} min_cut={fmt(rep.min_cut)}")
    print(f"lp={fmt(rep.primal_value)} dual={fmt(rep.dual_value)} mst={fmt(rep.mst_cost)}")
    print(f"cut(beta)={fmt(rep.cut_beta)} cut(gamma)={fmt(rep.cut_gamma)}")
    for name, ok in rep.checks.items():
        print(f"  {'ok  ' if ok else 'FAIL'} {name}")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="termcut", description="Terminal cut functions and laminar cut inequalities.")
    p.add_argument("--decimal", action="store_true", help="also show decimal approximations in text output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cutvec", help="print the terminal cut vector of a graph")
    s.add_argument("graph")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_cutvec)

    s = sub.add_parser("verify", help="check a laminar cut inequality on a graph")
    s.add_argument("graph")
    s.add_argument("beta")
    s.add_argument("gamma")
    s.add_argument("--certificate", metavar="PATH", help="write the length certificate as JSON ('-' for stdout)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("count-approx", help="count approximate terminal min-cuts")
    s.add_argument("graph")
    s.add_argument("--alpha", type=_positive_int, default=1)
    s.set_defaults(func=cmd_count_approx)

    s = sub.add_parser("lp", help="solve the packing LP and its dual for a terminal metric")
    s.add_argument("--metric")
    s.add_argument("--beta")
    s.add_argument("--graph")
    s.add_argument("--alpha", type=_positive_int, default=1)
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("check", help="run necessary-condition checks on a candidate cut vector")
    s.add_argument("pi")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("random", help="emit a seeded random instance")
    s.add_argument("--kind", choices=("graph", "laminar-gamma", "dominating-beta"), required=True)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--terminals", type=_positive_int, default=5)
    s.add_argument("--steiner", type=int, default=3)
    s.add_argument("--gamma")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("chain", help="run the approximate-cut counting argument on a graph")
    s.add_argument("graph")
    s.add_argument("--alpha", type=_positive_int, default=1)
    s.set_defaults(func=cmd_chain)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "steiner", 0) < 0 or (args.command == "random" and args.terminals < 2):
        print("error: need --terminals >= 2 and --steiner >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, Formatter(args.decimal))
    except (TermcutError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
