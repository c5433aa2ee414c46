"""Command-line front end.

Exit status: 0 on success, 1 on numeric or domain failures (one
``error: <Kind>: <message>`` line on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bounds, cardinal, harness, stepsize, stripquad
from .cardinal import InterpolationPlan, Rule
from .stepsize import StepRuleInput

RULE_CHOICES = [r.value for r in Rule if r is not Rule.MANUAL]


def fmt(v: Optional[float]) -> str:
    """Scientific notation with 10 significant digits; ``nan`` for missing values."""
    if v is None:
        return "nan"
    return f"{v:.9e}"


def _params(pairs: Sequence[str]) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise argparse.ArgumentTypeError(f"expected k=v, got {item!r}")
        out[key.strip()] = float(value)
    return out


def _entry(args) -> harness.RegistryEntry:
    return harness.get_entry(args.fn, **_params(args.params))


def _add_fn(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fn", required=True, choices=sorted(harness.REGISTRY),
                   help="registry function")
    p.add_argument("--params", nargs="*", default=[], metavar="K=V",
                   help="function parameters, e.g. a=3 for ex1")


def _add_rule(p: argparse.ArgumentParser, manual: bool = False) -> None:
    choices = RULE_CHOICES + (["manual"] if manual else [])
    p.add_argument("--rule", required=True, choices=choices)


def _strip_norm_for_cli(entry, d, n1):
    if n1 is not None:
        return n1
    declared = harness._strip_norm_for(entry, d, harness.StripNormMode.DECLARED, 1e-8)
    if declared is not None:
        return declared
    return stripquad.strip_norm(entry.complex_target(d), 1e-8)


def cmd_interp(args) -> int:
    entry = _entry(args)
    d = args.d if args.d is not None else entry.default_strip.half_width
    rule = Rule.parse(args.rule)
    n1 = _strip_norm_for_cli(entry, d, args.n1) if rule is Rule.W_OPTIMIZED else args.n1
    pred = harness.resolve_step(entry, rule, args.n, d, n1, args.h)
    plan = InterpolationPlan(args.n, pred.h, rule)
    ip = cardinal.sample(entry.evaluator(), plan)
    if args.grid:
        x = cardinal.grid(plan)
        for xi, vi in zip(x, cardinal.evaluate(ip, x)):
            print(f"{fmt(xi)}\t{fmt(vi)}")
    else:
        for xi in args.x:
            print(fmt(cardinal.evaluate(ip, xi)))
    return 0


def _rule_input(args) -> StepRuleInput:
    return StepRuleInput.of(args.alpha, args.d, args.n, big_l=args.L)


def cmd_stepsize(args) -> int:
    rule = Rule.parse(args.rule)
    if rule is Rule.CLASSICAL:
        h = stepsize.h_classical(args.alpha, args.d, args.n)
    else:
        h = bounds.predicted_error(_rule_input(args), rule, args.n1).h
    print(fmt(h))
    return 0


def cmd_bound(args) -> int:
    pred = bounds.predicted_error(_rule_input(args), args.rule, args.n1)
    print(f"h\t{fmt(pred.h)}")
    print(f"E_N\t{fmt(pred.envelope)}")
    print(f"c\t{fmt(pred.c_const)}")
    return 0


def cmd_n1(args) -> int:
    entry = _entry(args)
    target = entry.complex_target(args.d)
    print(fmt(stripquad.strip_norm(target, args.tol)))
    return 0


def cmd_converge(args) -> int:
    ladder = args.ladder or (harness.FULL_LADDER if args.full_ladder else harness.TABLE_LADDER)
    cfg = harness.StudyConfig(
        _entry(args), args.rule, ladder, d_override=args.d,
        strip_norm_mode=args.strip_norm_mode, step=args.h,
    )
    rows = harness.run_study(cfg)
    delim = "\t" if args.format == "tsv" else ","
    if args.out:
        harness.write_csv(rows, args.out, delimiter=delim)
    else:
        _write_rows_stdout(rows, delim)
    return 0


def _write_rows_stdout(rows, delim: str) -> None:
    print(delim.join(harness.CSV_HEADER))
    for r in rows:
        print(delim.join([str(r.index), str(r.n_terms)]
                         + [f"{v:.6e}" for v in (r.step, r.observed_err, r.envelope, r.ratio)]))


def cmd_profile(args) -> int:
    pairs = harness.error_profile(_entry(args), args.rule, args.n, args.resolution,
                                  d=args.d, step=args.h)
    if args.out:
        harness.write_tsv(pairs, args.out)
    else:
        print("x\terr")
        for x, e in pairs:
            print(f"{x:.6e}\t{e:.6e}")
    return 0


def cmd_reproduce(args) -> int:
    which = args.table + ("-literal" if args.literal else "")
    report = harness.reproduce_table(which)
    print(report.format())
    for c in report.failures():
        print(f"cell i={c.index} {c.column}: got {c.value:.6e}, expected {c.golden:.6e} "
              f"({c.digits} significant digits)", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sincalg",
        description="Sinc interpolation of algebraically decaying functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interp", help="evaluate C_N{f,h} at points or on the error grid")
    _add_fn(p)
    p.add_argument("--n", type=int, required=True)
    _add_rule(p, manual=True)
    p.add_argument("--d", type=float)
    p.add_argument("--n1", type=float, help="strip norm N1 for w-optimized")
    p.add_argument("--h", type=float, help="step for the manual rule")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--x", type=float, action="append")
    where.add_argument("--grid", action="store_true")
    p.set_defaults(func=cmd_interp)

    for name, func, helptext in (("stepsize", cmd_stepsize, "print the step h"),
                                 ("bound", cmd_bound, "print h, E_N and c")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--d", type=float, required=True)
        p.add_argument("--n", type=int, required=True)
        _add_rule(p)
        p.add_argument("--n1", type=float, help="strip norm N1")
        p.add_argument("--L", type=float, default=1.0, help="decay constant L")
        p.set_defaults(func=func)

    p = sub.add_parser("n1", help="strip norm N1(f, D_d) by quadrature")
    _add_fn(p)
    p.add_argument("--d", type=float)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_n1)

    p = sub.add_parser("converge", help="run a convergence study")
    _add_fn(p)
    _add_rule(p, manual=True)
    p.add_argument("--ladder", type=int, nargs="+")
    p.add_argument("--full-ladder", action="store_true",
                   help="start the default ladder at N=1")
    p.add_argument("--d", type=float)
    p.add_argument("--h", type=float, help="step for the manual rule")
    p.add_argument("--strip-norm-mode", default="declared",
                   choices=[m.value for m in harness.StripNormMode])
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("profile", help="pointwise error f - C_N on [-2Nh, 2Nh]")
    _add_fn(p)
    _add_rule(p, manual=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--resolution", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--h", type=float, help="step for the manual rule")
    p.add_argument("--out", help="TSV output file (default: stdout)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("reproduce", help="diff a study against the reference table")
    p.add_argument("--table", required=True, choices=["ex2"])
    p.add_argument("--literal", action="store_true",
                   help="use the cos(2x) function at d = 0.7 instead")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "params"):
            _params(args.params)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except (ArithmeticError, ValueError, KeyError) as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
