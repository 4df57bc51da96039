"""Command line entry point: ``mutau <subcommand> ...``.

Exit codes: 0 ok, 1 input error, 2 budget exhausted, 3 internal/assertion failure.
JSON output is deterministic (sorted keys, no timestamps) and carries the
configuration, seed and tool version.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import (BudgetExceeded, CharZero, IndexOutOfRange, MutauError, NonPositiveS,
                     NonPrimeCharacteristic, NotAUnit, NotInMSquared, PolySyntaxError, RingMismatch,
                     UnknownVariable, EmptyDeformationSpace)
from .groebner import Ideal, set_default_budget
from .hfun import BoundTable, H, H_prime, fraction_str, monte_carlo_H
from .polynomial import parse_poly, parse_ring_spec

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3

INPUT_ERRORS = (PolySyntaxError, UnknownVariable, NonPrimeCharacteristic, RingMismatch,
                IndexOutOfRange, NotAUnit, NotInMSquared, CharZero, NonPositiveS,
                EmptyDeformationSpace)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for budgets here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _env_int(name, default):
    return int(os.environ.get(name, default))


def _ideal(text, ring):
    parts = [t for t in text.split(",") if t.strip()]
    if not parts:
        raise UsageError("empty generator list")
    return Ideal([parse_poly(t, ring) for t in parts], ring)


def _envelope(command, config, result, seed=None):
    return {"tool": "mutau", "version": __version__, "command": command,
            "config": config, "seed": seed, "result": result}


def _jsonable(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def dump_json(obj):
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


# -- subcommands ------------------------------------------------------------------

def cmd_invariants(args):
    from .invariants import mu_tau_report

    ring = parse_ring_spec(args.ring)
    f = parse_poly(args.poly, ring)
    rec = mu_tau_report(f, trials=args.trials, seed=args.seed, field_extension=args.field_extension,
                        bs_cap=args.bs_cap, cross_check=not args.no_cross_check, n_max=args.n_max)
    config = {"ring": ring.spec, "poly": args.poly, "trials": args.trials,
              "field_extension": args.field_extension, "bs_cap": args.bs_cap, "n_max": args.n_max,
              "cross_check": not args.no_cross_check}
    d = rec.to_dict()
    if args.format == "json":
        return dump_json(_envelope("invariants", config, d, args.seed))
    if args.format == "csv":
        keys = ["f", "ring", "mu", "tau", "mu_O", "e_tj", "e_bs", "ratio", "bound", "bound_satisfied"]
        return ",".join(keys) + "\n" + ",".join(_csv_cell(d[k]) for k in keys) + "\n"
    lines = [f"{k:>16}: {d[k]}" for k in ("f", "ring", "mu", "tau", "mu_O", "e_tj", "e_bs", "ratio",
                                            "ratio_decimal_preview", "bound", "bound_satisfied")]
    lines += [f"{'flag':>16}: {x}" for x in d["flags"]]
    return "\n".join(lines) + "\n"


def _csv_cell(v):
    s = "" if v is None else str(v)
    return f'"{s}"' if "," in s else s


def cmd_bound_table(args):
    table = BoundTable(args.n_max)
    if args.format == "csv":
        return table.to_csv()
    if args.format == "json":
        return dump_json(_envelope("bound-table", {"n_max": args.n_max}, table.to_dict()))
    return "\n".join(f"{n:>3}  {fraction_str(b):>12}  {float(b):.6f} (decimal preview)" for n, b in table.rows) + "\n"


def cmd_hfun(args):
    value = H_prime(args.s, args.d) if args.derivative else H(args.s, args.d)
    result = {"s": args.s, "d": args.d, "derivative": args.derivative, "value": value,
              "decimal_preview": f"{float(value):.6f}"}
    if args.mc:
        est = monte_carlo_H(args.s, args.d, args.mc, args.seed)
        result["monte_carlo"] = {"estimate": round(est.estimate, 6), "stderr": round(est.stderr, 6),
                                 "samples": est.samples, "within_4_stderr": est.contains(H(args.s, args.d))}
    if args.format == "json":
        config = {"s": args.s, "d": args.d, "derivative": args.derivative, "mc": args.mc}
        return dump_json(_envelope("hfun", config, result, args.seed))
    if args.format == "csv":
        return "s,d,value\n" + f"{fraction_str(args.s)},{args.d},{fraction_str(value)}\n"
    return fraction_str(value) + "\n"


def cmd_hk(args):
    from .frobenius import hk_sequence

    ring = parse_ring_spec(args.ring)
    I = _ideal(args.ideal, ring)
    seq = hk_sequence(I, args.e_max)
    if args.format == "csv":
        return seq.to_csv()
    if args.format == "json":
        config = {"ring": ring.spec, "ideal": args.ideal, "e_max": args.e_max}
        return dump_json(_envelope("hk", config, seq.to_dict()))
    return "\n".join(f"e={x.e} q={x.q} colength={x.colength} normalized={fraction_str(x.normalized)}"
                     for x in seq) + "\n"


def cmd_hs(args):
    from .frobenius import e_s_level, h_s_level

    ring = parse_ring_spec(args.ring)
    I = _ideal(args.I, ring)
    J = _ideal(args.J, ring) if args.J else I
    rows = []
    for e in range(args.e_min, args.e_max + 1):
        lvl = h_s_level(I, J, args.s, e)
        rows.append({"e": e, "q": ring.characteristic ** e, "colength": lvl.colength, "h_s": lvl.value,
                     "e_s": e_s_level(I, J, args.s, e)})
    if args.format == "csv":
        out = ["e,q,colength,h_s,e_s"]
        out += [f"{r['e']},{r['q']},{r['colength']},{fraction_str(r['h_s'])},{fraction_str(r['e_s'])}" for r in rows]
        return "\n".join(out) + "\n"
    if args.format == "json":
        config = {"ring": ring.spec, "I": args.I, "J": args.J or args.I, "s": args.s,
                  "e_min": args.e_min, "e_max": args.e_max}
        return dump_json(_envelope("hs", config, {"levels": rows, "H": H(args.s, ring.n)}))
    return "\n".join(f"e={r['e']} h_s={fraction_str(r['h_s'])} e_s={fraction_str(r['e_s'])}" for r in rows) + "\n"


def cmd_family(args):
    from .family import tau_min_experiment

    rep = tau_min_experiment(args.n, args.d, trials=args.trials, seed=args.seed, char=args.char,
                             degree_cap=args.degree_cap)
    if args.format == "csv":
        return rep.to_csv()
    summary = rep.to_dict()
    if args.format == "json":
        config = {"n": args.n, "d": args.d, "trials": args.trials, "char": args.char,
                  "degree_cap": rep.degree_cap}
        return dump_json(_envelope("family", config, summary, args.seed))
    keys = ("n", "d", "tau_min", "mu_expected", "ratio", "ratio_decimal_preview", "target",
            "normalized_tau_min", "bound", "relative_gap")
    return rep.to_csv() + "\n" + "\n".join(f"{k:>20}: {summary[k]}" for k in keys) + "\n"


def cmd_conjectures(args):
    from .conjectures import corpus_run

    rep = corpus_run(args.corpus, trials=args.trials, seed=args.seed, cap=args.cap,
                     cross_check=not args.no_cross_check, n_max=args.n_max,
                     field_extension=args.field_extension)
    if args.format == "json":
        config = {"corpus": args.corpus or "builtin", "trials": args.trials, "cap": args.cap,
                  "cross_check": not args.no_cross_check, "n_max": args.n_max,
                  "field_extension": args.field_extension}
        return dump_json(_envelope("conjectures", config, rep.to_dict(), args.seed))
    return rep.table()


def build_parser():
    p = _Parser(prog="mutau", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mutau {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, default_format="table", seed=True):
        sp.add_argument("--format", choices=["json", "csv", "table"], default=default_format)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--budget", type=_positive, default=None,
                        help="Groebner reduction-step budget (default $MUTAU_GB_BUDGET or 10^7)")
        if seed:
            sp.add_argument("--seed", type=int, default=_env_int("MUTAU_SEED", 0))

    sp = sub.add_parser("invariants", help="mu, tau, mu(O_f), e_BS and the bound check")
    sp.add_argument("poly")
    sp.add_argument("--ring", required=True, help='e.g. "char=0; vars=x,y"')
    sp.add_argument("--trials", type=_positive, default=_env_int("MUTAU_TRIALS", 8))
    sp.add_argument("--field-extension", type=_positive, default=1)
    sp.add_argument("--bs-cap", type=_positive, default=None)
    sp.add_argument("--n-max", type=_positive, default=None)
    sp.add_argument("--no-cross-check", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("bound-table", help="exact bound(n) for n = 2..N")
    sp.add_argument("n_max", type=int)
    common(sp, "csv", seed=False)
    sp.set_defaults(func=cmd_bound_table, seed=None)

    sp = sub.add_parser("hfun", help="exact H(s, d)")
    sp.add_argument("--s", type=_fraction, required=True)
    sp.add_argument("--d", type=_positive, required=True)
    sp.add_argument("--derivative", action="store_true")
    sp.add_argument("--mc", type=int, default=0, help="also run a Monte Carlo estimate with this many samples")
    common(sp)
    sp.set_defaults(func=cmd_hfun)

    sp = sub.add_parser("hk", help="Hilbert-Kunz sequence of an ideal")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--ideal", required=True, help="comma separated generators")
    sp.add_argument("--e-max", type=_natural, default=_env_int("MUTAU_E_MAX", 3))
    common(sp, "csv", seed=False)
    sp.set_defaults(func=cmd_hk, seed=None)

    sp = sub.add_parser("hs", help="finite-level h_s and e_s values")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--I", required=True)
    sp.add_argument("--J", default=None)
    sp.add_argument("--s", type=_fraction, required=True)
    sp.add_argument("--e-min", type=_natural, default=0)
    sp.add_argument("--e-max", type=_natural, default=_env_int("MUTAU_E_MAX", 3))
    common(sp, "csv", seed=False)
    sp.set_defaults(func=cmd_hs, seed=None)

    sp = sub.add_parser("family", help="tau_min over random deformations of x_1^n+...+x_d^n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--trials", type=_natural, default=_env_int("MUTAU_TRIALS", 20))
    sp.add_argument("--char", type=_natural, default=0)
    sp.add_argument("--degree-cap", type=_positive, default=None)
    common(sp, "csv")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("conjectures", help="run the conjecture harness on a corpus")
    sp.add_argument("corpus", nargs="?", default=None, help="corpus file (default: built-in corpus)")
    sp.add_argument("--trials", type=_positive, default=_env_int("MUTAU_TRIALS", 4))
    sp.add_argument("--cap", type=_positive, default=None)
    sp.add_argument("--n-max", type=_positive, default=None)
    sp.add_argument("--no-cross-check", action="store_true")
    sp.add_argument("--field-extension", type=_positive, default=1,
                    help="draw char-p units from F_{p^k}; char-0 rings ignore it")
    common(sp)
    sp.set_defaults(func=cmd_conjectures)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help(sys.stderr)
            return EXIT_INPUT
        set_default_budget(args.budget)
        try:
            text = args.func(args)
        finally:
            set_default_budget(None)
    except UsageError as exc:
        print(f"mutau: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"mutau: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except INPUT_ERRORS as exc:
        print(f"mutau: input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"mutau: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MutauError, AssertionError, ArithmeticError) as exc:
        print(f"mutau: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
