"""``fuzzycover`` command line.

Exit codes: 0 ok, 1 failed check (selftest, ``--roundtrip``, Hom equality),
2 domain or kind violation, 3 I/O failure, 4 parse failure, 5 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .category import CONVERSIONS, convert, enumerate_hom_set, inverse_name, validate_family
from .exceptions import BudgetExceeded, DomainError, KindError, ParseError
from .figures import figure
from .geometry import DEFAULT_TOL
from .serialization import family_to_dict, load_family, morphism_to_dict
from .transforms import MapId
from .verification import run_all

EXIT_OK, EXIT_CHECK, EXIT_DOMAIN, EXIT_IO, EXIT_PARSE, EXIT_BUDGET = range(6)

# category each functor expects on its source side and produces on its target side
FUNCTOR_CATEGORIES = {
    "F": ("partition", "covering"),
    "G": ("covering", "partition"),
    "C_EPS": ("covering", "covering"),
    "D_EPS": ("covering", "covering"),
    "FN": ("covering", "partition"),
    "GN": ("partition", "covering"),
}


def _tolerance(text):
    v = float(text)
    if not v >= 0.0:
        raise argparse.ArgumentTypeError("tolerance must be >= 0")
    return v


def _budget(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("budget must be >= 1")
    return v


def _map_name(text):
    key = text.upper()
    if key not in CONVERSIONS and key not in MapId.__members__:
        raise argparse.ArgumentTypeError(f"unknown map or functor {text!r}")
    return key


def _globals(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=_tolerance, default=default(DEFAULT_TOL),
                        help="absolute slack for membership tests (default 1e-9)")
    parser.add_argument("--seed", type=int, default=default(42), help="sampling seed (default 42)")
    parser.add_argument("--budget", type=_budget, default=default(10**6),
                        help="maximum Hom-set candidates to enumerate (default 1e6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzycover",
        description="Convert, check and enumerate fuzzy coverings and fuzzy partitions.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="apply a functor, object bijection or map to a family")
    p.add_argument("input")
    p.add_argument("--map", required=True, type=_map_name,
                   help="F, G, C_EPS, D_EPS, FN, GN, F1..G3, or a map id such as PSI1")
    p.add_argument("--eps", type=float, help="homothety factor for C_EPS / D_EPS / *_EPS")
    p.add_argument("--roundtrip", action="store_true",
                   help="also apply the inverse and require the input back within tol")
    p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("verify", help="print the validation report of a family")
    p.add_argument("input")

    p = sub.add_parser("hom", help="enumerate the Hom-set between two families")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--category", required=True, choices=("covering", "partition"))
    p.add_argument("--check-functor", type=str.upper, choices=sorted(FUNCTOR_CATEGORIES),
                   help="compare with the Hom-set between the images under this functor")
    p.add_argument("--eps", type=float, help="factor for --check-functor C_EPS / D_EPS")
    p.add_argument("--out")

    p = sub.add_parser("figure", help="write an SVG drawing of the regions")
    p.add_argument("--case", required=True, choices=("n2", "n3"))
    p.add_argument("--out", help="SVG file (default: stdout)")

    p = sub.add_parser("selftest", help="run every verification suite")
    p.add_argument("--out", help="also write the full JSON report here")

    for child in sub.choices.values():
        _globals(child, suppress=True)
    return parser


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(doc):
    return json.dumps(doc, indent=1) + "\n"


def cmd_convert(args):
    fam = load_family(args.input)
    out = convert(args.map, fam, eps=args.eps, tol=args.tol)
    if args.roundtrip:
        inv, inv_eps = inverse_name(args.map, args.eps)
        back = convert(inv, out, eps=inv_eps, tol=args.tol)
        err = float(np.max(np.abs(back.membership - fam.membership)))
        if err > args.tol:
            print(f"round trip through {inv} is off by {err:.3e} (tol {args.tol:g})", file=sys.stderr)
            return EXIT_CHECK
        print(f"round trip through {inv}: max error {err:.3e}", file=sys.stderr)
    _emit(_json(family_to_dict(out)), args.out)
    return EXIT_OK


def cmd_verify(args):
    fam = load_family(args.input)
    report = validate_family(fam, args.tol)
    sys.stdout.write(_json({"kind": fam.kind, **report.to_dict()}))
    return EXIT_OK if report.satisfies(fam.kind) else EXIT_DOMAIN


def cmd_hom(args):
    src, dst = load_family(args.src), load_family(args.dst)
    homs = enumerate_hom_set(src, dst, args.category, tol=args.tol, budget=args.budget)
    doc = {"cardinality": len(homs), "morphisms": [morphism_to_dict(m, src) for m in homs]}
    status = EXIT_OK
    if args.check_functor:
        name = args.check_functor
        need, target = FUNCTOR_CATEGORIES[name]
        if need != args.category:
            raise KindError(f"{name} acts on the {need} category, not on {args.category}")
        image = enumerate_hom_set(convert(name, src, eps=args.eps, tol=args.tol),
                                  convert(name, dst, eps=args.eps, tol=args.tol),
                                  target, tol=args.tol, budget=args.budget)
        equal = image == homs
        doc["functor"] = name
        doc["image_cardinality"] = len(image)
        doc["equality"] = "equal" if equal else "different"
        status = EXIT_OK if equal else EXIT_CHECK
    _emit(_json(doc), args.out)
    return status


def cmd_figure(args):
    _emit(figure(args.case), args.out)
    return EXIT_OK


def _summary(result):
    d = result.details
    if "printed_inverse_max_deviation" in d:
        dev = max(d["printed_inverse_max_deviation"].values())
        return f"printed closed-form inverse deviates by up to {dev:.3e} from the composition"
    if "error" in d:
        return d["error"]
    if d.get("failures"):
        f = d["failures"][0]
        return f"{len(d['failures'])} failing cases, first: {f['pair']} n={f['n']}"
    return ""


def cmd_selftest(args):
    results = run_all(seed=args.seed, tol=args.tol)
    for r in results:
        note = _summary(r)
        print(r.line() + (f"  {note}" if note else ""))
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} suites passed")
    if args.out:
        doc = [{"suite": r.name, "passed": r.passed, "details": r.details} for r in results]
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, default=str)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_CHECK


COMMANDS = {
    "convert": cmd_convert,
    "verify": cmd_verify,
    "hom": cmd_hom,
    "figure": cmd_figure,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DomainError, KindError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
