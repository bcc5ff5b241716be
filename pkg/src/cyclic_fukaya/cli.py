"""Command-line front end: ``verify``, ``potential`` and ``cp2-mirror``.

Exit codes: 0 when every case passes, 1 on a verification failure, 2 on a
usage or data error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .errors import UnknownSuite
from .jsonio import fiber_from_json, load_document, points_from_json, polytope_from_json
from .mirror import cp2_mirror_report
from .novikov import NovikovScalar, RingConfig, as_fraction
from .potential import MCPoint, apply_tau, compute_gamma, weak_mc_check
from .report import Report, judged
from .suites import SUITES, run_suite
from .toric import cho_oh_classes

_Y_RE = re.compile(r"^\s*(?P<c>[^*T]*?)\s*(?:\*?\s*T(?:\^\(?(?P<e>-?\d+(?:/\d+)?)\)?)?)?\s*$")


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def parse_cutoff(text: str) -> Fraction:
    try:
        value = as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("cutoff must be positive")
    return value


def parse_coordinate(text: str) -> NovikovScalar:
    """``c``, ``T^e``, ``c*T^e`` or ``cT`` with ``c`` a Python complex literal and ``e`` rational."""
    m = _Y_RE.match(text)
    if not m or (not m.group("c") and "T" not in text):
        raise argparse.ArgumentTypeError(f"cannot parse coordinate {text!r}")
    c = m.group("c").strip()
    coeff = complex(c.strip("()")) if c else 1
    if "T" not in text:
        return NovikovScalar.const(coeff)
    e = Fraction(m.group("e")) if m.group("e") else Fraction(1)
    return NovikovScalar.monomial(coeff, e)


def _config(args, default_n: int | None = None) -> RingConfig:
    n = args.n if args.n is not None else (default_n or 3)
    return RingConfig(cutoff=args.cutoff, tol=args.tol, n=n)


def _emit(report: Report, args) -> int:
    if getattr(args, "out", None):
        with open(args.out, "w") as f:
            f.write(report.to_json())
    print(report.summary_line())
    for case in report.canonical().failures[:20]:
        print(f"  {case.status.upper()} {case.id}: deviation {case.deviation} {case.detail}")
    return report.exit_code


def cmd_verify(args) -> int:
    cfg = _config(args)
    n_values = [args.n] if args.n is not None else None
    report = run_suite(args.suite, cfg, args.seed, n_values, args.implicit_identity)
    return _emit(report, args)


def cmd_potential(args) -> int:
    doc = load_document(args.source)
    cfg = _config(args, doc.get("n"))
    if "facets" in doc:
        alg = cho_oh_classes(polytope_from_json(doc))
    else:
        alg = fiber_from_json(doc)
    if args.y:
        y = [parse_coordinate(t) for t in args.y.split(",")]
        if len(y) != alg.rank:
            raise ValueError(f"--y needs {alg.rank} coordinates, got {len(y)}")
        pt = MCPoint.at(y)
    else:
        pts = points_from_json(doc)
        pt = pts[0] if pts else MCPoint.at([NovikovScalar.one()] * alg.rank)
    if args.tau:
        gamma = compute_gamma(alg.classes, cfg)
        pt = apply_tau(pt, gamma, cfg, times=args.tau)
    verdict = weak_mc_check(alg, pt, cfg)
    print(f"W = {verdict.W}")
    print(f"weak MC: {'yes' if verdict.ok else 'no'}"
          + ("" if verdict.ok else f" (non-unit coordinates {list(verdict.offending)})"))
    report = Report("potential", config={"source": args.source, "n": cfg.n,
                                         "cutoff": str(cfg.cutoff), "tol": cfg.tol,
                                         "tau": args.tau or 0})
    report.cases.append(judged("weak-mc", 0.0 if verdict.ok else 1.0, cfg.tol,
                               lhs=json.dumps(verdict.W.to_json()), detail=str(verdict.W)))
    return _emit(report, args)


def cmd_cp2_mirror(args) -> int:
    return _emit(cp2_mirror_report(args.samples, args.seed, args.tol), args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="divisibility n (zeta = e^(pi i/n))")
    common.add_argument("--cutoff", type=parse_cutoff, default=Fraction(2), help="energy cutoff NUM/DEN")
    common.add_argument("--tol", type=float, default=1e-9, help="coefficient tolerance")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", default=None, help="write the JSON report here")

    p = argparse.ArgumentParser(prog="cyclic-fukaya", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=f"one of {', '.join(SUITES)}")
    v.add_argument("--implicit-identity", type=parse_bool, default=True, metavar="BOOL",
                   help="include F_{1,0} = id in f (default true)")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("potential", parents=[common], help="evaluate W at a point")
    q.add_argument("source", help="polytope/fiber JSON file or built-in dataset name")
    q.add_argument("--y", default=None, help="comma-separated coordinates, e.g. '1,2*T^1/3'")
    q.add_argument("--tau", type=int, nargs="?", const=1, default=0, metavar="COUNT",
                   help="apply the cyclic action COUNT times first (default 1)")
    q.set_defaults(func=cmd_potential)

    m = sub.add_parser("cp2-mirror", parents=[common], help="check the complete CP^2 mirror")
    m.add_argument("--samples", type=int, default=1000)
    m.set_defaults(func=cmd_cp2_mirror)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
