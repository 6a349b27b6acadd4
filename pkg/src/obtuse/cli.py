"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis
from .core import DegenerateBasis, InvariantViolation, format_basis, read_basis, write_basis
from .enumeration import NotObtuse, default_threads
from .generate import KINDS, gen
from .oracle import DimensionTooLarge, brute_force_svp
from .pipeline import EnumOptions, parse_method, run_pipeline

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


def _radius(text: str) -> float | None:
    if text == "auto":
        return None
    r = float(text)
    if not r > 0:
        raise argparse.ArgumentTypeError("radius must be positive")
    return r


def _enum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--radius", type=_radius, default=None, metavar="auto|FLOAT",
                   help="search radius (default: shortest basis vector)")
    p.add_argument("--sign-restricted", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--profile", default="none", metavar="none|linear|FILE",
                   help="per-level radii: none, linear, or a file with one radius per level")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $OBTUSE_THREADS or 1)")
    p.add_argument("--node-budget", type=int, default=None)


def _enum_opts(args) -> EnumOptions:
    return EnumOptions(args.radius, args.sign_restricted, args.profile,
                       args.threads if args.threads is not None else default_threads(),
                       args.node_budget)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="obtuse", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a random basis")
    p.add_argument("--kind", choices=KINDS, default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reduce", help="reduce a basis")
    p.add_argument("basis")
    p.add_argument("--method", default="auto",
                   help="comma list of auto, signflip, obtuse, lll (e.g. lll,obtuse)")
    p.add_argument("--delta", type=Fraction, default=Fraction(99, 100))
    p.add_argument("--allow-sublattice", action="store_true")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enum", help="shortest vector by enumeration")
    p.add_argument("basis")
    _enum_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="brute-force ground truth")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("svp")
    q.add_argument("basis")
    q.add_argument("--json", action="store_true")

    p = sub.add_parser("stats", help="volume model values")
    ssub = p.add_subparsers(dest="what", required=True)
    q = ssub.add_parser("good-fraction")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--radius", type=float, required=True)
    q.add_argument("--json", action="store_true")

    p = sub.add_parser("run", help="generate, reduce and enumerate in one seeded pipeline")
    p.add_argument("--kind", choices=KINDS, default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", default="lll,auto")
    p.add_argument("--delta", type=Fraction, default=Fraction(99, 100))
    p.add_argument("--allow-sublattice", action="store_true")
    p.add_argument("--no-enum", action="store_true")
    _enum_args(p)
    p.add_argument("--json", action="store_true")
    return ap


def _emit(obj: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    B = gen(args.kind, args.n, args.bound, args.seed)
    if args.out:
        write_basis(args.out, B)
    _emit({"kind": args.kind, "n": args.n, "bound": args.bound, "seed": args.seed,
           "basis": B.tolist()}, args.json, "" if args.out else format_basis(B))
    return EXIT_OK


def cmd_reduce(args) -> int:
    B = read_basis(args.basis)
    rep, out = run_pipeline(B, parse_method(args.method), delta=args.delta,
                            allow_sublattice=args.allow_sublattice, source={"file": args.basis})
    if args.out:
        write_basis(args.out, out)
    for step in rep.steps:
        if not step["success"]:
            print(f"warning: {step['method']} did not succeed", file=sys.stderr)
    _emit(rep.to_dict(), args.json, "" if args.out else format_basis(out))
    return EXIT_OK


def cmd_enum(args) -> int:
    B = read_basis(args.basis)
    rep, _ = run_pipeline(B, [], enum=_enum_opts(args), source={"file": args.basis})
    e = rep.enum
    text = (f"norm_sq {e['norm_sq']}\ncoeffs {' '.join(map(str, e['coeffs']))}\n"
            f"vector {' '.join(map(str, e['vector']))}\nnodes {e['stats']['total_nodes']}\n"
            if e["found"] else f"no vector within radius\nnodes {e['stats']['total_nodes']}\n")
    _emit(rep.to_dict(), args.json, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    B = read_basis(args.basis)
    res = brute_force_svp(B)
    obj = {"lambda1_sq": res.lambda1_sq, "witnesses": [list(w) for w in res.witnesses],
           "box_bound": list(res.box_bound), "overflow": res.overflow}
    lines = [f"lambda1_sq {res.lambda1_sq}"] + [" ".join(map(str, w)) for w in res.witnesses]
    _emit(obj, args.json, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    d, R = args.dim, args.radius
    obj = {"dim": d, "radius": R,
           "exact": analysis.good_fraction_exact(d, R),
           "asymptotic": analysis.good_fraction_asymptotic(d, R)}
    _emit(obj, args.json, f"exact {obj['exact']:.10g}\nasymptotic {obj['asymptotic']:.10g}\n")
    return EXIT_OK


def cmd_run(args) -> int:
    B = gen(args.kind, args.n, args.bound, args.seed)
    src = {"kind": args.kind, "bound": args.bound, "basis": B.tolist()}
    rep, _ = run_pipeline(B, parse_method(args.method), delta=args.delta,
                          allow_sublattice=args.allow_sublattice,
                          enum=None if args.no_enum else _enum_opts(args),
                          seed=args.seed, source=src)
    if args.json:
        print(rep.to_json())
    else:
        methods = ",".join(s["method"] for s in rep.steps) or "none"
        print(f"steps {methods}")
        print(f"obtuse {rep.output['is_obtuse']} max_coeff_bits {rep.output['max_coeff_bits']}")
        if rep.enum is not None:
            print(f"norm_sq {rep.enum['norm_sq']} nodes {rep.enum['stats']['total_nodes']}")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "reduce": cmd_reduce, "enum": cmd_enum,
            "oracle": cmd_oracle, "stats": cmd_stats, "run": cmd_run}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, ValueError, DegenerateBasis, NotObtuse, DimensionTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
