"""Command-line front end: problem files in, exact JSON artifacts out.

Exit codes: 0 success/split, 1 I/O error, 2 precondition violated,
3 algebra does not split (certificate printed), 4 non-generic Galois
action, 5 internal budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .errors import (DescentError, FactorizationTooHard, NonGenericAction,
                     NoRealSplitFound, NoZeroDivisorFound, PrecisionExhausted,
                     ReconstructionFailed)

EXIT_IO = 1
EXIT_PRECONDITION = 2
EXIT_NONSPLIT = 3
EXIT_NONGENERIC = 4
EXIT_BUDGET = 5


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_cubic(args) -> int:
    from .pipeline import run_cubic
    problem = jsonio.DescentProblem.from_dict(jsonio.load_json(args.problem))
    if args.override_basis:
        data = jsonio.load_json(args.override_basis)
        problem.overrides["basis_L"] = [[jsonio.rat_in(x) for x in v]
                                        for v in data["basis_L"]]
    if args.override_triv:
        data = jsonio.load_json(args.override_triv)
        problem.overrides["trivialization"] = jsonio.matrices_in(
            data["trivialization"])
    sign = {"+1": 1, "-1": -1, "auto": "auto"}[args.weil_sign]
    result = run_cubic(problem, seed=args.seed, precision=args.precision,
                       weil_sign=sign, emit_stages=args.emit_stages)
    print(jsonio.dumps(result.report))
    return 0 if result.split else EXIT_NONSPLIT


def cmd_trivialize(args) -> int:
    from .csa import trivialize
    alg = jsonio.structure_constants_in(jsonio.load_json(args.constants))
    res = trivialize(alg, seed=args.seed, precision_bits=args.precision)
    if res.split:
        ok = res.verify_structure(alg)
        print(jsonio.dumps({"status": "split",
                            "verified": ok,
                            "matrices": [jsonio.matrix_out(m)
                                         for m in res.matrices]}))
        return 0
    print(jsonio.dumps({"status": "nonsplit",
                        "max_order_discriminant": str(res.max_order_disc)}))
    return EXIT_NONSPLIT


def cmd_maxorder(args) -> int:
    from .csa import integral_order_from_algebra, maximal_order
    from .factorint import factor_integer
    alg = jsonio.structure_constants_in(jsonio.load_json(args.constants))
    start = integral_order_from_algebra(alg)
    omax = maximal_order(alg, start)
    print(jsonio.dumps({
        "start_discriminant": str(factor_integer(start.discriminant())),
        "max_order_discriminant": str(factor_integer(omax.discriminant()))
        if omax.discriminant() != 1 else "1",
        "basis": jsonio.matrix_out(omax.rows),
    }))
    return 0


def cmd_gamma(args) -> int:
    from .etale import gamma_count
    if args.generators:
        data = jsonio.load_json(args.generators)
        gens = data["generators"]
        n = int(data.get("n", args.n))
    else:
        return _fail(EXIT_IO, "gamma needs a generators file")
    gg = gamma_count(n, gens)
    print(jsonio.dumps({"n": gg.n, "gamma": gg.gamma_order,
                        "partial_gamma": gg.partial_gamma_order,
                        "mu_n_R": gg.mu_n_R_order,
                        "torsion": gg.torsion_order,
                        "w1_kernel": gg.w1_kernel_order}))
    return 0


def cmd_twodescent(args) -> int:
    from .twodescent import two_descent_equations
    data = jsonio.load_json(args.problem)
    f2 = jsonio.poly_in(data["f2"])
    alpha = jsonio.poly_in(data["alpha"])
    eqs = two_descent_equations(f2, alpha, jsonio.rat_in(data["b"]))
    print(jsonio.dumps({
        "quadric1": [jsonio.rat_out(x) for x in eqs.quadric1],
        "quadric2": [jsonio.rat_out(x) for x in eqs.quadric2],
        "conic": [jsonio.rat_out(x) for x in eqs.conic],
        "monomials": "u0u0,u0u1,u0u2,u0u3,u1u1,u1u2,u1u3,u2u2,u2u3,u3u3",
        "conic_in_pencil": eqs.conic_in_pencil(),
    }))
    return 0


def cmd_invariants(args) -> int:
    cubic = jsonio.cubic_in(jsonio.load_json(args.cubic))
    print(jsonio.dumps(jsonio.cubic_out(cubic)))
    return 0


def cmd_localsol(args) -> int:
    from .cubic import locally_soluble
    cubic = jsonio.cubic_in(jsonio.load_json(args.cubic))
    out = {}
    for p in args.primes:
        key = p
        val = locally_soluble(cubic, p if p == "real" else int(p))
        out[key] = val
    print(jsonio.dumps({"soluble": out}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="threedescent",
        description="exact 3-descent: Selmer elements to plane cubics")
    ap.add_argument("--precision", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cubic", help="full pipeline: problem file to cubic")
    p.add_argument("problem")
    p.add_argument("--override-basis")
    p.add_argument("--override-triv")
    p.add_argument("--weil-sign", choices=["+1", "-1", "auto"], default="auto")
    p.add_argument("--emit-stages")
    p.set_defaults(func=cmd_cubic)

    p = sub.add_parser("trivialize", help="split a structure-constant algebra")
    p.add_argument("constants")
    p.set_defaults(func=cmd_trivialize)

    p = sub.add_parser("maxorder", help="maximal order of a structure-constant algebra")
    p.add_argument("constants")
    p.set_defaults(func=cmd_maxorder)

    p = sub.add_parser("gamma", help="Gamma-group orders for a mod-n Galois image")
    p.add_argument("generators")
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("twodescent", help="2-descent quadrics and conic")
    p.add_argument("problem")
    p.set_defaults(func=cmd_twodescent)

    p = sub.add_parser("invariants", help="c4, c6, disc, j of a ternary cubic")
    p.add_argument("cubic")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("localsol", help="local solubility of a ternary cubic")
    p.add_argument("cubic")
    p.add_argument("primes", nargs="+")
    p.set_defaults(func=cmd_localsol)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as ex:
        return _fail(EXIT_IO, str(ex))
    except (KeyError, ValueError) as ex:
        return _fail(EXIT_IO, f"malformed input: {ex!r}")
    except NonGenericAction as ex:
        return _fail(EXIT_NONGENERIC, str(ex))
    except (PrecisionExhausted, FactorizationTooHard, NoZeroDivisorFound,
            NoRealSplitFound, ReconstructionFailed) as ex:
        return _fail(EXIT_BUDGET, str(ex))
    except DescentError as ex:
        return _fail(EXIT_PRECONDITION, str(ex))


if __name__ == "__main__":
    sys.exit(main())
