"""Command-line front end.

JSON results go to stdout; diagnostics to stderr.  Exit codes: 0 success,
1 mathematical precondition failure (structured error JSON on stdout),
2 parse/usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import biquadratic, cubic, elimination, lattice
from .domains import GF, QQ, ZZ
from .errors import ParseError, TriformsError
from .matrices import Mat3, act_ternary, mat3_from_json
from .poly import MultiPoly, parse_poly, poly_from_json
from .suites import SUITE_NAMES, SuiteConfig, run_suite


def _emit(data) -> None:
    json.dump(data, sys.stdout, sort_keys=True, separators=(",", ":"))
    sys.stdout.write("\n")


def _read_form(path: str, mod: int | None = None) -> MultiPoly:
    text = Path(path).read_text().strip()
    if text.startswith("{"):
        f = poly_from_json(text)
    else:
        f = parse_poly(text)
    if mod is not None:
        if f.domain == QQ:
            f = f.map_domain(GF(mod))
        elif f.domain == ZZ:
            f = f.reduce_mod_p(mod)
    return f


def _read_matrix(path: str, domain) -> Mat3:
    return mat3_from_json(Path(path).read_text(), domain)


def _parse_prime_set(text: str) -> set[int]:
    if not text.strip():
        return set()
    return {int(tok) for tok in text.split(",") if tok.strip()}


def _cmd_disc(args) -> int:
    f = _read_form(args.form, args.mod)
    if args.mod is not None or args.raw:
        raw = elimination.resultant_of_partials(f)
        report = {
            "raw": str(raw),
            "degree_check": 3 * (f.homogeneous_degree() - 1) ** 2,
        }
        if args.mod is not None:
            report["mod"] = args.mod
        _emit(report)
        return 0
    report = elimination.discriminant(f, normalize=True)
    _emit(report.to_json_dict())
    return 0


def _cmd_good_reduction(args) -> int:
    f = _read_form(args.form)
    s = _parse_prime_set(args.s_set)
    bad, cofactor = elimination.bad_primes(f, s, args.trial_bound)
    _emit(
        {
            "s_set": sorted(s),
            "bad_primes_outside_s": sorted(bad),
            "unfactored_cofactor": str(cofactor),
            "good_reduction_outside_s": not bad and cofactor == 1,
        }
    )
    return 0


def _cmd_act(args) -> int:
    f = _read_form(args.form, args.mod)
    gamma = _read_matrix(args.gamma, f.domain)
    if args.rep == "vn":
        result = act_ternary(gamma, f)
        _emit({"result": str(result)})
    else:
        cls = biquadratic.act_22(gamma, biquadratic.canonicalize(f))
        _emit({"result": str(cls.rep), "canonical": True})
    return 0


def _cmd_cubic_invariants(args) -> int:
    f = _read_form(args.form)
    i_val, j_val = cubic.cubic_invariants(f)
    raw = elimination.resultant_of_partials(f)
    kappa_checked = 4 * Fraction(i_val) ** 3 - Fraction(j_val) ** 2 == cubic.KAPPA * Fraction(raw)
    _emit(
        {
            "I": str(i_val),
            "J": str(j_val),
            "delta_IJ": str(cubic.delta_from_invariants(i_val, j_val)),
            "kappa_checked": kappa_checked,
        }
    )
    return 0


def _parse_tuple(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(tok) for tok in text.split(",") if tok.strip())


def _cmd_tuple_equiv(args) -> int:
    weights = tuple(int(w) for w in args.weights.split(","))
    t1 = cubic.InvariantTuple(_parse_tuple(args.t1), weights)
    t2 = cubic.InvariantTuple(_parse_tuple(args.t2), weights)
    s = _parse_prime_set(args.s_set)
    witness = cubic.tuples_equivalent(t1, t2, s)
    if witness is None:
        _emit({"equivalent": False})
    else:
        _emit(
            {
                "equivalent": True,
                "alpha_candidates": [str(a) for a in witness.alpha_candidates],
                "alpha_power_d": str(witness.alpha_power_d),
                "d": witness.d,
                "s_unit": witness.s_unit,
            }
        )
    return 0


def _cmd_canonicalize(args) -> int:
    f = _read_form(args.form, args.mod)
    cls = biquadratic.canonicalize(f)
    _emit({"canonical": str(cls.rep), "is_zero_class": cls.is_zero()})
    return 0


def _cmd_covariants(args) -> int:
    f = _read_form(args.form, args.mod)
    cls = biquadratic.canonicalize(f)
    out = {}
    if args.which in ("x", "both"):
        out["sextic_x"] = str(biquadratic.covariant_x_ternary(cls))
    if args.which in ("z", "both"):
        out["sextic_z"] = str(biquadratic.covariant_z_ternary(cls))
    _emit(out)
    return 0


def _cmd_branch_check(args) -> int:
    f = _read_form(args.form, args.mod)
    report = biquadratic.branch_locus_report(biquadratic.canonicalize(f))
    _emit(report.to_json_dict())
    return 0


def _cmd_generic(args) -> int:
    f = _read_form(args.form)
    generic = biquadratic.is_generic_mod_p(biquadratic.canonicalize(f), args.mod)
    _emit({"prime": args.mod, "generic": generic})
    return 0


def _cmd_lattice_enum(args) -> int:
    candidates = lattice.enumerate_isometry_candidates()
    out = {
        "count": len(candidates),
        "candidates": [c.to_json_dict() for c in candidates],
    }
    if args.box:
        box = lattice.brute_force_box(args.box)
        in_box = {
            c.entries
            for c in candidates
            if all(abs(v) <= args.box for row in c.entries for v in row)
        }
        out["box"] = {
            "bound": args.box,
            "count": len(box),
            "agrees_with_enumeration": {c.entries for c in box} == in_box,
        }
    _emit(out)
    return 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite,
        seed=args.seed,
        trials=args.trials,
        domain=args.domain,
        primes=tuple(int(p) for p in args.primes.split(",") if p.strip()),
        degree=args.degree,
    )
    report = run_suite(cfg)
    _emit(report)
    return 0 if report["all_pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triforms",
        description="Exact invariant-theory computations for ternary and (2,2) forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disc", help="discriminant of a ternary form")
    p.add_argument("--form", required=True)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--raw", action="store_true", help="skip normalization")
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("good-reduction", help="bad primes of a ternary form")
    p.add_argument("--form", required=True)
    p.add_argument("--s-set", default="")
    p.add_argument("--trial-bound", type=int, default=100_000)
    p.set_defaults(func=_cmd_good_reduction)

    p = sub.add_parser("act", help="apply a matrix to a form")
    p.add_argument("--form", required=True)
    p.add_argument("--gamma", required=True, help="JSON row-major 9-array file")
    p.add_argument("--rep", choices=("vn", "v22"), default="vn")
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("cubic-invariants", help="degree 4 and 6 invariants of a cubic")
    p.add_argument("--form", required=True)
    p.set_defaults(func=_cmd_cubic_invariants)

    p = sub.add_parser("tuple-equiv", help="weighted equivalence of invariant tuples")
    p.add_argument("--t1", required=True)
    p.add_argument("--t2", required=True)
    p.add_argument("--weights", default="4,6")
    p.add_argument("--s-set", default="")
    p.set_defaults(func=_cmd_tuple_equiv)

    p = sub.add_parser("canonicalize", help="canonical (2,2)-class representative")
    p.add_argument("--form", required=True)
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(func=_cmd_canonicalize)

    p = sub.add_parser("covariants", help="sextic covariants of a (2,2) class")
    p.add_argument("--form", required=True)
    p.add_argument("--which", choices=("x", "z", "both"), default="both")
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(func=_cmd_covariants)

    p = sub.add_parser("branch-check", help="exhaustive branch-locus scan mod p")
    p.add_argument("--form", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=_cmd_branch_check)

    p = sub.add_parser("generic", help="good-shape test of a (2,2) class mod p")
    p.add_argument("--form", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=_cmd_generic)

    p = sub.add_parser("lattice-enum", help="isometry candidates of the rank-2 pairing")
    p.add_argument("--box", type=int, default=None, help="brute-force cross-check bound")
    p.set_defaults(func=_cmd_lattice_enum)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--domain", default="QQ")
    p.add_argument("--primes", default="11")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; report order is fixed")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except TriformsError as exc:
        _emit({"error": {"kind": exc.kind, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
