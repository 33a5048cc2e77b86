"""Command-line interface.

Verbs:
    verify    run the parameter grid and emit a JSON/CSV report
    classify  print the orbit table for one datum
    orbit     drill into the orbit of a single root
    gauss     print an exact Gauss-sum table for one field

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .frame import FieldDatum, enumerate_orbits, orbit_containing
from .gauss import AdditiveCharSpec, gauss_sum_exact, gauss_sum_float, normalized_gauss
from .verifier import (ConfigError, GridConfig, parse_config, render_csv,
                       render_json, run_verify)


def _prime_power(qstr: str) -> tuple:
    q = int(qstr)
    from .gauss import _prime_power_split
    return _prime_power_split(q)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tametori",
                                  description="exact verifier for tame-torus "
                                              "character identities")
    sub = top.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run the grid verifier")
    v.add_argument("--config", help="path to a key=value config file")
    v.add_argument("--out", help="output path (default: stdout)")
    v.add_argument("--format", choices=("json", "csv"), dest="fmt")
    v.add_argument("--jobs", type=int)
    v.add_argument("--max-n", type=int, dest="max_n")

    c = sub.add_parser("classify", help="orbit table for one datum")
    for flag in ("--q", "--e", "--f"):
        c.add_argument(flag, required=True)
    c.add_argument("--t", default="0")

    o = sub.add_parser("orbit", help="single-orbit drill-down")
    for flag in ("--q", "--e", "--f"):
        o.add_argument(flag, required=True)
    o.add_argument("--t", default="0")
    o.add_argument("--root", required=True, metavar="k,i")

    g = sub.add_parser("gauss", help="Gauss-sum table for F_{p^m}")
    g.add_argument("--p", required=True, type=int)
    g.add_argument("--m", required=True, type=int)
    return top


def _datum_from_args(args) -> FieldDatum:
    p, a = _prime_power(args.q)
    return FieldDatum(p, a, int(args.e), int(args.f), int(args.t))


def _cmd_verify(args) -> int:
    overrides = {}
    if args.fmt:
        overrides["fmt"] = args.fmt
    if args.jobs:
        overrides["jobs"] = args.jobs
    if args.max_n:
        overrides["max_n"] = args.max_n
    if args.out:
        overrides["out"] = args.out
    if args.config:
        with open(args.config) as fh:
            base = parse_config(fh.read())
        from dataclasses import replace
        config = replace(base, **overrides)
    else:
        config = GridConfig(**overrides)
    report = run_verify(config)
    text = render_csv(report) if config.fmt == "csv" else render_json(report)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["all_pass"] else 1


def _cmd_classify(args) -> int:
    datum = _datum_from_args(args)
    print(f"datum p={datum.p} a={datum.a} e={datum.e} f={datum.f} t={datum.t} "
          f"(n={datum.n}, c={datum.c})")
    header = f"{'rep':>12} {'kind':>16} {'alt':>12} {'size':>5} {'e_a':>4} {'f_a':>4} {'partner':>10}"
    print(header)
    for orb in enumerate_orbits(datum):
        rep = f"s^{orb.rep.k} ph^{orb.rep.i}"
        partner = "-" if orb.partner is None else f"s^{orb.partner.k} ph^{orb.partner.i}"
        print(f"{rep:>12} {orb.kind:>16} {orb.alt_class:>12} {orb.size:>5} "
              f"{orb.e_f_alpha:>4} {orb.f_f_alpha:>4} {partner:>10}")
    return 0


def _cmd_orbit(args) -> int:
    datum = _datum_from_args(args)
    try:
        k, i = (int(x) for x in args.root.split(","))
    except ValueError:
        print("--root expects two integers k,i", file=sys.stderr)
        return 2
    orb = orbit_containing(datum, k, i)
    print(f"root (identity, s^{k} ph^{i}) lies in the orbit of s^{orb.rep.k} ph^{orb.rep.i}")
    print(f"  kind            {orb.kind}")
    print(f"  alt class       {orb.alt_class}")
    print(f"  orbit size      {orb.size}")
    print(f"  [F_a : F]       {orb.deg_f_alpha} = e {orb.e_f_alpha} x f {orb.f_f_alpha}")
    print(f"  [F_pm : F]      {orb.deg_f_pm_alpha}")
    print(f"  alpha(pi_E)     {orb.alpha_of_unif}")
    print(f"  alpha(zeta) exp {orb.alpha_unit_exponent_factor} (power of the generator)")
    if orb.partner is not None:
        print(f"  partner         s^{orb.partner.k} ph^{orb.partner.i}")
    if orb.xg_witness_r is not None:
        print(f"  x_g witness r   {orb.xg_witness_r}")
    return 0


def _cmd_gauss(args) -> int:
    spec = AdditiveCharSpec(args.p, args.m)
    exact = gauss_sum_exact(spec)
    norm = normalized_gauss(spec)
    approx = gauss_sum_float(spec)
    q = args.p ** args.m
    print(f"field F_{q} (p={args.p}, m={args.m}), canonical additive character")
    print(f"  exact coefficients over 1, z, ..., z^{args.p - 2}: {list(exact.coeffs)}")
    print(f"  square (integer): {(exact * exact).as_int()}")
    print(f"  normalized value: {norm}  (exponent in Q/Z)")
    print(f"  float summation:  {approx:.6f}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.verb == "verify":
            return _cmd_verify(args)
        if args.verb == "classify":
            return _cmd_classify(args)
        if args.verb == "orbit":
            return _cmd_orbit(args)
        if args.verb == "gauss":
            return _cmd_gauss(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
