"""Command line interface.

Subcommands:

  reduce         Kodaira types / Tamagawa numbers / conductor exponents
  chars          character table of D_{2p^n}, reduction-identity check
  regulator      regulator constants and square classes for D_{2p}
  verify-local   the local parity identity: sweep or sign table
  verify-global  the identity at every bad prime of given curves
  surgery        make curves semistable away from a chosen prime

Curve files carry one curve per line as five integers "a1 a2 a3 a4 a6";
completion files carry lines "prime G_v I_v [true|false]" with subgroup
tokens 1, D2, Cp, D2p.  Blank lines and '#' comments are allowed in both.
Exit status: 0 all checks passed, 1 a verdict failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from sympy import factorint

from .characters import (DihedralContext, SubgroupTag, TRIVIAL, ORDER2,
                         cyclic_p_power, dihedral_p_power, irreducibles,
                         verify_reduction_identity)
from .parity import (FROZEN_POT_GOOD_TABLE, InadmissibleSettingError,
                     MissingCompletionError, enumerate_settings, global_parity,
                     pot_good_table, verify_local)
from .regulator import (SquareClass, direct_sum, faithful_rep,
                        regulator_constant, sign_rep, t_theta_member,
                        trivial_rep)
from .surgery import SurgeryFailedError, certify, make_semistable
from .tate import local_reduction
from .weierstrass import SingularModelError, WeierstrassCurve


class InputFileError(ValueError):
    """A curve or completion file failed to parse."""


_SUBGROUP_TOKENS = {"1": TRIVIAL, "D2": ORDER2,
                    "Cp": cyclic_p_power(1), "D2p": dihedral_p_power(1)}


def parse_curve_file(path: str) -> list[WeierstrassCurve]:
    curves = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 5:
                raise InputFileError(
                    f"{path}:{lineno}: expected five integers, got {len(parts)} tokens")
            try:
                coeffs = [int(t) for t in parts]
            except ValueError:
                raise InputFileError(f"{path}:{lineno}: non-integer coefficient") from None
            try:
                curves.append(WeierstrassCurve(*coeffs))
            except SingularModelError:
                raise InputFileError(f"{path}:{lineno}: model is singular") from None
    if not curves:
        raise InputFileError(f"{path}: no curves found")
    return curves


def parse_completion_file(path: str) -> dict[int, tuple[SubgroupTag, SubgroupTag, bool | None]]:
    out: dict[int, tuple[SubgroupTag, SubgroupTag, bool | None]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (3, 4):
                raise InputFileError(
                    f"{path}:{lineno}: expected 'prime G_v I_v [true|false]'")
            try:
                prime = int(parts[0])
            except ValueError:
                raise InputFileError(f"{path}:{lineno}: bad prime {parts[0]!r}") from None
            tags = []
            for tok in parts[1:3]:
                if tok not in _SUBGROUP_TOKENS:
                    raise InputFileError(
                        f"{path}:{lineno}: unknown subgroup token {tok!r} "
                        f"(use 1, D2, Cp, D2p)")
                tags.append(_SUBGROUP_TOKENS[tok])
            flag: bool | None = None
            if len(parts) == 4:
                if parts[3] not in ("true", "false"):
                    raise InputFileError(
                        f"{path}:{lineno}: flag must be 'true' or 'false'")
                flag = parts[3] == "true"
            if prime in out:
                raise InputFileError(f"{path}:{lineno}: duplicate prime {prime}")
            out[prime] = (tags[0], tags[1], flag)
    return out


def _write_json(path: str | None, payload) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


# --- subcommands -----------------------------------------------------------

def cmd_reduce(args) -> int:
    curves = parse_curve_file(args.curves)
    report = []
    for curve in curves:
        ells = ([args.ell] if args.ell else
                sorted(int(q) for q in factorint(abs(curve.discriminant))))
        for ell in ells:
            d = local_reduction(curve, ell)
            tail = d.reduction_class
            if d.split is not None:
                tail += f" {d.split_label}"
            print(f"{curve.coefficients()} ell={ell}: {d.kodaira} "
                  f"delta={d.delta} c={d.tamagawa} f={d.conductor_exp} {tail}")
            report.append({"curve": list(curve.coefficients()), "ell": ell,
                           "kodaira": d.kodaira, "delta": d.delta,
                           "tamagawa": d.tamagawa, "conductor_exp": d.conductor_exp,
                           "class": d.reduction_class, "split": d.split})
    _write_json(args.json, report)
    return 0


def cmd_chars(args) -> int:
    ctx = DihedralContext(args.p, args.n)
    irr = irreducibles(ctx)
    G = ctx.full()
    labels = []
    for i, e in G.class_reps:
        if e:
            labels.append("refl")
        elif i == 0:
            labels.append("1")
        else:
            labels.append(f"s^{i}" if i != 1 else "s")
    names = ["1", "eta"] + [f"I(chi_{k})" for k in range(1, len(irr) - 1)]
    rows = [[str(v) for v in chi.values] for chi in irr]
    widths = [max(len(labels[j]), *(len(r[j]) for r in rows))
              for j in range(len(labels))]
    name_w = max(len(n) for n in names)
    print(f"D_{2 * ctx.m} (p={ctx.p}, n={ctx.n}): {len(irr)} irreducible characters")
    print(" " * name_w + "  " + "  ".join(l.rjust(w) for l, w in zip(labels, widths)))
    for name, row in zip(names, rows):
        print(name.ljust(name_w) + "  "
              + "  ".join(v.rjust(w) for v, w in zip(row, widths)))
    payload = {"p": ctx.p, "n": ctx.n, "classes": labels,
               "irreducibles": [{"name": nm, "values": row}
                                for nm, row in zip(names, rows)]}
    status = 0
    if args.verify_reduction:
        if ctx.n < 2:
            print("reduction identity: needs n >= 2", file=sys.stderr)
            return 2
        ok = verify_reduction_identity(ctx.p, ctx.n)
        print(f"reduction identity at (p={ctx.p}, n={ctx.n}): "
              + ("PASS" if ok else "FAIL"))
        payload["reduction_identity"] = ok
        status = 0 if ok else 1
    _write_json(args.json, payload)
    return status


def cmd_regulator(args) -> int:
    p = args.p
    reps = [("1", trivial_rep(p)), ("eta", sign_rep(p)), ("rho2", faithful_rep(p))]
    reps.append(("1+eta+rho2", direct_sum(*(r for _, r in reps))))
    payload = {"p": p, "seed": args.seed, "reps": {}}
    for name, rep in reps:
        value = regulator_constant(rep, seed=args.seed)
        sq = SquareClass.of(value)
        member = t_theta_member(rep, seed=args.seed)
        print(f"C_Theta({name}) = {value}  square class {sq.representative}  "
              f"ord_{p} parity {sq.ord_parity(p)}  T_Theta member: {member}")
        payload["reps"][name] = {"value": str(value),
                                 "square_class": sq.representative,
                                 "ord_p_parity": sq.ord_parity(p),
                                 "t_theta_member": member}
    _write_json(args.json, payload)
    return 0


def _table_payload(table) -> dict:
    return {str(e): {str(res): table[(e, res)] for res in (1, 5, 7, 11)}
            for e in (6, 4, 3, 2)}


def cmd_verify_local(args) -> int:
    status = 0
    payload = {"p": args.p}
    if args.emit_table:
        tc = pot_good_table("c")
        tw = pot_good_table("w")
        match = tc == FROZEN_POT_GOOD_TABLE and tw == FROZEN_POT_GOOD_TABLE
        print("potential-good sign table (rows e = 6,4,3,2; "
              "columns p mod 12 = 1,5,7,11)")
        for name, table in (("frozen", FROZEN_POT_GOOD_TABLE),
                            ("c-side", tc), ("w-side", tw)):
            for e in (6, 4, 3, 2):
                row = "  ".join(f"{table[(e, res)]:+d}" for res in (1, 5, 7, 11))
                print(f"  {name:>6} e={e}: {row}")
        print("tables match: " + ("PASS" if match else "FAIL"))
        payload.update({"frozen": _table_payload(FROZEN_POT_GOOD_TABLE),
                        "c_side": _table_payload(tc), "w_side": _table_payload(tw),
                        "tables_match": match})
        if not match:
            status = 1
    if args.sweep:
        settings = enumerate_settings(args.p)
        disagreements = [verify_local(s) for s in settings]
        bad = [v for v in disagreements if not v.agree]
        print(f"sweep p={args.p}: {len(settings)} settings, "
              f"{len(settings) - len(bad)} agree, {len(bad)} disagree")
        for v in bad[:10]:
            print(f"  DISAGREE: {v.setting}")
        payload.update({"sweep_total": len(settings),
                        "sweep_disagreements": len(bad)})
        if bad:
            status = 1
    if not args.emit_table and not args.sweep:
        print("nothing to do: pass --sweep and/or --emit-table", file=sys.stderr)
        return 2
    _write_json(args.json, payload)
    return status


def cmd_verify_global(args) -> int:
    curves = parse_curve_file(args.curves)
    completion = parse_completion_file(args.completion)
    report = []
    status = 0
    for curve in curves:
        verdict = global_parity(curve, args.p, completion, r=args.r)
        locals_json = []
        for lv in verdict.locals:
            print(f"{curve.coefficients()} ell={lv.setting.ell}: "
                  f"c={lv.c_side:+d} w={lv.w_side:+d} "
                  f"{'agree' if lv.agree else 'DISAGREE'} "
                  f"[{lv.c_trace['branch']}]")
            locals_json.append({"ell": lv.setting.ell, "c": lv.c_side,
                                "w": lv.w_side, "agree": lv.agree,
                                "branch": lv.c_trace["branch"]})
        print(f"{curve.coefficients()} p={args.p}: c_product={verdict.c_product:+d} "
              f"w_product={verdict.w_product:+d} "
              + ("agree" if verdict.agree else "DISAGREE"))
        report.append({"curve": list(curve.coefficients()), "p": args.p,
                       "locals": locals_json, "c_product": verdict.c_product,
                       "w_product": verdict.w_product, "agree": verdict.agree})
        if not verdict.agree:
            status = 1
    _write_json(args.json, report)
    return status


def cmd_surgery(args) -> int:
    curves = parse_curve_file(args.curves)
    report = []
    status = 0
    for curve in curves:
        try:
            plan = make_semistable(curve, args.p0, args.v, n=args.n)
        except SurgeryFailedError as exc:
            print(f"{curve.coefficients()}: FAILED ({exc})")
            report.append({"curve": list(curve.coefficients()), "ok": False,
                           "error": str(exc)})
            status = 1
            continue
        cert = certify(plan)
        print(f"{curve.coefficients()} p0={args.p0} v={args.v}: n={plan.n} "
              f"shifts=({plan.d1},{plan.d2},{plan.d3},{plan.d4},{plan.c}) "
              f"S={list(plan.s_primes)}")
        print(f"  p0 data {cert.p0_before} -> {cert.p0_after} "
              f"({'kept' if cert.p0_match else 'LOST'}); "
              f"v: {cert.v_class} {cert.v_split}; residual gcd {cert.residual_gcd}; "
              + ("PASS" if cert.ok else "FAIL"))
        report.append({"curve": list(curve.coefficients()), "p0": args.p0,
                       "v": args.v, "n": plan.n,
                       "shifts": [plan.d1, plan.d2, plan.d3, plan.d4, plan.c],
                       "s_primes": list(plan.s_primes),
                       "final": list(plan.final.coefficients()),
                       "ok": cert.ok})
        if not cert.ok:
            status = 1
    _write_json(args.json, report)
    return status


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-parity",
        description="local parity identities for elliptic curves in dihedral extensions")
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", help="Kodaira/Tamagawa/conductor data")
    r.add_argument("curves", help="curve file")
    r.add_argument("--ell", type=int, help="single prime (default: all bad primes)")
    r.add_argument("--json", help="write a JSON report to this path")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("chars", help="character table of D_2p^n")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--verify-reduction", action="store_true",
                   help="check the induction-restriction reduction identity")
    c.add_argument("--json")
    c.set_defaults(func=cmd_chars)

    g = sub.add_parser("regulator", help="regulator constants for D_2p")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--json")
    g.set_defaults(func=cmd_regulator)

    vl = sub.add_parser("verify-local", help="local parity identity")
    vl.add_argument("--p", type=int, required=True)
    vl.add_argument("--sweep", action="store_true",
                    help="verify the identity over the full setting sweep")
    vl.add_argument("--emit-table", action="store_true",
                    help="print the potential-good sign table from both sides")
    vl.add_argument("--json")
    vl.set_defaults(func=cmd_verify_local)

    vg = sub.add_parser("verify-global", help="identity at all bad primes of curves")
    vg.add_argument("curves", help="curve file")
    vg.add_argument("--p", type=int, required=True)
    vg.add_argument("--completion", required=True,
                    help="completion data file: 'prime G_v I_v [true|false]'")
    vg.add_argument("--r", type=int, default=1)
    vg.add_argument("--json")
    vg.set_defaults(func=cmd_verify_global)

    s = sub.add_parser("surgery", help="make curves semistable away from p0")
    s.add_argument("curves", help="curve file")
    s.add_argument("--p0", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--n", type=int, help="fixed p0-adic depth (default: adaptive)")
    s.add_argument("--json")
    s.set_defaults(func=cmd_surgery)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFileError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InadmissibleSettingError, MissingCompletionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
