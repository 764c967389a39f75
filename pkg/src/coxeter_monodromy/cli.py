"""Command-line front end.

Every subcommand builds a JSON-safe payload; text output is rendered from
that payload alone, so ``--format json`` followed by :func:`render_text`
reproduces the text output.

Exit status: 0 when every check in the invocation passed, 1 when a check
failed, 2 for usage errors (bad arguments, unknown types, bad primes).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arrangements, coxeter, finite_field, invariants, macdonald, recursion
from .classes import GaloisStabilityError, MonodromyClass, zeta_of_class

SCHEMA = "1"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# payload builders: each returns (payload, ok)


def _zeta_text(c: MonodromyClass):
    try:
        return zeta_of_class(c).to_text()
    except GaloisStabilityError:
        return None


def cmd_zeta(args):
    d = coxeter.parse_diagram(args.diagram)
    m = recursion.local_class_M(d)
    z = zeta_of_class(m)
    return {"diagram": args.diagram, "zeta": z.to_text(), "factors": z.to_json(), "class": m.to_json()}, True


def cmd_class(args):
    d = coxeter.parse_diagram(args.diagram)
    if args.which == "M":
        c = recursion.local_class_M(d) if args.at == "0" else recursion.global_class_at_inf(d)
        label = "M" if args.at == "0" else "global_inf"
    elif args.which == "globalB":
        c = recursion.global_class_at_0(d) if args.at == "0" else recursion.global_class_at_inf(d)
        label = "global_0" if args.at == "0" else "global_inf"
    else:
        c = recursion.qN_class(d)
        label = "qN"
    return {"diagram": args.diagram, "which": label, "class": c.to_json(), "zeta": _zeta_text(c)}, True


def cmd_subgraphs(args):
    d = coxeter.parse_diagram(args.diagram)
    rows = [{"vertices": list(vs), "type": t.name} for vs, t in recursion.connected_subgraphs(d)]
    return {"diagram": args.diagram, "subgraphs": rows}, True


def _type(name: str) -> coxeter.GroupType:
    return coxeter.parse_type(name)


def cmd_degrees(args):
    t = _type(args.type)
    return {"type": t.name, "degrees": t.degrees(), "order": t.order, "N": t.num_reflections}, True


def cmd_molien(args):
    t = _type(args.type)
    r = coxeter.root_system(t)
    if not r.exact:
        raise UsageError(f"{t.name} has no exact realization")
    found = coxeter.molien_degrees(coxeter.generate_group(r), rank=t.rank)
    ok = found == t.degrees()
    return {"type": t.name, "molien_degrees": found, "table_degrees": t.degrees(), "pass": ok}, ok


def cmd_chambers(args):
    a, _ = arrangements.coxeter_arrangement(_type(args.type))
    return {"type": _type(args.type).name, "chambers": arrangements.chamber_count(a)}, True


def cmd_euler(args):
    rep = arrangements.coxeter_euler_checks(_type(args.type))
    return rep.to_dict(), rep.passed


def cmd_invariants(args):
    pres = invariants.basic_invariants(_type(args.type))
    return pres.metadata(), True


def cmd_discriminant(args):
    pres = invariants.discriminant_in_invariants(_type(args.type))
    return pres.metadata(), True


def cmd_kappa(args):
    r = coxeter.root_system(_type(args.type))
    out = {"type": r.type.name, "kappa": str(r.kappa()), "discr_q": str(r.discr_q())}
    if args.p is not None:
        out["p"] = args.p
        out["kappa_mod_p"] = finite_field.kappa_mod_p(r, _field(args.p))
    return out, True


def cmd_max(args):
    res = macdonald.max_delta_optimize(_type(args.type), args.restarts, seed=args.seed)
    ok = res.rel_err < 1e-6
    return {**res.to_dict(), "pass": ok}, ok


def cmd_integral(args):
    rep = macdonald.integral_report(_type(args.type), args.s)
    ok = rep.rel_err < 1e-8
    return {**rep.to_dict(), "pass": ok}, ok


def _field(p: int) -> finite_field.PrimeField:
    try:
        return finite_field.PrimeField(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_charsum(args):
    f = _field(args.p)
    rep = finite_field.verify_finite(_type(args.type), f, chi=args.chi)
    (row,) = rep.to_json()
    return row, row["pass"]


def cmd_verify_finite(args):
    f = _field(args.p)
    rep = finite_field.verify_finite(_type(args.type), f, chi=args.chi)
    rows = rep.to_json()
    ok = rep.passed
    return {"type": rep.type, "p": rep.p, "passed": rep.num_passed, "total": len(rows), "pass": ok, "rows": rows}, ok


_CHECKS = {
    "deg": recursion.check_deg,
    "conn": recursion.check_conn,
    "compl": recursion.check_compl,
    "otherform": recursion.check_otherform,
}


def cmd_check(args):
    d = coxeter.parse_diagram(args.diagram)
    if args.identity == "ab2":
        if args.chi is None:
            raise UsageError("--identity ab2 needs --chi a/k")
        res = recursion.check_ab2(d, args.chi)
    else:
        res = _CHECKS[args.identity](d)
    return res.to_dict(), res.holds


# ---------------------------------------------------------------------------
# text rendering


def _cls(data) -> str:
    return str(MonodromyClass.from_json(data))


def _pf(ok) -> str:
    return "PASS" if ok else "FAIL"


def render_text(payload: dict) -> str:
    cmd = payload["command"]
    if cmd == "zeta":
        return payload["zeta"]
    if cmd == "class":
        z = payload["zeta"]
        return f"{payload['which']}: {_cls(payload['class'])}\nzeta: {z if z is not None else 'n/a'}"
    if cmd == "subgraphs":
        return "\n".join(f"{','.join(map(str, r['vertices']))}\t{r['type']}" for r in payload["subgraphs"])
    if cmd == "degrees":
        return f"{payload['type']}: degrees {payload['degrees']}, |G| = {payload['order']}, N = {payload['N']}"
    if cmd == "molien":
        return f"{payload['type']}: Molien {payload['molien_degrees']} vs table {payload['table_degrees']}  {_pf(payload['pass'])}"
    if cmd == "chambers":
        return str(payload["chambers"])
    if cmd == "euler":
        return (
            f"{payload['type']}: chambers {payload['chambers']}, chi(B) = {payload['euler_B']}, "
            f"chi(B)/|G| = {payload['euler_B_over_G']}  {_pf(payload['pass'])}"
        )
    if cmd in ("invariants", "discriminant"):
        lines = [f"{payload['type']}: degrees {payload['degrees']}"]
        lines += [f"f{i + 1} = {f}" for i, f in enumerate(payload["basis"])]
        if cmd == "discriminant":
            lines.append(f"disc = {payload['disc']}")
        return "\n".join(lines)
    if cmd == "kappa":
        line = f"kappa = {payload['kappa']}\ndiscr q = {payload['discr_q']}"
        if "p" in payload:
            line += f"\nkappa mod {payload['p']} = {payload['kappa_mod_p']}"
        return line
    if cmd == "max":
        return (
            f"{payload['type']}: optimizer {payload['value']:.15g}, closed form {payload['closed_form']:.15g}, "
            f"rel err {payload['rel_err']:.3g}  {_pf(payload['pass'])}"
        )
    if cmd == "integral":
        return (
            f"{payload['type']}, s = {payload['s']}: quadrature {payload['lhs']:.15g}, "
            f"formula {payload['rhs']:.15g}, rel err {payload['rel_err']:.3g}  {_pf(payload['pass'])}"
        )
    if cmd == "charsum":
        return _charsum_line(payload)
    if cmd == "verify-finite":
        lines = [_charsum_line(r) for r in payload["rows"]]
        lines.append(f"{payload['type']} p={payload['p']}: {payload['passed']}/{payload['total']} characters pass")
        return "\n".join(lines)
    if cmd == "check":
        return (
            f"{payload['identity']} {payload['diagram']}: {'holds' if payload['holds'] else 'FAILS'}\n"
            f"lhs: {_cls(payload['lhs'])}\nrhs: {_cls(payload['rhs'])}"
        )
    raise KeyError(cmd)


def _charsum_line(r: dict) -> str:
    return (
        f"chi={r['chi_index']:>3}  S = {r['S_re']:+.10f}{r['S_im']:+.10f}i  "
        f"RHS = {r['RHS_re']:+.10f}{r['RHS_im']:+.10f}i  |diff| = {r['abs_diff']:.2e}  {_pf(r['pass'])}"
    )


# ---------------------------------------------------------------------------
# argument parsing


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_const", const="json", dest="format", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="coxeter-monodromy", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, arg, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("zeta", cmd_zeta, "diagram", "zeta function of the local class at the origin")
    p = add("class", cmd_class, "diagram", "monodromy classes")
    p.add_argument("--at", choices=["0", "inf"], default="0")
    p.add_argument("--which", choices=["M", "globalB", "qN"], default="M")
    add("subgraphs", cmd_subgraphs, "diagram", "connected subdiagrams and their types")
    add("degrees", cmd_degrees, "type", "degree table")
    add("molien", cmd_molien, "type", "degrees from the Molien series of the generated group")
    add("chambers", cmd_chambers, "type", "chambers of the reflection arrangement")
    add("euler", cmd_euler, "type", "Euler characteristic of the quadric complement")
    add("invariants", cmd_invariants, "type", "basic invariants")
    add("discriminant", cmd_discriminant, "type", "discriminant in invariant coordinates")
    p = add("kappa", cmd_kappa, "type", "the constant kappa and discr q")
    p.add_argument("-p", type=int, default=None)
    p = add("max", cmd_max, "type", "maximum of the discriminant on q = 1")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p = add("integral", cmd_integral, "type", "Gaussian moment of the discriminant")
    p.add_argument("-s", type=int, required=True)
    p = add("charsum", cmd_charsum, "type", "one character sum against its Gauss-sum product")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--chi", type=int, default=0)
    p = add("verify-finite", cmd_verify_finite, "type", "character sums for every character")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--chi", type=int, default=None)
    p = add("check", cmd_check, "diagram", "run a class identity")
    p.add_argument("--identity", choices=["deg", "conn", "compl", "otherform", "ab2"], required=True)
    p.add_argument("--chi", type=_fraction, default=None)
    return parser


def run(argv=None) -> tuple[dict | None, int, str]:
    """Returns ``(payload, exit_code, rendered_output)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0), ""
    try:
        payload, ok = args.func(args)
    except (UsageError, coxeter.DiagramError, finite_field.BadPrimeError, macdonald.GammaPoleError) as exc:
        return None, 2, f"error: {exc}"
    except (ValueError, TypeError) as exc:
        return None, 2, f"error: {exc}"
    payload = {"schema": SCHEMA, "command": args.command, **payload}
    out = json.dumps(payload, indent=2) if args.format == "json" else render_text(payload)
    return payload, 0 if ok else 1, out


def main(argv=None) -> int:
    payload, code, out = run(argv)
    if out:
        print(out, file=sys.stderr if payload is None else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
