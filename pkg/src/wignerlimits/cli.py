"""Command line front end.

Exit codes: 0 success, 2 input validation, 3 domain or degeneracy error,
4 schedule failure.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .asymptotics import (
    ComposedParams,
    Eq14Params,
    Limit,
    ScheduleError,
    Thm1Params,
    Thm2Params,
    Thm3Params,
    pr_approx,
    run_sweep,
)
from .exact_core import DomainError, HalfInt, SignedRadical, half, radical_to_float
from .rotation_matrices import wigner_d
from .tetra_geometry import (
    EDGES,
    DegenerateTetrahedronError,
    LabelConvention,
    cayley_menger,
    exterior_dihedrals,
    tetra_from_sixj,
    volume,
)
from .wigner_symbols import SixJArgs, ThreeJArgs, sixj, threej

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_SCHEDULE = 4

# a, b, c, d, e, f of the published comparison table
TABLE_ROWS = [
    ("1", "1", "1", "1", "1", "1"),
    ("7/2", "7", "9/2", "17/2", "5", "5/2"),
    ("17/2", "15/2", "10", "15/2", "15/2", "4"),
    ("13/2", "8", "9/2", "13/2", "6", "15/2"),
    ("5", "8", "12", "9", "7", "6"),
    ("9", "9", "9", "9", "9", "9"),
    ("7", "8", "9", "6", "9", "5"),
    ("7", "8", "9", "6", "9", "14"),
    ("13", "15", "24", "29/2", "33/2", "19/2"),
    ("13", "15", "24", "29/2", "33/2", "29/2"),
]


class InputError(ValueError):
    pass


def parse_half(text: str) -> HalfInt:
    """Lossless half-integer parsing: "3/2", "-1", "1.5" are fine, "1.4" is not."""
    try:
        return half(text)
    except (DomainError, TypeError) as exc:
        raise InputError(str(exc)) from None


def _half_list(text: str, count: int) -> list[HalfInt]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise InputError(f"expected {count} comma-separated values, got {text!r}")
    return [parse_half(p) for p in parts]


def parse_schedule(text: str) -> tuple[HalfInt, int, int]:
    """"start:factor:count" -> (start, factor, count)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"schedule must be start:factor:count, got {text!r}")
    start = parse_half(parts[0])
    try:
        factor, count = int(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"factor and count must be integers in {text!r}") from None
    return start, factor, count


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_sig(x: float) -> str:
    return f"{x:.12g}"


def fmt_table(x: float | None) -> str:
    if x is None or math.isnan(x):
        return "nan"
    s = f"{x:.8f}"
    return "0.00000000" if s == "-0.00000000" else s


def _record(command, inputs, outputs, provenance) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "provenance": provenance,
        "version": __version__,
    }


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False))
    out.write("\n")


def _emit_radical(command, inputs, value: SignedRadical, as_json: bool, out) -> None:
    fval = radical_to_float(value)
    if as_json:
        _emit_json(
            _record(
                command,
                inputs,
                {"sign": value.sign, "radicand": fmt_rational(value.radicand), "value": float(fmt_sig(fval))},
                "exact",
            ),
            out,
        )
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["sign", "radicand", "value"])
    w.writerow([f"{value.sign:+d}" if value.sign else "0", fmt_rational(value.radicand), fmt_sig(fval)])


def cmd_wigner3j(ns, out) -> int:
    js = [parse_half(x) for x in ns.values]
    args = ThreeJArgs(*js)
    inputs = dict(zip(("j1", "j2", "j3", "m1", "m2", "m3"), map(str, js)))
    _emit_radical("wigner3j", inputs, threej(args), ns.json, out)
    return EXIT_OK


def cmd_wigner6j(ns, out) -> int:
    js = [parse_half(x) for x in ns.values]
    args = SixJArgs(*js)
    inputs = dict(zip("abcdef", map(str, js)))
    _emit_radical("wigner6j", inputs, sixj(args), ns.json, out)
    return EXIT_OK


def cmd_wignerd(ns, out) -> int:
    j, mr, mc = (parse_half(x) for x in (ns.j, ns.m_row, ns.m_col))
    value = wigner_d(j, mr, mc, ns.theta)
    if ns.json:
        _emit_json(
            _record(
                "wignerd",
                {"j": str(j), "m_row": str(mr), "m_col": str(mc), "theta": ns.theta},
                {"value": float(fmt_sig(value))},
                "float",
            ),
            out,
        )
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["j", "m_row", "m_col", "theta", "value"])
        w.writerow([j, mr, mc, repr(ns.theta), fmt_sig(value)])
    return EXIT_OK


def table_row(entries) -> list[str]:
    """One CSV row of the comparison table; PR cells are "nan" for non-Euclidean tetrahedra."""
    args = SixJArgs(*(half(x) for x in entries))
    exact = radical_to_float(sixj(args))
    prs = []
    for conv in (LabelConvention.PLUS_HALF, LabelConvention.SQRT_JJ1):
        try:
            prs.append(pr_approx(args, conv))
        except DegenerateTetrahedronError:
            prs.append(None)
    return [str(x) for x in args.entries()] + [fmt_table(exact)] + [fmt_table(p) for p in prs]


def render_table(workers: int = 1) -> str:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(table_row, TABLE_ROWS))
    else:
        rows = [table_row(r) for r in TABLE_ROWS]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "c", "d", "e", "f", "sixj", "pr_plushalf", "pr_sqrt"])
    w.writerows(rows)
    return buf.getvalue()


def cmd_table(ns, out) -> int:
    text = render_table(ns.workers)
    for line in text.splitlines()[1:]:
        if "nan" in line.split(","):
            print(f"note: no Euclidean tetrahedron for row {line}", file=sys.stderr)
    out.write(text)
    return EXIT_OK


def _converge_params(ns):
    limit = Limit(ns.limit)

    def need(*names):
        missing = [n for n in names if getattr(ns, n) is None]
        if missing:
            raise InputError(f"{limit.value} requires --{' --'.join(missing)}")

    if limit is Limit.THM1:
        need("b", "beta", "delta")
        return Thm1Params(parse_half(ns.b), parse_half(ns.beta), parse_half(ns.delta), ns.ratio)
    if limit is Limit.THM2:
        need("b", "beta", "delta")
        sign = {"+": 1, "-": -1, "+1": 1, "-1": -1}.get(ns.sign)
        if sign is None:
            raise InputError("--sign must be + or -")
        return Thm2Params(parse_half(ns.b), parse_half(ns.beta), parse_half(ns.delta), sign)
    if limit is Limit.EQ14:
        need("entries")
        return Eq14Params(*_half_list(ns.entries, 6))
    need("base", "f", "m", "n")
    base = _half_list(ns.base, 3)
    fmn = [parse_half(x) for x in (ns.f, ns.m, ns.n)]
    if limit is Limit.THM3:
        return Thm3Params(*base, *fmn)
    return ComposedParams(*base, *fmn)


def cmd_converge(ns, out) -> int:
    params = _converge_params(ns)
    start, factor, count = parse_schedule(ns.schedule)
    if start <= 0:
        raise ScheduleError(f"scale must be positive, got {start}", scale=start)
    limit = Limit(ns.limit)
    if limit in (Limit.THM3, Limit.COMPOSED):
        if not start.is_integer():
            raise ScheduleError(f"{limit.value} scales must be integers, got {start}", scale=start)
        start = start.to_int()
    if factor < 2 or count < 1:
        raise ScheduleError("factor must be >= 2 and count >= 1")
    schedule = [start * factor**i for i in range(count)]
    series = run_sweep(limit, params, schedule, workers=ns.workers)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["scale", "residual", "abs_residual"])
    for scale, r in series.samples:
        w.writerow([str(scale), fmt_sig(r), fmt_sig(abs(r))])
    return EXIT_OK


def cmd_geometry(ns, out) -> int:
    js = [parse_half(x) for x in ns.values]
    args = SixJArgs(*js)
    conv = LabelConvention(ns.convention)
    t = tetra_from_sixj(args, conv)
    cm = cayley_menger(t)
    result = {"convention": conv.value, "entries": [str(j) for j in js], "cm_determinant": fmt_rational(cm)}
    try:
        vol = volume(t)
        angles = exterior_dihedrals(t)
    except DegenerateTetrahedronError as exc:
        result["error"] = str(exc)
        _emit_json(result, out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    result["volume"] = float(fmt_sig(vol))
    result["angles"] = {f"{h}{k}": float(fmt_sig(angles[(h, k)])) for h, k in EDGES}
    _emit_json(result, out)
    return EXIT_OK


_NEGATIVE_FRACTION = re.compile(r"^-\d+/\d+$")


class _Parser(argparse.ArgumentParser):
    # argparse only recognizes "-1" and "-0.5" as negative numbers
    def _parse_optional(self, arg_string):
        if _NEGATIVE_FRACTION.match(arg_string):
            return None
        return super()._parse_optional(arg_string)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wignerlimits", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("wigner3j", help="exact 3j symbol (j1 j2 j3; m1 m2 m3)")
    s.add_argument("values", nargs=6, metavar="J", help="j1 j2 j3 m1 m2 m3")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_wigner3j)

    s = sub.add_parser("wigner6j", help="exact 6j symbol {a b c; d e f}")
    s.add_argument("values", nargs=6, metavar="J", help="a b c d e f")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_wigner6j)

    s = sub.add_parser("wignerd", help="rotation matrix element d^j_{m' m}(theta)")
    s.add_argument("j")
    s.add_argument("m_row")
    s.add_argument("m_col")
    s.add_argument("theta", type=float)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_wignerd)

    s = sub.add_parser("table", help="exact 6j vs. Ponzano-Regge comparison table (CSV)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("converge", help="residuals along a scaling sweep (CSV)")
    s.add_argument("limit", choices=[x.value for x in Limit])
    s.add_argument("--schedule", required=True, help="start:factor:count, e.g. 50:2:5")
    s.add_argument("--b")
    s.add_argument("--beta")
    s.add_argument("--delta")
    s.add_argument("--ratio", type=float, default=0.0, help="gamma/c for thm1")
    s.add_argument("--sign", default="+", help="thm2 branch: + for gamma=c, - for gamma=-c")
    s.add_argument("--base", help="a,b,c (thm3 base shape or composed offsets)")
    s.add_argument("--entries", help="a,b,c,d,e,f for eq14")
    s.add_argument("--f")
    s.add_argument("--m")
    s.add_argument("--n")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("geometry", help="volume and exterior dihedral angles (JSON)")
    s.add_argument("values", nargs=6, metavar="J", help="a b c d e f")
    s.add_argument("--convention", choices=[c.value for c in LabelConvention], default="plushalf")
    s.set_defaults(func=cmd_geometry)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.func(ns, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScheduleError as exc:
        where = f" (scale {exc.scale})" if exc.scale is not None else ""
        print(f"schedule error{where}: {exc}", file=sys.stderr)
        return EXIT_SCHEDULE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
