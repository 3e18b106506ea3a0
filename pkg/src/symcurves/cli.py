"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parameter error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time
from typing import Sequence

from . import bounds, curves, verify
from .errors import BudgetExceeded, ConvergenceError, SymcurvesError
from .ff import field_budget
from .reference import GENUS_TABLE, GenusTableRow
from .report import Report, fmt_real

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


# -- genus table -----------------------------------------------------------------------------


def _row_specs(row: GenusTableRow) -> dict[int, curves.CurveSpec]:
    if row.subcover:
        base = curves.ArtinSchreierSym(row.n, row.q, 2)
        return {2: curves.Subcover(base, curves.line_subgroup(base).basis)}
    return {i: curves.ArtinSchreierSym(row.n, row.q, i) for i in row.genera}


def cmd_table1(report: Report, args: argparse.Namespace | None = None) -> None:
    header = f"{'n':>2} {'q':>3} {'N':>8}  {'N1 counted, per i':<30} {'genera g_i':<34} Oesterle"
    report.text.append(header)
    for row in GENUS_TABLE:
        specs = _row_specs(row)
        invs = {i: curves.invariants(s) for i, s in specs.items()}
        N = next(iter(invs.values())).predicted_N1
        report.check(f"table.N[{row.key}]", N == row.N, f"closed form {N}, printed {row.N}")
        cells: list[str] = []
        genera: dict[str, int] = {}
        for i, inv in invs.items():
            genera[str(i)] = inv.genus
            match = inv.genus == row.genera[i]
            report.check(f"table.g{i}[{row.key}]", match, f"closed form {inv.genus}, printed {row.genera[i]}")
            cells.append(f"g{i}={row.genera[i]}" + ("" if match else f"!={inv.genus}"))
        counted: dict[str, int] = {}
        for i, spec in specs.items():
            try:
                counted[str(i)] = curves.count_N1(spec).N1
            except BudgetExceeded as exc:
                report.skipped.append(f"table.count[{row.key},i={i}]: {exc}")
                continue
            report.check(f"table.count[{row.key},i={i}]", counted[str(i)] == N, f"counted {counted[str(i)]}")
        oe = bounds.oesterle(row.q**row.n, row.N)
        report.check(
            f"table.oesterle[{row.key}]",
            oe.g_ceiling == row.oesterle,
            f"ceil({fmt_real(oe.g_min)}) = {oe.g_ceiling}, printed {row.oesterle}",
        )
        report.results.append(
            {
                "row": row.key,
                "n": row.n,
                "q": row.q,
                "N": N,
                "N1_counted": counted,
                "genera": genera,
                "printed_genera": {str(i): g for i, g in row.genera.items()},
                "oesterle_g_min": fmt_real(oe.g_min),
                "oesterle": oe.g_ceiling,
                "printed_oesterle": row.oesterle,
            }
        )
        count_txt = ",".join(str(v) for v in counted.values()) if counted else "skipped"
        oe_txt = f"{row.oesterle}" + ("" if oe.g_ceiling == row.oesterle else f"!={oe.g_ceiling}")
        label = f"({N})" if row.subcover else f"{N}"
        report.text.append(f"{row.n:>2} {row.q:>3} {label:>8}  {count_txt:<30} {' '.join(cells):<34} {oe_txt}")


# -- curves ------------------------------------------------------------------------------


def _parse_basis(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    return tuple(int(t) for t in text.split(",") if t.strip())


def build_spec(args: argparse.Namespace) -> curves.CurveSpec:
    fam = args.family
    if fam == "as":
        return curves.ArtinSchreierSym(args.n, args.q, args.i)
    if fam == "hermitian":
        return curves.hermitian(args.q)
    if fam == "kummer":
        return curves.KummerSym(args.n, args.q, args.i)
    if fam == "tracenorm":
        return curves.TraceNorm(args.n, args.q, args.m)
    if fam == "gs":
        return curves.GSTowerStep(args.q)
    if fam == "subcover":
        base = curves.ArtinSchreierSym(args.n, args.q, args.i)
        basis = _parse_basis(args.w_basis) or curves.line_subgroup(base).basis
        return curves.Subcover(base, basis)
    raise ValueError(fam)  # pragma: no cover


def _equation_text(spec: curves.CurveSpec) -> str:
    eq = curves.equation(spec)
    rhs = str(eq.num) if eq.den is None else f"({eq.num}) / ({eq.den})"
    return f"{str(eq.lhs).replace('t', 'y')} = {rhs.replace('t', 'x')}"


def cmd_curve(report: Report, args: argparse.Namespace) -> None:
    spec = build_spec(args)
    inv = curves.invariants(spec)
    record: dict = {"invariants": inv.to_dict(), "equation": _equation_text(spec)}
    report.check("curve.hurwitz", inv.hurwitz_ok, f"2g-2 = {2 * inv.genus - 2}, deg Diff = {inv.different_degree}")
    lines = [
        f"family: {spec.family} {spec.params()}",
        f"equation over F_{inv.constants_order}: {record['equation']}",
        f"degree={inv.degree} genus={inv.genus} predicted N1={inv.predicted_N1}",
    ]
    if inv.coprime_degree is not None:
        lines.append(f"coprime degree={inv.coprime_degree}")
    if inv.different_exponent is not None:
        lines.append(f"different exponent={inv.different_exponent} ramification break={inv.ramification_break}")
    for pl in inv.ramified_places:
        extra = f" v={pl.v} r={pl.r}" if pl.v is not None else ""
        lines.append(f"  ramified {pl.label}: degree={pl.degree} e={pl.e} d={pl.d}{extra}")
    if args.count:
        census = curves.count_N1(spec)
        record["census"] = census.to_dict()
        hw = bounds.hasse_weil_max_N(census.constants_order, inv.genus)
        report.check("curve.N1", census.N1 == inv.predicted_N1, f"counted {census.N1}, predicted {inv.predicted_N1}")
        report.check("curve.hasse-weil", census.N1 <= hw, f"{census.N1} <= {hw}")
        summary = ", ".join(f"{k} solutions: {v} x-values" for k, v in census.to_dict()["histogram_summary"].items())
        lines.append(f"N1={census.N1} ({summary}; +1 at infinity; digest {census.histogram_digest()})")
    if args.n2:
        n2 = curves.count_N2(spec)
        record["N2"] = n2
        lines.append(f"N2={n2}")
    if args.autos:
        if not (isinstance(spec, curves.ArtinSchreierSym) and spec.i == 2):
            raise curves.InvalidParameters("--autos needs the i = 2 Artin-Schreier family")
        for key, (passed, detail) in verify.check_automorphisms(spec.n, spec.q).items():
            report.check(f"curve.automorphisms-{key}", passed, detail)
        record["automorphisms"] = len(curves.automorphisms(spec.n, spec.q))
        lines.append(f"automorphism pairs={record['automorphisms']}")
    report.results.append(record)
    report.text.extend(lines)


# -- verify / oesterle --------------------------------------------------------------------


def cmd_verify(report: Report, args: argparse.Namespace) -> None:
    verify.run(report, args.suite, args.qmax, args.nmax)
    report.results.append(
        {"suite": args.suite, "checks": len(report.checks), "failures": len(report.failures), "skipped": len(report.skipped)}
    )


def cmd_oesterle(report: Report, args: argparse.Namespace) -> None:
    r = bounds.oesterle(args.Q, args.N)
    report.results.append(
        {"q": r.q, "N": r.N, "m": r.m, "u": fmt_real(r.u), "theta0": fmt_real(r.theta0), "g_min": fmt_real(r.g_min), "g_ceiling": r.g_ceiling}
    )
    report.text.append(
        f"m={r.m} u={fmt_real(r.u)} theta0={fmt_real(r.theta0)} g_min={fmt_real(r.g_min)} ceiling={r.g_ceiling}"
    )


COMMANDS = {"table1": cmd_table1, "curve": cmd_curve, "verify": cmd_verify, "oesterle": cmd_oesterle}


# -- argument parsing ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2, but never raise SystemExit mid-library
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit a JSON report")
    fmt.add_argument("--csv", action="store_true", help="emit record,key,value CSV")
    common.add_argument("--max-field-order", type=int, default=None, help="enumeration budget (default 2^20)")
    common.add_argument("--timing", action="store_true", help="append wall-clock timings (output no longer reproducible)")

    parser = _Parser(prog="symcurves", description="Symmetric function-field families over small finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("table1", parents=[common], help="reproduce the genus / point-count table")

    pc = sub.add_parser("curve", parents=[common], help="invariants and censuses of one curve")
    pc.add_argument("family", choices=["as", "kummer", "tracenorm", "subcover", "gs", "hermitian"])
    pc.add_argument("-n", type=int, default=3)
    pc.add_argument("-q", type=int, default=2)
    pc.add_argument("-i", type=int, default=2)
    pc.add_argument("-m", type=int, default=1)
    pc.add_argument("--w-basis", help="comma-separated F_{q^n} codes spanning W (subcover only)")
    pc.add_argument("--count", action="store_true", help="count degree-one places by enumeration")
    pc.add_argument("--n2", action="store_true", help="count degree-two places")
    pc.add_argument("--autos", action="store_true", help="verify the automorphism pairs (i = 2)")

    pv = sub.add_parser("verify", parents=[common], help="run property suites")
    pv.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    pv.add_argument("--qmax", type=int, default=None)
    pv.add_argument("--nmax", type=int, default=None)

    po = sub.add_parser("oesterle", parents=[common], help="genus lower bound for N places over F_Q")
    po.add_argument("Q", type=int)
    po.add_argument("N", type=int)
    return parser


def render(report: Report, args: argparse.Namespace) -> str:
    if args.json:
        return report.to_json()
    if args.csv:
        return report.to_csv()
    return report.to_text()


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"symcurves: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report(command=["symcurves", *argv])
    budget = field_budget(args.max_field_order) if args.max_field_order is not None else contextlib.nullcontext()
    start = time.perf_counter()
    try:
        with budget:
            COMMANDS[args.command](report, args)
    except BudgetExceeded as exc:
        print(f"symcurves: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConvergenceError as exc:
        print(f"symcurves: numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SymcurvesError, ValueError) as exc:
        print(f"symcurves: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report.runtime = {"total": time.perf_counter() - start}
    sys.stdout.write(render(report, args))
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
