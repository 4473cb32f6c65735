"""Command-line front end.

Exit status: 0 when every checked residual vanishes (exact mode) or stays
below tolerance (numeric mode), 1 when some residual does not, 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Signature, blade_product
from .ccr import ccr_residuals
from .fields import MultivectorField, as_numeric, numeric_vector_derivative, vector_derivative
from .fieldfile import FieldFileError, parse_field, serialize_field_file
from .spacetime import (
    STA,
    antiselfdual_residual,
    even_sector_residuals,
    field_strength,
    gauge_transform,
    gauss_residual,
    maxwell_residual,
    spacetime_split,
    three_d_maxwell_residuals,
)

DEFAULT_TOL = 1e-8
DEFAULT_H = 1e-5
DEFAULT_GRID = "-1:1:3"


class UsageError(Exception):
    pass


@dataclass
class Residual:
    name: str
    grade: int
    zero: bool
    detail: list[str] = field(default_factory=list)
    max_norm: float | None = None


@dataclass
class Report:
    command: str
    residuals: list[Residual] = field(default_factory=list)
    info: list[str] = field(default_factory=list)
    error: str | None = None
    tol: float | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if all(r.zero for r in self.residuals) else 1

    def render(self) -> str:
        lines = [f"$ ccr {self.command}"]
        lines.extend(self.info)
        for r in self.residuals:
            verdict = "zero" if r.zero else "nonzero"
            head = f"residual {r.name} [grade {r.grade}]: {verdict}"
            if r.max_norm is not None:
                head += f" (max {r.max_norm:.3e}, tol {self.tol:g})"
            lines.append(head)
            lines.extend(f"    {d}" for d in r.detail)
        if self.residuals:
            lines.append(f"status: {'ok' if self.exit_code == 0 else 'nonzero residual'}")
        return "\n".join(lines) + "\n"


def field_lines(F: MultivectorField) -> list[str]:
    return serialize_field_file(F).splitlines()[1:]


def exact_residual(name: str, grade: int, F: MultivectorField) -> Residual:
    return Residual(name, grade, F.is_zero(), field_lines(F))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccr", description="Clifford-Cauchy-Riemann checks for multivector fields")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="print the Cayley table of Cl(p,q)")
    t.add_argument("--signature", required=True, help="sign string, e.g. ++ or -+++")

    c = sub.add_parser("check", help="CCR residuals of a field")
    c.add_argument("file")
    c.add_argument("--numeric", action="store_true", help="finite differences on a grid")
    c.add_argument("--h", type=float, default=DEFAULT_H)
    c.add_argument("--grid", default=DEFAULT_GRID, help="lo:hi:count, or one spec per coordinate separated by commas")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)

    d = sub.add_parser("derive", help="print the vector derivative of a field")
    d.add_argument("file")

    m = sub.add_parser("maxwell", help="field strength, Maxwell, Gauss and self-duality residuals")
    m.add_argument("--potential", required=True)
    m.add_argument("--lambda", dest="gauge")

    s = sub.add_parser("split", help="E/B split and vector-calculus Maxwell residuals")
    s.add_argument("file")

    e = sub.add_parser("even-check", help="even-sector CCR residuals")
    e.add_argument("--f0", required=True)
    e.add_argument("--f2", required=True)
    e.add_argument("--f4", required=True)
    return p


# options whose values may start with "-" ("-+++", "--", "-1:1:3")
_DASH_VALUED = ("--signature", "--grid")


def _lift_dash_values(argv: list[str]) -> tuple[list[str], dict[str, str]]:
    # argparse reads such values as options (and drops a bare "--"), so they
    # are taken out before parsing and a placeholder is left behind
    out: list[str] = []
    values: dict[str, str] = {}
    i = 0
    while i < len(argv):
        a = argv[i]
        opt, eq, value = a.partition("=")
        if opt in _DASH_VALUED and (eq or i + 1 < len(argv)):
            if not eq:
                value = argv[i + 1]
                i += 1
            values[opt[2:]] = value
            out.append(f"{opt}=?")
        else:
            out.append(a)
        i += 1
    return out, values


def _load(path: str) -> MultivectorField:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_field(text)
    except FieldFileError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _grid(spec: str, n: int) -> list[tuple[float, ...]]:
    parts = spec.split(",")
    if len(parts) == 1:
        parts = parts * n
    if len(parts) != n:
        raise UsageError(f"grid has {len(parts)} coordinate specs, field has {n} coordinates")
    axes = []
    for part in parts:
        try:
            lo, hi, count = part.split(":")
            lo, hi, count = float(lo), float(hi), int(count)
        except ValueError:
            raise UsageError(f"bad grid spec {part!r}; expected lo:hi:count") from None
        if count < 1:
            raise UsageError("grid count must be at least 1")
        if count == 1:
            axes.append([lo])
        else:
            axes.append([lo + (hi - lo) * k / (count - 1) for k in range(count)])
    return list(itertools.product(*axes))


def cmd_table(args, report: Report) -> None:
    try:
        sig = Signature.from_string(args.signature)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    masks = sig.masks()
    labels = [sig.blade_label(m) for m in masks]

    def entry(a: int, b: int) -> str:
        s, m = blade_product(a, b, sig)
        return ("-" if s < 0 else "") + sig.blade_label(m)

    rows = [[""] + labels] + [[labels[i]] + [entry(a, b) for b in masks] for i, a in enumerate(masks)]
    width = max(len(c) for row in rows for c in row) + 2
    report.info.append(f"signature {sig}")
    for row in rows:
        report.info.append("".join(c.ljust(width) for c in row).rstrip())


def cmd_check(args, report: Report) -> None:
    F = _load(args.file)
    report.info.append(f"signature {F.sig}")
    ccr = ccr_residuals(F)
    if not args.numeric:
        for name, grade, r in ccr.entries():
            report.residuals.append(exact_residual(name, grade, r))
        report.info.append(f"monogenic: {'yes' if ccr.monogenic else 'no'}")
        return
    if not args.h > 0:
        raise UsageError("--h must be positive")
    report.tol = args.tol
    points = _grid(args.grid, F.sig.n)
    phi = as_numeric(F)
    worst = {k: 0.0 for k in range(F.sig.n + 1)}
    for p in points:
        d = numeric_vector_derivative(phi, p, args.h)
        for k in worst:
            worst[k] = max(worst[k], d.grade(k).max_abs())
    report.info.append(f"numeric: h={args.h:g}, {len(points)} grid points")
    for name, grade, _ in ccr.entries():
        norm = worst[grade]
        report.residuals.append(Residual(name, grade, norm <= args.tol, max_norm=norm))


def cmd_derive(args, report: Report) -> None:
    F = _load(args.file)
    report.info.extend(serialize_field_file(vector_derivative(F)).splitlines())


def _require_sta(F: MultivectorField, path: str) -> None:
    if F.sig != STA.sig:
        raise UsageError(f"{path}: expected signature -+++, got {F.sig}")


def cmd_maxwell(args, report: Report) -> None:
    A = _load(args.potential)
    _require_sta(A, args.potential)
    if not A.is_pure(1):
        raise UsageError(f"{args.potential}: potential must be a grade-1 field")
    if args.gauge:
        lam = _load(args.gauge)
        _require_sta(lam, args.gauge)
        if not lam.is_pure(0):
            raise UsageError(f"{args.gauge}: gauge function must be a scalar field")
        A = gauge_transform(A, lam)
        report.info.append("potential after gauge transform:")
        report.info.extend(f"    {line}" for line in field_lines(A))
    F = field_strength(A)
    report.info.append("field strength F = d^A:")
    report.info.extend(f"    {line}" for line in field_lines(F))
    dF = maxwell_residual(F)
    report.residuals.append(exact_residual("dF", 1, dF.grade(1)))
    report.residuals.append(exact_residual("dF", 3, dF.grade(3)))
    report.residuals.append(exact_residual("Gauss d.A", 0, gauss_residual(A)))
    report.residuals.append(exact_residual("F + F I^-1", 2, antiselfdual_residual(F, -1)))
    report.residuals.append(exact_residual("F - F I^-1", 2, antiselfdual_residual(F, 1)))


def cmd_split(args, report: Report) -> None:
    F = _load(args.file)
    _require_sta(F, args.file)
    if not F.is_pure(2):
        raise UsageError(f"{args.file}: split needs a grade-2 field")
    sp = spacetime_split(F)
    for name, comps in (("E", sp.E), ("B", sp.B)):
        for i, p in enumerate(comps, start=1):
            report.info.append(f"{name}{i} = {p.format(0)}")
    for name, grade, comps in three_d_maxwell_residuals(sp).items():
        detail = []
        if len(comps) == 1:
            if comps[0]:
                detail.append(comps[0].format(0))
        else:
            detail = [f"[{i}] {p.format(0)}" for i, p in enumerate(comps, start=1) if p]
        report.residuals.append(Residual(name, grade, not any(comps), detail))


def cmd_even_check(args, report: Report) -> None:
    f0, f2, f4 = (_load(p) for p in (args.f0, args.f2, args.f4))
    sig = f0.sig
    for F, path in ((f2, args.f2), (f4, args.f4)):
        if F.sig != sig:
            raise UsageError(f"{path}: signature {F.sig} differs from {sig}")
    for F, path, k in ((f0, args.f0, 0), (f2, args.f2, 2), (f4, args.f4, sig.n)):
        if not F.is_pure(k):
            raise UsageError(f"{path}: expected a grade-{k} field")
    r1, r2 = even_sector_residuals(f0, f2, f4)
    report.residuals.append(exact_residual("d f0 + d.f2", 1, r1))
    report.residuals.append(exact_residual("d^f2 + d.f4", 3, r2))


COMMANDS = {
    "table": cmd_table,
    "check": cmd_check,
    "derive": cmd_derive,
    "maxwell": cmd_maxwell,
    "split": cmd_split,
    "even-check": cmd_even_check,
}


def run_command(argv: list[str]) -> Report:
    report = Report(" ".join(shlex.quote(a) for a in argv))
    try:
        rest, lifted = _lift_dash_values(list(argv))
        args = build_parser().parse_args(rest)
        for name, value in lifted.items():
            if hasattr(args, name):
                setattr(args, name, value)
        COMMANDS[args.cmd](args, report)
    except UsageError as exc:
        report.error = str(exc)
        report.residuals.clear()
    return report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    report = run_command(argv)
    if report.error is not None:
        sys.stderr.write(f"ccr: error: {report.error}\n")
        return 2
    sys.stdout.write(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
