"""Command-line front end.

Three subcommands:

    verify  run identity suites at explicit parameters plus seeded
            random sweeps; exit 0 iff everything passes
    table   emit an (m, n) value grid for one overlap family
    matrix  emit one operator matrix, basis matrix, or coefficient table

Exit codes: 0 all-pass, 1 identity failure, 2 degenerate parameters,
3 usage error.  Output is deterministic for a fixed argument vector
(sorted keys, no timestamps), so reports can be diffed byte for byte.
"""

from __future__ import annotations

import argparse
import decimal
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    Params,
    build_V,
    build_X,
    build_Z,
    build_transposes,
    casimir,
    check_casimir_central,
    check_defining_relations,
    check_subalgebras,
    validate_params,
)
from .eigenbases import (
    FParams,
    LABELS,
    build_basis,
    check_orthogonality,
    oracle_basis,
)
from .errors import DegenerateParameters
from .matrices import RationalMatrix
from .matrixreps import (
    coeffs_V_on_f,
    coeffs_X_on_e,
    coeffs_Z_on_e,
    coeffs_on_d,
    coeffs_on_dstar,
    coeffs_on_z,
    verify_coefficients,
    verify_leonard_trio,
)
from .racahpoly import (
    RacahParams,
    closed_form_S,
    closed_form_Stilde,
    racah,
    verify_racah,
)
from .rationalfns import (
    calU,
    calU_tilde,
    closed_form_U,
    closed_form_Utilde,
    dual_hahn,
    dual_hahn_params,
    verify_rational,
)
from .diffmodel import verify_model
from .report import VerificationReport

Q = Fraction

SUITES = ("algebra", "bases", "matrixreps", "racah", "rational", "model")
SWEEP_DENOMINATORS = (3, 5, 7, 11, 13, 17, 19, 23)
SWEEP_NUMERATORS = tuple(k for k in range(-40, 41) if k != 0)
MAX_RESAMPLES = 100

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DEGENERATE = 2
EXIT_USAGE = 3


@dataclass
class RunConfig:
    N: int
    alpha: Fraction
    beta: Fraction
    zeta: Fraction
    rho: Fraction
    suites: tuple = SUITES
    seed: int = 0
    sweeps: int = 0
    output_format: str = "json"
    precision: int = 12
    inject_fault: bool = False
    extra: dict = field(default_factory=dict)

    def params(self) -> Params:
        return Params(N=self.N, alpha=self.alpha, beta=self.beta, zeta=self.zeta)

    def fparams(self) -> FParams:
        return FParams(rho=self.rho)


class Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here reserves 2 for
    degenerate parameters, so usage errors exit 3 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser() -> Parser:
    parser = Parser(prog="metaracah", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def add_common(sp):
        sp.add_argument("--N", type=int, default=5, help="representation size minus one")
        sp.add_argument("--alpha", type=rational, default=Q(1, 3))
        sp.add_argument("--beta", type=rational, default=Q(1, 5))
        sp.add_argument("--zeta", type=rational, default=Q(1, 7))
        sp.add_argument("--rho", type=rational, default=Q(1, 13))
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--precision", type=int, default=12,
                        help="decimal digits for csv value column")
        sp.add_argument("--out", default=None,
                        help="output file (default stdout; relative paths resolve "
                             "against $METARACAH_OUT when set)")

    sp = sub.add_parser("verify", help="run verification suites")
    add_common(sp)
    sp.add_argument("--suite", default="all",
                    help="comma-separated subset of "
                         f"{{{','.join(SUITES)}}} or 'all'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sweeps", type=int, default=0,
                    help="extra random parameter sets")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    sp = sub.add_parser("table", help="emit an overlap value grid")
    add_common(sp)
    sp.add_argument("--which", required=True,
                    choices=("racah", "S", "Stilde", "calU", "calUtilde",
                             "U", "Utilde", "dualHahn"))
    sp.add_argument("--exact", action="store_true",
                    help="csv only: append an exact p/q column")

    sp = sub.add_parser("matrix", help="emit a matrix or coefficient table")
    add_common(sp)
    sp.add_argument("--which", required=True,
                    help="one of X, V, Z, Xt, Vt, Zt, C, basis:<label>, coeffs:<basis>")
    return parser


# -- verify -------------------------------------------------------------------


def _fault_report(p: Params) -> VerificationReport:
    # bidiagonal Z with the corner entry bumped: relations must break
    Z = build_Z(p)
    bumped = RationalMatrix(
        [[Z[i, j] + (1 if i == j == 0 else 0) for j in range(p.N + 1)]
         for i in range(p.N + 1)]
    )
    rep = check_defining_relations(p, Z=bumped)
    rep.suite = "algebra-fault-injection"
    return rep


def _bases_report(p: Params, fp: FParams) -> VerificationReport:
    rep = check_orthogonality(p, fp)
    bad = [
        label
        for label in LABELS
        if build_basis(p, fp, label).vectors != oracle_basis(p, fp, label).vectors
    ]
    rep.add(
        "closed-vs-oracle",
        "closed-form expansions equal the pencil-kernel oracle for all families",
        not bad,
        detail="" if not bad else f"failing families: {bad}",
    )
    return rep


def run_suites(p: Params, fp: FParams, suites) -> list:
    reports = []
    for suite in suites:
        if suite == "algebra":
            reports.append(check_defining_relations(p))
            reports.append(check_casimir_central(p))
            reports.append(check_subalgebras(p, fp.rho))
        elif suite == "bases":
            reports.append(_bases_report(p, fp))
        elif suite == "matrixreps":
            reports.append(verify_coefficients(p, fp))
            reports.append(verify_leonard_trio(p))
        elif suite == "racah":
            reports.append(verify_racah(p, fp))
        elif suite == "rational":
            reports.append(verify_rational(p))
        elif suite == "model":
            reports.append(verify_model(p, fp))
    return reports


def sweep_parameters(rng: random.Random, N: int):
    def draw():
        return Q(rng.choice(SWEEP_NUMERATORS), rng.choice(SWEEP_DENOMINATORS))

    return Params(N=N, alpha=draw(), beta=draw(), zeta=draw()), FParams(rho=draw())


def cmd_verify(cfg: RunConfig) -> tuple:
    try:
        p = cfg.params()
        fp = cfg.fparams()
        offenders = validate_params(p, fp.rho)
        if offenders:
            raise DegenerateParameters(offenders)
        reports = run_suites(p, fp, cfg.suites)
    except DegenerateParameters as exc:
        payload = {"error": "degenerate-parameters", "offenders": exc.offenders}
        return EXIT_DEGENERATE, json.dumps(payload, sort_keys=True, indent=2) + "\n"

    if cfg.inject_fault:
        reports.append(_fault_report(p))

    skipped = 0
    rng = random.Random(cfg.seed)
    for i in range(cfg.sweeps):
        done = False
        for _ in range(MAX_RESAMPLES):
            sp, sfp = sweep_parameters(rng, cfg.N)
            if validate_params(sp, sfp.rho):
                continue
            try:
                sweep_reports = run_suites(sp, sfp, cfg.suites)
            except DegenerateParameters:
                continue
            for r in sweep_reports:
                r.suite = f"sweep-{i}/{r.suite}"
            reports.extend(sweep_reports)
            done = True
            break
        if not done:
            skipped += 1
            rep = VerificationReport(suite=f"sweep-{i}", params={"N": str(cfg.N)})
            rep.add_skipped("sweep", "no nondegenerate parameters found within budget")
            reports.append(rep)

    ok = all(r.passed for r in reports)
    payload = {
        "reports": [r.as_dict() for r in reports],
        "skipped_sweeps": skipped,
        "status": "pass" if ok else "fail",
    }
    if cfg.output_format == "csv":
        lines = ["suite,id,status,detail"]
        for r in reports:
            for c in sorted(r.checks, key=lambda c: c.id):
                detail = (c.detail or "").replace(",", ";").replace("\n", " ")
                lines.append(f"{r.suite},{c.id},{c.status},{detail}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


# -- table --------------------------------------------------------------------


def _decimal_str(v: Fraction, precision: int) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        d = decimal.Decimal(v.numerator) / decimal.Decimal(v.denominator)
    return str(d)


def table_value(which: str, m: int, n: int, p: Params, fp: FParams) -> Fraction:
    if which == "racah":
        return racah(m, n, RacahParams.from_params(p, fp))
    if which == "S":
        return closed_form_S(m, n, RacahParams.from_params(p, fp))
    if which == "Stilde":
        return closed_form_Stilde(m, n, RacahParams.from_params(p, fp))
    if which == "calU":
        return calU(m, n, p)
    if which == "calUtilde":
        return calU_tilde(m, n, p)
    if which == "U":
        return closed_form_U(m, n, p)
    if which == "Utilde":
        return closed_form_Utilde(m, n, p)
    if which == "dualHahn":
        return dual_hahn(m, n, dual_hahn_params(p))
    raise ValueError(which)


def cmd_table(cfg: RunConfig) -> tuple:
    which = cfg.extra["which"]
    try:
        p = cfg.params()
        fp = cfg.fparams()
        needs_rho = which in ("racah", "S", "Stilde")
        offenders = validate_params(p, fp.rho if needs_rho else None)
        if offenders:
            raise DegenerateParameters(offenders)
        grid = [
            [table_value(which, m, n, p, fp) for n in range(p.N + 1)]
            for m in range(p.N + 1)
        ]
    except DegenerateParameters as exc:
        payload = {"error": "degenerate-parameters", "offenders": exc.offenders}
        return EXIT_DEGENERATE, json.dumps(payload, sort_keys=True, indent=2) + "\n"

    if cfg.output_format == "csv":
        header = "m,n,value" + (",exact" if cfg.extra.get("exact") else "")
        lines = [header]
        for m in range(p.N + 1):
            for n in range(p.N + 1):
                v = grid[m][n]
                row = f"{m},{n},{_decimal_str(v, cfg.precision)}"
                if cfg.extra.get("exact"):
                    row += f",{v}"
                lines.append(row)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "which": which,
            "params": {**p.as_dict(), "rho": str(fp.rho)},
            "grid": [[str(v) for v in row] for row in grid],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return EXIT_OK, text


# -- matrix -------------------------------------------------------------------


def _matrix_rows(mat: RationalMatrix) -> list:
    return [[str(mat[(i, j)]) for j in range(mat.cols)] for i in range(mat.rows)]


MATRIX_SELECTORS = ("X", "V", "Z", "Xt", "Vt", "Zt", "C")
COEFF_BASES = ("e", "f", "d", "dStar", "z")


def cmd_matrix(cfg: RunConfig) -> tuple:
    which = cfg.extra["which"]
    if which.startswith("basis:"):
        if which.split(":", 1)[1] not in LABELS:
            return EXIT_USAGE, f"metaracah: unknown basis label in {which!r}\n"
    elif which.startswith("coeffs:"):
        if which.split(":", 1)[1] not in COEFF_BASES:
            return EXIT_USAGE, f"metaracah: no coefficient table for {which!r}\n"
    elif which not in MATRIX_SELECTORS:
        return EXIT_USAGE, f"metaracah: unknown matrix selector {which!r}\n"
    try:
        p = cfg.params()
        fp = cfg.fparams()
        needs_rho = which in ("basis:f", "basis:fStar", "coeffs:f")
        offenders = validate_params(p, fp.rho if needs_rho else None)
        if offenders:
            raise DegenerateParameters(offenders)

        payload = {"which": which, "params": {**p.as_dict(), "rho": str(fp.rho)}}
        if which in ("X", "V", "Z"):
            mat = {"X": build_X, "V": build_V, "Z": build_Z}[which](p)
            payload["rows"] = _matrix_rows(mat)
        elif which in ("Xt", "Vt", "Zt"):
            Zt, Vt, Xt = build_transposes(p)
            mat = {"Xt": Xt, "Vt": Vt, "Zt": Zt}[which]
            payload["rows"] = _matrix_rows(mat)
        elif which == "C":
            if not check_casimir_central(p).passed:
                return EXIT_FAIL, "casimir centrality failed on emit\n"
            payload["rows"] = _matrix_rows(casimir(p))
        elif which.startswith("basis:"):
            label = which.split(":", 1)[1]
            fam = build_basis(p, fp, label)
            if fam.vectors != oracle_basis(p, fp, label).vectors:
                return EXIT_FAIL, f"basis {label} failed revalidation on emit\n"
            payload["rows"] = _matrix_rows(fam.vectors)
            payload["eigenvalues"] = [str(v) for v in fam.eigenvalues]
        elif which.startswith("coeffs:"):
            basis = which.split(":", 1)[1]
            if basis == "e":
                bands = {"Z": coeffs_Z_on_e(p), "X": coeffs_X_on_e(p)}
            elif basis == "f":
                bands = {"V": coeffs_V_on_f(p, fp)}
            elif basis == "d":
                bands = coeffs_on_d(p)
            elif basis == "dStar":
                bands = coeffs_on_dstar(p)
            else:
                bands = coeffs_on_z(p)
            payload["bands"] = {
                name: {
                    "sup": [str(v) for v in tc.sup],
                    "diag": [str(v) for v in tc.diag],
                    "sub": [str(v) for v in tc.sub],
                }
                for name, tc in bands.items()
            }
    except DegenerateParameters as exc:
        payload = {"error": "degenerate-parameters", "offenders": exc.offenders}
        return EXIT_DEGENERATE, json.dumps(payload, sort_keys=True, indent=2) + "\n"

    return EXIT_OK, json.dumps(payload, sort_keys=True, indent=2) + "\n"


# -- entry point ---------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    base = os.environ.get("METARACAH_OUT")
    path = os.path.join(base, out) if base and not os.path.isabs(out) else out
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    suites = SUITES
    if getattr(args, "suite", None) and args.suite != "all":
        wanted = tuple(s.strip() for s in args.suite.split(","))
        unknown = [s for s in wanted if s not in SUITES]
        if unknown:
            print(f"metaracah: unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
            return EXIT_USAGE
        suites = tuple(s for s in SUITES if s in wanted)

    cfg = RunConfig(
        N=args.N,
        alpha=args.alpha,
        beta=args.beta,
        zeta=args.zeta,
        rho=args.rho,
        suites=suites,
        seed=getattr(args, "seed", 0),
        sweeps=getattr(args, "sweeps", 0),
        output_format=args.format,
        precision=args.precision,
        inject_fault=getattr(args, "inject_fault", False),
        extra={
            "which": getattr(args, "which", None),
            "exact": getattr(args, "exact", False),
        },
    )
    if cfg.N < 1:
        print("metaracah: --N must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if cfg.sweeps < 0 or cfg.precision < 1:
        print("metaracah: --sweeps must be >= 0 and --precision >= 1", file=sys.stderr)
        return EXIT_USAGE

    handler = {"verify": cmd_verify, "table": cmd_table, "matrix": cmd_matrix}[args.command]
    code, text = handler(cfg)
    if code == EXIT_USAGE:
        sys.stderr.write(text)
    else:
        _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
