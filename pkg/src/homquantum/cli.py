"""Command-line front end: ``homquantum {verify,catalog,twist,hybe,braid}``.

Exit codes: 0 everything passed, 1 a check failed or a construction's
hypothesis was violated, 2 unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import catalog, hommodules, quasitri, structio, twisting
from .homstruct import HomBialgebra, StructureError, VerificationReport, check_all_bialgebra
from .quasitri import QTHomBialgebra
from .scalars import DEFAULT_ORDER, DEFAULT_TOLERANCE, ScalarRing
from .uhsl2 import Uhsl2Model, intertwining_residual, r_invariance_residual

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCE
    order: int | None = None
    out: str | None = None
    format: str = "text"
    verify: bool = True

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if self.order is not None and self.order < 1:
            raise UsageError("--order must be >= 1")

    @property
    def effective_order(self) -> int:
        return self.order if self.order is not None else DEFAULT_ORDER


def parse_complex(text: str) -> complex:
    """``"0.3"``, ``"1+0.5i"``, ``"2j"``, ``"-i"``."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    s = s.replace("+j", "+1j").replace("-j", "-1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


# ---------------------------------------------------------------------------
# output helpers


def _format_report(report: VerificationReport, title: str) -> str:
    lines = [f"{title}: {'PASS' if report.passed else 'FAIL'} (tolerance {report.tolerance:g})"]
    for name, value in report.residuals.items():
        flag = "ok" if value < report.tolerance else "FAIL"
        lines.append(f"  {name:<28} {value:.3e}  {flag}")
    for name, value in report.properties.items():
        lines.append(f"  {name:<28} {value:.3e}  (property)")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _reports_output(cfg: RunConfig, reports: list[tuple[str, VerificationReport]], extra: dict | None = None) -> str:
    if cfg.format == "json":
        data = {
            "tolerance": cfg.tolerance,
            "order": cfg.effective_order,
            "reports": {name: rep.to_json() for name, rep in reports},
            "pass": all(rep.passed for _, rep in reports),
        }
        if extra:
            data.update(extra)
        return json.dumps(data, indent=2, sort_keys=True)
    lines = [f"tolerance {cfg.tolerance:g}, order {cfg.effective_order}"]
    lines += [_format_report(rep, name) for name, rep in reports]
    return "\n".join(lines)


def _exit_code(reports) -> int:
    return EXIT_PASS if all(rep.passed for _, rep in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


def verify_structure(s: HomBialgebra | QTHomBialgebra, tolerance: float) -> VerificationReport:
    if isinstance(s, QTHomBialgebra):
        return quasitri.check_all_qt(s, tolerance)
    return check_all_bialgebra(s, tolerance)


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.inputs:
        raise UsageError("verify needs at least one structure file")

    def load(path: str):
        return structio.read_structure(path, order=cfg.order, tolerance=cfg.tolerance)

    def run(path: str):
        try:
            s = load(path)
        except structio.StructureFileError as exc:
            return path, None, str(exc)
        return path, verify_structure(s, cfg.tolerance), None

    with ThreadPoolExecutor() as pool:
        results = list(pool.map(run, cfg.inputs))

    errors = [(p, e) for p, _, e in results if e is not None]
    reports = [(p, r) for p, r, _ in results if r is not None]
    for _, err in errors:
        _status(f"error: {err}")
    extra = {"errors": {p: e for p, e in errors}} if errors else None
    _emit(cfg, _reports_output(cfg, reports, extra))
    if errors:
        return EXIT_INPUT
    return _exit_code(reports)


# ---------------------------------------------------------------------------
# catalog


def _write_structure(cfg: RunConfig, s) -> None:
    text = structio.dump_structure(s)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _finish_construction(cfg: RunConfig, s, name: str) -> int:
    if cfg.verify:
        report = verify_structure(s, cfg.tolerance)
        _status(_format_report(report, name))
        if not report.passed:
            return EXIT_FAIL
    _write_structure(cfg, s)
    return EXIT_PASS


def cmd_catalog(cfg: RunConfig, args) -> int:
    ring = ScalarRing.complex(cfg.tolerance)
    kind = args.family
    if kind == "anyon":
        s = catalog.anyonic_hom(args.n, args.k, args.t, ring, verify=cfg.verify)
        return _finish_construction(cfg, s, f"anyon n={args.n} k={args.k} t={args.t}")
    if kind == "kg":
        g = catalog.parse_orders(args.orders)
        b = catalog.group_bialgebra(g, ring)
        if args.r is None:
            return _finish_construction(cfg, b, f"kG {g.orders}")
        table = structio.read_table(args.r, ring, g.order)
        first, second = catalog.check_group_r(g, table)
        if not max(first, second) < cfg.tolerance:
            raise twisting.HypothesisError(f"R table violates the group R conditions ({first:.3e}, {second:.3e})")
        return _finish_construction(cfg, QTHomBialgebra(b, ring.lift(table)), f"kG {g.orders}")
    if kind == "kfun":
        g = catalog.parse_orders(args.orders)
        b = catalog.function_bialgebra(g, ring)
        if args.bicharacter == "exp":
            chi = catalog.exp_bicharacter(g)
        else:
            chi = np.ones((g.order, g.order), dtype=complex)
        return _finish_construction(cfg, QTHomBialgebra(b, catalog.bicharacter_r(g, chi, ring)), f"k(G) {g.orders}")
    if kind == "uhsl2":
        model = Uhsl2Model(args.c, cfg.effective_order, cfg.tolerance)
        m = args.n if args.m is None else args.m
        r = model.r_operator(args.n, m)
        extra = {"n": args.n, "m": m, "c": [model.c.real, model.c.imag]}
        if cfg.verify:
            residuals = {"intertwining": intertwining_residual(model, args.n)}
            if m == args.n:
                residuals["r_alpha_invariance"] = r_invariance_residual(model, args.n)
            report = VerificationReport(residuals, cfg.tolerance)
            _status(_format_report(report, f"uhsl2 n={args.n} m={m}"))
            if not report.passed:
                return EXIT_FAIL
        _emit(cfg, structio.dump_operator(r, **extra))
        return EXIT_PASS
    raise UsageError(f"unknown catalog family {kind!r}")


# ---------------------------------------------------------------------------
# twist


def cmd_twist(cfg: RunConfig, args) -> int:
    s = structio.read_structure(args.structure, order=cfg.order, tolerance=cfg.tolerance)
    base = s.base if isinstance(s, QTHomBialgebra) else s
    if args.alpha is None and args.power is None:
        raise UsageError("twist needs --alpha, --power, or both")
    if args.alpha is not None:
        alpha = structio.read_matrix(args.alpha, base.ring, base.dim)
        if isinstance(s, QTHomBialgebra):
            s = twisting.qt_yau_twist(base, s.R, alpha, verify=cfg.verify, tolerance=cfg.tolerance)
        else:
            s = twisting.yau_twist(base, alpha, verify=cfg.verify, tolerance=cfg.tolerance)
    if args.power is not None:
        if not isinstance(s, QTHomBialgebra):
            raise UsageError("--power needs a structure with an R field")
        s = twisting.twist_r(s, args.power, verify=cfg.verify, tolerance=cfg.tolerance)
    return _finish_construction(cfg, s, "twisted structure")


# ---------------------------------------------------------------------------
# hybe / braid


def _solution(cfg: RunConfig, args) -> tuple[hommodules.HybeSolution, str]:
    if args.source == "uhsl2":
        if args.n is None:
            raise UsageError("uhsl2 needs --n")
        model = Uhsl2Model(args.c, cfg.effective_order, cfg.tolerance)
        return hommodules.uhsl2_b_alpha(model, args.n, force=args.force), f"V_{args.n} c={args.c}"
    if args.structure is None:
        raise UsageError("give --structure FILE or the uhsl2 source")
    s = structio.read_structure(args.structure, order=cfg.order, tolerance=cfg.tolerance)
    if not isinstance(s, QTHomBialgebra):
        raise UsageError("the structure has no R field")
    if args.module != "regular":
        raise UsageError(f"unsupported module {args.module!r}")
    module = hommodules.regular_module(s)
    return hommodules.build_b(module, q=s, force=args.force, tolerance=cfg.tolerance), "regular module"


def _braid_report(cfg: RunConfig, sol, strands: int) -> VerificationReport:
    ops = hommodules.braid_operators(sol, strands)
    return VerificationReport(hommodules.check_braid_relations(ops), cfg.tolerance)


def cmd_hybe(cfg: RunConfig, args) -> int:
    sol, name = _solution(cfg, args)
    reports = [(name, hommodules.hybe_report(sol, cfg.tolerance))]
    if args.strands is not None:
        reports.append((f"braid relations, {args.strands} strands", _braid_report(cfg, sol, args.strands)))
    if args.emit_matrix:
        Path(args.emit_matrix).write_text(structio.dump_operator(sol.B))
    _emit(cfg, _reports_output(cfg, reports))
    return _exit_code(reports)


def cmd_braid(cfg: RunConfig, args) -> int:
    sol, name = _solution(cfg, args)
    strands = args.strands if args.strands is not None else 3
    reports = [
        (name, hommodules.hybe_report(sol, cfg.tolerance)),
        (f"braid relations, {strands} strands", _braid_report(cfg, sol, strands)),
    ]
    if args.emit_matrix:
        Path(args.emit_matrix).write_text(structio.dump_operator(sol.B))
    _emit(cfg, _reports_output(cfg, reports))
    return _exit_code(reports)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="residual threshold (default 1e-9)")
    common.add_argument("--order", type=int, default=None, help="h-series truncation order (default 8)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--no-verify", dest="verify", action="store_false", help="skip re-verification of constructions")

    # argparse exits with 2 on usage errors, which is also our input-error code
    parser = argparse.ArgumentParser(prog="homquantum", description="Hom-quantum group verifier")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check every axiom of one or more structure files")
    p.add_argument("files", nargs="+")

    # the common flags live on each family so their values are not reset by nested defaults
    p = sub.add_parser("catalog", help="emit a catalog structure")
    fam = p.add_subparsers(dest="family", required=True)
    a = fam.add_parser("anyon", parents=[common])
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--k", type=int, default=1)
    a.add_argument("--t", type=int, default=0)
    a = fam.add_parser("kg", parents=[common])
    a.add_argument("--orders", required=True)
    a.add_argument("--r", default=None, help="JSON file with the R table")
    a = fam.add_parser("kfun", parents=[common])
    a.add_argument("--orders", required=True)
    a.add_argument("--bicharacter", choices=("exp", "trivial"), default="exp")
    a = fam.add_parser("uhsl2", parents=[common])
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--m", type=int, default=None)
    a.add_argument("--c", type=parse_complex, default=0j)

    p = sub.add_parser("twist", parents=[common], help="twist a structure file by alpha and/or twist its R by powers of alpha")
    p.add_argument("--structure", required=True)
    p.add_argument("--alpha", default=None, help="file with the twisting matrix")
    p.add_argument("--power", type=int, default=None, help="replace R by (alpha^n (x) alpha^n)(R)")

    for name, text in (("hybe", "build B = tau o R and check the HYBE"), ("braid", "check braid relations")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("source", nargs="?", choices=("uhsl2",), default=None)
        p.add_argument("--structure", default=None)
        p.add_argument("--module", default="regular", choices=("regular",))
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--c", type=parse_complex, default=0j)
        p.add_argument("--strands", type=int, default=None)
        p.add_argument("--emit-matrix", default=None, help="write the B operator to this file")
        p.add_argument("--force", action="store_true", help="debug: build B even if R is not alpha-invariant")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            args.command,
            inputs=list(getattr(args, "files", []) or []),
            tolerance=args.tolerance,
            order=args.order,
            out=args.out,
            format=args.format,
            verify=args.verify,
        )
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "catalog":
            return cmd_catalog(cfg, args)
        if args.command == "twist":
            return cmd_twist(cfg, args)
        if args.command == "hybe":
            return cmd_hybe(cfg, args)
        return cmd_braid(cfg, args)
    except (twisting.HypothesisError, twisting.VerificationError) as exc:
        _status(f"hypothesis violated: {exc}")
        return EXIT_FAIL
    except (UsageError, structio.StructureFileError, StructureError, ValueError) as exc:
        _status(f"error: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        _status(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
