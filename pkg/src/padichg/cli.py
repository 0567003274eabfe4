"""Command line front end: verification suites, coefficient tables and
interpolation queries.

The `suite` subcommand runs a Cartesian grid of congruence checks and
writes a JSON-lines report; `table` emits coefficient or beta tables;
`interp` evaluates the interpolated functions at chosen points.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .padic import parse_rational, vp
from .hyper import (
    FrobeniusSpec,
    HGParams,
    b_coefficients,
    bhat_coefficients,
    hg_coefficients,
    twist_pair,
)
from .interp import beta_at
from .verify import (
    CheckReport,
    check_congruence_relation,
    check_dwork_transformation,
    check_integrality,
    check_main_congruence,
    check_ratio_interpolation,
    sweep_beta_pairing,
    sweep_braced,
    sweep_ratio,
    sweep_section,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

CHECK_NAMES = (
    "dwork",
    "log",
    "hat",
    "dwork-transform",
    "braced",
    "beta-pairing",
    "section-sums",
    "main-congruence",
    "ratio-identity",
    "integrality",
    "interpolation",
)

# Checks whose hypotheses need c in 1 + qW rather than just 1 + pW.
_NEEDS_Q = {"hat", "beta-pairing", "main-congruence", "interpolation", "integrality"}
# Checks that ignore the Frobenius constant entirely.
_NO_C = {"dwork", "dwork-transform", "braced", "section-sums", "ratio-identity"}


class ConfigInvalid(ValueError):
    """The suite configuration failed validation."""


@dataclass
class SuiteConfig:
    """A Cartesian verification grid plus report plumbing."""

    p_list: list[int] = field(default_factory=lambda: [3])
    n_list: list[int] = field(default_factory=lambda: [1])
    a_list: list[Fraction] = field(default_factory=lambda: [Fraction(1, 2)])
    s_list: list[int] = field(default_factory=lambda: [1])
    c_list: list[Fraction] = field(default_factory=lambda: [Fraction(1)])
    checks: list[str] = field(default_factory=list)
    prec: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "jsonl"
    jobs: int = 1

    def validate(self) -> None:
        if not self.checks:
            raise ConfigInvalid("no checks requested")
        for name in self.checks:
            if name not in CHECK_NAMES:
                raise ConfigInvalid(f"unknown check {name!r}")
        if self.fmt not in ("jsonl", "csv"):
            raise ConfigInvalid(f"unknown format {self.fmt!r}")
        for group, label in ((self.p_list, "p"), (self.n_list, "n"), (self.s_list, "s")):
            if not group or any(v < 1 for v in group):
                raise ConfigInvalid(f"{label} values must be positive")
        if self.jobs < 1:
            raise ConfigInvalid("jobs must be positive")
        if not self.a_list or not self.c_list:
            raise ConfigInvalid("a and c lists must be nonempty")


def _cell_compatible(check: str, p: int, a: Fraction, c: Fraction) -> bool:
    """Whether a grid cell satisfies the hypotheses of its check."""
    if a.denominator % p == 0:
        return False
    if a.denominator == 1 and a <= 0:
        return False
    if check not in _NO_C and c != 1:
        v = vp(c - 1, p)
        need = 2 if (p == 2 and check in _NEEDS_Q) else 1
        if v is None or v < need:
            return False
    return True


def _run_cell(task: tuple) -> CheckReport:
    """Evaluate one grid cell; the arguments are primitives for pickling."""
    check, p, a_str, s, n, c_str = task
    a, c = Fraction(a_str), Fraction(c_str)
    params = HGParams.create(a, s, p)
    if check in ("dwork", "log", "hat"):
        frob = None if check == "dwork" else FrobeniusSpec(c)
        return check_congruence_relation(check, params, frob, n)
    if check == "dwork-transform":
        return check_dwork_transformation(params, n)
    if check == "braced":
        return sweep_braced(params, n)
    if check == "beta-pairing":
        return sweep_beta_pairing(params, c, n)
    if check == "section-sums":
        return sweep_section(params, n)
    if check == "main-congruence":
        return check_main_congruence(params, c, n)
    if check == "ratio-identity":
        return sweep_ratio(params)
    if check == "integrality":
        return check_integrality(params, c, n)
    if check == "interpolation":
        return check_ratio_interpolation(params, c, n)
    raise ConfigInvalid(f"unknown check {check!r}")


def _grid_cells(config: SuiteConfig) -> tuple[list[tuple], int]:
    """Expand the grid; returns (runnable cells, skipped cell count)."""
    cells: list[tuple] = []
    skipped = 0
    for check in config.checks:
        c_values: Sequence[Fraction] = [Fraction(1)] if check in _NO_C else config.c_list
        for p in config.p_list:
            for a in config.a_list:
                for s in config.s_list:
                    for c in c_values:
                        if not _cell_compatible(check, p, a, c):
                            skipped += 1
                            continue
                        for n in config.n_list:
                            cells.append((check, p, str(a), s, n, str(c)))
    return cells, skipped


def run_suite(config: SuiteConfig, stream: Optional[TextIO] = None) -> int:
    stream = stream if stream is not None else sys.stdout
    config.validate()
    cells, skipped = _grid_cells(config)
    reports: list[tuple[tuple, CheckReport]] = []
    errors: list[tuple[tuple, str]] = []
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for task, outcome in zip(cells, pool.map(_run_cell, cells)):
                reports.append((task, outcome))
    else:
        for task in cells:
            try:
                reports.append((task, _run_cell(task)))
            except Exception as exc:  # noqa: BLE001 - recorded as a failed cell
                errors.append((task, f"{type(exc).__name__}: {exc}"))

    lines = [rep.to_json() for _, rep in reports]
    for task, msg in errors:
        lines.append(json.dumps({
            "check": task[0],
            "params": {"p": task[1], "a": task[2], "s": task[3], "n": task[4], "c": task[5]},
            "passed": False,
            "error": msg,
        }, sort_keys=True))

    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
    else:
        for line in lines:
            stream.write(line + "\n")

    failed = sum(1 for _, rep in reports if not rep.passed) + len(errors)
    _summary(stream, config.checks, reports, errors, skipped)
    return EXIT_PASS if failed == 0 else EXIT_FAIL


def _summary(stream: TextIO, checks: Sequence[str],
             reports: list[tuple[tuple, CheckReport]],
             errors: list[tuple[tuple, str]], skipped: int) -> None:
    stream.write(f"{'check':<18}{'pass':>6}{'fail':>6}\n")
    for name in checks:
        ok = sum(1 for t, r in reports if t[0] == name and r.passed)
        bad = sum(1 for t, r in reports if t[0] == name and not r.passed)
        bad += sum(1 for t, _ in errors if t[0] == name)
        stream.write(f"{name:<18}{ok:>6}{bad:>6}\n")
    if skipped:
        stream.write(f"skipped {skipped} incompatible grid cells\n")


# ---------------------------------------------------------------------------
# tables and interpolation


def emit_table(kind: str, params: HGParams, c: Fraction, count: int, prec: int,
               fmt: str, stream: TextIO, lambdas: Sequence[Fraction] = ()) -> None:
    rows: list[dict]
    if kind == "A":
        tab = hg_coefficients(params, count, prec)
        rows = [{"k": k, "residue": v.residue, "prec": v.prec}
                for k, v in enumerate(tab.values)]
    elif kind == "B":
        tab = b_coefficients(params, FrobeniusSpec(c), count, prec)
        rows = [{"k": k, "residue": v.residue, "prec": v.prec}
                for k, v in enumerate(tab.values)]
    elif kind == "Bhat":
        _, frob_hat = twist_pair(c)
        tab = bhat_coefficients(params, frob_hat, count, prec)
        rows = [{"k": k, "residue": v.residue, "prec": v.prec}
                for k, v in enumerate(tab.values)]
    elif kind == "beta":
        frob = FrobeniusSpec(c)
        rows = []
        for lam in lambdas:
            v = beta_at(lam, params, frob, prec)
            rows.append({"lambda": str(lam), "residue": v.residue, "prec": v.prec})
    else:
        raise ConfigInvalid(f"unknown table kind {kind!r}")

    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()) if rows else ["k"])
        writer.writeheader()
        writer.writerows(rows)
    else:
        for row in rows:
            stream.write(json.dumps(row, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# configuration sources


def _read_config_file(path: str) -> dict[str, str]:
    """Simple `key: value` lines; later keys win; '#' starts a comment."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise ConfigInvalid(f"bad config line: {raw.strip()!r}")
            key, val = line.split(":", 1)
            values[key.strip()] = val.strip()
    return values


_ENV_PREFIX = "PADIC_HG_"


def _layered(key: str, cli_value, file_values: dict[str, str]):
    """Precedence: explicit flag > environment > config file."""
    if cli_value is not None:
        return cli_value
    env = os.environ.get(_ENV_PREFIX + key.upper().replace("-", "_"))
    if env is not None:
        return env.split()
    if key in file_values:
        return file_values[key].split()
    return None


def _build_suite_config(args: argparse.Namespace) -> SuiteConfig:
    file_values = _read_config_file(args.config) if args.config else {}
    cfg = SuiteConfig()

    def pick(key, cli_value, cast, current):
        got = _layered(key, cli_value, file_values)
        if got is None:
            return current
        return [cast(v) for v in got]

    cfg.p_list = pick("p", args.p, int, cfg.p_list)
    cfg.n_list = pick("n", args.n, int, cfg.n_list)
    cfg.a_list = pick("a", args.a, parse_rational, cfg.a_list)
    cfg.s_list = pick("s", args.s, int, cfg.s_list)
    cfg.c_list = pick("c", args.c, parse_rational, cfg.c_list)
    cfg.checks = [str(v) for v in (pick("check", args.check, str, []) or [])]

    scalar = _layered("prec", [str(args.prec)] if args.prec is not None else None, file_values)
    if scalar is not None:
        cfg.prec = int(scalar[0])
    out = _layered("out", [args.out] if args.out else None, file_values)
    if out is not None:
        cfg.out = out[0]
    fmt = _layered("format", [args.format] if args.format else None, file_values)
    if fmt is not None:
        cfg.fmt = fmt[0]
    jobs = _layered("jobs", [str(args.jobs)] if args.jobs is not None else None, file_values)
    if jobs is not None:
        cfg.jobs = int(jobs[0])
    return cfg


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-hg",
        description="p-adic hypergeometric congruence toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run a verification grid")
    suite.add_argument("--p", nargs="+", type=int, help="primes")
    suite.add_argument("--n", nargs="+", type=int, help="congruence exponents")
    suite.add_argument("--a", nargs="+", help="parameters a as n/d strings")
    suite.add_argument("--s", nargs="+", type=int, help="multiplicities")
    suite.add_argument("--c", nargs="+", help="Frobenius constants as n/d strings")
    suite.add_argument("--check", nargs="+", choices=CHECK_NAMES, help="checks to run")
    suite.add_argument("--prec", type=int, help="precision override")
    suite.add_argument("--out", help="report path (default: stdout)")
    suite.add_argument("--format", choices=("jsonl", "csv"), help="report format")
    suite.add_argument("--jobs", type=int, help="worker processes")
    suite.add_argument("--config", help="key: value config file")

    table = sub.add_parser("table", help="emit a coefficient table")
    table.add_argument("--kind", required=True, choices=("A", "B", "Bhat", "beta"))
    table.add_argument("--a", required=True, help="parameter a as n/d")
    table.add_argument("--s", type=int, default=1)
    table.add_argument("--p", type=int, required=True)
    table.add_argument("--c", default="1")
    table.add_argument("--count", type=int, default=10)
    table.add_argument("--points", nargs="+", default=(), help="lambdas for kind=beta")
    table.add_argument("--prec", type=int, default=3)
    table.add_argument("--format", choices=("json", "csv"), default="json")
    table.add_argument("--out", help="output path (default: stdout)")

    interp = sub.add_parser("interp", help="evaluate beta at points")
    interp.add_argument("--a", required=True, help="parameter a as n/d")
    interp.add_argument("--s", type=int, default=1)
    interp.add_argument("--p", type=int, required=True)
    interp.add_argument("--c", default="1")
    interp.add_argument("--n", type=int, default=3, help="target precision")
    interp.add_argument("--lam", nargs="+", required=True, help="points lambda")
    interp.add_argument("--hat", action="store_true", help="evaluate beta-hat")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "suite":
            config = _build_suite_config(args)
            return run_suite(config)
        if args.command == "table":
            params = HGParams.create(parse_rational(args.a), args.s, args.p)
            lambdas = [parse_rational(v) for v in args.points]
            stream = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
            try:
                emit_table(args.kind, params, parse_rational(args.c), args.count,
                           args.prec, args.format, stream, lambdas)
            finally:
                if args.out:
                    stream.close()
            return EXIT_PASS
        if args.command == "interp":
            params = HGParams.create(parse_rational(args.a), args.s, args.p)
            frob = FrobeniusSpec(parse_rational(args.c))
            for lam_str in args.lam:
                lam = parse_rational(lam_str)
                value = beta_at(lam, params, frob, args.n, hat=args.hat)
                print(json.dumps({"lambda": str(lam), "residue": value.residue,
                                  "prec": value.prec}, sort_keys=True))
            return EXIT_PASS
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
