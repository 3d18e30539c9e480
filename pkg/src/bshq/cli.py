"""Command-line front end: spectra, coefficient tables and verification reports.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

from .lattice import oscillator_basis
from .qreduction import multiplicity_report
from .red_quant import BCoefficientError, b_coefficients
from .verify import COMMUTANT_QMAX, SCOPES, RunConfig, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------------
# deterministic serialization


def _fmt_float(x: float) -> str:
    if math.isfinite(x):
        return format(x, ".17g")
    return '"inf"' if x > 0 else ('"-inf"' if x < 0 else '"nan"')


def dumps(obj: Any) -> str:
    """JSON with sorted keys and floats printed to 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{dumps(str(k))}: {dumps(obj[k])}" for k in sorted(obj))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header: Sequence[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(row[h]) for h in header])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return v


def _text_table(header: Sequence[str], rows: list[dict]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(_csv_cell(r[h])) for h in header) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(fmt: str, header: Sequence[str], rows: list[dict], config: dict) -> str:
    if fmt == "json":
        return dumps({"config": config, "rows": rows}) + "\n"
    if fmt == "csv":
        return _csv(header, rows)
    return _text_table(header, rows)


# ---------------------------------------------------------------------------------
# commands


def cmd_spectrum(n_max: int, hbar: float = 1.0, fmt: str = "json") -> str:
    if n_max < 0:
        raise UsageError("--nmax must be nonnegative")
    rows = [{"m": m, "n": n, "A1": m * hbar, "A2": n * hbar, "E": (m + n) * hbar, "L": (m - n) * hbar}
            for m, n in oscillator_basis(n_max)]
    return _emit(fmt, ["m", "n", "A1", "A2", "E", "L"], rows, {"n_max": n_max, "hbar": hbar})


def bcoeff_rows(q: int, hbar: float = 1.0) -> list[dict]:
    """Rows for ``p = -q..q`` followed by the two boundary points ``q+1`` and ``q+2``."""
    bc = b_coefficients(q)
    return [{"p": p, "chain": bc.chain(p), "b_sq": v,
             "b": bc.b(p, hbar), "boundary": bc.is_boundary(p)}
            for p, v in bc.b_sq.items() if p >= -q]


def cmd_bcoeff(q: int, hbar: float = 1.0, fmt: str = "json") -> str:
    if q < 0:
        raise UsageError("--q must be nonnegative")
    return _emit(fmt, ["p", "chain", "b_sq", "b", "boundary"], bcoeff_rows(q, hbar), {"q": q, "hbar": hbar})


MULT_KEYS = ["q", "dim_Hq", "dim_Hq0", "dim_Hq1", "surplus", "commutant_Hq", "commutant_Hqtilde"]


def cmd_multiplicity(n_max: int, hbar: float = 1.0, fmt: str = "json") -> str:
    if n_max < 0:
        raise UsageError("--nmax must be nonnegative")
    rows = [{k: (row["surplus_only_in_reduced"] if k == "surplus" else row[k]) for k in MULT_KEYS}
            for row in multiplicity_report(n_max, hbar, COMMUTANT_QMAX)]
    return _emit(fmt, MULT_KEYS, rows, {"n_max": n_max, "hbar": hbar, "commutant_qmax": COMMUTANT_QMAX})


def cmd_verify(scope: str, cfg: RunConfig, fmt: str = "json") -> tuple[str, int]:
    if fmt == "csv":
        raise UsageError("verification reports are emitted as json or text")
    report = run_verification(scope, cfg)
    code = EXIT_OK if report.passed else EXIT_FAIL
    if fmt == "json":
        config = {"scope": scope, "hbar": cfg.hbar, "tol": cfg.tol, "n_max": cfg.n_max,
                  "q": cfg.q, "seed": cfg.seed, "trials": cfg.trials}
        doc = {"config": config, "checks": [c.as_dict() for c in report.checks], "summary": report.summary()}
        return dumps(doc) + "\n", code
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  residual={c.max_abs_residual:.3e}  tol={c.tolerance:.1e}"
             for c in report.checks]
    s = report.summary()
    lines.append(f"{s['passed']} passed, {s['failed']} failed")
    return "\n".join(lines) + "\n", code


# ---------------------------------------------------------------------------------
# argument parsing


def _positive(kind):
    def parse(s: str):
        v = kind(s)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {s}")
        return v
    return parse


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=_positive(float), default=1.0)
    common.add_argument("--tol", type=_positive(float), default=1e-10)
    common.add_argument("--nmax", type=_nonneg_int, default=20)
    common.add_argument("--q", type=_nonneg_int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive(int), default=1000,
                        help="random trials for the classical and su2 scopes")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="bshq", description="Oscillator quantization checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="joint spectra of (QA1, QA2) and (QE, QL)")
    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("scope", choices=(*SCOPES, "all"))
    sub.add_parser("bcoeff", parents=[common], help="shift coefficients of the reduced space")
    sub.add_parser("multiplicity", parents=[common], help="per-shell dimensions and commutants")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "spectrum":
            out, code = cmd_spectrum(args.nmax, args.hbar, args.format), EXIT_OK
        elif args.command == "bcoeff":
            out, code = cmd_bcoeff(args.q, args.hbar, args.format), EXIT_OK
        elif args.command == "multiplicity":
            out, code = cmd_multiplicity(args.nmax, args.hbar, args.format), EXIT_OK
        else:
            cfg = RunConfig(hbar=args.hbar, tol=args.tol, n_max=args.nmax, q=args.q,
                            seed=args.seed, trials=args.trials)
            out, code = cmd_verify(args.scope, cfg, args.format)
    except (UsageError, ValueError) as exc:
        print(f"bshq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BCoefficientError as exc:
        print(f"bshq: coefficient table inconsistent: {exc}", file=sys.stderr)
        return EXIT_FAIL

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code
