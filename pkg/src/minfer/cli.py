"""Command-line surface.

Subcommands:

* ``analyze``  — MLE, plug-in region, and likelihood summaries for one table.
* ``curve``    — corroboration curve CSV (plus standardized profile and
                 independence-benchmark likelihood columns for missing data).
* ``levelset`` — one corroboration level set (by level alpha or offset h).
* ``assure``   — double-bootstrap assurance of offset-h sets.
* ``test``     — corroboration test of one or more theta values.
* ``simulate`` — actual-corroboration curve CSV at a hypothesized psi.

Numbers are serialized with 6 decimal places; reruns with identical
arguments and seed produce byte-identical output. Exit codes: 0 success,
1 invalid input, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import assure as assure_mod
from . import corroborate as corr
from . import ctest, likelihood
from .errors import EmptyLevelSet, MinferError, NoQualifyingH, ValidationError
from .identify import ml_region
from .model import MissingTable, ObservedTable, PsiMatched, PsiMissing, mle_psi, validate

THREADS_ENV = "MINFER_THREADS"
MAX_THREADS = 64


class _UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; route them through the
    # package's validation path (exit 1) instead
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in str(text).split(",") if part != ""]
    except ValueError as exc:
        raise ValidationError(f"{flag} expects comma-separated integers, got {text!r}") from exc


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in str(text).split(",") if part != ""]
    except ValueError as exc:
        raise ValidationError(f"{flag} expects comma-separated numbers, got {text!r}") from exc


def parse_grid(spec: str) -> np.ndarray:
    """Parse a ``start:stop:step`` grid specification (inclusive ends)."""
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise ValidationError(f"--grid expects start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"--grid expects numeric start:stop:step, got {spec!r}") from exc
    if step <= 0.0:
        raise ValidationError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValidationError(f"grid stop {stop} is below start {start}")
    count = int(np.floor((stop - start) / step + 0.5)) + 1
    grid = start + step * np.arange(count)
    if abs(grid[-1] - stop) < step * 1e-6:
        grid[-1] = stop
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise ValidationError(f"grid {spec!r} leaves [0, 1]")
    return grid


def _round6(value: float) -> float:
    return round(float(value), 6)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return config


def _merge_config(args: argparse.Namespace, config: dict) -> None:
    # flags override file values: fill only attributes still at None
    for key, value in config.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def _resolve_threads(value: int | None) -> int:
    if value is None:
        env = os.environ.get(THREADS_ENV)
        if env is not None:
            try:
                value = int(env)
            except ValueError as exc:
                raise ValidationError(f"{THREADS_ENV}={env!r} is not an integer") from exc
    if value is None:
        value = 1
    if value < 1:
        raise ValidationError(f"thread count {value} must be at least 1")
    return min(int(value), MAX_THREADS)


def _table_from_args(args: argparse.Namespace) -> ObservedTable:
    if args.setting is None:
        raise ValidationError("--setting is required (missing or matched)")
    if args.counts is None:
        raise ValidationError("--counts is required for this subcommand")
    counts = args.counts
    if isinstance(counts, str):
        counts = _parse_int_list(counts, "--counts")
    return validate(counts, args.setting)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _json_text(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------- analyze

def _cmd_analyze(args: argparse.Namespace) -> int:
    data = _table_from_args(args)
    psi = mle_psi(data)
    region = ml_region(data)
    payload: dict = {"setting": args.setting}
    if isinstance(data, MissingTable):
        payload["counts"] = [data.n11, data.n01, data.n_plus0]
        payload["n"] = data.n
        payload["psi_hat"] = {
            "l11": _round6(psi.l11),
            "l01": _round6(psi.l01),
            "l_plus0": _round6(psi.l_plus0),
        }
        responders = data.n11 + data.n01
        payload["mcar_mle"] = _round6(data.n11 / responders) if responders else None
    else:
        payload["counts"] = [data.nx, data.n1, data.ny, data.n2]
        payload["sizes"] = [data.n1, data.n2]
        payload["psi_hat"] = {"l1p": _round6(psi.l1p), "lp1": _round6(psi.lp1)}
    payload["ml_region"] = {"lower": _round6(region.lower), "upper": _round6(region.upper)}
    _emit(_json_text(payload), args.out)
    return 0


# ------------------------------------------------------------------ curve

def _observed_curve(args: argparse.Namespace, data: ObservedTable, grid: np.ndarray):
    psi = mle_psi(data)
    method = args.method or ("normal" if isinstance(data, MissingTable) else "bootstrap")
    if method == "normal":
        if not isinstance(data, MissingTable):
            raise ValidationError("--method normal applies to the missing setting only")
        return corr.corroboration_normal_curve(psi, data.n, grid)
    if method != "bootstrap":
        raise ValidationError(f"unknown method {method!r}")
    sizes = data.n if isinstance(data, MissingTable) else (data.n1, data.n2)
    return corr.corroboration_bootstrap(psi, sizes, grid, B=args.B, master_seed=args.seed)


def _cmd_curve(args: argparse.Namespace) -> int:
    data = _table_from_args(args)
    grid = parse_grid(args.grid)
    curve = _observed_curve(args, data, grid)
    lines = []
    if isinstance(data, MissingTable):
        profile = likelihood.profile_curve(data, grid)
        mcar = likelihood.mcar_curve(data, grid)
        lines.append("theta,corroboration,profile_std,mcar_std")
        for theta, c, p, m in zip(grid, curve.values, profile, mcar):
            lines.append(f"{theta:.6f},{c:.6f},{p:.6f},{m:.6f}")
    else:
        lines.append("theta,corroboration")
        for theta, c in zip(grid, curve.values):
            lines.append(f"{theta:.6f},{c:.6f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# --------------------------------------------------------------- levelset

def _cmd_levelset(args: argparse.Namespace) -> int:
    if (args.alpha is None) == (args.h is None):
        raise ValidationError("levelset needs exactly one of --alpha or --h")
    data = _table_from_args(args)
    grid = parse_grid(args.grid)
    curve = _observed_curve(args, data, grid)
    if args.alpha is not None:
        try:
            result = corr.level_set(curve, float(args.alpha))
        except EmptyLevelSet:
            payload = {"kind": "alpha_level", "level": _round6(args.alpha), "empty": True}
            _emit(_json_text(payload), args.out)
            return 0
    else:
        result = corr.max_corroboration_set(curve, float(args.h))
    payload = {
        "kind": result.kind,
        "level": _round6(result.level),
        "empty": False,
        "lower": _round6(result.interval.lower),
        "upper": _round6(result.interval.upper),
    }
    _emit(_json_text(payload), args.out)
    return 0


# ----------------------------------------------------------------- assure

def _report_payload(report) -> dict:
    payload = report.to_dict()
    for key in ("tau_hat", "L_bar", "U_bar"):
        payload[key] = _round6(payload[key])
    if payload["h"] is not None:
        payload["h"] = _round6(payload["h"])
    return payload


def _cmd_assure(args: argparse.Namespace) -> int:
    data = _table_from_args(args)
    threads = _resolve_threads(args.threads)
    if args.ml_region:
        report = assure_mod.assurance_of_ml_region(
            data, B_outer=args.B_outer, master_seed=args.seed
        )
        _emit(_json_text(_report_payload(report)), args.out)
        return 0
    if args.h is None:
        raise ValidationError("assure needs --h (one value or a comma list) or --ml-region")
    h_list = args.h if isinstance(args.h, list) else _parse_float_list(args.h, "--h")
    grid = parse_grid(args.grid)
    kwargs = dict(
        B_outer=args.B_outer,
        inner_method=args.inner_method,
        inner_B=args.inner_B,
        master_seed=args.seed,
        grid=grid,
        threads=threads,
    )
    if args.tau_min is not None:
        chosen, report = assure_mod.select_h(data, float(args.tau_min), h_list, **kwargs)
        payload = {"tau_min": _round6(args.tau_min), "chosen_h": _round6(chosen),
                   "report": _report_payload(report)}
        _emit(_json_text(payload), args.out)
        return 0
    reports = assure_mod.assurance_sweep(data, h_list, **kwargs)
    if len(reports) == 1:
        _emit(_json_text(_report_payload(reports[0])), args.out)
    else:
        lines = ["h,tau,L_bar,U_bar"]
        for r in reports:
            lines.append(f"{r.h:.6f},{r.tau_hat:.6f},{r.L_bar:.6f},{r.U_bar:.6f}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# ------------------------------------------------------------------- test

def _cmd_test(args: argparse.Namespace) -> int:
    data = _table_from_args(args)
    if args.theta_star is None:
        raise ValidationError("test needs --theta-star (one value or a comma list)")
    thetas = (
        args.theta_star
        if isinstance(args.theta_star, list)
        else _parse_float_list(args.theta_star, "--theta-star")
    )
    results = []
    for theta in thetas:
        # one master seed for all theta values: the bootstrap replicates are
        # shared, as on a grid
        result = ctest.corroboration_test(
            data, float(theta), method=args.method, B=args.B, master_seed=args.seed,
        )
        payload = result.to_dict()
        for key in ("theta_star", "observed_corroboration", "observed_power"):
            payload[key] = _round6(payload[key])
        results.append(payload)
    _emit(_json_text(results[0] if len(results) == 1 else results), args.out)
    return 0


# --------------------------------------------------------------- simulate

def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.setting is None:
        raise ValidationError("--setting is required (missing or matched)")
    if args.psi is None or args.sizes is None:
        raise ValidationError("simulate needs --psi and --sizes")
    psi_values = args.psi if isinstance(args.psi, list) else _parse_float_list(args.psi, "--psi")
    size_values = (
        args.sizes if isinstance(args.sizes, list) else _parse_int_list(args.sizes, "--sizes")
    )
    if args.setting == "missing":
        if len(psi_values) != 3:
            raise ValidationError("missing-data --psi needs 3 probabilities (l11, l01, l_plus0)")
        if len(size_values) != 1:
            raise ValidationError("missing-data --sizes needs a single n")
        psi = PsiMissing(*psi_values)
        sizes: int | tuple[int, int] = size_values[0]
    elif args.setting == "matched":
        if len(psi_values) != 2:
            raise ValidationError("matched-data --psi needs 2 probabilities (l1p, lp1)")
        if len(size_values) != 2:
            raise ValidationError("matched-data --sizes needs n1,n2")
        psi = PsiMatched(*psi_values)
        sizes = (size_values[0], size_values[1])
    else:
        raise ValidationError(f"unknown setting {args.setting!r}")
    grid = parse_grid(args.grid)
    curve = corr.corroboration_bootstrap(psi, sizes, grid, B=args.reps, master_seed=args.seed)
    _emit(curve.to_csv_text(), args.out)
    return 0


# ------------------------------------------------------------------ wiring

def _add_common(parser: argparse.ArgumentParser, *, counts: bool = True) -> None:
    parser.add_argument("--setting", choices=["missing", "matched"], default=None)
    if counts:
        parser.add_argument("--counts", default=None,
                            help="missing: n11,n01,n_plus0; matched: nx,n1,ny,n2")
    parser.add_argument("--config", default=None, help="JSON file with default option values")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker cap for replicate loops (env {THREADS_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minfer", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="subcommand")

    p = sub.add_parser("analyze", help="MLE, plug-in region, likelihood summaries")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("curve", help="corroboration curve CSV")
    _add_common(p)
    p.add_argument("--method", choices=["bootstrap", "normal"], default=None)
    p.add_argument("--grid", default=None, help="start:stop:step (default 0:1:0.001)")
    p.add_argument("--B", type=int, default=None, help="bootstrap replicates (default 5000)")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("levelset", help="corroboration level set")
    _add_common(p)
    p.add_argument("--method", choices=["bootstrap", "normal"], default=None)
    p.add_argument("--grid", default=None)
    p.add_argument("--B", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None, help="corroboration level in (0, 1]")
    p.add_argument("--h", type=float, default=None, help="offset below the curve maximum")
    p.set_defaults(func=_cmd_levelset)

    p = sub.add_parser("assure", help="double-bootstrap assurance of offset-h sets")
    _add_common(p)
    p.add_argument("--h", default=None, help="offset(s), comma-separated")
    p.add_argument("--B-outer", dest="B_outer", type=int, default=None)
    p.add_argument("--inner-method", choices=["normal", "bootstrap"], default=None)
    p.add_argument("--inner-B", dest="inner_B", type=int, default=None)
    p.add_argument("--grid", default=None)
    p.add_argument("--tau-min", dest="tau_min", type=float, default=None,
                   help="pick the largest h whose assurance reaches this level")
    p.add_argument("--ml-region", dest="ml_region", action="store_true",
                   help="assurance of the plug-in region itself")
    p.set_defaults(func=_cmd_assure)

    p = sub.add_parser("test", help="corroboration test")
    _add_common(p)
    p.add_argument("--theta-star", dest="theta_star", default=None,
                   help="value(s) under test, comma-separated")
    p.add_argument("--method", choices=["bootstrap", "normal"], default=None)
    p.add_argument("--B", type=int, default=None)
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("simulate", help="actual-corroboration curve at a hypothesized psi")
    _add_common(p, counts=False)
    p.add_argument("--psi", default=None, help="missing: l11,l01,l_plus0; matched: l1p,lp1")
    p.add_argument("--sizes", default=None, help="missing: n; matched: n1,n2")
    p.add_argument("--reps", type=int, default=None, help="bootstrap replicates (default 5000)")
    p.add_argument("--grid", default=None)
    p.set_defaults(func=_cmd_simulate)

    return parser


_DEFAULTS = {
    "seed": 0,
    "B": 5000,
    "B_outer": 5000,
    "inner_B": assure_mod.DEFAULT_INNER_B,
    "reps": 5000,
    "grid": "0:1:0.001",
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            parser.print_help(sys.stderr)
            return 1
        _merge_config(args, _load_config(args.config))
        for key, value in _DEFAULTS.items():
            if hasattr(args, key) and getattr(args, key) is None:
                setattr(args, key, value)
        return args.func(args)
    except ValidationError as exc:
        print(f"minfer: error: {exc}", file=sys.stderr)
        return 1
    except NoQualifyingH as exc:
        print(f"minfer: {exc}", file=sys.stderr)
        return 1
    except MinferError as exc:
        print(f"minfer: numeric failure: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"minfer: internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
