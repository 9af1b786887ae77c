"""Command-line front end: run check suites and emit machine-readable reports.

Subcommands:
  verify  run all (or selected) checks from a JSON config, write reports
  sweep   run one check over a parameter range, write per-point rows
  report  re-emit the last run's results as csv or json on stdout

Exit codes: 0 all checks passed, 1 at least one check failed, 2 config or
usage error.  Reports are byte-identical across runs with the same config
and seed.  The environment variable SPLICELAB_CONFIG supplies a default
config path.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .cutoff import CutoffParams, feasibility_check
from .harness import CHECK_IDS, DEFAULTS, CheckSpec, fit_rate, run_check

ENV_CONFIG = "SPLICELAB_CONFIG"

CSV_COLUMNS = ("check_id", "R", "theta", "delta", "k", "p", "l", "d",
               "seed", "measured", "bound", "pass", "formula")

# sweeps over these (check, parameter) pairs feed the whole value list to
# a single run so monotonicity gates see the full sequence
_LIST_PARAMS = {
    ("tau_norm_bound", "R"): "R_list",
    ("D_opnorm_decay", "R"): "R_list",
    ("E_decay", "R"): "R_list",
    ("dW_opnorm_limit", "R"): "R_list",
    ("c1_at_infinity", "R"): "R_list",
    ("cross_term_decay", "d"): "d_list",
}

_GLOBAL_KEYS = ("delta", "k", "p", "l", "d", "R", "T", "h_t", "n_s", "r0")


class ConfigError(ValueError):
    """Invalid configuration; maps to exit code 2."""


def load_config(path: str | None) -> dict:
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    if "delta" in cfg and not 0.0 < cfg["delta"] < 1.0:
        raise ConfigError(f"delta must be in (0, 1), got {cfg['delta']}")
    if "p" in cfg and cfg["p"] <= 2.0:
        raise ConfigError(f"p must be > 2, got {cfg['p']}")
    if "k" in cfg and cfg["k"] < 1:
        raise ConfigError(f"k must be >= 1, got {cfg['k']}")
    if "checks" in cfg:
        bad = [c for c in cfg["checks"] if c not in CHECK_IDS]
        if bad:
            raise ConfigError(f"unknown check ids: {bad}")
    if "l" in cfg or "d" in cfg or "R" in cfg:
        l = cfg.get("l", 4.0)
        d = cfg.get("d", 12.0)
        R = cfg.get("R", 20.0)
        try:
            params = CutoffParams(l=l, d=d)
        except ValueError as exc:
            raise ConfigError(f"infeasible cut-off placement: {exc}")
        if not feasibility_check(params, R):
            raise ConfigError(
                f"infeasible configuration: windows (l={l}, d={d}) do not "
                f"fit inside the neck of length R={R}")
    tolerances = cfg.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("tolerances must be an object keyed by check id")
    for cid in tolerances:
        if cid not in CHECK_IDS:
            raise ConfigError(f"tolerance for unknown check id {cid!r}")


def _check_spec(cfg: dict, check_id: str, extra_params=None) -> CheckSpec:
    params = {key: cfg[key] for key in _GLOBAL_KEYS if key in cfg}
    params.update(cfg.get("params", {}).get(check_id, {}))
    if extra_params:
        params.update(extra_params)
    kwargs = {"params": params}
    if "seeds" in cfg:
        kwargs["seeds"] = tuple(cfg["seeds"])
    tol = cfg.get("tolerances", {}).get(check_id)
    if tol is not None:
        kwargs["tolerance"] = tol
    return CheckSpec(check_id, **kwargs)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


def _row(result, cfg: dict) -> dict:
    point = dict(result.point)
    row = {"check_id": result.check_id}
    for key, aliases in (("R", ("R", "R1", "r")), ("theta", ("theta",)),
                         ("delta", ("delta",)), ("k", ("k",)),
                         ("p", ("p",)), ("l", ("l",)), ("d", ("d",)),
                         ("seed", ("seed",))):
        val = ""
        for alias in aliases:
            if alias in point:
                val = point[alias]
                break
        else:
            if key in cfg:
                val = cfg[key]
            elif key in DEFAULTS:
                val = DEFAULTS[key]
        row[key] = val
    row["measured"] = result.measured
    row["bound"] = result.bound
    row["pass"] = result.passed
    row["formula"] = result.formula
    return row


def _emit_csv(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        cells = []
        for col in CSV_COLUMNS:
            cell = _fmt(row[col])
            if "," in cell or '"' in cell:
                cell = '"' + cell.replace('"', '""') + '"'
            cells.append(cell)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _emit_json(rows, summary) -> str:
    doc = {"summary": summary, "results": rows}
    return json.dumps(doc, indent=2, sort_keys=True, default=_fmt) + "\n"


def _write_reports(rows, summary, cfg: dict) -> None:
    out_dir = Path(cfg.get("output_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.csv").write_text(_emit_csv(rows))
    (out_dir / "report.json").write_text(_emit_json(rows, summary))


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    check_ids = cfg.get("checks", list(CHECK_IDS))
    rows, n_fail = [], 0
    for cid in check_ids:
        results = run_check(_check_spec(cfg, cid))
        for res in results:
            rows.append(_row(res, cfg))
            n_fail += 0 if res.passed else 1
    summary = {
        "checks_run": len(check_ids),
        "points": len(rows),
        "failures": n_fail,
        "all_passed": n_fail == 0,
    }
    _write_reports(rows, summary, cfg)
    for cid in check_ids:
        ok = all(r["pass"] for r in rows if r["check_id"] == cid)
        print(f"{cid}: {'pass' if ok else 'FAIL'}")
    return 0 if n_fail == 0 else 1


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.check not in CHECK_IDS:
        raise ConfigError(f"unknown check id {args.check!r}")
    if args.steps < 1 or not args.to > args.frm:
        raise ConfigError("sweep needs steps >= 1 and to > from")
    if args.spacing == "log":
        if args.frm <= 0:
            raise ConfigError("log spacing needs a positive range")
        ratio = (args.to / args.frm) ** (1.0 / max(args.steps - 1, 1))
        values = [args.frm * ratio ** i for i in range(args.steps)]
    else:
        step = (args.to - args.frm) / max(args.steps - 1, 1)
        values = [args.frm + step * i for i in range(args.steps)]

    list_key = _LIST_PARAMS.get((args.check, args.param))
    rows, n_fail = [], 0
    if list_key is not None:
        results = run_check(_check_spec(cfg, args.check,
                                        {list_key: tuple(values)}))
    else:
        results = []
        for v in values:
            results.extend(run_check(_check_spec(cfg, args.check,
                                                 {args.param: v})))
    for res in results:
        rows.append(_row(res, cfg))
        n_fail += 0 if res.passed else 1

    summary = {
        "check": args.check,
        "param": args.param,
        "values": values,
        "failures": n_fail,
        "all_passed": n_fail == 0,
    }
    # fitted decay rate over sweep points that carry the swept value
    xs = [r.point[args.param] for r in results if args.param in r.point
          and r.measured > 0.0]
    ys = [r.measured for r in results if args.param in r.point
          and r.measured > 0.0]
    if len(xs) >= 4 and len(set(xs)) == len(xs):
        for model in ("power", "exp"):
            try:
                rate, resid = fit_rate(xs, ys, model)
            except ValueError:
                continue
            summary[f"fit_{model}"] = {"rate": rate, "residual": resid}
    _write_reports(rows, summary, cfg)
    print(f"{args.check}: {len(rows)} points, "
          f"{'all passed' if n_fail == 0 else f'{n_fail} failures'}")
    return 0 if n_fail == 0 else 1


def cmd_report(args) -> int:
    cfg = load_config(args.config)
    src = Path(cfg.get("output_dir", ".")) / "report.json"
    if not src.exists():
        raise ConfigError(f"no report found at {src}; run verify first")
    doc = json.loads(src.read_text())
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_emit_csv(doc["results"]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splicelab",
        description="quantitative checks for the two-region splicing "
                    "construction")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run all configured checks")
    p_verify.add_argument("--config", default=None,
                          help=f"JSON config path (default ${ENV_CONFIG})")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="sweep one check over a parameter")
    p_sweep.add_argument("--config", default=None)
    p_sweep.add_argument("--check", required=True)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="frm", type=float, required=True)
    p_sweep.add_argument("--to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--spacing", choices=("lin", "log"), default="lin")
    p_sweep.set_defaults(func=cmd_sweep)

    p_report = sub.add_parser("report", help="re-emit the last run's report")
    p_report.add_argument("--config", default=None)
    p_report.add_argument("--format", choices=("csv", "json"), default="csv")
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
