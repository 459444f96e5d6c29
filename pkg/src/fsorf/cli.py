"""Command line front end.

Subcommands:

    sweep      outage vs average SNR over a grid, CSV to stdout or --out
    solve      average SNR (dB) at which a system hits a target outage
    claims     recompute the published dB-gap claims and report both numbers
    mc-verify  Monte Carlo vs closed form over a grid; exit 1 on disagreement

All SNR and threshold flags are in dB; conversion to linear scale happens
here and nowhere else.
"""

import argparse
import sys

from .montecarlo import McSettings
from .sweep import (
    SweepSpec,
    claims_report,
    find_snr_at_target,
    run_sweep,
    sweep_csv_lines,
)
from .util import db_to_linear

_SYSTEM_ALIASES = {"hybrid": "hybrid", "fso": "fso_only", "rf": "rf_only"}


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers: %r" % text)


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers: %r" % text)


def _parse_systems(text: str) -> list[str]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if part not in _SYSTEM_ALIASES:
            raise argparse.ArgumentTypeError(
                "system must be hybrid, fso or rf, got %r" % part
            )
        out.append(_SYSTEM_ALIASES[part])
    return out


def _parse_snr_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--snr-db wants start:stop:step, got %r" % text)
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("--snr-db wants numeric start:stop:step")
    return start, stop, step


def _parse_count(text: str) -> int:
    # accepts 1000000 or 1e6
    value = float(text)
    if value < 1 or value != int(value):
        raise argparse.ArgumentTypeError("expected a positive integer count: %r" % text)
    return int(value)


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=_parse_int_list, help="branch counts, e.g. 1,2,4")
    p.add_argument(
        "--lambda",
        dest="lambda_values",
        type=_parse_float_list,
        help="turbulence rates, e.g. 0.5,1",
    )
    p.add_argument("--gamma-th-db", type=float, help="outage threshold in dB")
    p.add_argument(
        "--snr-db", type=_parse_snr_range, help="average SNR grid start:stop:step in dB"
    )
    p.add_argument(
        "--system",
        type=_parse_systems,
        help="comma-separated subset of hybrid,fso,rf",
    )
    p.add_argument("--config", help="key = value file mirroring the sweep fields")


def _add_mc_flags(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument(
        "--mc-samples",
        type=_parse_count,
        required=required,
        help="Monte Carlo realizations per grid point (accepts 1e6 style)",
    )
    p.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    p.add_argument("--workers", type=int, help="parallel shard count (default 1)")


_CONFIG_KEYS = {
    "snr_db_start": float,
    "snr_db_stop": float,
    "snr_db_step": float,
    "gamma_th_db": float,
    "m_values": lambda s: [int(v) for v in s.split(",")],
    "lambda_values": lambda s: [float(v) for v in s.split(",")],
    "systems": lambda s: [_SYSTEM_ALIASES.get(v.strip(), v.strip()) for v in s.split(",")],
    "mc_samples": lambda s: int(float(s)),
    "seed": int,
    "workers": int,
}


def _read_config(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(
                    "config %s line %d: expected key = value" % (path, lineno)
                )
            key, _, value = (part.strip() for part in line.partition("="))
            if key not in _CONFIG_KEYS:
                raise SystemExit("config %s line %d: unknown key %r" % (path, lineno, key))
            try:
                values[key] = _CONFIG_KEYS[key](value)
            except ValueError:
                raise SystemExit(
                    "config %s line %d: bad value for %s: %r" % (path, lineno, key, value)
                )
    return values


def _build_spec(args) -> SweepSpec:
    cfg = _read_config(args.config) if args.config else {}
    if args.snr_db is not None:
        start, stop, step = args.snr_db
    else:
        start = cfg.get("snr_db_start", 0.0)
        stop = cfg.get("snr_db_stop", 50.0)
        step = cfg.get("snr_db_step", 1.0)
    gamma_th_db = args.gamma_th_db if args.gamma_th_db is not None else cfg.get("gamma_th_db", 10.0)
    m_values = args.m if args.m is not None else cfg.get("m_values", [1])
    lambda_values = (
        args.lambda_values if args.lambda_values is not None else cfg.get("lambda_values", [1.0])
    )
    systems = args.system if args.system is not None else cfg.get("systems", ["hybrid"])

    mc = None
    mc_samples = getattr(args, "mc_samples", None)
    if mc_samples is None:
        mc_samples = cfg.get("mc_samples")
    if mc_samples is not None:
        seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        workers = args.workers if args.workers is not None else cfg.get("workers", 1)
        mc = McSettings(n_samples=mc_samples, seed=seed, workers=workers)

    try:
        return SweepSpec(
            snr_db_start=start,
            snr_db_stop=stop,
            snr_db_step=step,
            gamma_th_db=gamma_th_db,
            m_values=m_values,
            lambda_values=lambda_values,
            systems=systems,
            mc=mc,
        )
    except ValueError as exc:
        raise SystemExit("invalid sweep parameters: %s" % exc)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    spec = _build_spec(args)
    warnings: list[str] = []
    rows = run_sweep(spec, rare_event_warnings=warnings)
    for note in warnings:
        print("warning: %s" % note, file=sys.stderr)
    _emit("\n".join(sweep_csv_lines(spec, rows)) + "\n", args.out)
    return 0


def _cmd_solve(args) -> int:
    m = args.m[0] if args.m else 1
    lam = args.lambda_values[0] if args.lambda_values else 1.0
    system = args.system[0] if args.system else "hybrid"
    gamma_th_db = args.gamma_th_db if args.gamma_th_db is not None else 10.0
    try:
        snr_db = find_snr_at_target(
            system, m, lam, db_to_linear(gamma_th_db), args.target
        )
    except ValueError as exc:
        raise SystemExit(str(exc))
    print("%.2f" % snr_db)
    return 0


def _cmd_claims(args) -> int:
    gamma_th_db = args.gamma_th_db if args.gamma_th_db is not None else 10.0
    report = claims_report(SweepSpec(gamma_th_db=gamma_th_db))
    _emit(report + "\n", args.out)
    return 0


def _cmd_mc_verify(args) -> int:
    spec = _build_spec(args)
    if spec.mc is None:
        raise SystemExit("mc-verify requires --mc-samples")
    rows = run_sweep(spec)
    failures = 0
    checked = 0
    for r in rows:
        if r.pout_closed < 1e-4:
            continue
        checked += 1
        ok = abs(r.pout_mc - r.pout_closed) <= 4.0 * r.mc_ci
        if not ok:
            failures += 1
        print(
            "%s m=%d lambda=%g snr_db=%g closed=%.6g mc=%.6g ci=%.3g %s"
            % (
                r.system,
                r.m,
                r.lam,
                r.snr_db,
                r.pout_closed,
                r.pout_mc,
                r.mc_ci,
                "ok" if ok else "DISAGREES",
            )
        )
    print(
        "checked %d points with closed-form outage >= 1e-4: %d disagreement(s)"
        % (checked, failures)
    )
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsorf",
        description="Outage analysis of a hybrid FSO/RF link with receive diversity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="outage vs average SNR, CSV output")
    _add_grid_flags(p_sweep)
    _add_mc_flags(p_sweep)
    p_sweep.add_argument("--out", help="write CSV here instead of stdout")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_solve = sub.add_parser("solve", help="SNR (dB) reaching a target outage")
    _add_grid_flags(p_solve)
    p_solve.add_argument("--target", type=float, required=True, help="target outage in (0,1)")
    p_solve.set_defaults(func=_cmd_solve)

    p_claims = sub.add_parser("claims", help="recompute the published dB-gap claims")
    p_claims.add_argument("--gamma-th-db", type=float, help="outage threshold in dB")
    p_claims.add_argument("--out", help="write the report here instead of stdout")
    p_claims.set_defaults(func=_cmd_claims)

    p_verify = sub.add_parser("mc-verify", help="check MC against closed forms")
    _add_grid_flags(p_verify)
    _add_mc_flags(p_verify, required=True)
    p_verify.set_defaults(func=_cmd_mc_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
