"""Command-line entry point: ``verify run`` and ``verify list``."""

from __future__ import annotations

import argparse
import configparser
import sys

from .checks import CheckConfig, UsageError, list_checks, parse_weight, run, write_report

# CLI flag name -> (config attribute, converter)
FIELDS = {
    "check": ("check", str),
    "N": ("N", int),
    "n": ("n", int),
    "lambda": ("lam", parse_weight),
    "jmax": ("jmax", int),
    "k-mode": ("k_mode", str),
    "z-mode": ("z_mode", str),
    "degree-bound": ("degree_bound", int),
    "report": ("report", str),
}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; keys are the long CLI flag names."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[verify]\n" + fh.read())
    out = {}
    for key, value in parser["verify"].items():
        key = key.strip().lstrip("-")
        if key not in FIELDS:
            raise UsageError(f"unknown config key {key!r}")
        out[key] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Exact verification of Bethe algebra and flag cohomology identities.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one check or all checks and write a report")
    r.add_argument("--check", help="check name or alias, or 'all'")
    r.add_argument("--N", type=int, help="size of gl_N")
    r.add_argument("--n", type=int, help="number of tensor factors")
    r.add_argument("--lambda", dest="lambda_", help="weight as comma-separated integers (default: all weights)")
    r.add_argument("--jmax", type=int, help="series truncation order (default 4)")
    r.add_argument("--k-mode", help="symbolic | values=v1,v2,.. | zone=c1,c2,..")
    r.add_argument("--z-mode", help="symbolic | seed=s")
    r.add_argument("--degree-bound", type=int, help="degree bound for rank-transport checks (default 4)")
    r.add_argument("--config", help="flat key = value file with the same fields; flags override it")
    r.add_argument("--report", help="output path for the JSON Lines report")
    r.add_argument("--quiet", action="store_true", help="do not print a summary line per cell")

    sub.add_parser("list", help="print the check catalog")
    return p


def config_from_args(args) -> CheckConfig:
    values = read_config_file(args.config) if args.config else {}
    cli = {
        "check": args.check, "N": args.N, "n": args.n, "lambda": args.lambda_, "jmax": args.jmax,
        "k-mode": args.k_mode, "z-mode": args.z_mode, "degree-bound": args.degree_bound, "report": args.report,
    }
    values.update({k: v for k, v in cli.items() if v is not None})
    missing = [k for k in ("check", "N", "n", "report") if k not in values]
    if missing:
        raise UsageError("missing required setting(s): " + ", ".join("--" + k for k in missing))
    kwargs = {}
    for key, raw in values.items():
        attr, conv = FIELDS[key]
        try:
            kwargs[attr] = conv(raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    cfg = CheckConfig(**kwargs)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        for entry in list_checks():
            flag = "" if entry["paper_proved"] else "  [no written proof]"
            print(f"{entry['check']:<40} {entry['anchor']:<42} {entry['summary']}{flag}")
        return 0
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        parser.error(str(exc))
    reports = run(cfg)
    write_report(reports, cfg.report)
    if not args.quiet:
        for rep in reports:
            lam = rep.parameters.get("lambda")
            where = "" if lam is None else " lambda=" + ",".join(map(str, lam))
            print(f"{rep.status.upper():<7} {rep.check}{where} ({rep.timing['seconds']}s)")
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skipped")}
    print(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped -> {cfg.report}")
    return 0 if counts["fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
