"""Command-line front end for the inequality registry.

`jacksonlab --list` prints the registered checks, `jacksonlab describe <id>`
prints one check's formula and parameters, and `jacksonlab run config.json`
runs a batch and writes per-check JSON/CSV reports plus a summary table.
Exit status: 0 when every check passes, 1 when any check fails, 2 for
configuration errors.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from pathlib import Path

import numpy as np

from . import lab


class ConfigError(Exception):
    """Invalid run configuration; the message names the offending field."""


def _load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"config file {path!r}: {exc}") from exc
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config: top level must be a JSON object")
    return config


def _validate(config, seed_override=None, out_override=None):
    checks = config.get("checks")
    if not isinstance(checks, list) or not checks:
        raise ConfigError("config field 'checks': must be a non-empty list")
    known = set(lab.registry_ids())
    entries = []
    for k, entry in enumerate(checks):
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, dict) or "id" not in entry:
            raise ConfigError(f"config field 'checks[{k}]': must be an object with an 'id'")
        cid = entry["id"]
        if cid not in known:
            raise ConfigError(f"config field 'checks[{k}].id': unknown check id {cid!r}")
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"config field 'checks[{k}].params': must be an object")
        entries.append((cid, dict(params)))

    size = config.get("N", 256)
    if not isinstance(size, int) or size < 8:
        raise ConfigError(f"config field 'N': must be an integer >= 8, got {size!r}")
    seed = config.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"config field 'seed': must be an integer, got {seed!r}")
    if seed_override is not None:
        seed = seed_override
    out = out_override or config.get("out", "reports")
    if not isinstance(out, str) or not out:
        raise ConfigError(f"config field 'out': must be a non-empty path, got {out!r}")
    formats = config.get("formats", ["json", "csv"])
    if (not isinstance(formats, list) or not formats
            or any(f not in ("json", "csv") for f in formats)):
        raise ConfigError(f"config field 'formats': must be a subset of "
                          f"['json', 'csv'], got {formats!r}")
    return entries, size, seed, Path(out), tuple(formats)


def _run_batch(args):
    config = _load_config(args.config)
    entries, size, seed, out, formats = _validate(
        config, seed_override=args.seed, out_override=args.out)

    children = np.random.SeedSequence(seed).spawn(len(entries))
    jobs = []
    for (cid, params), child in zip(entries, children):
        merged = dict(params)
        merged.setdefault("N", size)
        merged.setdefault("seed", int(child.generate_state(1)[0]))
        jobs.append((cid, merged))

    def work(item):
        cid, params = item
        return lab.run_check(cid, params)

    try:
        if args.jobs > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(work, jobs))
        else:
            reports = [work(item) for item in jobs]
    except ValueError as exc:
        raise ConfigError(f"config field 'checks': {exc}") from exc

    out.mkdir(parents=True, exist_ok=True)
    summary = ["id,verdict,constant,runtime_ms"]
    for k, ((cid, _), report) in enumerate(zip(jobs, reports)):
        stem = f"{k:02d}-{cid}"
        if "json" in formats:
            (out / f"{stem}.json").write_text(
                json.dumps(report.to_json(), indent=2) + "\n")
        if "csv" in formats:
            (out / f"{stem}.csv").write_text(report.csv_text())
        summary.append(f"{cid},{report.verdict},{report.constant:.17g},"
                       f"{report.runtime_ms:.3f}")
        print(f"{cid}: {report.verdict} (constant={report.constant:.6g}, "
              f"spread={report.spread:.3g}, {report.runtime_ms:.0f} ms)")
    (out / "summary.csv").write_text("\n".join(summary) + "\n")
    failed = sum(1 for rep in reports if not rep.passed)
    print(f"{len(reports) - failed}/{len(reports)} checks passed; reports in {out}")
    return 1 if failed else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="jacksonlab",
        description="run and inspect the registered norm-inequality checks")
    parser.add_argument("--list", action="store_true",
                        help="list registered check ids with their formulas")
    sub = parser.add_subparsers(dest="command")
    run_p = sub.add_parser("run", help="run the checks named in a JSON config")
    run_p.add_argument("config", help="path to the JSON run configuration")
    run_p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for independent checks (default 1)")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the config's base seed")
    run_p.add_argument("--out", default=None,
                       help="override the config's output directory")
    desc_p = sub.add_parser("describe", help="print one check's formula and parameters")
    desc_p.add_argument("check_id")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.list:
        for cid in lab.registry_ids():
            print(f"{cid}: {lab.describe_check(cid).splitlines()[0].split(': ', 1)[1]}")
        return 0
    if args.command == "describe":
        try:
            print(lab.describe_check(args.check_id))
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return 2
        return 0
    if args.command == "run":
        try:
            return _run_batch(args)
        except ConfigError as exc:
            print(str(exc), file=sys.stderr)
            return 2
    parser.print_help()
    return 0


if __name__ == "__main__":
    sys.exit(main())
