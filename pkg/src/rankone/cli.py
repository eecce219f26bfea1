"""Command-line entry point: ``rankone {analyze,scan,verify,oracle}``.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad config or space,
3 I/O error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import os
import random
import sys

from . import __version__
from . import spectral as sp
from . import verify
from .config import RunConfig, default_config, parse_config
from .errors import ConfigError, InvalidSpace, RankOneError
from .operators import RankOneShift
from .series import pretty_poly, random_rational_poly

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
SCHEMA = 1
DEFAULT_OUT = "rankone-out"

log = logging.getLogger("rankone")


def _load_config(args) -> RunConfig:
    if args.config is None:
        cfg = default_config()
    else:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
        cfg = parse_config(text)
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("--threads must be positive")
        cfg.threads = args.threads
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.output_dir = args.out
    elif cfg.output_dir is None:
        cfg.output_dir = DEFAULT_OUT
    return cfg


def _document(command: str, cfg: RunConfig, reports: list) -> dict:
    meta = {
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg.describe(),
    }
    return {"schema": SCHEMA, "metadata": meta, "reports": reports}


def _write_json(cfg: RunConfig, name: str, doc: dict) -> str:
    os.makedirs(cfg.output_dir, exist_ok=True)
    path = os.path.join(cfg.output_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return path


def cmd_analyze(cfg: RunConfig) -> int:
    rows = []
    for space in cfg.spaces:
        for f in cfg.perturbations:
            try:
                row = verify.summarize(f, cfg.g, space)
            except (RankOneError, ValueError) as exc:
                row = {"space": space.name, "f": pretty_poly(f), "g": pretty_poly(cfg.g),
                       "summary": f"ERROR: {exc}"}
            rows.append(row)
            print(f"[{row['space']}] f = {row['f']}, g = {row['g']}: {row['summary']}")
            if "h0" in row:
                print(f"    h0 = {row['h0']}")
            if "adjoint_kernel" in row:
                print(f"    ker S* = span{{{', '.join(row['adjoint_kernel'])}}}")
    path = _write_json(cfg, "analyze.json", _document("analyze", cfg, rows))
    print(f"wrote {path}")
    return EXIT_OK


def _scan_name(space, label: str) -> str:
    return f"scan_{space.name}_{label}.csv"


def cmd_scan(cfg: RunConfig) -> int:
    os.makedirs(cfg.output_dir, exist_ok=True)
    for space in cfg.spaces:
        base_op = RankOneShift(space, 0, 0)
        r_base = sp.spectral_radius_gelfand(base_op, cfg.N, cfg.n_max).value
        grid = verify.suite_grid(cfg, r_base)
        ops = [("base", base_op)]
        ops += [(f"f{i}", RankOneShift(space, f, cfg.g)) for i, f in enumerate(cfg.perturbations, 1)]
        for label, op in ops:
            log.info("scanning %s %s", space.name, op.label)
            scan = sp.left_spectrum_scan(op, grid, cfg.N, cfg.effective_tau, threads=cfg.threads)
            path = os.path.join(cfg.output_dir, _scan_name(space, label))
            with open(path, "w", encoding="utf-8", newline="") as fh:
                scan.to_csv(fh)
            print(f"wrote {path} ({int(scan.mask.sum())} points in the mask)")
    return EXIT_OK


def _finish(command: str, cfg: RunConfig, reports: list) -> int:
    dicts = [r.to_dict() for r in reports]
    failed = [d for d in dicts if not d["pass"]]
    for d in dicts:
        inst = d["instance"]
        what = ", ".join(f"{k}={inst[k]}" for k in ("space", "f", "g") if k in inst)
        print(f"{'PASS' if d['pass'] else 'FAIL'}  {d['theorem_id']:<28} {what}")
    path = _write_json(cfg, f"{command}.json", _document(command, cfg, dicts))
    print(f"{len(dicts) - len(failed)}/{len(dicts)} checks passed; wrote {path}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    reports = verify.run_suite(cfg, progress=log.info)
    return _finish("verify", cfg, reports)


def cmd_oracle(cfg: RunConfig, randomized: int = 5) -> int:
    if cfg.seed:
        rng = random.Random(cfg.seed)
        cfg.perturbations = list(cfg.perturbations) + [random_rational_poly(rng) for _ in range(randomized)]
    return _finish("oracle", cfg, verify.run_oracles(cfg))


COMMANDS = {"analyze": cmd_analyze, "scan": cmd_scan, "verify": cmd_verify, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankone",
        description="Spectral checks for rank-one perturbations of weighted shifts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="config file (default: Hardy space, stock perturbations)")
    common.add_argument("--out", metavar="DIR", help=f"output directory (default: output.dir or ./{DEFAULT_OUT})")
    common.add_argument("--threads", type=int, metavar="INT", help="worker threads for spectral scans")
    common.add_argument("--seed", type=int, metavar="INT",
                        help="seed for random rational perturbations (oracle adds five when nonzero)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("analyze", parents=[common], help="print predictions for each perturbation")
    sub.add_parser("scan", parents=[common], help="write left-spectrum scans as CSV")
    sub.add_parser("verify", parents=[common], help="run the full check suite, write verify.json")
    sub.add_parser("oracle", parents=[common], help="brute-force cross-checks only, write oracle.json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = _load_config(args)
    except (ConfigError, InvalidSpace) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnicodeDecodeError as exc:
        print(f"config error: not UTF-8 text ({exc})", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return COMMANDS[args.command](cfg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
