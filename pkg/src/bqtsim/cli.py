"""``bqt-sim`` command line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .bqt import BACKENDS
from .errors import BQTError
from .experiments import PRESETS, dump_config, emit_csv, emit_svg, parse_config, run_preset, run_sweep
from .validation import run_checks

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

log = logging.getLogger("bqtsim")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", choices=BACKENDS, default=None, help="override the teleportation backend")
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes per axis for average fidelity")
    p.add_argument("--workers", type=int, default=1, help="worker processes for the sweep")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bqt-sim", description="Bidirectional teleportation through correlated noisy channels.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a sweep described by a config file")
    sweep.add_argument("--config", required=True, type=Path)
    sweep.add_argument("--out", required=True, type=Path)
    _add_common(sweep)

    preset = sub.add_parser("preset", help="reproduce one figure (or all)")
    preset.add_argument("id", choices=sorted(PRESETS) + ["all"])
    preset.add_argument("--out", required=True, type=Path)
    _add_common(preset)

    sub.add_parser("validate", help="run the invariant suite")
    return parser


def _sweep(args) -> int:
    spec = parse_config(args.config.read_text(encoding="utf-8"))
    if args.backend or args.nodes:
        changes = {k: v for k, v in (("backend", args.backend), ("nodes", args.nodes)) if v is not None}
        spec = replace(spec, **changes)
    table = run_sweep(spec, workers=args.workers)
    args.out.mkdir(parents=True, exist_ok=True)
    stem = args.config.stem
    emit_csv(table, args.out / f"{stem}.csv")
    (args.out / f"{stem}.cfg").write_text(dump_config(spec), encoding="utf-8")
    for col in spec.outputs:
        emit_svg(table, col, args.out / f"{stem}_{col}.svg")
    print(f"{stem}: {len(table)} rows -> {args.out}")
    return EXIT_OK


def _preset(args) -> int:
    ids = sorted(PRESETS) if args.id == "all" else [args.id]
    for pid in ids:
        table, files = run_preset(pid, args.out, backend=args.backend, nodes=args.nodes, workers=args.workers)
        print(f"{pid}: {len(table)} rows, {len(files)} files -> {args.out}")
    return EXIT_OK


def _validate(_args) -> int:
    results = run_checks()
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_INVALID if failed else EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for I/O here
        if exc.code in (0, None):
            raise
        return EXIT_INVALID
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    handler = {"sweep": _sweep, "preset": _preset, "validate": _validate}[args.command]
    try:
        return handler(args)
    except OSError as exc:
        print(f"bqt-sim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BQTError, ValueError) as exc:
        print(f"bqt-sim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
