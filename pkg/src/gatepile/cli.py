"""Command-line interface: simulate, probe, verify, search, compile, check.

Exit codes: 0 success, 2 malformed input files or flags, 3 contract
violations (non-empty probe site, failed verification, unroutable netlist).
Every subcommand emits a JSON manifest sufficient to reproduce the run;
manifests are byte-identical across reruns with the same inputs and seed
(the search manifest's elapsed-time field excepted). Output files are
written to a temporary name and renamed, so failures leave no partial files.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .compiler import (CompileError, NonplanarWithoutCrossoverError,
                       PlacementOverflowError, check_compiled, compile_netlist)
from .engine import ProbeNotEmptyError, ThresholdMode, probe, run, trace
from .gadgets import (Gadget, PeriodMismatchError, UnsupportedWordError,
                      verify_gadget)
from .grid import ChipGrid, GridFormatError
from .netlist import NetlistError, parse_netlist, random_netlist
from .render import ascii_frame, ppm_frame, render_trace
from .schedule import Schedule, ScheduleFormatError
from .search import BudgetExhaustedError, SearchSpec, search

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONTRACT = 3


def _atomic_write(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, mode) as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _manifest(args: argparse.Namespace, subcommand: str, result: Dict) -> str:
    doc = {
        "tool": "gatepile",
        "version": __version__,
        "subcommand": subcommand,
        "inputs": getattr(args, "_input_files", []),
        "flags": getattr(args, "_flags", {}),
        "result": result,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit_manifest(args: argparse.Namespace, subcommand: str, result: Dict) -> None:
    text = _manifest(args, subcommand, result)
    if getattr(args, "manifest", None):
        _atomic_write(Path(args.manifest), text)
    else:
        sys.stdout.write(text)


def _mode(name: str) -> ThresholdMode:
    return ThresholdMode.FIXED_FOUR if name == "fixed4" else ThresholdMode.ADAPTIVE


def cmd_run(args) -> int:
    grid = ChipGrid.from_text(Path(args.grid).read_text(encoding="utf-8"))
    word = Schedule.from_text(args.word)
    mode = _mode(args.mode)
    if args.trace:
        frames = trace(grid, word, args.steps, mode)
        out_dir = Path(args.trace)
        ext = "txt" if args.format == "ascii" else "ppm"
        for i, rendered in enumerate(render_trace(frames, args.format)):
            _atomic_write(out_dir / f"frame_{i:05d}.{ext}", rendered)
        final = frames[-1]
    else:
        final = run(grid, word, args.steps, mode)
    if args.out:
        _atomic_write(Path(args.out), final.to_text())
    else:
        sys.stdout.write(final.to_text())
    _emit_manifest(args, "run", {
        "steps": args.steps,
        "final_cells": len(final),
        "final_chips": final.total_chips(),
    })
    return EXIT_OK


def cmd_probe(args) -> int:
    grid = ChipGrid.from_text(Path(args.grid).read_text(encoding="utf-8"))
    word = Schedule.from_text(args.word)
    t = probe(grid, word, args.steps, (args.site[0], args.site[1]), _mode(args.mode))
    print(f"FIRES {t}" if t is not None else "NONE")
    _emit_manifest(args, "probe", {"fires": t})
    return EXIT_OK


def cmd_verify_gadget(args) -> int:
    gadget = Gadget.from_text(Path(args.gadget).read_text(encoding="utf-8"))
    ticks = args.ticks if args.ticks else gadget.latency + 3
    report = verify_gadget(gadget, ticks)
    print(report.summary())
    _emit_manifest(args, "verify-gadget", {
        "gadget": gadget.name,
        "function": gadget.function,
        "ticks": ticks,
        "quiescent": report.quiescent,
        "function_ok": report.function_ok,
        "contained": report.contained,
        "assignments": [
            {"bits": list(r.bits), "outputs": list(r.outputs),
             "expected": list(r.expected),
             "output_ticks": list(r.output_ticks),
             "backward_extent": r.backward_extent}
            for r in report.assignments
        ],
    })
    return EXIT_OK if report.ok else EXIT_CONTRACT


def cmd_search(args) -> int:
    w, h = (int(v) for v in args.window.split("x"))
    spec = SearchSpec(
        word=Schedule.from_text(args.word),
        mode=_mode(args.mode),
        window=(w, h),
        max_chips=args.max_chips,
        contract=args.contract,
        budget=args.budget,
    )
    status = "done"
    try:
        result = search(spec)
    except BudgetExhaustedError as exc:
        print(f"NONE (budget exhausted after {exc.progress.raw} candidates)")
        _emit_manifest(args, "search", {
            "status": "budget_exhausted",
            "candidates_raw": exc.progress.raw,
            "candidates_checked": exc.progress.checked,
        })
        return EXIT_OK
    manifest = result.manifest()
    manifest["status"] = status
    if result.gadget is None:
        print("NONE")
    else:
        print(f"FOUND {result.gadget.name}")
        if args.out:
            _atomic_write(Path(args.out), result.gadget.to_text())
    _emit_manifest(args, "search", manifest)
    return EXIT_OK


def cmd_compile(args) -> int:
    netlist = parse_netlist(Path(args.netlist).read_text(encoding="utf-8"))
    layout = compile_netlist(netlist, Schedule.from_text(args.word))
    if args.out:
        _atomic_write(Path(args.out), layout.grid.to_text())
    result = layout.manifest()
    if args.out:
        result["grid_file"] = args.out
    _emit_manifest(args, "compile", result)
    return EXIT_OK


def cmd_check(args) -> int:
    netlist = parse_netlist(Path(args.netlist).read_text(encoding="utf-8"))
    layout = compile_netlist(netlist, Schedule.from_text(args.word))
    names = list(netlist.inputs)
    if args.assignments == "all":
        masks = range(2 ** len(names))
    else:
        rng = random.Random(args.seed)
        count = min(args.sample, 2 ** len(names))
        masks = sorted(rng.sample(range(2 ** len(names)), count))
    results = []
    agreed = 0
    for mask in masks:
        assignment = {n: (mask >> i) & 1 for i, n in enumerate(names)}
        r = check_compiled(layout, netlist, assignment)
        agreed += r.agrees
        results.append({
            "assignment": [assignment[n] for n in names],
            "expected": r.expected,
            "observed": r.observed,
            "probe_step": r.probe_step,
            "agrees": r.agrees,
        })
    total = len(results)
    print(f"agreement {agreed}/{total}")
    _emit_manifest(args, "check", {
        "inputs": names,
        "t_bound": layout.t_bound,
        "assignments_checked": total,
        "agreed": agreed,
        "cases": results,
    })
    return EXIT_OK if agreed == total else EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gatepile",
        description="Gated chip-firing automata: simulate, verify, compile.")
    p.add_argument("--version", action="version", version=f"gatepile {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, word_default="H^4V^4"):
        sp.add_argument("--word", default=word_default,
                        help="schedule word, e.g. H^4V^4, HV, A")
        sp.add_argument("--mode", choices=("fixed4", "adaptive"), default="fixed4")
        sp.add_argument("--manifest", help="write the run manifest to this path")

    sp = sub.add_parser("run", help="simulate a grid file")
    sp.add_argument("grid")
    common(sp)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--out", help="final grid file (default: stdout)")
    sp.add_argument("--trace", help="directory for per-step frames")
    sp.add_argument("--format", choices=("ascii", "ppm"), default="ascii")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("probe", help="earliest step a site becomes nonzero")
    sp.add_argument("grid")
    common(sp)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--site", type=int, nargs=2, required=True, metavar=("X", "Y"))
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("verify-gadget", help="check a gadget file's contract")
    sp.add_argument("gadget")
    sp.add_argument("--ticks", type=int, default=0)
    sp.add_argument("--manifest")
    sp.set_defaults(func=cmd_verify_gadget)

    sp = sub.add_parser("search", help="brute-force a footprint for a contract")
    common(sp)
    sp.add_argument("--contract", required=True,
                    choices=("QUIESCENT_WIRE", "AND2", "OR2", "CROSS"))
    sp.add_argument("--window", default="3x1", help="WxH cells")
    sp.add_argument("--max-chips", type=int, default=3)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out", help="write the found gadget file here")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("compile", help="reduce a netlist to a prediction instance")
    sp.add_argument("netlist")
    common(sp)
    sp.add_argument("--out", help="write the compiled grid here")
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("check", help="compiled dynamics vs the evaluator")
    sp.add_argument("netlist")
    common(sp)
    sp.add_argument("--assignments", choices=("all", "sample"), default="all")
    sp.add_argument("--sample", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._input_files = [v for v in (getattr(args, "grid", None),
                                     getattr(args, "gadget", None),
                                     getattr(args, "netlist", None)) if v]
    args._flags = {k: v for k, v in sorted(vars(args).items())
                   if not k.startswith("_")
                   and k not in ("func", "command", "manifest")
                   and v is not None}
    try:
        return args.func(args)
    except (GridFormatError, ScheduleFormatError, NetlistError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ProbeNotEmptyError, PeriodMismatchError, UnsupportedWordError,
            NonplanarWithoutCrossoverError, PlacementOverflowError,
            CompileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    raise SystemExit(main())
