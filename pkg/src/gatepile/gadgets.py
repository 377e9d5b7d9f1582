"""Gadget templates: wires, gates and cross-overs with behavioural verification.

A gadget is a quiescent chip footprint plus typed ports. Signals are chip
packets: asserting a 1 places a full packet (4 chips, or 2 in adaptive mode)
on an empty input port site at a tick boundary; an output reads 1 when its
port site reaches the packet threshold at the sampled phase of some tick.

Every catalog footprint is data, trusted only because `verify_gadget` passes:
it exhaustively simulates all input assignments through the public engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .engine import ThresholdMode, run, step
from .grid import ChipGrid, Coord, GridFormatError
from .schedule import GateStep, Schedule


class Direction(enum.Enum):
    EAST = "E"
    WEST = "W"
    NORTH = "N"
    SOUTH = "S"

    def vector(self) -> Coord:
        return {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}[self.value]

    def rotated(self, quarter_turns: int) -> "Direction":
        order = ["E", "N", "W", "S"]
        return Direction(order[(order.index(self.value) + quarter_turns) % 4])


class RotationWordMismatchError(ValueError):
    """Quarter-turn would swap H and V but the schedule is not symmetric."""


class PeriodMismatchError(ValueError):
    """Gadget period is not a multiple of its schedule length."""


class UnsupportedWordError(KeyError):
    """No catalog entries exist for the requested word and mode."""


def packet_size(mode: ThresholdMode) -> int:
    """Chips in a signal packet: 4 classically, 2 in the threshold-2 variant."""
    return 4 if mode is ThresholdMode.FIXED_FOUR else 2


@dataclass(frozen=True)
class Port:
    offset: Coord
    direction: Direction
    phase: int
    name: str = ""

    def translated(self, dx: int, dy: int) -> "Port":
        return Port((self.offset[0] + dx, self.offset[1] + dy),
                    self.direction, self.phase, self.name)

    def rotated(self, quarter_turns: int) -> "Port":
        x, y = self.offset
        k = quarter_turns % 4
        for _ in range(k):
            x, y = -y, x
        return Port((x, y), self.direction.rotated(k), self.phase, self.name)


FUNCTIONS = ("WIRE", "OR2", "AND2", "CROSS")

_TRUTH: Dict[str, Dict[Tuple[int, ...], Tuple[int, ...]]] = {
    # assignment -> expected output bits, generated per arity at lookup time
}


def expected_outputs(function: str, bits: Tuple[int, ...], n_out: int) -> Tuple[int, ...]:
    """Declared boolean behaviour of a gadget function."""
    if function == "AND2":
        return (int(all(bits)),) * n_out
    if function == "OR2":
        return (int(any(bits)),) * n_out
    if function == "WIRE":
        # one input fanned to every output
        return (bits[0],) * n_out
    if function == "CROSS":
        # output i follows input i independently
        return tuple(bits[:n_out])
    raise ValueError(f"unknown gadget function {function!r}")


@dataclass(frozen=True)
class Gadget:
    name: str
    word: Schedule
    mode: ThresholdMode
    footprint: ChipGrid
    inputs: Tuple[Port, ...]
    outputs: Tuple[Port, ...]
    period: int
    latency: int
    function: str
    meta: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.function not in FUNCTIONS:
            raise ValueError(f"unknown function {self.function!r}")
        for port in self.inputs:
            if self.footprint.get(port.offset) != 0:
                raise ValueError(f"input port site {port.offset} must be empty")
        for port in self.inputs + self.outputs:
            if not 0 <= port.phase < self.period:
                raise ValueError(f"port phase {port.phase} outside period {self.period}")

    def meta_get(self, key: str, default: str = "") -> str:
        for k, v in self.meta:
            if k == key:
                return v
        return default

    # -- file format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [
            f"name {self.name}",
            f"word {self.word.to_text()}",
            f"mode {self.mode.value}",
            f"period {self.period}",
            f"latency {self.latency}",
            f"function {self.function}",
        ]
        for k, v in self.meta:
            lines.append(f"meta {k} {v}")
        for port in self.inputs:
            lines.append(f"port in {port.offset[0]} {port.offset[1]} "
                         f"{port.direction.value} {port.phase} {port.name}".rstrip())
        for port in self.outputs:
            lines.append(f"port out {port.offset[0]} {port.offset[1]} "
                         f"{port.direction.value} {port.phase} {port.name}".rstrip())
        lines.append("footprint")
        return "\n".join(lines) + "\n" + self.footprint.to_text()

    @classmethod
    def from_text(cls, text: str) -> "Gadget":
        header: Dict[str, str] = {}
        meta: List[Tuple[str, str]] = []
        ins: List[Port] = []
        outs: List[Port] = []
        lines = text.splitlines()
        i = 0
        while i < len(lines):
            raw = lines[i]
            i += 1
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line == "footprint":
                break
            parts = line.split()
            key = parts[0]
            if key == "port":
                if len(parts) not in (6, 7):
                    raise GridFormatError(f"bad port line: {raw!r}")
                kind, x, y, d, phase = parts[1], int(parts[2]), int(parts[3]), parts[4], int(parts[5])
                name = parts[6] if len(parts) == 7 else ""
                port = Port((x, y), Direction(d), phase, name)
                (ins if kind == "in" else outs).append(port)
            elif key == "meta":
                meta.append((parts[1], " ".join(parts[2:])))
            else:
                header[key] = " ".join(parts[1:])
        else:
            raise GridFormatError("missing footprint section")
        footprint = ChipGrid.from_text("\n".join(lines[i:]))
        try:
            return cls(
                name=header["name"],
                word=Schedule.from_text(header["word"]),
                mode=ThresholdMode(header["mode"]),
                footprint=footprint,
                inputs=tuple(ins),
                outputs=tuple(outs),
                period=int(header["period"]),
                latency=int(header["latency"]),
                function=header["function"],
                meta=tuple(meta),
            )
        except KeyError as exc:
            raise GridFormatError(f"missing gadget header field {exc}") from exc


@dataclass(frozen=True)
class Instance:
    """A gadget placed on the absolute grid."""
    gadget: Gadget
    fragment: ChipGrid
    inputs: Tuple[Port, ...]
    outputs: Tuple[Port, ...]


def instantiate(gadget: Gadget, origin: Coord, rotation: int = 0) -> Instance:
    """Translate (and optionally quarter-turn) a gadget onto the grid.

    A quarter-turn swaps the roles of H and V, so odd rotations are legal only
    when the schedule is invariant under that swap.
    """
    if rotation % 4 in (1, 3) and gadget.word.rotated() != gadget.word:
        raise RotationWordMismatchError(
            f"rotating {gadget.name!r} by {rotation} quarter-turns requires word "
            f"{gadget.word.rotated().to_text()}, not {gadget.word.to_text()}")
    frag = gadget.footprint.rotate(rotation).translate(*origin)
    ins = tuple(p.rotated(rotation).translated(*origin) for p in gadget.inputs)
    outs = tuple(p.rotated(rotation).translated(*origin) for p in gadget.outputs)
    return Instance(gadget, frag, ins, outs)


def assert_signal(grid: ChipGrid, port: Port, value: int,
                  mode: ThresholdMode = ThresholdMode.FIXED_FOUR) -> ChipGrid:
    """Drive an input port: 1 places a packet at the port site, 0 is a no-op."""
    if value not in (0, 1):
        raise ValueError("signal value must be 0 or 1")
    if value == 0:
        return grid
    return grid.with_chips(port.offset, packet_size(mode))


@dataclass
class AssignmentResult:
    bits: Tuple[int, ...]
    outputs: Tuple[int, ...]
    expected: Tuple[int, ...]
    output_ticks: Tuple[Optional[int], ...]
    escapes: List[Tuple[Coord, int]] = field(default_factory=list)
    backward_extent: Dict[int, int] = field(default_factory=dict)


@dataclass
class VerificationReport:
    gadget: str
    function: str
    quiescent: bool
    quiescence_diff: List[Tuple[Coord, int, int]]
    assignments: List[AssignmentResult]

    @property
    def function_ok(self) -> bool:
        return all(r.outputs == r.expected for r in self.assignments)

    @property
    def contained(self) -> bool:
        return all(not r.escapes for r in self.assignments)

    @property
    def ok(self) -> bool:
        return self.quiescent and self.function_ok

    def summary(self) -> str:
        lines = [f"gadget {self.gadget} ({self.function}): "
                 f"{'OK' if self.ok else 'FAIL'}",
                 f"  quiescent background: {'yes' if self.quiescent else 'NO'}"]
        for r in self.assignments:
            mark = "ok" if r.outputs == r.expected else "MISMATCH"
            lines.append(
                f"  in={''.join(map(str, r.bits))} -> out={''.join(map(str, r.outputs))}"
                f" (want {''.join(map(str, r.expected))}) ticks={list(r.output_ticks)} {mark}")
            if r.escapes:
                lines.append(f"    escapes: {r.escapes[:4]}{'...' if len(r.escapes) > 4 else ''}")
            if r.backward_extent:
                lines.append(f"    backward extent: {r.backward_extent}")
        return "\n".join(lines)


def verify_gadget(gadget: Gadget, ticks: int, *, region_margin: int = 4) -> VerificationReport:
    """Exhaustively check a gadget's declared behaviour by simulation.

    For each of the 2^inputs assignments, simulate `ticks` full word
    applications, sample outputs at their declared phases, and record chips
    escaping the allowed region plus backward travel along input axes.
    """
    word = gadget.word
    if gadget.period % word.period != 0:
        raise PeriodMismatchError(
            f"period {gadget.period} not a multiple of word length {word.period}")
    if ticks < gadget.latency + 1:
        raise ValueError(f"ticks={ticks} must exceed gadget latency {gadget.latency}")

    # Quiescent background must reproduce itself exactly after one period.
    settled = run(gadget.footprint, word, gadget.period, gadget.mode)
    qdiff = []
    if settled != gadget.footprint:
        coords = set(settled) | set(gadget.footprint)
        qdiff = sorted((c, gadget.footprint.get(c), settled.get(c)) for c in coords
                       if gadget.footprint.get(c) != settled.get(c))

    bbox = gadget.footprint.bounding_box()
    ports = [p.offset for p in gadget.inputs + gadget.outputs]
    xs = [p[0] for p in ports] + ([bbox[0], bbox[2]] if bbox else [])
    ys = [p[1] for p in ports] + ([bbox[1], bbox[3]] if bbox else [])
    region = (min(xs) - region_margin, min(ys) - region_margin,
              max(xs) + region_margin, max(ys) + region_margin)

    thr = packet_size(gadget.mode)
    results = []
    n_in = len(gadget.inputs)
    for mask in range(2 ** n_in):
        bits = tuple((mask >> i) & 1 for i in range(n_in))
        g = gadget.footprint
        for bit, port in zip(bits, gadget.inputs):
            g = assert_signal(g, port, bit, gadget.mode)
        out_ticks: List[Optional[int]] = [None] * len(gadget.outputs)
        escapes: Dict[Coord, int] = {}
        backward: Dict[int, int] = {}
        span = max(region[2] - region[0], region[3] - region[1]) + 2 * region_margin
        cur = g
        for tick in range(ticks):
            for ph in range(gadget.period):
                cur = step(cur, word[tick * gadget.period + ph], gadget.mode)
                # phase p samples the state after p steps of a tick; phase 0 is
                # the tick boundary, reached after the period's last step.
                for j, port in enumerate(gadget.outputs):
                    if out_ticks[j] is None and (ph + 1) % gadget.period == port.phase \
                            and cur.get(port.offset) >= thr:
                        out_ticks[j] = tick + 1
            for (x, y), n in cur.items():
                if not (region[0] <= x <= region[2] and region[1] <= y <= region[3]):
                    escapes[(x, y)] = max(escapes.get((x, y), 0), n)
            for i, port in enumerate(gadget.inputs):
                dx, dy = port.direction.vector()
                px, py = port.offset
                for k in range(backward.get(i, 0) + 1, span):
                    back = (px - k * dx, py - k * dy)
                    if cur.get(back) != gadget.footprint.get(back):
                        backward[i] = k
        outputs = tuple(int(t is not None) for t in out_ticks)
        results.append(AssignmentResult(
            bits=bits,
            outputs=outputs,
            expected=expected_outputs(gadget.function, bits, len(gadget.outputs)),
            output_ticks=tuple(out_ticks),
            escapes=sorted(escapes.items()),
            backward_extent={i: k for i, k in backward.items() if k},
        ))
    return VerificationReport(
        gadget=gadget.name,
        function=gadget.function,
        quiescent=not qdiff,
        quiescence_diff=qdiff,
        assignments=results,
    )


# -- catalog ------------------------------------------------------------------

CATALOG_DIR = Path(__file__).parent / "catalog"


def load_catalog(directory: Path | None = None) -> List[Gadget]:
    directory = directory or CATALOG_DIR
    gadgets = []
    for path in sorted(directory.glob("*.gadget")):
        gadgets.append(Gadget.from_text(path.read_text(encoding="utf-8")))
    return gadgets


def catalog(word: Schedule, mode: ThresholdMode,
            directory: Path | None = None) -> List[Gadget]:
    """All verified gadgets for a word and threshold mode.

    Raises UnsupportedWordError when nothing is cataloged for the pair.
    """
    entries = [g for g in load_catalog(directory)
               if g.word == word and g.mode == mode]
    if not entries:
        raise UnsupportedWordError(
            f"no gadgets for word {word.to_text()} in mode {mode.value}")
    return entries
