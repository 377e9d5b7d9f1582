"""Constructors for the shipped gadget catalog.

Footprints below were designed from the traveling-packet mechanics and are
frozen as data files (see catalog/) once they pass verify_gadget; the test
suite re-verifies every entry and checks the files match these constructors.

Conventions for the H^4V^4 family (period 8, threshold 4):

  * Horizontal corridors are cells holding 3 chips. A 4-chip packet entering
    at a "park" column (x = 0 mod 4 relative to its launch) advances one cell
    per H step and waits out each V phase by ringing against two layers of
    3-chip cells above and below the park column.
  * Vertical corridors are the transpose: packets ring horizontally at park
    rows during the H phase and advance during V steps.
  * Gate centers hold 2 (AND) or 3 (OR) chips and are fed one chip per
    asserted input by the arm's final firing; a charged center fires east at
    the next H step, launching the output packet.

The shorter words in {HV, H^2V^2, H^3V^3} carry packets on diagonal
staircases (one k-cell run east, then k south, per period) and need no
parking at all. The all-open word uses plain corridors at one cell per step.
The threshold-2 (adaptive) family is the 4-chip family with corridors of 1s
and 2-chip packets.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .engine import ThresholdMode
from .gadgets import Direction, Gadget, Port
from .grid import ChipGrid, Coord
from .schedule import Schedule

FIXED = ThresholdMode.FIXED_FOUR
ADAPT = ThresholdMode.ADAPTIVE

E, W, N, S = Direction.EAST, Direction.WEST, Direction.NORTH, Direction.SOUTH


def _h_park_supports(cells: Dict[Coord, int], x: int, level: int, y0: int = 0) -> None:
    """Ring supports above/below a horizontal-corridor park column."""
    for dy in (1, 2, -1, -2):
        cells.setdefault((x, y0 + dy), level)


def _v_park_supports(cells: Dict[Coord, int], y: int, level: int, x0: int = 0) -> None:
    for dx in (1, 2, -1, -2):
        cells.setdefault((x0 + dx, y), level)


def _h_corridor(cells: Dict[Coord, int], x0: int, x1: int, y: int, level: int,
                park_anchor: int | None = None) -> None:
    """Corridor cells x0..x1 on row y; ring supports every 4 columns."""
    for x in range(min(x0, x1), max(x0, x1) + 1):
        cells.setdefault((x, y), level)
        if park_anchor is not None and (x - park_anchor) % 4 == 0:
            _h_park_supports(cells, x, level, y)


def _v_corridor(cells: Dict[Coord, int], y0: int, y1: int, x: int, level: int,
                park_anchor: int | None = None) -> None:
    for y in range(min(y0, y1), max(y0, y1) + 1):
        cells.setdefault((x, y), level)
        if park_anchor is not None and (y - park_anchor) % 4 == 0:
            _v_park_supports(cells, y, level, x)


# -- H^4V^4 / threshold 4 -----------------------------------------------------

def wire_east(length: int = 96, word: str = "H^4V^4",
              mode: ThresholdMode = FIXED, name: str | None = None) -> Gadget:
    """Straight eastward wire; the packet advances 4 cells per tick."""
    if length % 4 != 0 or length <= 0:
        raise ValueError("wire length must be a positive multiple of 4")
    level = 3 if mode is FIXED else 1
    cells: Dict[Coord, int] = {}
    _h_corridor(cells, 1, length, 0, level, park_anchor=0)
    return Gadget(
        name=name or ("wire-east" if mode is FIXED else "wire-east-t2"),
        word=Schedule.from_text(word),
        mode=mode,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "a"),),
        outputs=(Port((length, 0), E, 0, "z"),),
        period=8,
        latency=length // 4,
        function="WIRE",
        meta=(("displacement", "4 0"), ("axis", "row 0"),
              ("settle_ticks", "1")),
    )


def _gate_h4v4(center: int, function: str, mode: ThresholdMode = FIXED,
               name: str | None = None) -> Gadget:
    """Two-input gate: packets descend the north arm and ascend the south arm;
    their final firings each drop one chip on the center, which fires east."""
    level = 3 if mode is FIXED else 1
    cells: Dict[Coord, int] = {}
    if center:
        cells[(0, 0)] = center
    # vertical arms: port at (0, +-4), corridor to the center
    _v_corridor(cells, 1, 3, 0, level)
    _v_corridor(cells, -3, -1, 0, level)
    _v_park_supports(cells, 4, level)    # arriving packets ring at the ports
    _v_park_supports(cells, -4, level)
    # east output corridor
    _h_corridor(cells, 1, 12, 0, level, park_anchor=0)
    return Gadget(
        name=name or function.lower() + ("" if mode is FIXED else "-t2"),
        word=Schedule.from_text("H^4V^4"),
        mode=mode,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 4), S, 0, "a"), Port((0, -4), N, 0, "b")),
        outputs=(Port((12, 0), E, 0, "z"),),
        period=8,
        latency=4,
        function=function,
        meta=(("center", str(center)), ("backward_bound", "2")),
    )


def and2() -> Gadget:
    return _gate_h4v4(2, "AND2")


def or2() -> Gadget:
    return _gate_h4v4(3, "OR2")


def cross() -> Gadget:
    """Transparent cross-over: an eastward wire and a southward wire share one
    corridor cell. The horizontal packet passes during H phases and parks at
    columns 0 mod 4; the vertical packet travels during V phases and rings at
    rows 2 mod 4, so neither ever waits on the junction."""
    cells: Dict[Coord, int] = {}
    _h_corridor(cells, 1, 16, 0, 3, park_anchor=0)
    _v_corridor(cells, -10, 9, 2, 3, park_anchor=2)
    _v_park_supports(cells, 10, 3, x0=2)  # the asserted packet rings here first
    return Gadget(
        name="cross",
        word=Schedule.from_text("H^4V^4"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "h"), Port((2, 10), S, 0, "v")),
        outputs=(Port((16, 0), E, 0, "h"), Port((2, -10), S, 0, "v")),
        period=8,
        latency=5,
        function="CROSS",
        meta=(("junction", "2 0"),
              ("arrival_offset_window", "any")),
    )


def bend_east_south() -> Gadget:
    """Eastward packet turns south: the corridor's final spill charges a
    3-chip corner which fires vertically at the next V step."""
    cells: Dict[Coord, int] = {}
    _h_corridor(cells, 1, 3, 0, 3)
    cells[(4, 0)] = 3            # corner relay
    _v_corridor(cells, -8, -1, 4, 3, park_anchor=0)
    return Gadget(
        name="bend-east-south",
        word=Schedule.from_text("H^4V^4"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "a"),),
        outputs=(Port((4, -8), S, 0, "z"),),
        period=8,
        latency=2,
        function="WIRE",
        meta=(("corner", "4 0"),),
    )


def bend_south_east() -> Gadget:
    """Southward packet turns east via the mirrored corner relay."""
    cells: Dict[Coord, int] = {}
    _v_park_supports(cells, 0, 3)
    _v_corridor(cells, -3, -1, 0, 3)
    cells[(0, -4)] = 3
    _h_corridor(cells, 1, 8, -4, 3, park_anchor=0)
    return Gadget(
        name="bend-south-east",
        word=Schedule.from_text("H^4V^4"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), S, 0, "a"),),
        outputs=(Port((8, -4), E, 0, "z"),),
        period=8,
        latency=3,
        function="WIRE",
        meta=(("corner", "0 -4"),),
    )


def split() -> Gadget:
    """Branching wire: one eastward packet charges the corner, which fires
    north and south, launching a packet up each vertical branch."""
    cells: Dict[Coord, int] = {}
    _h_corridor(cells, 1, 3, 0, 3)
    cells[(4, 0)] = 3
    _v_corridor(cells, 1, 8, 4, 3, park_anchor=0)
    _v_corridor(cells, -8, -1, 4, 3, park_anchor=0)
    return Gadget(
        name="split",
        word=Schedule.from_text("H^4V^4"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "a"),),
        outputs=(Port((4, 8), N, 0, "z0"), Port((4, -8), S, 0, "z1")),
        period=8,
        latency=2,
        function="WIRE",
        meta=(("corner", "4 0"),),
    )


# -- adaptive (threshold 2) family over H^4V^4 --------------------------------

def wire_east_t2() -> Gadget:
    return wire_east(length=64, mode=ADAPT)


def and2_t2() -> Gadget:
    # an empty center: two single chips are exactly the firing threshold
    return _gate_h4v4(0, "AND2", mode=ADAPT)


def or2_t2() -> Gadget:
    return _gate_h4v4(1, "OR2", mode=ADAPT)


# -- staircase family for words HV, H^2V^2, H^3V^3 ----------------------------

def _stair_cells_se(run: int, periods: int, start: Coord = (0, 0)) -> List[Coord]:
    """Cells of a southeast staircase: `run` east, `run` south, repeated."""
    x, y = start
    out = []
    for _ in range(periods):
        for _ in range(run):
            x += 1
            out.append((x, y))
        for _ in range(run):
            y -= 1
            out.append((x, y))
    return out


def _stair_cells_ne(run: int, periods: int, start: Coord = (0, 0)) -> List[Coord]:
    x, y = start
    out = []
    for _ in range(periods):
        for _ in range(run):
            x += 1
            out.append((x, y))
        for _ in range(run):
            y += 1
            out.append((x, y))
    return out


def wire_stair(run: int, periods: int = 12) -> Gadget:
    """Diagonal wire for word H^k V^k, k < 4: the packet needs no parking."""
    word = Schedule.from_text(f"H^{run}V^{run}" if run > 1 else "HV")
    cells = {c: 3 for c in _stair_cells_se(run, periods)}
    end = (run * periods, -run * periods)
    return Gadget(
        name=f"wire-se-{word.to_text().replace('^', '').lower()}",
        word=word,
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "a"),),
        outputs=(Port(end, S, 0, "z"),),
        period=2 * run,
        latency=periods,
        function="WIRE",
        meta=(("displacement", f"{run} {-run}"),),
    )


def _gate_stair(run: int, center: int, function: str) -> Gadget:
    """Gate for the staircase words: a southeast arm from the northwest and a
    northeast arm from the southwest deliver one chip each onto the center
    during the V phase; the charged center fires east, starting the output
    staircase."""
    word = Schedule.from_text(f"H^{run}V^{run}" if run > 1 else "HV")
    arms = 3  # staircase periods per input arm
    cells: Dict[Coord, int] = {}
    if center:
        cells[(0, 0)] = center
    # north arm: a southeast staircase whose final southward run lands on the
    # center. Built backwards from the center: the forward path is
    # port, [east run, south run] x arms, with the last run ending at (0, 1).
    x, y = 0, 0
    path_n: List[Coord] = []
    for _ in range(run):
        y += 1
        path_n.append((x, y))
    for p in range(arms):
        for _ in range(run):
            x -= 1
            path_n.append((x, y))
        if p < arms - 1:
            for _ in range(run):
                y += 1
                path_n.append((x, y))
    # south arm mirrored below
    path_s = [(x, -y) for (x, y) in path_n]
    for c in path_n[:-1]:
        cells[c] = 3
    for c in path_s[:-1]:
        cells[c] = 3
    out_cells = _stair_cells_se(run, 3)
    for c in out_cells:
        cells[c] = 3
    in_n = path_n[-1]
    in_s = path_s[-1]
    end = out_cells[-1]
    return Gadget(
        name=f"{function.lower()}-{word.to_text().replace('^', '').lower()}",
        word=word,
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port(in_n, S, 0, "a"), Port(in_s, N, 0, "b")),
        outputs=(Port(end, S, 0, "z"),),
        period=2 * run,
        latency=arms + 3,
        function=function,
        meta=(("center", str(center)), ("backward_bound", "2")),
    )


# -- all-open word ------------------------------------------------------------

def wire_east_allopen(length: int = 24) -> Gadget:
    cells: Dict[Coord, int] = {}
    for x in range(1, length + 1):
        cells[(x, 0)] = 3
    return Gadget(
        name="wire-east-allopen",
        word=Schedule.from_text("A"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((0, 0), E, 0, "a"),),
        outputs=(Port((length, 0), E, 0, "z"),),
        period=1,
        latency=length,
        function="WIRE",
        meta=(("displacement", "1 0"),),
    )


def _gate_allopen(center: int, function: str) -> Gadget:
    """Gate under the classic rule: west and north arms, east output."""
    cells: Dict[Coord, int] = {}
    cells[(0, 0)] = center
    for k in range(1, 6):
        cells[(-k, 0)] = 3   # west arm corridor (input a travels east)
        cells[(0, k)] = 3    # north arm corridor (input b travels south)
        cells[(k, 0)] = 3    # east output corridor
    for k in range(6, 9):
        cells[(k, 0)] = 3
    return Gadget(
        name=f"{function.lower()}-allopen",
        word=Schedule.from_text("A"),
        mode=FIXED,
        footprint=ChipGrid(cells),
        inputs=(Port((-6, 0), E, 0, "a"), Port((0, 6), S, 0, "b")),
        outputs=(Port((8, 0), E, 0, "z"),),
        period=1,
        latency=16,
        function=function,
        meta=(("center", str(center)), ("backward_bound", "2")),
    )


def all_entries() -> List[Gadget]:
    """Every shipped catalog gadget, in a stable order."""
    out = [
        wire_east(),
        and2(),
        or2(),
        cross(),
        bend_east_south(),
        bend_south_east(),
        split(),
        wire_east_t2(),
        and2_t2(),
        or2_t2(),
        wire_east_allopen(),
        _gate_allopen(2, "AND2"),
        _gate_allopen(3, "OR2"),
    ]
    for run in (1, 2, 3):
        out.append(wire_stair(run))
        out.append(_gate_stair(run, 2, "AND2"))
        out.append(_gate_stair(run, 3, "OR2"))
    return out
