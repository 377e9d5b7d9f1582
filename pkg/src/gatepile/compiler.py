"""Reduce monotone circuits to prediction-problem instances.

A compiled layout is an initial chip configuration plus a schedule, a step
bound T, input pads and a probe site: the probe receives a chip within T
iff the circuit evaluates to 1 on the asserted inputs.

Layout scheme for the word H^4V^4 (threshold 4):

  * Every value (input or gate output) owns a horizontal band of rows. Its
    packet travels east on rails (3-chip corridors parking at columns
    x = 0 mod 4) and is duplicated by branching-wire splits, one per extra
    consumer, each branch bending back east onto its own sub-rail.
  * A consumer taps its sub-rail with a vertical drop on the offset grid
    (corridor columns 2 mod 4, parking rows 2 mod 4). Offset-grid wires pass
    straight through rails - the cross-over construction - so drops may
    descend past any number of unrelated rails.
  * Phase conversion between the rail grid and the offset grid happens at
    2-chip converter centers driven by timing packets ("clocks") placed in
    the initial configuration; a center fires only after both the signal
    chip and the clock chip arrive. Landing clocks are scheduled so both
    arguments of every gate arrive at the same tick.
  * At the gate, two vertical arms drop one chip each onto the center
    (2 chips for AND, 3 for OR); the charged center fires east, launching
    the output packet.

Words without a cross-over gadget (HV, H^2V^2, H^3V^3, A) route left-deep
chains only; anything whose routing would need a crossing is rejected,
never mis-compiled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from . import _fastpath
from .engine import ThresholdMode, probe
from .gadgets import catalog, UnsupportedWordError
from .grid import ChipGrid, Coord
from .netlist import Netlist, evaluate_netlist
from .schedule import H4V4, Schedule


class CompileError(Exception):
    pass


class NonplanarWithoutCrossoverError(CompileError):
    """The routing needs a crossing and the word's catalog has no cross-over."""


class PlacementOverflowError(CompileError):
    """Routing failed within this compiler's placement discipline."""


PACKET = 4  # compiled layouts always run in fixed-threshold mode


@dataclass(frozen=True)
class CompiledLayout:
    grid: ChipGrid
    schedule: Schedule
    t_bound: int
    input_sites: Tuple[Tuple[str, Coord], ...]   # name -> pad cell, empty initially
    probe_site: Coord
    mode: ThresholdMode
    placements: Tuple[Tuple[str, str], ...] = ()
    gate_arrivals: Tuple[Tuple[str, int, int], ...] = ()  # gate, arm arrival ticks

    def input_map(self) -> Dict[str, Coord]:
        return dict(self.input_sites)

    def manifest(self) -> Dict[str, object]:
        bbox = self.grid.bounding_box()
        return {
            "schedule": self.schedule.to_text(),
            "mode": self.mode.value,
            "t_bound": self.t_bound,
            "probe": list(self.probe_site),
            "inputs": {name: list(site) for name, site in self.input_sites},
            "cells": len(self.grid),
            "chips": self.grid.total_chips(),
            "bbox": list(bbox) if bbox else None,
            "gate_arrivals": {g: [a, b] for g, a, b in self.gate_arrivals},
            "placements": dict(self.placements),
        }

    def manifest_text(self) -> str:
        return json.dumps(self.manifest(), sort_keys=True, indent=2) + "\n"


class _Sheet:
    """Write-once cell sheet: overlapping writes must agree exactly."""

    def __init__(self):
        self.cells: Dict[Coord, int] = {}

    def put(self, x: int, y: int, n: int) -> None:
        old = self.cells.get((x, y))
        if old is None:
            self.cells[(x, y)] = n
        elif old != n:
            raise CompileError(
                f"internal placement conflict at ({x}, {y}): {old} vs {n}")

    def grid(self) -> ChipGrid:
        return ChipGrid(self.cells)


@dataclass(frozen=True)
class _Avail:
    """A value's packet parked at (col, row) at the start of tick `tick`."""
    col: int
    row: int
    tick: int


class _H4V4Builder:
    RAIL = 3

    def __init__(self):
        self.sheet = _Sheet()
        self.placements: List[Tuple[str, str]] = []

    # -- primitive geometry ---------------------------------------------------

    def h_support(self, x: int, y: int) -> None:
        for dy in (1, 2, -1, -2):
            self.sheet.put(x, y + dy, self.RAIL)

    def v_support(self, x: int, y: int) -> None:
        for dx in (1, 2, -1, -2):
            self.sheet.put(x + dx, y, self.RAIL)

    def rail(self, x0: int, x1: int, y: int) -> None:
        """Eastward corridor cells x0..x1 with ring supports at park columns."""
        for x in range(x0, x1 + 1):
            self.sheet.put(x, y, self.RAIL)
            if x % 4 == 0:
                self.h_support(x, y)

    def rail_travel(self, avail: _Avail, dest_col: int) -> _Avail:
        if dest_col % 4 != 0 or dest_col < avail.col:
            raise CompileError(f"bad rail destination {dest_col} from {avail.col}")
        if dest_col == avail.col:
            return avail
        self.rail(avail.col + 1, dest_col, avail.row)
        return _Avail(dest_col, avail.row, avail.tick + (dest_col - avail.col) // 4)

    # -- branching ------------------------------------------------------------

    def split(self, avail: _Avail) -> Tuple[_Avail, _Avail]:
        """Branching wire: consumes the packet, emits copies on rows +-8."""
        s = avail.col + 8
        row = avail.row
        self.rail_travel(avail, s - 4)
        self.rail(s - 3, s - 1, row)
        self.sheet.put(s, row, self.RAIL)              # splitting corner
        for sign in (1, -1):
            for dy in (1, 2, 3):
                self.sheet.put(s, row + dy * sign, self.RAIL)
            self.sheet.put(s, row + 4 * sign, self.RAIL)
            self.v_support(s, row + 4 * sign)
            for dy in (5, 6, 7):
                self.sheet.put(s, row + dy * sign, self.RAIL)
            self.sheet.put(s, row + 8 * sign, self.RAIL)   # bend corner
            self.rail(s + 1, s + 4, row + 8 * sign)
        t_out = avail.tick + (s - 4 - avail.col) // 4 + 3
        return (_Avail(s + 4, row + 8, t_out), _Avail(s + 4, row - 8, t_out))

    # -- offset-grid drop (the composed cross-over) -----------------------------

    @staticmethod
    def drop_earliest(avail: _Avail, drop_col: int, land_row: int) -> int:
        """Earliest tick the dropped packet can leave the landing row."""
        t_signal = avail.tick + (drop_col - avail.col) // 4
        t_last_park = t_signal + 1 + (avail.row - land_row - 4) // 4
        return t_last_park + 2                       # landing clock + relaunch

    def drop(self, avail: _Avail, drop_col: int, land_row: int,
             out_tick: Optional[int] = None) -> _Avail:
        """Route a packet from its rail down to land_row via the offset grid.

        Consumes the packet at (drop_col, row); returns it parked at
        (drop_col + 4, land_row) at `out_tick` (default: earliest possible).
        The landing clock's runway length realises the requested tick.
        """
        if drop_col % 4 != 0:
            raise CompileError("drop column must be 0 mod 4")
        if land_row % 4 != 0 or land_row > avail.row - 8:
            raise CompileError("landing row must be 0 mod 4, below the rail")
        earliest = self.drop_earliest(avail, drop_col, land_row)
        if out_tick is None:
            out_tick = earliest
        if out_tick < earliest:
            raise CompileError(f"drop deadline {out_tick} before earliest {earliest}")
        a = self.rail_travel(avail, drop_col)
        c = drop_col + 2
        row = a.row
        # down-converter: the signal chip arrives mid H phase, the clock chip
        # mid V phase; the charged center fires on the offset phase.
        self.sheet.put(drop_col + 1, row, self.RAIL)
        self.sheet.put(c, row, 2)
        src = row + 2 + 4 * a.tick
        for y in range(row + 1, src):
            self.sheet.put(c, y, self.RAIL)
        self.sheet.put(c, src, PACKET)                 # down clock, pre-asserted
        for y in range(row + 2, src + 1, 4):
            self.v_support(c, y)
        # offset-grid corridor down to the landing row
        for y in range(land_row + 1, row):
            self.sheet.put(c, y, self.RAIL)
        for y in range(land_row + 2, row - 1, 4):
            self.v_support(c, y)
        # up-converter plus its landing clock runway
        self.sheet.put(c, land_row, 2)
        t_clock_b = out_tick - 1
        start = drop_col - 4 * t_clock_b
        self.sheet.put(start, land_row, PACKET)        # landing clock
        for x in range(start + 1, c):
            self.sheet.put(x, land_row, self.RAIL)
        for x in range(start + 4, drop_col + 1, 4):
            self.h_support(x, land_row)
        # relaunch: the east corridor resumes on the landing row
        self.rail(c + 1, drop_col + 4, land_row)
        return _Avail(drop_col + 4, land_row, out_tick)

    # -- gate -----------------------------------------------------------------

    def arm_down(self, avail: _Avail, arm_col: int, center_row: int) -> int:
        """Corridor into a south bend and descending arm; returns the tick
        whose final V step drops the arm's chip onto the center."""
        a = self.rail_travel(avail, arm_col - 4)
        self.rail(arm_col - 3, arm_col - 1, a.row)
        self.sheet.put(arm_col, a.row, self.RAIL)          # bend corner
        for y in range(center_row + 4, a.row):
            self.sheet.put(arm_col, y, self.RAIL)
        self.v_support(arm_col, center_row + 4)
        for dy in (1, 2, 3):
            self.sheet.put(arm_col, center_row + dy, self.RAIL)
        return a.tick + 2

    def arm_up(self, avail: _Avail, arm_col: int, center_row: int) -> int:
        a = self.rail_travel(avail, arm_col - 4)
        self.rail(arm_col - 3, arm_col - 1, a.row)
        self.sheet.put(arm_col, a.row, self.RAIL)
        for y in range(a.row + 1, center_row - 3):
            self.sheet.put(arm_col, y, self.RAIL)
        self.v_support(arm_col, center_row - 4)
        for dy in (1, 2, 3):
            self.sheet.put(arm_col, center_row - dy, self.RAIL)
        return a.tick + 2


def _compile_h4v4(netlist: Netlist) -> CompiledLayout:
    b = _H4V4Builder()
    consumers = netlist.consumers()

    def fanout(name: str) -> int:
        return len(consumers[name]) + (1 if name == netlist.output else 0)

    # rows: one band per value, stacked downward in definition order; the
    # split ladder and gate plumbing grow below the trunk row
    row_of: Dict[str, int] = {}
    cursor = 0
    for name in netlist.names:
        c = max(fanout(name), 1)
        cursor -= 16                      # room for the comb's top sub-rail
        row_of[name] = cursor
        cursor -= 8 * max(c - 1, 1) + 16  # ladder rows, plumbing, clearance

    col_cursor = 8
    state: Dict[str, List[_Avail]] = {}
    input_sites: List[Tuple[str, Coord]] = []
    for name in netlist.inputs:
        state[name] = [_Avail(0, row_of[name], 0)]
        input_sites.append((name, (0, row_of[name])))
        b.placements.append((name, f"input pad at (0, {row_of[name]})"))

    def expand(name: str) -> None:
        """Serve a value's consumers from a split ladder: each split pops one
        branch onto a fresh row and the remaining trunk descends; rows are
        never reused, so sub-rails cannot collide. Advances the column cursor
        past the ladder so later drop columns clear the splash radius of the
        splitting corners."""
        nonlocal col_cursor
        c = fanout(name)
        if c <= 1:
            return
        trunk = state[name].pop()
        out: List[_Avail] = []
        while len(out) < c - 1:
            col_cursor = max(col_cursor, trunk.col + 16)
            north, south = b.split(trunk)
            out.append(north)
            trunk = south
        out.append(trunk)
        state[name] = out

    for name in netlist.inputs:
        expand(name)

    gate_arrivals: List[Tuple[str, int, int]] = []
    for g in netlist.gates:
        row_g = row_of[g.gid]
        attic, basement = row_g + 8, row_g - 8
        av_a = state[g.args[0]].pop(0)
        av_b = state[g.args[1]].pop(0)
        # the gate band sits east of everything feeding it
        gx = -(-max(col_cursor, av_a.col, av_b.col) // 4) * 4
        col_cursor = gx + 32
        arm_col = gx + 16
        # landing clocks equalise both arguments' spill ticks exactly
        travel_a = (arm_col - 4 - (gx + 4)) // 4
        travel_b = (arm_col - 4 - (gx + 8 + 4)) // 4
        spill = max(b.drop_earliest(av_a, gx, attic) + travel_a,
                    b.drop_earliest(av_b, gx + 8, basement) + travel_b) + 2
        la = b.drop(av_a, gx, attic, out_tick=spill - 2 - travel_a)
        lb = b.drop(av_b, gx + 8, basement, out_tick=spill - 2 - travel_b)
        spill_a = b.arm_down(la, arm_col, row_g)
        spill_b = b.arm_up(lb, arm_col, row_g)
        if spill_a != spill or spill_b != spill:
            raise CompileError(
                f"gate {g.gid}: arm ticks {spill_a}/{spill_b}, planned {spill}")
        gate_arrivals.append((g.gid, spill_a, spill_b))
        b.sheet.put(arm_col, row_g, 2 if g.kind == "AND" else 3)
        b.rail(arm_col + 1, arm_col + 4, row_g)
        state[g.gid] = [_Avail(arm_col + 4, row_g, spill + 2)]
        b.placements.append(
            (g.gid, f"{g.kind} center at ({arm_col}, {row_g}), output tick {spill + 2}"))
        expand(g.gid)

    # probe: the output value's last availability runs east past everything
    out_av = state[netlist.output].pop(0)
    east_edge = max((x for (x, _y) in b.sheet.cells), default=8)
    probe_park = ((max(east_edge, out_av.col) + 11) // 4) * 4
    out_av = b.rail_travel(out_av, probe_park)
    b.rail(probe_park + 1, probe_park + 3, out_av.row)
    probe_site = (probe_park + 4, out_av.row)
    t_bound = 8 * (out_av.tick + 3)

    return CompiledLayout(
        grid=b.sheet.grid(),
        schedule=H4V4,
        t_bound=t_bound,
        input_sites=tuple(input_sites),
        probe_site=probe_site,
        mode=ThresholdMode.FIXED_FOUR,
        placements=tuple(b.placements),
        gate_arrivals=tuple(gate_arrivals),
    )


# -- crossover-free words: left-deep chains -------------------------------------

def _word_run(word: Schedule) -> Tuple[str, int]:
    text = word.to_text()
    if text == "A":
        return "allopen", 1
    letters = [s.value for s in word.word]
    k = len(letters) // 2
    if k >= 1 and letters == ["H"] * k + ["V"] * k:
        return "hv", k
    raise UnsupportedWordError(f"no compilation scheme for word {text}")


def _chain_gates(netlist: Netlist) -> List:
    """Validate the netlist routes as a left-deep chain; NONPLANAR otherwise."""
    consumers = netlist.consumers()
    for name in netlist.names:
        uses = len(consumers[name]) + (1 if name == netlist.output else 0)
        if uses > 1:
            raise NonplanarWithoutCrossoverError(
                f"value {name!r} fans out {uses} ways; fan-out routes through "
                f"crossings and this word's catalog has no cross-over")
    gate_ids = {g.gid for g in netlist.gates}
    for g in netlist.gates:
        if sum(1 for a in g.args if a in gate_ids) > 1:
            raise PlacementOverflowError(
                f"gate {g.gid!r} joins two gate outputs; only left-deep chains "
                f"are routable without a cross-over here")
    return list(netlist.gates)


def _compile_chain_hv(netlist: Netlist, word: Schedule, k: int) -> CompiledLayout:
    """Chains on southeast staircases for words H^k V^k, k in {1, 2, 3}."""
    sheet = _Sheet()
    placements: List[Tuple[str, str]] = []
    input_sites: List[Tuple[str, Coord]] = []
    gates = _chain_gates(netlist)
    gate_ids = {g.gid for g in netlist.gates}

    def stair_se(x: int, y: int, periods: int) -> Coord:
        """Emit a staircase continuing southeast from (x, y); returns its end."""
        for _ in range(periods):
            for _ in range(k):
                x += 1
                sheet.put(x, y, 3)
            for _ in range(k):
                y -= 1
                sheet.put(x, y, 3)
        return (x, y)

    def arm_from(cx: int, cy: int, dy: int, periods: int = 3) -> Coord:
        """Staircase arm ending on the center from above (dy=+1) or below
        (dy=-1); emits all cells but the head and returns the head (the pad)."""
        x, y = cx, cy
        cells: List[Coord] = []
        for _ in range(k):
            y += dy
            cells.append((x, y))
        for p in range(periods):
            for _ in range(k):
                x -= 1
                cells.append((x, y))
            if p < periods - 1:
                for _ in range(k):
                    y += dy
                    cells.append((x, y))
        for cell in cells[:-1]:
            sheet.put(*cell, 3)
        return cells[-1]

    if not gates:
        name = netlist.output
        end = stair_se(0, 0, 6)
        input_sites.append((name, (0, 0)))
        return CompiledLayout(sheet.grid(), word, 2 * k * 12, tuple(input_sites),
                              (end[0] + 1, end[1]), ThresholdMode.FIXED_FOUR,
                              tuple(placements))

    cx, cy = 0, 0
    periods_used = 0
    for i, g in enumerate(gates):
        chain_arg = next((a for a in g.args if a in gate_ids), None)
        fresh = [a for a in g.args if a != chain_arg]
        if chain_arg is None:
            pad_n = arm_from(cx, cy, +1)
            input_sites.append((fresh[0], pad_n))
        pad_s = arm_from(cx, cy, -1)
        input_sites.append((fresh[-1], pad_s))
        sheet.put(cx, cy, 2 if g.kind == "AND" else 3)
        placements.append((g.gid, f"{g.kind} center at ({cx}, {cy})"))
        end = stair_se(cx, cy, 4)
        periods_used += 8
        if i < len(gates) - 1:
            # continue the staircase into the next gate's upper arm: an east
            # run, then a south run whose final firing lands on the center
            ex, ey = end
            for _ in range(k):
                ex += 1
                sheet.put(ex, ey, 3)
            for j in range(1, k):
                sheet.put(ex, ey - j, 3)
            cx, cy = ex, ey - k
        else:
            cx, cy = end
    probe_site = (cx + 1, cy)
    t_bound = 2 * k * (periods_used + 8 * len(gates) + 16)
    return CompiledLayout(sheet.grid(), word, t_bound, tuple(input_sites),
                          probe_site, ThresholdMode.FIXED_FOUR, tuple(placements))


def _compile_chain_allopen(netlist: Netlist, word: Schedule) -> CompiledLayout:
    """Chains under the classic rule: straight corridors, gates in a row."""
    sheet = _Sheet()
    placements: List[Tuple[str, str]] = []
    input_sites: List[Tuple[str, Coord]] = []
    gates = _chain_gates(netlist)
    gate_ids = {g.gid for g in netlist.gates}

    if not gates:
        for x in range(1, 13):
            sheet.put(x, 0, 3)
        input_sites.append((netlist.output, (0, 0)))
        return CompiledLayout(sheet.grid(), word, 40, tuple(input_sites),
                              (13, 0), ThresholdMode.FIXED_FOUR, tuple(placements))

    x = 0
    for g in gates:
        chain_arg = next((a for a in g.args if a in gate_ids), None)
        fresh = [a for a in g.args if a != chain_arg]
        cx = x + 8
        for j in range(x + 1, cx):
            sheet.put(j, 0, 3)
        if chain_arg is None:
            input_sites.append((fresh[0], (x, 0)))
        for dy in range(1, 6):
            sheet.put(cx, dy, 3)
        input_sites.append((fresh[-1], (cx, 6)))
        sheet.put(cx, 0, 2 if g.kind == "AND" else 3)
        placements.append((g.gid, f"{g.kind} center at ({cx}, 0)"))
        x = cx
    for j in range(x + 1, x + 8):
        sheet.put(j, 0, 3)
    probe_site = (x + 8, 0)
    t_bound = 20 * len(gates) + 60
    return CompiledLayout(sheet.grid(), word, t_bound, tuple(input_sites),
                          probe_site, ThresholdMode.FIXED_FOUR, tuple(placements))


def compile_netlist(netlist: Netlist, word: Schedule = H4V4) -> CompiledLayout:
    """Place and route a monotone netlist for the given schedule word."""
    functions = {g.function for g in catalog(word, ThresholdMode.FIXED_FOUR)}
    if not {"WIRE", "AND2", "OR2"} <= functions:
        raise UnsupportedWordError(
            f"catalog for {word.to_text()} lacks wire or gates")
    if "CROSS" in functions:
        if word != H4V4:
            raise UnsupportedWordError(
                f"no layout scheme for cross-capable word {word.to_text()}")
        return _compile_h4v4(netlist)
    kind, k = _word_run(word)
    if kind == "allopen":
        return _compile_chain_allopen(netlist, word)
    return _compile_chain_hv(netlist, word, k)


@dataclass
class CheckResult:
    agrees: bool
    expected: int
    observed: int
    probe_step: Optional[int]
    steps_used: int


def check_compiled(layout: CompiledLayout, netlist: Netlist,
                   assignment: Mapping[str, int]) -> CheckResult:
    """Assert inputs per the signal encoding, run, compare with the evaluator."""
    expected = evaluate_netlist(netlist, assignment)
    sites = layout.input_map()
    asserted = {sites[name]: PACKET
                for name in netlist.inputs if assignment[name]}
    t = _probe_layout(layout, asserted)
    observed = int(t is not None)
    return CheckResult(
        agrees=(observed == expected),
        expected=expected,
        observed=observed,
        probe_step=t,
        steps_used=layout.t_bound,
    )


def _probe_layout(layout: CompiledLayout, asserted: Dict[Coord, int]) -> Optional[int]:
    """Probe the layout with packets added at `asserted`; reuses a packed
    representation of the base grid across calls when the accelerator is up."""
    if layout.grid.get(layout.probe_site) != 0:
        raise CompileError("probe site not empty in the compiled grid")
    letters = tuple(s.value for s in layout.schedule.word)
    if layout.mode is ThresholdMode.FIXED_FOUR and _fastpath.eligible(letters):
        packed = getattr(layout, "_packed", None)
        if packed is None:
            packed = _fastpath.PackedGrid(layout.grid.cells())
            object.__setattr__(layout, "_packed", packed)
        try:
            return packed.probe(letters, layout.t_bound, layout.probe_site, asserted)
        except _fastpath.FallbackNeeded:
            pass
    grid = layout.grid
    for site, n in asserted.items():
        grid = grid.with_chips(site, n)
    return probe(grid, layout.schedule, layout.t_bound, layout.probe_site, layout.mode)
