"""Synchronous gated chip-firing dynamics.

One step under gate kind g and threshold mode m:

  firing set  F = { v : x_v >= threshold(v) }   (from the input grid only)
  x'_v = x_v - alpha(v)            for v in F   (alpha = number of open sides)
  x'_u = x_u + #{ v in F : u is an open neighbour of v }

FIXED_FOUR fires at x_v >= 4; ADAPTIVE fires at x_v >= alpha(v) (2 under
H/V/block steps, 4 under ALL). A cell fires at most once per step however
many chips it holds. Chips are conserved exactly: every firing cell loses
one chip per open side and that side's neighbour gains it.
"""

from __future__ import annotations

import enum
from typing import Dict, Iterator, List, Optional, Set, Tuple

from . import _fastpath
from .grid import ChipGrid, Coord
from .schedule import GateStep, Schedule, alpha, open_sides


class ThresholdMode(enum.Enum):
    FIXED_FOUR = "fixed4"
    ADAPTIVE = "adaptive"


class ProbeNotEmptyError(ValueError):
    """The probe site must hold zero chips initially."""


def fire_threshold(cell: Coord, step: GateStep, mode: ThresholdMode) -> int:
    if mode is ThresholdMode.FIXED_FOUR:
        return 4
    return alpha(cell, step)


def _min_threshold(mode: ThresholdMode) -> int:
    # Below this count a cell can never fire under any step kind.
    return 4 if mode is ThresholdMode.FIXED_FOUR else 2


def _uniform_fixed(schedule: Schedule, mode: ThresholdMode) -> bool:
    """True when every cell at or above 4 fires at every step of the word, so
    next-step firing candidates are always a subset of the touched cells."""
    return mode is ThresholdMode.FIXED_FOUR and all(
        s not in (GateStep.BLOCK_EVEN, GateStep.BLOCK_ODD) for s in schedule.word)


def _step_cells(cells: Dict[Coord, int], step: GateStep, mode: ThresholdMode,
                candidates) -> Tuple[Dict[Coord, int], Set[Coord]]:
    """Advance one step in place on a plain dict; returns (cells, touched).

    `candidates` is any iterable covering all possibly-firing cells; `touched`
    collects cells whose counts changed (the next step's candidate frontier).
    The uniform step kinds under the fixed threshold run on a fused fast path.
    """
    get = cells.get
    touched: Set[Coord] = set()
    add = touched.add
    if mode is ThresholdMode.FIXED_FOUR and step is not GateStep.BLOCK_EVEN \
            and step is not GateStep.BLOCK_ODD:
        if step is GateStep.ALL:
            firing = [v for v in candidates if get(v, 0) >= 4]
            for v in firing:
                x, y = v
                n = cells[v] - 4
                if n:
                    cells[v] = n
                else:
                    del cells[v]
                add(v)
                for u in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    cells[u] = get(u, 0) + 1
                    add(u)
            return cells, touched
        horiz = step is GateStep.H
        firing = [v for v in candidates if get(v, 0) >= 4]
        for v in firing:
            x, y = v
            n = cells[v] - 2
            if n:
                cells[v] = n
            else:
                del cells[v]
            add(v)
            if horiz:
                a = (x + 1, y)
                c = (x - 1, y)
            else:
                a = (x, y + 1)
                c = (x, y - 1)
            cells[a] = get(a, 0) + 1
            cells[c] = get(c, 0) + 1
            add(a)
            add(c)
        return cells, touched
    firing_general: List[Coord] = []
    for v in candidates:
        n = get(v)
        if n is not None and n >= fire_threshold(v, step, mode):
            firing_general.append(v)
    for v in firing_general:
        sides = open_sides(v, step)
        x, y = v
        n = cells[v] - len(sides)
        if n:
            cells[v] = n
        else:
            del cells[v]
        add(v)
        for dx, dy in sides:
            u = (x + dx, y + dy)
            cells[u] = get(u, 0) + 1
            add(u)
    return cells, touched


def step(grid: ChipGrid, gate: GateStep,
         mode: ThresholdMode = ThresholdMode.FIXED_FOUR) -> ChipGrid:
    """One synchronous update; pure function of the inputs."""
    cells = grid.cells()
    cells, _ = _step_cells(cells, gate, mode, list(cells))
    return ChipGrid(cells)


def run(grid: ChipGrid, schedule: Schedule, steps: int,
        mode: ThresholdMode = ThresholdMode.FIXED_FOUR) -> ChipGrid:
    """Fold `step` over the first `steps` letters of the cyclic word."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    cells = grid.cells()
    candidates: Optional[Set[Coord]] = None  # None = scan everything
    floor = _min_threshold(mode)
    uniform = _uniform_fixed(schedule, mode)
    for t in range(steps):
        cand = candidates if candidates is not None else set(cells)
        cells, touched = _step_cells(cells, schedule[t], mode, cand)
        if not touched and candidates is not None and not candidates:
            break  # quiescent: no cell can ever fire again
        if uniform:
            # a cell at or above threshold always fires, so anything eligible
            # next step must have changed this step
            candidates = {v for v in touched if cells.get(v, 0) >= 4}
            continue
        # Next step's firing cells must have changed count now, or have been
        # eligible-but-gated this step (still at/above the universal floor).
        nxt = {v for v in touched if cells.get(v, 0) >= floor}
        if candidates is None:
            nxt |= {v for v, n in cells.items() if n >= floor}
        else:
            nxt |= {v for v in candidates if cells.get(v, 0) >= floor}
        candidates = nxt
    return ChipGrid(cells)


def trace(grid: ChipGrid, schedule: Schedule, steps: int,
          mode: ThresholdMode = ThresholdMode.FIXED_FOUR) -> List[ChipGrid]:
    """[state_0, state_1, ..., state_steps]; element 0 is the input grid."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    out = [grid]
    for t in range(steps):
        out.append(step(out[-1], schedule[t], mode))
    return out


def iter_states(grid: ChipGrid, schedule: Schedule, steps: int,
                mode: ThresholdMode = ThresholdMode.FIXED_FOUR
                ) -> Iterator[Tuple[int, ChipGrid]]:
    """Yield (t, state_t) for t = 1..steps without retaining the history."""
    cur = grid
    for t in range(steps):
        cur = step(cur, schedule[t], mode)
        yield t + 1, cur


def probe(grid: ChipGrid, schedule: Schedule, steps: int, site: Coord,
          mode: ThresholdMode = ThresholdMode.FIXED_FOUR) -> Optional[int]:
    """Earliest t in 1..steps with chips at `site`, or None.

    The prediction problem requires the probed site to start empty.
    """
    if grid.get(site) != 0:
        raise ProbeNotEmptyError(f"probe site {site} initially holds {grid.get(site)} chips")
    floor = _min_threshold(mode)
    cells = grid.cells()
    candidates: Optional[Set[Coord]] = None
    uniform = _uniform_fixed(schedule, mode)
    if uniform and cells:
        letters = tuple(s.value for s in schedule.word)
        if _fastpath.eligible(letters):
            try:
                return _fastpath.probe_fast(cells, letters, steps, site)
            except _fastpath.FallbackNeeded:
                pass
    for t in range(steps):
        cand = candidates if candidates is not None else set(cells)
        cells, touched = _step_cells(cells, schedule[t], mode, cand)
        if site in cells:
            return t + 1
        if not touched and candidates is not None and not candidates:
            return None
        if uniform:
            candidates = {v for v in touched if cells.get(v, 0) >= 4}
            continue
        nxt = {v for v in touched if cells.get(v, 0) >= floor}
        if candidates is None:
            nxt |= {v for v, n in cells.items() if n >= floor}
        else:
            nxt |= {v for v in candidates if cells.get(v, 0) >= floor}
        candidates = nxt
    return None


def total_chips(grid: ChipGrid) -> int:
    return grid.total_chips()
