"""Brute-force gadget discovery over bounded windows.

A search enumerates every chip assignment of a small window (row-major cell
order, counts ascending), drops assignments that provably cannot sit on a
quiescent background, and simulates the survivors inside a fixed harness
until one meets the behavioural contract. The search itself is the oracle:
first-passing candidates are frozen into gadget files.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .engine import ThresholdMode, run, step
from .gadgets import Direction, Gadget, Port, assert_signal, expected_outputs, packet_size
from .grid import ChipGrid, Coord
from .schedule import Schedule

CONTRACTS = ("QUIESCENT_WIRE", "AND2", "OR2", "CROSS")


class BudgetExhaustedError(RuntimeError):
    """Search budget ran out; carries partial progress."""

    def __init__(self, progress: "SearchProgress"):
        super().__init__(f"budget exhausted after {progress.raw} candidates")
        self.progress = progress


@dataclass
class SearchProgress:
    raw: int = 0          # candidates counted before pruning
    pruned: int = 0       # dropped by necessary conditions
    checked: int = 0      # simulated against the contract
    elapsed_s: float = 0.0


@dataclass(frozen=True)
class SearchSpec:
    word: Schedule
    mode: ThresholdMode
    window: Tuple[int, int]              # width, height
    max_chips: int
    contract: str
    budget: Optional[int] = None         # max raw candidates, None = unbounded

    def __post_init__(self):
        if self.contract not in CONTRACTS:
            raise ValueError(f"unknown contract {self.contract!r}")
        w, h = self.window
        if w < 1 or h < 1:
            raise ValueError("window must be at least 1x1")
        if self.max_chips < 0:
            raise ValueError("max chips must be >= 0")

    def window_cells(self) -> List[Coord]:
        w, h = self.window
        return [(x, y) for y in range(h) for x in range(w)]


def quiescent_cap(mode: ThresholdMode) -> int:
    """Counts at or above this fire under every step kind, so a quiescent
    background cannot contain them."""
    return 4 if mode is ThresholdMode.FIXED_FOUR else 2


def enumerate_candidates(spec: SearchSpec,
                         progress: Optional[SearchProgress] = None,
                         include_pruned: bool = False) -> Iterator[ChipGrid]:
    """Window assignments in deterministic order, pruned unless asked not to."""
    cells = spec.window_cells()
    cap = quiescent_cap(spec.mode)
    counts = range(spec.max_chips + 1)
    prog = progress if progress is not None else SearchProgress()
    for combo in itertools.product(counts, repeat=len(cells)):
        if spec.budget is not None and prog.raw >= spec.budget:
            raise BudgetExhaustedError(prog)
        prog.raw += 1
        if not include_pruned and any(n >= cap for n in combo):
            prog.pruned += 1
            continue
        yield ChipGrid({c: n for c, n in zip(cells, combo) if n})


def pruned_samples(spec: SearchSpec, limit: int) -> List[ChipGrid]:
    """A few candidates the pruning rule rejects, for safety spot-checks."""
    cells = spec.window_cells()
    cap = quiescent_cap(spec.mode)
    out: List[ChipGrid] = []
    for combo in itertools.product(range(spec.max_chips + 1), repeat=len(cells)):
        if any(n >= cap for n in combo):
            out.append(ChipGrid({c: n for c, n in zip(cells, combo) if n}))
            if len(out) >= limit:
                break
    return out


# -- contract harnesses --------------------------------------------------------

@dataclass(frozen=True)
class Harness:
    """Fixed surroundings for a windowed candidate.

    The candidate is translated by `window_origin` and merged with `fixture`
    (which leaves the window region empty); the contract then demands the
    gadget function `function` from `inputs` to `outputs` within `ticks` full
    word applications, over a quiescent background.
    """
    fixture: ChipGrid
    window_origin: Coord
    inputs: Tuple[Port, ...]
    outputs: Tuple[Port, ...]
    function: str
    ticks: int


def _staircase(run_len: int, periods: int, start: Coord, dy: int) -> Dict[Coord, int]:
    x, y = start
    cells = {}
    for _ in range(periods):
        for _ in range(run_len):
            x += 1
            cells[(x, y)] = 3
        for _ in range(run_len):
            y += dy
            cells[(x, y)] = 3
    return cells


def _word_profile(word: Schedule) -> Tuple[str, int]:
    """Classify a word: ('straight', k) for H^kV^k, ('allopen', 1) for A."""
    text = word.to_text()
    if text == "A":
        return "allopen", 1
    letters = [s.value for s in word.word]
    k = len(letters) // 2
    if letters == ["H"] * k + ["V"] * k:
        return "hv", k
    raise ValueError(f"no search harness for word {text}")


def build_harness(spec: SearchSpec) -> Harness:
    kind, k = _word_profile(spec.word)
    level = 3 if spec.mode is ThresholdMode.FIXED_FOUR else 1
    w, h = spec.window
    mid = h // 2
    if spec.contract == "QUIESCENT_WIRE":
        # pad -> window row -> probe; transport must finish within the H run,
        # so keep windows at most k wide for words that park.
        fixture = ChipGrid()
        inputs = (Port((-1, mid), Direction.EAST, 0, "a"),)
        outputs = (Port((w, mid), Direction.EAST, 0, "z"),)
        return Harness(fixture, (0, 0), inputs, outputs, "WIRE", ticks=3)
    if spec.contract in ("AND2", "OR2"):
        if kind == "allopen":
            cells: Dict[Coord, int] = {}
            for j in range(1, 6):
                cells[(-j, mid)] = level
                cells[(0, mid + j)] = level
            for j in range(w, w + 8):
                cells[(j, mid)] = level
            fixture = ChipGrid(cells)
            inputs = (Port((-6, mid), Direction.EAST, 0, "a"),
                      Port((0, mid + 6), Direction.SOUTH, 0, "b"))
            outputs = (Port((w + 7, mid), Direction.EAST, 0, "z"),)
            return Harness(fixture, (0, 0), inputs, outputs, spec.contract, ticks=24)
        if kind == "hv" and k == 4:
            cells = {}
            for dy in (1, 2, 3):
                cells[(0, mid + dy)] = level
                cells[(0, mid - dy)] = level
            for dx in (1, 2, -1, -2):
                cells[(dx, mid + 4)] = level
                cells[(dx, mid - 4)] = level
            for x in range(w, w + 12):
                cells[(x, mid)] = level
                if x % 4 == 0:
                    for dy in (1, 2, -1, -2):
                        cells.setdefault((x, mid + dy), level)
            fixture = ChipGrid(cells)
            inputs = (Port((0, mid + 4), Direction.SOUTH, 0, "a"),
                      Port((0, mid - 4), Direction.NORTH, 0, "b"))
            out_x = ((w + 11) // 4) * 4
            outputs = (Port((out_x, mid), Direction.EAST, 0, "z"),)
            return Harness(fixture, (0, 0), inputs, outputs, spec.contract, ticks=8)
        # staircase words: arms approach diagonally, window holds the center
        cells = {}
        arm = _staircase(k, 2, (0, mid), +1)        # build backwards below
        # north arm: forward SE staircase ending just above the window center
        x, y = 0, mid
        for _ in range(k):
            y += 1
            cells[(x, y)] = level
        for p in range(3):
            for _ in range(k):
                x -= 1
                cells[(x, y)] = level
            if p < 2:
                for _ in range(k):
                    y += 1
                    cells[(x, y)] = level
        port_n = (x, y)
        del cells[port_n]
        south = {(cx, 2 * mid - cy): lv for (cx, cy), lv in cells.items()}
        cells.update(south)
        port_s = (port_n[0], 2 * mid - port_n[1])
        out = _staircase(k, 3, (0, mid), -1)
        cells.update(out)
        fixture = ChipGrid(cells)
        inputs = (Port(port_n, Direction.SOUTH, 0, "a"),
                  Port(port_s, Direction.NORTH, 0, "b"))
        outputs = (Port((3 * k, mid - 3 * k), Direction.SOUTH, 0, "z"),)
        return Harness(fixture, (0, 0), inputs, outputs, spec.contract, ticks=10)
    if spec.contract == "CROSS":
        if kind == "hv" and k == 4:
            cells = {}
            for x in range(-4, w + 9):
                if (x, 0) not in cells:
                    cells[(x, 0)] = level
                if x % 4 == 0:
                    for dy in (1, 2, -1, -2):
                        cells.setdefault((x, dy), level)
            vx = w // 2
            for y in range(-10, 10):
                cells.setdefault((vx, y), level)
                if y % 4 == 2:
                    for dx in (1, 2, -1, -2):
                        cells.setdefault((vx + dx, y), level)
            for c in [(x, y) for x in range(w) for y in range(-(h // 2), h - h // 2)]:
                cells.pop(c, None)
            fixture = ChipGrid(cells)
            origin = (0, -(h // 2))
            inputs = (Port((-4, 0), Direction.EAST, 0, "h"),
                      Port((vx, 10), Direction.SOUTH, 0, "v"))
            outputs = (Port((((w + 8) // 4) * 4, 0), Direction.EAST, 0, "h"),
                       Port((vx, -10), Direction.SOUTH, 0, "v"))
            return Harness(fixture, origin, inputs, outputs, "CROSS", ticks=10)
        # staircase words: a SE wire and a NE wire forced through the window
        cells = {}
        cells.update(_staircase(k, 2, (-2 * k - 1, 2 * k), -1))   # SE toward window
        cells.update(_staircase(k, 2, (-2 * k - 1, -2 * k), +1))  # NE toward window
        for c in [(x, y) for x in range(w) for y in range(-(h // 2), h - h // 2)]:
            cells.pop(c, None)
        cells.update(_staircase(k, 2, (w - 1, -(h // 2)), -1))    # SE continuation
        cells.update(_staircase(k, 2, (w - 1, h - h // 2 - 1), +1))
        fixture = ChipGrid(cells)
        origin = (0, -(h // 2))
        inputs = (Port((-2 * k - 1, 2 * k), Direction.EAST, 0, "a"),
                  Port((-2 * k - 1, -2 * k), Direction.EAST, 0, "b"))
        outputs = (Port((w - 1 + 2 * k, -(h // 2) - 2 * k), Direction.SOUTH, 0, "a"),
                   Port((w - 1 + 2 * k, h - h // 2 - 1 + 2 * k), Direction.NORTH, 0, "b"))
        return Harness(fixture, origin, inputs, outputs, "CROSS", ticks=10)
    raise ValueError(spec.contract)


@dataclass
class ContractResult:
    passed: bool
    reason: str = ""
    witness: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)


def check_contract(candidate: ChipGrid, spec: SearchSpec,
                   harness: Optional[Harness] = None) -> ContractResult:
    """Simulate one candidate inside the contract harness."""
    h = harness or build_harness(spec)
    try:
        grid = h.fixture.merged(candidate.translate(*h.window_origin),
                                allow_equal_overlap=False)
    except ValueError:
        return ContractResult(False, "candidate overlaps harness fixture")
    period = spec.word.period
    # background must be an exact fixed point of one full word application
    settled = run(grid, spec.word, period, spec.mode)
    if settled != grid:
        return ContractResult(False, "background not quiescent")
    # wire transport reads prediction-style (any chip past the corridor end);
    # gate and cross outputs must form a full packet
    thr = 1 if spec.contract == "QUIESCENT_WIRE" else packet_size(spec.mode)
    n_in = len(h.inputs)
    witness = []
    for mask in range(2 ** n_in):
        bits = tuple((mask >> i) & 1 for i in range(n_in))
        g = grid
        for bit, port in zip(bits, h.inputs):
            g = assert_signal(g, port, bit, spec.mode)
        seen = [False] * len(h.outputs)
        cur = g
        for t in range(h.ticks * period):
            cur = step(cur, spec.word[t], spec.mode)
            for j, port in enumerate(h.outputs):
                if not seen[j] and (t + 1) % period == port.phase % period \
                        and cur.get(port.offset) >= thr:
                    seen[j] = True
        got = tuple(int(s) for s in seen)
        want = expected_outputs(h.function, bits, len(h.outputs))
        witness.append((bits, got))
        if got != want:
            return ContractResult(False, f"assignment {bits}: got {got}, want {want}",
                                  witness)
    return ContractResult(True, "", witness)


@dataclass
class SearchResult:
    gadget: Optional[Gadget]
    progress: SearchProgress
    spec: SearchSpec

    def manifest(self) -> Dict[str, object]:
        return {
            "contract": self.spec.contract,
            "word": self.spec.word.to_text(),
            "mode": self.spec.mode.value,
            "window": list(self.spec.window),
            "max_chips": self.spec.max_chips,
            "budget": self.spec.budget,
            "candidates_raw": self.progress.raw,
            "candidates_pruned": self.progress.pruned,
            "candidates_checked": self.progress.checked,
            "found": self.gadget.name if self.gadget else None,
            "elapsed_s": round(self.progress.elapsed_s, 3),
        }


def search(spec: SearchSpec) -> SearchResult:
    """First candidate (in enumeration order) meeting the contract, or None.

    Deterministic given the spec; raises BudgetExhaustedError when the budget
    runs out before the space does.
    """
    harness = build_harness(spec)
    progress = SearchProgress()
    t0 = time.monotonic()
    found: Optional[Gadget] = None
    try:
        for candidate in enumerate_candidates(spec, progress):
            progress.checked += 1
            result = check_contract(candidate, spec, harness)
            if result.passed:
                found = _freeze(candidate, spec, harness)
                break
    finally:
        progress.elapsed_s = time.monotonic() - t0
    return SearchResult(found, progress, spec)


def _freeze(candidate: ChipGrid, spec: SearchSpec, harness: Harness) -> Gadget:
    footprint = harness.fixture.merged(candidate.translate(*harness.window_origin))
    outputs = harness.outputs
    if spec.contract == "QUIESCENT_WIRE":
        # the frozen wire's readable output is the last corridor cell, where
        # the packet reaches the firing threshold mid-tick; the harness probe
        # one cell further east only witnesses transport
        w, h = spec.window
        outputs = (Port((w - 1, h // 2), Direction.EAST, w % spec.word.period, "z"),)
    wtxt = spec.word.to_text().replace("^", "").lower()
    return Gadget(
        name=f"found-{spec.contract.lower().replace('_', '-')}-{wtxt}-{spec.mode.value}",
        word=spec.word,
        mode=spec.mode,
        footprint=footprint,
        inputs=harness.inputs,
        outputs=outputs,
        period=spec.word.period,
        latency=harness.ticks - 1,
        function=harness.function,
        meta=(("origin", "search"),),
    )
