"""Gating schedules: which cell sides are open at each step.

A schedule is a finite word over step kinds, applied cyclically. Step kinds:

  H           east/west sides open everywhere (horizontal exchange)
  V           north/south sides open everywhere
  ALL         all four sides open (classic sandpile)
  BLOCK_EVEN  sides interior to 2x2 blocks anchored at even coordinates
  BLOCK_ODD   same, anchor shifted by (1, 1)

A side is open iff both incident cells agree, which holds by construction
for every kind here. Text form uses one letter per kind (H V A E O) with
`^k` repetition, e.g. `H^4V^4`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Tuple

from .grid import Coord


class GateStep(enum.Enum):
    H = "H"
    V = "V"
    ALL = "A"
    BLOCK_EVEN = "E"
    BLOCK_ODD = "O"

    @property
    def letter(self) -> str:
        return self.value


_EAST, _WEST, _NORTH, _SOUTH = (1, 0), (-1, 0), (0, 1), (0, -1)


def open_sides(cell: Coord, step: GateStep) -> Tuple[Tuple[int, int], ...]:
    """Unit vectors toward the open sides of `cell` under `step`."""
    if step is GateStep.H:
        return (_EAST, _WEST)
    if step is GateStep.V:
        return (_NORTH, _SOUTH)
    if step is GateStep.ALL:
        return (_EAST, _WEST, _NORTH, _SOUTH)
    x, y = cell
    if step is GateStep.BLOCK_EVEN:
        return ((_EAST if x % 2 == 0 else _WEST),
                (_NORTH if y % 2 == 0 else _SOUTH))
    if step is GateStep.BLOCK_ODD:
        return ((_EAST if x % 2 == 1 else _WEST),
                (_NORTH if y % 2 == 1 else _SOUTH))
    raise ValueError(f"unknown step kind {step!r}")


def alpha(cell: Coord, step: GateStep) -> int:
    """Number of open sides (the per-firing chip loss)."""
    return 4 if step is GateStep.ALL else 2


class ScheduleFormatError(ValueError):
    """Raised for malformed schedule strings."""


_LETTERS = {s.value: s for s in GateStep}


@dataclass(frozen=True)
class Schedule:
    """Nonempty word of gate steps, applied cyclically: step t uses word[t % len]."""

    word: Tuple[GateStep, ...]

    def __post_init__(self):
        if not self.word:
            raise ValueError("schedule word must be nonempty")

    def __len__(self) -> int:
        return len(self.word)

    def __getitem__(self, t: int) -> GateStep:
        return self.word[t % len(self.word)]

    @property
    def period(self) -> int:
        return len(self.word)

    def to_text(self) -> str:
        """Compact text with `^k` runs, e.g. H^4V^4."""
        out = []
        i = 0
        w = self.word
        while i < len(w):
            j = i
            while j < len(w) and w[j] is w[i]:
                j += 1
            run = j - i
            out.append(w[i].letter + (f"^{run}" if run > 1 else ""))
            i = j
        return "".join(out)

    @classmethod
    def from_text(cls, text: str) -> "Schedule":
        word = []
        i = 0
        s = text.strip()
        if not s:
            raise ScheduleFormatError("empty schedule string")
        while i < len(s):
            ch = s[i].upper()
            if ch not in _LETTERS:
                raise ScheduleFormatError(f"bad schedule letter {s[i]!r} at {i}")
            step = _LETTERS[ch]
            i += 1
            reps = 1
            if i < len(s) and s[i] == "^":
                i += 1
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                if j == i:
                    raise ScheduleFormatError(f"missing repeat count at {i}")
                reps = int(s[i:j])
                if reps < 1:
                    raise ScheduleFormatError(f"repeat count must be >= 1 at {i}")
                i = j
            word.extend([step] * reps)
        return cls(tuple(word))

    def rotated(self) -> "Schedule":
        """Word under a quarter-turn of the plane: H and V swap."""
        swap = {GateStep.H: GateStep.V, GateStep.V: GateStep.H}
        return Schedule(tuple(swap.get(s, s) for s in self.word))


# The word of the main construction: four horizontal steps then four vertical.
H4V4 = Schedule.from_text("H^4V^4")
