#!/usr/bin/env python3
"""Classic and gated firing, step by step.

A cell holding four chips topples. With every side open it feeds all four
neighbours (the classic sandpile rule); when the schedule only opens the
horizontal or vertical sides, it loses just two chips and feeds the open
pair. Block steps confine the exchange to 2x2 tiles.
"""

from gatepile import ChipGrid, GateStep, Schedule, ThresholdMode, step, run
from gatepile.render import ascii_frame

g = ChipGrid({(0, 0): 4})
box = (-2, -2, 2, 2)

print("initial:")
print(ascii_frame(g, box))

print("one all-open step (loses 4, every neighbour gains 1):")
print(ascii_frame(step(g, GateStep.ALL), box))

print("one H step (loses 2, east and west gain 1):")
print(ascii_frame(step(g, GateStep.H), box))

print("one V step:")
print(ascii_frame(step(g, GateStep.V), box))

print("three chips never fire under the fixed threshold:")
print(ascii_frame(step(ChipGrid({(0, 0): 3}), GateStep.H), box))

print("adaptive threshold: two chips fire when two sides are open:")
print(ascii_frame(step(ChipGrid({(0, 0): 2}), GateStep.V,
                       ThresholdMode.ADAPTIVE), box))

print("a tall pile drains over repeated all-open steps:")
g = ChipGrid({(0, 0): 12})
for t in range(4):
    g = run(g, Schedule.from_text("A"), 1)
    print(f"after step {t + 1}: total {g.total_chips()} chips")
    print(ascii_frame(g, box))
