#!/usr/bin/env python3
"""The travelling signal on a wire under the word H^4V^4.

The corridor holds three chips per cell. A four-chip packet placed on the
input pad advances one cell per H step; during the four V steps it rings
against the support cells above and below its parking column and comes back
to exactly four chips. One full word application shifts the whole signal
pattern four cells east - watch the `4` crawl along the row.
"""

from gatepile import assert_signal, run
from gatepile.catalog_data import wire_east
from gatepile.render import ascii_frame

wire = wire_east(32)
grid = assert_signal(wire.footprint, wire.inputs[0], 1)
box = (-1, -3, 33, 3)

print("quiescent wire with the packet asserted at the pad (left end):")
print(ascii_frame(grid, box))

for period in range(1, 6):
    grid = run(grid, wire.word, 8)
    print(f"after {period} full word application(s) "
          f"(packet parked at x = {4 * period}):")
    print(ascii_frame(grid, box))

print("note the spent support columns left behind: inert chips below the")
print("firing threshold, never touched again.")
