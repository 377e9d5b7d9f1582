#!/usr/bin/env python3
"""Two signals crossing without interaction.

The horizontal wire parks at columns 0 mod 4 and moves during H steps; the
vertical wire rings at rows 2 mod 4 and moves during V steps. The shared
junction cell is therefore never anyone's waiting spot, and the gating
keeps the two phases from exchanging a single chip. This is what makes
non-planar circuits compilable under H^4V^4 - and it is exactly what the
shorter words cannot do.
"""

from gatepile import assert_signal, run, step
from gatepile.catalog_data import cross
from gatepile.render import ascii_frame

g = cross()
h_in, v_in = g.inputs
h_out, v_out = g.outputs

for bits in ((1, 0), (0, 1), (1, 1)):
    grid = g.footprint
    grid = assert_signal(grid, h_in, bits[0])
    grid = assert_signal(grid, v_in, bits[1])
    seen_h = seen_v = None
    cur = grid
    for t in range(8 * (g.latency + 2)):
        cur = step(cur, g.word[t], g.mode)
        if (t + 1) % 8 == 0:
            tick = (t + 1) // 8
            if seen_h is None and cur.get(h_out.offset) >= 4:
                seen_h = tick
            if seen_v is None and cur.get(v_out.offset) >= 4:
                seen_v = tick
    print(f"h={bits[0]} v={bits[1]} -> horizontal out at tick {seen_h}, "
          f"vertical out at tick {seen_v}")

print()
print("both signals in flight, two ticks after simultaneous assertion:")
grid = assert_signal(assert_signal(g.footprint, h_in, 1), v_in, 1)
print(ascii_frame(run(grid, g.word, 16), (-1, -11, 17, 11)))
