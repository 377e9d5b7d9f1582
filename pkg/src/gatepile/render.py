"""Frame rendering: ASCII grids and portable pixmaps."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .grid import ChipGrid


def ascii_frame(grid: ChipGrid,
                bbox: Optional[Tuple[int, int, int, int]] = None) -> str:
    """One character per cell: digits 0-9, `+` for ten or more, `.` for empty.

    Rows print north to south. `bbox` fixes the window (xmin, ymin, xmax,
    ymax); defaults to the grid's own bounding box.
    """
    box = bbox or grid.bounding_box()
    if box is None:
        return ""
    xmin, ymin, xmax, ymax = box
    lines = []
    for y in range(ymax, ymin - 1, -1):
        row = []
        for x in range(xmin, xmax + 1):
            n = grid.get((x, y))
            row.append("." if n == 0 else (str(n) if n < 10 else "+"))
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


_PALETTE = [
    (20, 20, 28),      # 0 chips
    (60, 90, 160),     # 1
    (70, 140, 180),    # 2
    (90, 180, 140),    # 3
    (230, 200, 80),    # 4
    (235, 150, 60),    # 5
    (225, 100, 60),    # 6
    (210, 70, 90),     # 7+
]


def ppm_frame(grid: ChipGrid,
              bbox: Optional[Tuple[int, int, int, int]] = None,
              scale: int = 4) -> bytes:
    """Binary P6 pixmap of the frame, `scale` pixels per cell."""
    box = bbox or grid.bounding_box()
    if box is None:
        box = (0, 0, 0, 0)
    xmin, ymin, xmax, ymax = box
    w = (xmax - xmin + 1) * scale
    h = (ymax - ymin + 1) * scale
    rows = []
    for y in range(ymax, ymin - 1, -1):
        row = bytearray()
        for x in range(xmin, xmax + 1):
            n = min(grid.get((x, y)), len(_PALETTE) - 1)
            row.extend(bytes(_PALETTE[n]) * scale)
        rows.extend([bytes(row)] * scale)
    return b"P6\n%d %d\n255\n" % (w, h) + b"".join(rows)


def render_trace(frames: Sequence[ChipGrid], fmt: str = "ascii",
                 scale: int = 4):
    """Render every frame in a shared bounding box; yields str or bytes."""
    box = None
    for f in frames:
        b = f.bounding_box()
        if b is None:
            continue
        if box is None:
            box = list(b)
        else:
            box = [min(box[0], b[0]), min(box[1], b[1]),
                   max(box[2], b[2]), max(box[3], b[3])]
    fixed = tuple(box) if box else None
    for f in frames:
        if fmt == "ascii":
            yield ascii_frame(f, fixed)
        else:
            yield ppm_frame(f, fixed, scale)
