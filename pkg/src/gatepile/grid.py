"""Sparse chip grids on the unbounded integer lattice.

A grid maps (x, y) cells to positive chip counts; absent cells hold zero.
Grids never store zeros, so two grids are equal iff their mappings are equal.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Tuple

Coord = Tuple[int, int]


class GridFormatError(ValueError):
    """Raised for malformed grid text (bad line, bad count, duplicate cell)."""


class ChipGrid:
    """Immutable sparse mapping from lattice cells to chip counts >= 1."""

    __slots__ = ("_cells",)

    def __init__(self, cells: Mapping[Coord, int] | Iterable[Tuple[Coord, int]] = ()):
        store: Dict[Coord, int] = {}
        items = cells.items() if isinstance(cells, Mapping) else cells
        for coord, count in items:
            if count < 0:
                raise ValueError(f"negative chip count {count} at {coord}")
            if count:
                x, y = coord
                store[(int(x), int(y))] = int(count)
        self._cells = store

    @classmethod
    def _wrap(cls, store: Dict[Coord, int]) -> "ChipGrid":
        g = cls.__new__(cls)
        g._cells = store
        return g

    def get(self, coord: Coord) -> int:
        return self._cells.get(coord, 0)

    def __getitem__(self, coord: Coord) -> int:
        return self._cells.get(coord, 0)

    def __contains__(self, coord: Coord) -> bool:
        return coord in self._cells

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Coord]:
        return iter(self._cells)

    def items(self):
        return self._cells.items()

    def cells(self) -> Dict[Coord, int]:
        """Copy of the underlying mapping."""
        return dict(self._cells)

    def total_chips(self) -> int:
        return sum(self._cells.values())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ChipGrid):
            return self._cells == other._cells
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._cells.items()))

    def __repr__(self) -> str:
        n = len(self._cells)
        return f"ChipGrid({n} cells, {self.total_chips()} chips)"

    # -- construction helpers -------------------------------------------------

    def with_chips(self, coord: Coord, delta: int) -> "ChipGrid":
        """New grid with `delta` chips added at `coord` (may remove the cell)."""
        store = dict(self._cells)
        n = store.get(coord, 0) + delta
        if n < 0:
            raise ValueError(f"chip count would go negative at {coord}")
        if n:
            store[coord] = n
        else:
            store.pop(coord, None)
        return ChipGrid._wrap(store)

    def merged(self, other: "ChipGrid", *, allow_equal_overlap: bool = True) -> "ChipGrid":
        """Union of two grids; overlapping cells must carry equal counts."""
        store = dict(self._cells)
        for coord, n in other.items():
            if coord in store:
                if not allow_equal_overlap or store[coord] != n:
                    raise ValueError(
                        f"conflicting counts at {coord}: {store[coord]} vs {n}")
            else:
                store[coord] = n
        return ChipGrid._wrap(store)

    def translate(self, dx: int, dy: int) -> "ChipGrid":
        return ChipGrid._wrap({(x + dx, y + dy): n for (x, y), n in self._cells.items()})

    def rotate(self, quarter_turns: int) -> "ChipGrid":
        """Rotate counter-clockwise about the origin by 90-degree steps."""
        k = quarter_turns % 4
        if k == 0:
            return self
        if k == 1:
            f = lambda x, y: (-y, x)
        elif k == 2:
            f = lambda x, y: (-x, -y)
        else:
            f = lambda x, y: (y, -x)
        return ChipGrid._wrap({f(x, y): n for (x, y), n in self._cells.items()})

    def restrict(self, pred) -> "ChipGrid":
        """Cells satisfying pred((x, y))."""
        return ChipGrid._wrap({c: n for c, n in self._cells.items() if pred(c)})

    def bounding_box(self) -> Tuple[int, int, int, int] | None:
        """(xmin, ymin, xmax, ymax), or None for the empty grid."""
        if not self._cells:
            return None
        xs = [x for x, _ in self._cells]
        ys = [y for _, y in self._cells]
        return min(xs), min(ys), max(xs), max(ys)

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as sorted `x y n` lines (bit-exact round trip)."""
        lines = [f"{x} {y} {n}" for (x, y), n in sorted(self._cells.items())]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "ChipGrid":
        store: Dict[Coord, int] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GridFormatError(f"line {lineno}: expected `x y n`, got {raw!r}")
            try:
                x, y, n = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise GridFormatError(f"line {lineno}: non-integer field in {raw!r}")
            if n < 1:
                raise GridFormatError(f"line {lineno}: count must be >= 1, got {n}")
            if (x, y) in store:
                raise GridFormatError(f"line {lineno}: duplicate cell ({x}, {y})")
            store[(x, y)] = n
        return cls._wrap(store)
