"""JIT-accelerated probe loop for uniform fixed-threshold schedules.

Semantically identical to the pure-Python engine (the test suite checks
equivalence on random grids); used only for words over {H, V, ALL} in
fixed-threshold mode, where any cell holding four or more chips fires at
every step.

The grid is laid into a dense array over its bounding box plus a margin;
chips cannot leave that window because a cell must hold four chips to fire
and everything beyond the initial footprint receives at most stray single
chips. A firing within two cells of the window edge aborts to the pure
path (sentinel -3), so the bound is safety-checked, not assumed.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .grid import Coord

try:
    import numpy as np
    from numba import njit

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is an optional accelerator
    _HAVE_NUMBA = False


_MARGIN = 16
_WORD_CODE = {"H": 0, "V": 1, "A": 2}


if _HAVE_NUMBA:

    @njit(cache=True)
    def _probe_dense(arr, width, height, word, steps, site, cand0):  # pragma: no cover
        """arr: int32 flat grid (index = x * height + y). Returns the first
        step the site fills, -1 if it never can, -2 at step exhaustion,
        -3 when a firing approaches the window edge (caller falls back)."""
        stamp = np.zeros(arr.shape[0], dtype=np.int32)
        cand = cand0
        ncand = cand.shape[0]
        buf = np.empty(max(64, 4 * ncand), dtype=np.int64)
        period = word.shape[0]
        for t in range(steps):
            kind = word[t % period]
            nf = 0
            for i in range(ncand):
                k = cand[i]
                if arr[k] >= 4:
                    if nf >= buf.shape[0]:
                        nb = np.empty(2 * buf.shape[0], dtype=np.int64)
                        nb[:nf] = buf[:nf]
                        buf = nb
                    buf[nf] = k
                    nf += 1
            if nf == 0:
                if ncand == 0:
                    return -1
                ncand = 0
                continue
            # apply firings; collect touched cells into the next frontier
            touched = np.empty(5 * nf, dtype=np.int64)
            nt = 0
            for i in range(nf):
                k = buf[i]
                x = k // height
                y = k - x * height
                if x < 2 or x >= width - 2 or y < 2 or y >= height - 2:
                    return -3
                if kind == 2:
                    arr[k] -= 4
                    arr[k + height] += 1
                    arr[k - height] += 1
                    arr[k + 1] += 1
                    arr[k - 1] += 1
                    touched[nt] = k
                    touched[nt + 1] = k + height
                    touched[nt + 2] = k - height
                    touched[nt + 3] = k + 1
                    touched[nt + 4] = k - 1
                    nt += 5
                else:
                    arr[k] -= 2
                    d = height if kind == 0 else 1
                    arr[k + d] += 1
                    arr[k - d] += 1
                    touched[nt] = k
                    touched[nt + 1] = k + d
                    touched[nt + 2] = k - d
                    nt += 3
            if arr[site] > 0:
                return t + 1
            if nt > cand.shape[0]:
                cand = np.empty(2 * nt, dtype=np.int64)
            ncand = 0
            mark = t + 1
            for i in range(nt):
                k = touched[i]
                if arr[k] >= 4 and stamp[k] != mark:
                    stamp[k] = mark
                    cand[ncand] = k
                    ncand += 1
        return -2

    def available() -> bool:
        return True

else:

    def available() -> bool:
        return False


def eligible(word_letters: Tuple[str, ...]) -> bool:
    return _HAVE_NUMBA and all(w in _WORD_CODE for w in word_letters)


class PackedGrid:
    """A grid frozen into the dense fast-path representation, reusable
    across many probe calls with different asserted packets."""

    def __init__(self, cells: Dict[Coord, int]):
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        self.x0 = (min(xs) if xs else 0) - _MARGIN
        self.y0 = (min(ys) if ys else 0) - _MARGIN
        self.width = ((max(xs) if xs else 0) - self.x0) + _MARGIN + 1
        self.height = ((max(ys) if ys else 0) - self.y0) + _MARGIN + 1
        self.arr = np.zeros(self.width * self.height, dtype=np.int32)
        for (x, y), n in cells.items():
            self.arr[(x - self.x0) * self.height + (y - self.y0)] = n

    def index(self, c: Coord) -> int:
        x = c[0] - self.x0
        y = c[1] - self.y0
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"{c} outside packed window")
        return x * self.height + y

    def probe(self, word_letters: Tuple[str, ...], steps: int, site: Coord,
              extra: Dict[Coord, int] | None = None) -> Optional[int]:
        """Probe with optional extra chips added on top of the base grid;
        returns None when the site never fills, or raises FallbackNeeded."""
        arr = self.arr.copy()
        if extra:
            for c, n in extra.items():
                arr[self.index(c)] += n
        cand0 = np.flatnonzero(arr >= 4).astype(np.int64)
        word = np.array([_WORD_CODE[w] for w in word_letters], dtype=np.int64)
        r = _probe_dense(arr, self.width, self.height, word, steps,
                         self.index(site), cand0)
        if r == -3:
            raise FallbackNeeded()
        return None if r < 0 else int(r)


class FallbackNeeded(Exception):
    """The dense window was too tight; use the pure-Python path."""


def probe_fast(cells: Dict[Coord, int], word_letters: Tuple[str, ...],
               steps: int, site: Coord) -> Optional[int]:
    """One-shot probe; packs the grid each call."""
    return PackedGrid(cells).probe(word_letters, steps, site)
