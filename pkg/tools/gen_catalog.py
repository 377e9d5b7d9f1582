#!/usr/bin/env python3
"""Regenerate the shipped gadget catalog from its constructors.

Every entry must pass verification before it is written; the catalog on disk
is the loader's source of truth and the tests cross-check it against the
constructors.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gatepile.catalog_data import all_entries
from gatepile.gadgets import CATALOG_DIR, verify_gadget


def main() -> int:
    CATALOG_DIR.mkdir(exist_ok=True)
    for stale in CATALOG_DIR.glob("*.gadget"):
        stale.unlink()
    for gadget in all_entries():
        report = verify_gadget(gadget, ticks=gadget.latency + 3)
        if not report.ok:
            print(report.summary(), file=sys.stderr)
            return 1
        path = CATALOG_DIR / f"{gadget.name}.gadget"
        path.write_text(gadget.to_text(), encoding="utf-8")
        print(f"wrote {path.name}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
