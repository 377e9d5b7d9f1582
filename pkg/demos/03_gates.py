#!/usr/bin/env python3
"""Logic gates: one chip per asserted input lands on the central site.

The AND centre holds two chips, so it needs both unit deliveries to reach
the firing threshold; the OR centre holds three and fires on either. The
verifier simulates every input assignment through the public engine and
compares the observed boolean function with the declared one.
"""

from gatepile import verify_gadget
from gatepile.gadgets import load_catalog

for name in ("and2", "or2", "and2-t2", "or2-t2",
             "and2-hv", "or2-h2v2", "and2-allopen"):
    gadget = next(g for g in load_catalog() if g.name == name)
    report = verify_gadget(gadget, ticks=gadget.latency + 3)
    print(f"== {name} (word {gadget.word.to_text()}, mode {gadget.mode.value}, "
          f"centre holds {gadget.meta_get('center')}) ==")
    print(report.summary())
    print()
