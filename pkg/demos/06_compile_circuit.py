#!/usr/bin/env python3
"""The constructive reduction: a monotone circuit becomes a chip pattern.

Compiling a netlist yields an initial configuration, a schedule, a step
bound T and a probe cell. Asserting the inputs as four-chip packets and
running the automaton answers the circuit: chips reach the probe within T
exactly when the circuit evaluates to 1. The check below does that for
every assignment of a small reconvergent circuit and for a batch of seeded
random ones.
"""

import itertools
import random

from gatepile.compiler import check_compiled, compile_netlist
from gatepile.netlist import parse_netlist, random_netlist

netlist = parse_netlist("""
input a
input b
input c
gate lo  OR  a b
gate hi  AND lo c
gate out OR  hi a
output out
""")

layout = compile_netlist(netlist)
m = layout.manifest()
print(f"compiled: {m['cells']} cells, {m['chips']} chips, "
      f"bbox {m['bbox']}, T = {m['t_bound']} steps")
print(f"probe at {m['probe']}, input pads: {m['inputs']}")
print()
print("assignment -> circuit value | probe verdict (step)")
for bits in itertools.product((0, 1), repeat=3):
    assignment = dict(zip(netlist.inputs, bits))
    r = check_compiled(layout, netlist, assignment)
    verdict = f"fires at {r.probe_step}" if r.observed else "stays empty"
    flag = "" if r.agrees else "  <-- DISAGREES"
    print(f"  {bits} -> {r.expected} | {verdict}{flag}")

print()
rng = random.Random(1)
agreed = cases = 0
for _ in range(5):
    nl = random_netlist(rng, rng.randint(2, 5), rng.randint(3, 10))
    lay = compile_netlist(nl)
    for bits in itertools.product((0, 1), repeat=len(nl.inputs)):
        r = check_compiled(lay, nl, dict(zip(nl.inputs, bits)))
        agreed += r.agrees
        cases += 1
print(f"five random netlists, exhaustive assignments: {agreed}/{cases} agree")
