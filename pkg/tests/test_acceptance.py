"""Acceptance criteria, one test per criterion, tolerances pinned.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
The end-to-end reduction (criterion 7) checks a seeded 50-netlist corpus
exhaustively and is the suite's main cost; everything here must finish well
inside five minutes on one laptop core.
"""

import itertools
import math
import random
import time

import pytest

from gatepile import (
    ChipGrid,
    GateStep,
    Schedule,
    ThresholdMode,
    assert_signal,
    probe,
    run,
    step,
    total_chips,
    verify_gadget,
)
from gatepile.catalog_data import wire_east
from gatepile.compiler import (
    NonplanarWithoutCrossoverError,
    check_compiled,
    compile_netlist,
)
from gatepile.gadgets import load_catalog
from gatepile.netlist import parse_netlist, random_netlist

F4 = ThresholdMode.FIXED_FOUR
AD = ThresholdMode.ADAPTIVE
H4V4 = Schedule.from_text("H^4V^4")

CORPUS_SEED = 20260809
CORPUS_SIZE = 50


def _report(n, ok, text):
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_1_classic_rule():
    g = ChipGrid({(0, 0): 4})
    t0 = time.perf_counter()
    out = step(g, GateStep.ALL, F4)
    elapsed = time.perf_counter() - t0
    exact = out == ChipGrid({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    _report(1, exact and elapsed < 1e-3,
            f"all-open firing gives the four-neighbour pattern exactly "
            f"({elapsed * 1e6:.0f} us)")


def test_criterion_2_gated_rule():
    under_h = step(ChipGrid({(0, 0): 4}), GateStep.H, F4)
    ok_h = under_h == ChipGrid({(0, 0): 2, (1, 0): 1, (-1, 0): 1})
    under_v = step(ChipGrid({(0, 0): 4}), GateStep.V, F4)
    # V must be the transposition of H
    transposed = ChipGrid({(y, x): n for (x, y), n in under_h.items()})
    ok_v = under_v == transposed
    _report(2, ok_h and ok_v,
            "gated firing loses two chips east/west under H, transposed under V")


def test_criterion_3_conservation_ten_thousand():
    rng = random.Random(333)
    kinds = [GateStep.H, GateStep.V, GateStep.ALL,
             GateStep.BLOCK_EVEN, GateStep.BLOCK_ODD]
    trials = 10_000
    violations = 0
    for i in range(trials):
        cells = {}
        for _ in range(rng.randint(1, 40)):
            cells[(rng.randint(0, 49), rng.randint(0, 49))] = rng.randint(1, 8)
        g = ChipGrid(cells)
        out = step(g, kinds[i % 5], (F4, AD)[i % 2])
        if total_chips(out) != total_chips(g):
            violations += 1
    _report(3, violations == 0,
            f"chip totals invariant over {trials} random grids, "
            f"all gate kinds, both modes ({violations} violations)")


def test_criterion_4_locality_cone():
    rng = random.Random(444)
    violations = 0
    instances = 120
    for _ in range(instances):
        T = rng.randint(4, 32)
        cells = {}
        for _ in range(rng.randint(1, 25)):
            cells[(rng.randint(-6, 6), rng.randint(-6, 6))] = rng.randint(1, 8)
        site = (rng.randint(-8, 8), rng.randint(-8, 8))
        cells.pop(site, None)
        base = probe(ChipGrid(cells), H4V4, T, site, F4)
        far = dict(cells)
        for _ in range(rng.randint(1, 6)):
            dx = rng.choice((-1, 1)) * (T + rng.randint(1, 30))
            dy = rng.randint(-(T + 30), T + 30)
            if max(abs(dx), abs(dy)) > T:
                far[(site[0] + dx, site[1] + dy)] = rng.randint(1, 8)
        if probe(ChipGrid(far), H4V4, T, site, F4) != base:
            violations += 1
    _report(4, violations == 0,
            f"probe verdicts unchanged by edits beyond the cone "
            f"({instances} instances, horizons to 32)")


def test_criterion_5_wire_translation():
    wire = wire_east(96)
    quiet = run(wire.footprint, wire.word, 8 * 22, wire.mode)
    fixed_point = quiet == wire.footprint

    grid = assert_signal(wire.footprint, wire.inputs[0], 1)
    frames = [grid]
    for _ in range(22):
        frames.append(run(frames[-1], wire.word, 8, wire.mode))
    periods_ok = 0
    for k in range(21):
        lo = 4 * k
        cur = {x: frames[k].get((x, 0)) for x in range(lo, 93)
               if frames[k].get((x, 0))}
        nxt = {x: frames[k + 1].get((x, 0)) for x in range(lo + 4, 93)
               if frames[k + 1].get((x, 0))}
        shifted = {x + 4: n for x, n in cur.items() if x + 4 <= 92}
        if shifted == nxt and frames[k].get((4 * k, 0)) == 4:
            periods_ok += 1
    _report(5, fixed_point and periods_ok >= 20,
            f"wire corridor translates exactly for {periods_ok} consecutive "
            f"periods; quiescent footprint is an exact fixed point")


def test_criterion_6_gate_truth_tables():
    expected_sets = {
        ("H^4V^4", "fixed4"): {"WIRE", "OR2", "AND2", "CROSS"},
        ("HV", "fixed4"): {"WIRE", "OR2", "AND2"},
        ("H^2V^2", "fixed4"): {"WIRE", "OR2", "AND2"},
        ("H^3V^3", "fixed4"): {"WIRE", "OR2", "AND2"},
        ("A", "fixed4"): {"WIRE", "OR2", "AND2"},
        ("H^4V^4", "adaptive"): {"WIRE", "OR2", "AND2"},
    }
    seen = {}
    failures = []
    for g in load_catalog():
        key = (g.word.to_text(), g.mode.value)
        report = verify_gadget(g, ticks=g.latency + 3)
        if not report.ok:
            failures.append(g.name)
        seen.setdefault(key, set()).add(g.function)
    families_ok = all(expected_sets[k] <= seen.get(k, set())
                      for k in expected_sets)
    _report(6, not failures and families_ok,
            f"every cataloged gadget matches its declared function exactly "
            f"({len(load_catalog())} entries, 6 word/mode families)"
            + (f"; failures: {failures}" if failures else ""))


def _corpus():
    rng = random.Random(CORPUS_SEED)
    out = []
    for _ in range(CORPUS_SIZE):
        n_inputs = rng.randint(2, 8)
        n_gates = rng.randint(1, 20)
        out.append(random_netlist(rng, n_inputs, n_gates))
    return out


def test_criterion_7_end_to_end_reduction():
    t0 = time.perf_counter()
    corpus = _corpus()
    checked = 0
    disagreements = 0
    layouts = []
    for nl in corpus:
        layout = compile_netlist(nl)
        layouts.append(layout)
        for bits in itertools.product((0, 1), repeat=len(nl.inputs)):
            r = check_compiled(layout, nl, dict(zip(nl.inputs, bits)))
            checked += 1
            if not r.agrees:
                disagreements += 1
    elapsed = time.perf_counter() - t0
    test_criterion_7_end_to_end_reduction.layouts = (corpus, layouts)
    _report(7, disagreements == 0 and elapsed < 300,
            f"{CORPUS_SIZE} seeded netlists, {checked} assignments checked "
            f"exhaustively, {disagreements} disagreements, {elapsed:.0f}s")


def test_criterion_8_no_crossover_guardrail():
    nl = parse_netlist("input a\ninput b\ngate g1 AND a b\n"
                       "gate g2 OR a g1\noutput g2\n")
    raised = False
    try:
        compile_netlist(nl, Schedule.from_text("HV"))
    except NonplanarWithoutCrossoverError:
        raised = True
    # the same netlist must compile and agree under the cross-capable word
    layout = compile_netlist(nl)
    agrees = all(
        check_compiled(layout, nl, dict(zip(nl.inputs, bits))).agrees
        for bits in itertools.product((0, 1), repeat=2))
    _report(8, raised and agrees,
            "crossing netlist under HV is rejected, compiles correctly "
            "under H^4V^4")


def _fit_exponent(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def test_criterion_9_polynomial_scaling():
    cached = getattr(test_criterion_7_end_to_end_reduction, "layouts", None)
    if cached is None:
        corpus = _corpus()
        layouts = [compile_netlist(nl) for nl in corpus]
    else:
        corpus, layouts = cached
    gates, areas, bounds, size_ratio = [], [], [], 0.0
    for nl, layout in zip(corpus, layouts):
        x0, y0, x1, y1 = layout.grid.bounding_box()
        gates.append(len(nl.gates))
        areas.append((x1 - x0 + 1) * (y1 - y0 + 1))
        bounds.append(layout.t_bound)
        size = len(nl.gates) + len(nl.inputs)
        size_ratio = max(size_ratio, areas[-1] / size ** 2)
    area_exp = _fit_exponent(gates, areas)
    t_exp = _fit_exponent(gates, bounds)
    # growth in gate count stays at most quadratic; area also stays under a
    # fixed quadratic in gates-plus-inputs (regression-tracked constant)
    _report(9, area_exp <= 2.0 and t_exp <= 2.0 and size_ratio <= 20_000,
            f"fitted growth: area ~ gates^{area_exp:.2f}, T ~ gates^{t_exp:.2f} "
            f"(caps 2.0); max area/size^2 = {size_ratio:.0f} (cap 20000)")


def test_criterion_10_determinism():
    rng = random.Random(CORPUS_SEED)
    nl = random_netlist(rng, rng.randint(2, 8), rng.randint(1, 20))
    first = compile_netlist(nl)
    second = compile_netlist(nl)
    manifests_equal = first.manifest_text() == second.manifest_text()
    grids_equal = first.grid.to_text() == second.grid.to_text()
    # the seeded corpus itself reproduces byte for byte
    corpus_a = "".join(n.to_text() for n in _corpus())
    corpus_b = "".join(n.to_text() for n in _corpus())
    checks_equal = True
    for bits in ((0, 0), (1, 1)):
        a = check_compiled(first, nl, dict(zip(nl.inputs, bits * 4)))
        b = check_compiled(second, nl, dict(zip(nl.inputs, bits * 4)))
        checks_equal &= (a == b)
    _report(10, manifests_equal and grids_equal and corpus_a == corpus_b
            and checks_equal,
            "recompilation, corpus generation and checks reproduce "
            "byte-identically under fixed seeds")
