import random

import pytest
from hypothesis import given, settings, strategies as st

from gatepile import (
    ChipGrid,
    GateStep,
    ProbeNotEmptyError,
    Schedule,
    ThresholdMode,
    probe,
    run,
    step,
    total_chips,
    trace,
)

F4 = ThresholdMode.FIXED_FOUR
AD = ThresholdMode.ADAPTIVE


# -- the worked step examples --------------------------------------------------

def test_step_all_open_classic_rule():
    g = step(ChipGrid({(0, 0): 4}), GateStep.ALL, F4)
    assert g == ChipGrid({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})


def test_step_gated_h_loses_two():
    g = step(ChipGrid({(0, 0): 4}), GateStep.H, F4)
    assert g == ChipGrid({(0, 0): 2, (1, 0): 1, (-1, 0): 1})


def test_step_below_threshold_fixed_point():
    g = ChipGrid({(0, 0): 3})
    assert step(g, GateStep.H, F4) == g


def test_step_adaptive_threshold_two():
    g = step(ChipGrid({(0, 0): 2}), GateStep.V, AD)
    assert g == ChipGrid({(0, 1): 1, (0, -1): 1})


def test_step_simultaneous_neighbours():
    # both cells fire at once; each loses two and receives one from the other
    g = step(ChipGrid({(0, 0): 4, (1, 0): 4}), GateStep.H, F4)
    assert g == ChipGrid({(0, 0): 3, (1, 0): 3, (-1, 0): 1, (2, 0): 1})


def test_step_fires_once_despite_surplus():
    # eight chips still make one firing: lose alpha once
    g = step(ChipGrid({(0, 0): 9}), GateStep.H, F4)
    assert g.get((0, 0)) == 7
    assert g.get((1, 0)) == 1


def test_run_zero_steps_is_identity():
    g = ChipGrid({(3, 1): 5})
    assert run(g, Schedule.from_text("H^4V^4"), 0, F4) == g


def test_run_is_step_composition():
    g = ChipGrid({(0, 0): 4})
    w = Schedule.from_text("HV")
    assert run(g, w, 2, F4) == step(step(g, GateStep.H, F4), GateStep.V, F4)


def test_run_eight_chips_two_all_steps():
    # two manual applications of the classic rule: the centre fires twice,
    # so each neighbour accumulates two chips
    g = run(ChipGrid({(0, 0): 8}), Schedule.from_text("A"), 2, F4)
    assert g == ChipGrid({(1, 0): 2, (-1, 0): 2, (0, 1): 2, (0, -1): 2})


def test_trace_shapes():
    g = ChipGrid({(0, 0): 4})
    frames = trace(g, Schedule.from_text("H"), 1, F4)
    assert frames[0] == g
    assert frames[1] == ChipGrid({(0, 0): 2, (1, 0): 1, (-1, 0): 1})
    assert len(trace(g, Schedule.from_text("H"), 0)) == 1


def test_probe_direct_neighbour():
    t = probe(ChipGrid({(0, 0): 4}), Schedule.from_text("H"), 1, (1, 0), F4)
    assert t == 1


def test_probe_never_fires():
    t = probe(ChipGrid({(0, 0): 3}), Schedule.from_text("H^4V^4"), 10, (1, 0), F4)
    assert t is None


def test_probe_rejects_occupied_site():
    with pytest.raises(ProbeNotEmptyError):
        probe(ChipGrid({(0, 0): 4}), Schedule.from_text("H"), 5, (0, 0), F4)


def test_total_chips():
    assert total_chips(ChipGrid()) == 0
    assert total_chips(ChipGrid({(0, 0): 4, (2, 3): 1})) == 5


# -- randomised invariants -----------------------------------------------------

def random_grid(rng, max_side=50, max_count=8, max_cells=60):
    cells = {}
    for _ in range(rng.randint(1, max_cells)):
        x = rng.randint(0, max_side - 1)
        y = rng.randint(0, max_side - 1)
        cells[(x, y)] = rng.randint(1, max_count)
    return ChipGrid(cells)


ALL_KINDS = [GateStep.H, GateStep.V, GateStep.ALL,
             GateStep.BLOCK_EVEN, GateStep.BLOCK_ODD]


def test_conservation_bulk():
    # acceptance-grade volume lives in test_acceptance; this is the smoke run
    rng = random.Random(11)
    for _ in range(500):
        g = random_grid(rng)
        kind = rng.choice(ALL_KINDS)
        mode = rng.choice([F4, AD])
        assert total_chips(step(g, kind, mode)) == total_chips(g)


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=60, deadline=None)
def test_step_deterministic(seed):
    rng = random.Random(seed)
    g = random_grid(rng)
    kind = rng.choice(ALL_KINDS)
    mode = rng.choice([F4, AD])
    assert step(g, kind, mode) == step(g, kind, mode)


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_quiescence_below_threshold(seed):
    rng = random.Random(seed)
    g = random_grid(rng, max_count=3)
    assert step(g, rng.choice(ALL_KINDS), F4) == g


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_gating_direction(seed):
    # under H only column coordinates change; under V only rows
    rng = random.Random(seed)
    g = random_grid(rng)
    for kind, frozen_axis in ((GateStep.H, 1), (GateStep.V, 0)):
        before = {}
        for (x, y), n in g.items():
            before[(x, y)[frozen_axis]] = before.get((x, y)[frozen_axis], 0) + n
        after = {}
        for (x, y), n in step(g, kind, F4).items():
            after[(x, y)[frozen_axis]] = after.get((x, y)[frozen_axis], 0) + n
        assert before == after


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_block_steps_conserve_within_blocks(seed):
    # a block step moves chips only inside its own 2x2 tile
    rng = random.Random(seed)
    g = random_grid(rng)
    for kind, off in ((GateStep.BLOCK_EVEN, 0), (GateStep.BLOCK_ODD, 1)):
        def tile(c):
            return ((c[0] - off) // 2, (c[1] - off) // 2)
        before = {}
        for c, n in g.items():
            before[tile(c)] = before.get(tile(c), 0) + n
        after = {}
        for c, n in step(g, kind, F4).items():
            after[tile(c)] = after.get(tile(c), 0) + n
        assert before == after


def test_all_word_equals_classic_sandpile():
    # with every side open the gated rule is the classic rule: alpha = 4
    rng = random.Random(3)
    for _ in range(50):
        g = random_grid(rng)
        stepped = step(g, GateStep.ALL, F4)
        # classic reference: collect-then-apply with four fixed neighbours
        cells = g.cells()
        firing = [v for v, n in cells.items() if n >= 4]
        for v in firing:
            cells[v] -= 4
            x, y = v
            for u in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                cells[u] = cells.get(u, 0) + 1
        assert stepped == ChipGrid({c: n for c, n in cells.items() if n})


def test_locality_cone():
    # the probe verdict cannot depend on cells beyond Chebyshev distance T
    rng = random.Random(17)
    word = Schedule.from_text("H^4V^4")
    for _ in range(30):
        T = rng.randint(4, 32)
        g = random_grid(rng, max_side=10)
        site = (rng.randint(-3, 12), rng.randint(-3, 12))
        g = g.with_chips(site, -g.get(site)) if site in g else g
        base = probe(g, word, T, site, F4)
        far = dict(g.cells())
        for _ in range(rng.randint(1, 5)):
            d = T + rng.randint(1, 20)
            far[(site[0] + rng.choice((-d, d)), site[1] + rng.randint(-d, d))] = \
                rng.randint(1, 8)
        assert probe(ChipGrid(far), word, T, site, F4) == base


def test_influence_confined_to_cone_box():
    # the probe verdict is a function of the (2T+1)^2 box around the site
    rng = random.Random(31)
    word = Schedule.from_text("H^4V^4")
    for _ in range(25):
        T = rng.randint(2, 16)
        g = random_grid(rng, max_side=40)
        site = (20, 20)
        g = ChipGrid({c: n for c, n in g.items() if c != site})
        boxed = g.restrict(lambda c: max(abs(c[0] - site[0]),
                                         abs(c[1] - site[1])) <= T)
        assert probe(g, word, T, site, F4) == probe(boxed, word, T, site, F4)


def test_fast_path_matches_pure_python():
    # the accelerated probe is checked against the reference implementation
    from gatepile import _fastpath
    if not _fastpath.available():
        pytest.skip("numba unavailable")
    rng = random.Random(23)
    word = Schedule.from_text("H^4V^4")
    for _ in range(40):
        g = random_grid(rng, max_side=12, max_count=6)
        site = (13, 13)
        steps = rng.randint(1, 60)
        fast = probe(g, word, steps, site, F4)
        eligible = _fastpath.eligible
        _fastpath.eligible = lambda w: False
        try:
            slow = probe(g, word, steps, site, F4)
        finally:
            _fastpath.eligible = eligible
        assert fast == slow


def test_run_matches_trace_tail():
    rng = random.Random(29)
    w = Schedule.from_text("H^2V^2")
    for _ in range(20):
        g = random_grid(rng, max_side=8)
        n = rng.randint(0, 12)
        assert run(g, w, n, F4) == trace(g, w, n, F4)[-1]
