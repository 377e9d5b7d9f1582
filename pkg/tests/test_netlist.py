import itertools
import random

import pytest

from gatepile.netlist import (
    ArityError,
    CycleError,
    MissingInputError,
    NetlistError,
    NoOutputError,
    UnknownIdError,
    evaluate_netlist,
    parse_netlist,
    random_netlist,
)


def test_parse_two_input_and():
    n = parse_netlist("input a\ninput b\ngate g AND a b\noutput g\n")
    assert n.inputs == ("a", "b")
    assert n.gates[0].kind == "AND"
    assert n.output == "g"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(UnknownIdError) as err:
        parse_netlist("output z\n")
    assert err.value.lineno == 1
    with pytest.raises(UnknownIdError):
        parse_netlist("input a\ngate g AND a missing\noutput g\n")
    with pytest.raises(NoOutputError):
        parse_netlist("input a\n")
    with pytest.raises(ArityError):
        parse_netlist("input a\ngate g AND a\noutput g\n")
    with pytest.raises(CycleError):
        parse_netlist("input a\ngate g AND a g\noutput g\n")
    with pytest.raises(NetlistError):
        parse_netlist("input a\ninput a\noutput a\n")


def test_forward_reference_rejected():
    # definitions must precede use, which rules out cycles altogether
    with pytest.raises(UnknownIdError):
        parse_netlist("input a\ngate g1 AND a g2\ngate g2 OR a a\noutput g1\n")


def test_evaluate_basic():
    n = parse_netlist("input a\ninput b\ngate g AND a b\noutput g\n")
    assert evaluate_netlist(n, {"a": 1, "b": 0}) == 0
    assert evaluate_netlist(n, {"a": 1, "b": 1}) == 1
    n = parse_netlist("input a\ninput b\ngate g OR a b\noutput g\n")
    assert evaluate_netlist(n, {"a": 1, "b": 0}) == 1


def test_evaluate_missing_input():
    n = parse_netlist("input a\ninput b\ngate g AND a b\noutput g\n")
    with pytest.raises(MissingInputError):
        evaluate_netlist(n, {"a": 1})


def _python_expression_oracle(netlist):
    """Build an independent evaluator by composing python boolean lambdas."""
    exprs = {name: f"v[{i}]" for i, name in enumerate(netlist.inputs)}
    for g in netlist.gates:
        op = " and " if g.kind == "AND" else " or "
        exprs[g.gid] = "(" + exprs[g.args[0]] + op + exprs[g.args[1]] + ")"
    return eval("lambda v: int(" + exprs[netlist.output] + ")")


def test_evaluator_matches_expression_oracle_exhaustively():
    rng = random.Random(99)
    for _ in range(10):
        n = random_netlist(rng, rng.randint(2, 8), 20)
        oracle = _python_expression_oracle(n)
        for bits in itertools.product((0, 1), repeat=len(n.inputs)):
            assignment = dict(zip(n.inputs, bits))
            assert evaluate_netlist(n, assignment) == oracle(bits)


def test_round_trip():
    rng = random.Random(5)
    n = random_netlist(rng, 4, 20)
    assert parse_netlist(n.to_text()) == n


def test_random_netlist_is_seed_deterministic():
    a = random_netlist(random.Random(42), 4, 12)
    b = random_netlist(random.Random(42), 4, 12)
    assert a == b


def test_depth_and_consumers():
    n = parse_netlist("input a\ninput b\ngate g1 OR a b\n"
                      "gate g2 AND g1 b\noutput g2\n")
    assert n.depth() == 2
    uses = n.consumers()
    assert uses["b"] == [("g1", 1), ("g2", 1)]
    assert uses["g2"] == []
