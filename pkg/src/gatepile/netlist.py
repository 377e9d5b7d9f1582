"""Monotone circuit netlists: parsing, validation, evaluation, generation.

Text format, one statement per line (`#` starts a comment):

    input <name>
    gate <id> AND|OR <arg> <arg>
    output <id>

Arguments must be declared before use, so well-formed files are acyclic by
construction; gates have fan-in exactly two and unbounded fan-out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple


class NetlistError(ValueError):
    """Base class; carries a line number when one is known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class UnknownIdError(NetlistError):
    pass


class CycleError(NetlistError):
    pass


class ArityError(NetlistError):
    pass


class NoOutputError(NetlistError):
    pass


class MissingInputError(NetlistError):
    pass


@dataclass(frozen=True)
class Gate:
    gid: str
    kind: str            # AND | OR
    args: Tuple[str, str]


@dataclass(frozen=True)
class Netlist:
    inputs: Tuple[str, ...]
    gates: Tuple[Gate, ...]          # in definition (topological) order
    output: str

    @property
    def names(self) -> Tuple[str, ...]:
        return self.inputs + tuple(g.gid for g in self.gates)

    def consumers(self) -> Dict[str, List[Tuple[str, int]]]:
        """value name -> list of (gate id, argument slot) using it."""
        out: Dict[str, List[Tuple[str, int]]] = {n: [] for n in self.names}
        for g in self.gates:
            for slot, a in enumerate(g.args):
                out[a].append((g.gid, slot))
        return out

    def depth(self) -> int:
        d = {n: 0 for n in self.inputs}
        for g in self.gates:
            d[g.gid] = 1 + max(d[g.args[0]], d[g.args[1]])
        return d[self.output]

    def to_text(self) -> str:
        lines = [f"input {n}" for n in self.inputs]
        lines += [f"gate {g.gid} {g.kind} {g.args[0]} {g.args[1]}" for g in self.gates]
        lines.append(f"output {self.output}")
        return "\n".join(lines) + "\n"


def parse_netlist(text: str) -> Netlist:
    inputs: List[str] = []
    gates: List[Gate] = []
    defined: Dict[str, int] = {}
    output: str | None = None
    output_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "input":
            if len(parts) != 2:
                raise ArityError(f"input takes one name: {raw!r}", lineno)
            name = parts[1]
            if name in defined:
                raise NetlistError(f"duplicate definition of {name!r}", lineno)
            defined[name] = lineno
            inputs.append(name)
        elif kw == "gate":
            if len(parts) != 5:
                raise ArityError(f"gate takes `id AND|OR a b`: {raw!r}", lineno)
            gid, kind, a, b = parts[1:]
            kind = kind.upper()
            if kind not in ("AND", "OR"):
                raise NetlistError(f"gate kind must be AND or OR, got {kind!r}", lineno)
            if gid in defined:
                raise NetlistError(f"duplicate definition of {gid!r}", lineno)
            for arg in (a, b):
                if arg == gid:
                    raise CycleError(f"gate {gid!r} feeds itself", lineno)
                if arg not in defined:
                    raise UnknownIdError(
                        f"argument {arg!r} not defined before use (forward references "
                        f"would create a cycle)", lineno)
            defined[gid] = lineno
            gates.append(Gate(gid, kind, (a, b)))
        elif kw == "output":
            if len(parts) != 2:
                raise ArityError(f"output takes one id: {raw!r}", lineno)
            if output is not None:
                raise NetlistError("multiple output statements", lineno)
            output, output_line = parts[1], lineno
        else:
            raise NetlistError(f"unknown statement {kw!r}", lineno)
    if output is None:
        raise NoOutputError("no output statement")
    if output not in defined:
        raise UnknownIdError(f"output {output!r} is not defined", output_line)
    return Netlist(tuple(inputs), tuple(gates), output)


def evaluate_netlist(netlist: Netlist, assignment: Mapping[str, int]) -> int:
    """Reference evaluation; the oracle the compiled dynamics are checked against."""
    values: Dict[str, int] = {}
    for name in netlist.inputs:
        if name not in assignment:
            raise MissingInputError(f"assignment missing input {name!r}")
        values[name] = 1 if assignment[name] else 0
    for g in netlist.gates:
        a, b = values[g.args[0]], values[g.args[1]]
        values[g.gid] = (a & b) if g.kind == "AND" else (a | b)
    return values[netlist.output]


def random_netlist(rng: random.Random, n_inputs: int, n_gates: int) -> Netlist:
    """Seeded random monotone netlist; arguments drawn from earlier values."""
    if n_inputs < 1 or n_gates < 1:
        raise ValueError("need at least one input and one gate")
    inputs = [f"x{i}" for i in range(n_inputs)]
    avail = list(inputs)
    gates: List[Gate] = []
    for j in range(n_gates):
        gid = f"g{j}"
        kind = rng.choice(("AND", "OR"))
        a = rng.choice(avail)
        b = rng.choice(avail)
        if b == a and len(avail) > 1:
            while b == a:
                b = rng.choice(avail)
        gates.append(Gate(gid, kind, (a, b)))
        avail.append(gid)
    return Netlist(tuple(inputs), tuple(gates), gates[-1].gid)
