"""Gated chip-firing automata: engine, gadget catalog, search, and a monotone
circuit compiler targeting the prediction problem."""

from .grid import ChipGrid, Coord, GridFormatError
from .schedule import GateStep, Schedule, ScheduleFormatError, H4V4, alpha, open_sides
from .engine import (
    ProbeNotEmptyError,
    ThresholdMode,
    probe,
    run,
    step,
    total_chips,
    trace,
)
from .gadgets import (
    Direction,
    Gadget,
    Port,
    RotationWordMismatchError,
    PeriodMismatchError,
    UnsupportedWordError,
    assert_signal,
    catalog,
    instantiate,
    packet_size,
    verify_gadget,
)

__version__ = "0.1.0"

__all__ = [
    "ChipGrid", "Coord", "GridFormatError",
    "GateStep", "Schedule", "ScheduleFormatError", "H4V4", "alpha", "open_sides",
    "ProbeNotEmptyError", "ThresholdMode",
    "probe", "run", "step", "total_chips", "trace",
    "Direction", "Gadget", "Port",
    "RotationWordMismatchError", "PeriodMismatchError", "UnsupportedWordError",
    "assert_signal", "catalog", "instantiate", "packet_size", "verify_gadget",
    "__version__",
]
